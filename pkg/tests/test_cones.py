"""Exact polyhedral cones: membership, duality, extremal rays."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conecalc.cones import Pairing, RationalCone, dual, equals, extremal_rays, primitive
from conecalc.errors import InputError

OCTANT3 = RationalCone(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_primitive():
    assert primitive((2, 4, -6)) == (1, 2, -3)
    assert primitive((Fraction(1, 2), Fraction(3, 4))) == (2, 3)
    assert primitive((-3,)) == (-1,)
    with pytest.raises(InputError):
        primitive((0, 0))


def test_contains_examples():
    assert OCTANT3.contains((1, 1, 1))
    assert not OCTANT3.contains((-1, 0, 0))
    wedge = RationalCone(2, [(1, 0), (1, 1)])
    assert wedge.contains((2, 1))
    assert not wedge.contains((0, 1))
    assert wedge.contains((0, 0))


def test_contains_dimension_mismatch():
    with pytest.raises(InputError):
        OCTANT3.contains((1, 2))


def test_dual_examples():
    assert equals(OCTANT3.dual(), OCTANT3)
    wedge = RationalCone(2, [(1, 0), (1, 1)])
    assert equals(wedge.dual(), RationalCone(2, [(0, 1), (1, -1)]))
    swap = Pairing([[0, 1], [1, 0]])
    quadrant = RationalCone(2, [(1, 0), (0, 1)])
    assert equals(quadrant.dual(swap), quadrant)


def test_dual_of_zero_cone_is_whole_space():
    zero = RationalCone(2, [])
    whole = zero.dual()
    for v in [(1, 0), (-1, 0), (0, 1), (0, -1), (3, -7)]:
        assert whole.contains(v)


def test_dual_involutive():
    cones = [
        OCTANT3,
        RationalCone(2, [(1, 0), (1, 1)]),
        RationalCone(3, [(1, 0, -1), (0, 1, 0), (0, 0, 1)]),
        RationalCone(2, [(1, 0), (-1, 0), (0, 1)]),  # half plane
    ]
    for cone in cones:
        assert equals(dual(dual(cone)), cone)


def test_equals_examples():
    assert equals(OCTANT3, RationalCone(3, [(0, 0, 1), (1, 0, 0), (0, 1, 0)]))
    half = RationalCone(3, [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert not equals(OCTANT3, half)
    assert equals(
        RationalCone(2, [(1, 0), (0, 1), (1, 1)]), RationalCone(2, [(1, 0), (0, 1)])
    )
    assert not equals(OCTANT3, RationalCone(2, [(1, 0), (0, 1)]))


def test_extremal_rays_examples():
    assert set(extremal_rays(RationalCone(2, [(1, 0), (0, 1), (1, 1)]))) == {
        (1, 0),
        (0, 1),
    }
    assert set(extremal_rays(OCTANT3)) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    cone = RationalCone(3, [(2, 0, 0), (0, 3, 0), (0, 0, 1), (1, 1, 1)])
    assert set(extremal_rays(cone)) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_extremal_rays_irredundant():
    cone = RationalCone(3, [(1, 0, -1), (0, 1, -1), (0, 0, 1), (1, 1, -1)])
    rays = extremal_rays(cone)
    for ray in rays:
        others = [r for r in rays if r != ray]
        smaller = RationalCone(3, others) if others else None
        assert smaller is None or not smaller.contains(ray)
    assert equals(cone, RationalCone(3, rays))


def test_generators_canonical():
    cone = RationalCone(2, [(2, 4), (Fraction(1, 2), 1), (1, 0)])
    # primitive, deduplicated, descending lex
    assert cone.generators == ((1, 2), (1, 0))


def test_violated_constraint_reports_facet():
    kind, normal, value = OCTANT3.violated_constraint((1, -2, 0))
    assert kind == "facet"
    assert value < 0
    assert sum(n * x for n, x in zip(normal, (1, -2, 0))) == value
    assert OCTANT3.violated_constraint((1, 2, 0)) is None


def test_violated_constraint_reports_span():
    plane = RationalCone(3, [(1, 0, 0), (0, 1, 0), (-1, -1, 0)])
    kind, normal, value = plane.violated_constraint((0, 0, 1))
    assert kind == "span"
    assert value != 0
    assert plane.contains((-5, 2, 0))


def test_zero_generator_rejected():
    with pytest.raises(InputError):
        RationalCone(2, [(0, 0)])


def test_dimension_cap(monkeypatch):
    with pytest.raises(InputError):
        RationalCone(7, [(1,) * 7])
    monkeypatch.setenv("CONECALC_MAX_DIM", "8")
    cone = RationalCone(8, [tuple(1 if j == i else 0 for j in range(8)) for i in range(8)])
    assert cone.contains((1,) * 8)
    monkeypatch.setenv("CONECALC_MAX_DIM", "2")
    with pytest.raises(InputError):
        RationalCone(3, [(1, 0, 0)])
    monkeypatch.setenv("CONECALC_MAX_DIM", "zero")
    with pytest.raises(InputError):
        RationalCone(2, [(1, 0)])


def test_json_round_trip():
    cone = RationalCone(3, [(1, 0, -1), (0, 2, 1)])
    back = RationalCone.from_json(cone.to_json())
    assert back.dim == cone.dim and back.generators == cone.generators
    with pytest.raises(InputError):
        RationalCone.from_json({"generators": [["1"]]})


def test_not_hashable():
    with pytest.raises(TypeError):
        hash(OCTANT3)


def test_eq_uses_cone_equality():
    assert RationalCone(2, [(1, 0), (0, 1), (1, 1)]) == RationalCone(
        2, [(1, 0), (0, 1)]
    )
    assert RationalCone(2, [(1, 0)]) != RationalCone(2, [(0, 1)])


vectors = st.lists(
    st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)).filter(
        lambda v: any(v)
    ),
    min_size=1,
    max_size=5,
)


@settings(max_examples=60, deadline=None)
@given(vectors)
def test_generators_are_members(gens):
    cone = RationalCone(3, gens)
    for g in gens:
        assert cone.contains(g)
    # sums and positive scalings stay inside
    total = tuple(sum(g[i] for g in gens) for i in range(3))
    assert cone.contains(total)
    assert cone.contains(tuple(Fraction(7, 3) * x for x in gens[0]))


@settings(max_examples=60, deadline=None)
@given(vectors)
def test_dual_pairs_nonnegatively(gens):
    cone = RationalCone(3, gens)
    d = cone.dual()
    for y in d.generators:
        for g in cone.generators:
            assert sum(a * b for a, b in zip(y, g)) >= 0
    assert equals(d.dual(), cone)
