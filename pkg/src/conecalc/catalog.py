"""Closed-form nef and pseudoeffective cone constructors.

Every cone a preset space admits in closed form is built here, in the
published monomial bases, together with an independent k-homogeneity
verifier that rederives the same cones from first principles (products of
nef divisor generators on one side, pairing duality on the other) and so
serves as the constructors' oracle.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from . import bundles as bn
from .cones import Pairing, RationalCone, equals
from .errors import InputError, InternalError
from .ring import (
    PROJ_BUNDLE_OVER_SURFACE_RHO1,
    SpacePreset,
    _pmul,
    build_lambda_ring_surface,
)


@dataclass(frozen=True)
class ConeReport:
    """Nef and pseudoeffective cones of one space in one codimension.

    ``basis`` lists the monomial labels the coordinates refer to. The nef
    cone is checked to sit inside the pseudoeffective one at construction;
    ``equal`` records whether the two coincide.
    """

    space: SpacePreset
    k: int
    basis: tuple
    nef: RationalCone
    psef: RationalCone
    equal: bool

    def to_json(self):
        return {
            "space": self.space.to_json() if self.space else {"kind": "curve_base"},
            "k": self.k,
            "basis": list(self.basis),
            "nef": self.nef.to_json(),
            "psef": self.psef.to_json(),
            "equal": self.equal,
        }


def _report(space, k, basis, nef, psef):
    for g in nef.generators:
        if not psef.contains(g):
            raise InternalError(
                "nef cone escapes the pseudoeffective cone at generator "
                + str(g)
            )
    return ConeReport(space, k, tuple(basis), nef, psef, equals(nef, psef))


def miyaoka_cones(bundle):
    """Nef and pseudoeffective cones of a projectivized bundle over a curve.

    In the basis (xi, f): the nef cone is spanned by xi - mu_min*f and f,
    the pseudoeffective cone by xi - mu_max*f and f; they agree exactly for
    semistable bundles.
    """
    if bundle.rank < 2:
        raise InputError("projectivization needs rank at least 2")
    preset = SpacePreset.curve(bundle.rank, bundle.degree)
    nef = RationalCone(2, [(1, -bn.mu_min(bundle)), (0, 1)])
    psef = RationalCone(2, [(1, -bn.mu_max(bundle)), (0, 1)])
    return _report(preset, 1, ("xi", "f"), nef, psef)


def _fibre_preset(first, second):
    if first.rank < 2 or second.rank < 2:
        raise InputError("projectivization needs rank at least 2")
    return SpacePreset.fibre_product(first.rank, second.rank, first.degree, second.degree)


def nef_fibre_product(first, second):
    """Nef cone of the fibre product, basis (xi, zeta, F): each factor
    contributes its minimal-slope ray."""
    _fibre_preset(first, second)
    return RationalCone(
        3,
        [(1, 0, -bn.mu_min(first)), (0, 1, -bn.mu_min(second)), (0, 0, 1)],
    )


def psef_fibre_product(first, second):
    """Pseudoeffective cone of the fibre product, basis (xi, zeta, F).

    The single closed form uses each factor's maximal slope; for semistable
    factors it collapses onto the nef cone, and for unstable ones the first
    two rays are the classes of the destabilizing subbundle loci.
    """
    _fibre_preset(first, second)
    return RationalCone(
        3,
        [(1, 0, -bn.mu_max(first)), (0, 1, -bn.mu_max(second)), (0, 0, 1)],
    )


def fibre_product_cones(first, second):
    """ConeReport wrapper around the two fibre product closed forms."""
    preset = _fibre_preset(first, second)
    return _report(
        preset,
        1,
        ("xi", "zeta", "F"),
        nef_fibre_product(first, second),
        psef_fibre_product(first, second),
    )


def semistable_bundle_cone(base_nef_labels, rank, c1_coords=None):
    """Common nef = psef cone of a projectivized semistable bundle whose base
    has polyhedral nef = psef cone with the given generators.

    The caller asserts the base property, semistability and vanishing
    c2(End); none of that is checkable from the arguments. In the basis
    (lambda, pullbacks of the base generators) the cone is the nonnegative
    orthant, which is what gets returned.
    """
    labels = tuple(base_nef_labels)
    if not labels:
        raise InputError("base nef cone needs at least one generator")
    if rank < 2:
        raise InputError("projectivization needs rank at least 2")
    if c1_coords is not None and len(tuple(c1_coords)) != len(labels):
        raise InputError("c1 coordinate count does not match the base generators")
    dim = len(labels) + 1
    gens = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    return RationalCone(dim, gens)


def iterated_fibre_product_cones(tower):
    """Cone reports up a tower of fibre products of semistable bundles.

    Stage s lives on the fibre product of the first s bundles; in the basis
    (xi_1, ..., xi_s, F) its common nef = psef cone is spanned by the classes
    xi_i - mu_i*F together with F, so the stage at list index i carries i + 2
    generators. An empty tower yields the base curve's single-generator
    report; any unstable bundle is rejected.
    """
    tower = list(tower)
    for bundle in tower:
        if bundle.rank < 2:
            raise InputError("projectivization needs rank at least 2")
        if not bundle.semistable:
            raise InputError(
                f"bundle {bundle.name!r} is unstable; the tower construction "
                "requires every bundle to be semistable"
            )
    if not tower:
        ample = RationalCone(1, [(1,)])
        return [_report(None, 1, ("pt",), ample, ample)]
    reports = []
    for stage in range(1, len(tower) + 1):
        dim = stage + 1
        gens = []
        for i in range(stage):
            mu = bn.slope(tower[i])
            vec = [Fraction(0)] * dim
            vec[i] = Fraction(1)
            vec[-1] = -mu
            gens.append(tuple(vec))
        gens.append(tuple([Fraction(0)] * (dim - 1) + [Fraction(1)]))
        cone = RationalCone(dim, gens)
        labels = tuple(f"xi{i + 1}" for i in range(stage)) + ("F",)
        preset = None
        if stage == 1:
            preset = SpacePreset.curve(tower[0].rank, tower[0].degree)
        elif stage == 2:
            preset = _fibre_preset(tower[0], tower[1])
        reports.append(_report(preset, 1, labels, cone, cone))
    return reports


def _nef_divisor_generators(preset, ring):
    """Degree-1 generators of the nef cone in the lambda-basis ring."""

    def gen(name, scale=1):
        mono = tuple(1 if g == name else 0 for g in ring.gens)
        return {mono: Fraction(scale)}

    if preset.kind == PROJ_BUNDLE_OVER_SURFACE_RHO1:
        return [gen("lambda"), gen("piL")]
    eta_minus_mu_f = gen("piEta")
    eta_minus_mu_f.update({next(iter(gen("piF"))): -preset.mu})
    return [gen("lambda"), eta_minus_mu_f, gen("piF")]


def homogeneity_cones(preset, k):
    """First-principles psef and nef cones in codimension k.

    The pseudoeffective side is the nonnegative span of all degree-k
    products of nef divisor generators; the nef side is the dual of the
    complementary-degree pseudoeffective cone under the exact intersection
    pairing. Returns (psef, nef, basis labels). Built independently of the
    closed-form constructors so it can act as their oracle.
    """
    if not preset.is_surface:
        raise InputError("invalid preset: expected a surface-base preset")
    r = preset.rank
    if not 1 <= k <= r - 1:
        raise InputError(f"k out of range 1..{r - 1}")
    ring = build_lambda_ring_surface(preset)
    divisors = _nef_divisor_generators(preset, ring)
    width = len(ring.gens)

    def product_cone(degree):
        basis = ring.basis(degree)
        vectors = []
        for combo in combinations_with_replacement(range(len(divisors)), degree):
            poly = {(0,) * width: Fraction(1)}
            for i in combo:
                poly = _pmul(poly, divisors[i])
            cls = ring.normal_form(poly, degree=degree)
            if not cls.is_zero:
                vectors.append(cls.coordinates(basis))
        return RationalCone(len(basis), vectors)

    k2 = (r + 1) - k
    psef = product_cone(k)
    psef_complement = product_cone(k2)
    basis_k = ring.basis(k)
    basis_k2 = ring.basis(k2)
    matrix = [
        [ring.degree_eval({tuple(a + b for a, b in zip(m2, m1)): Fraction(1)}) for m1 in basis_k]
        for m2 in basis_k2
    ]
    nef = psef_complement.dual(Pairing(matrix))
    return psef, nef, ring.basis_labels(k)


def k_homogeneous_check(preset, k):
    """True when the codimension-k psef and nef cones coincide, derived from
    first principles only."""
    psef, nef, _ = homogeneity_cones(preset, k)
    return equals(psef, nef)


def eff_k_surface_rho1(rank, k, L2):
    """Codimension-k cones of a bundle over a Picard-rank-1 surface,
    1 < k < rank: both cones are the orthant in the three-monomial basis.

    The nef side is recomputed through pairing duality rather than asserted,
    so the report's equality flag is evidence, not fiat.
    """
    rank = int(rank)
    if not 1 < k < rank:
        raise InputError(f"k out of range 2..{rank - 1}")
    L2 = Fraction(L2)
    preset = SpacePreset.surface_rho1(rank, L2, 0, 0)
    psef, nef, labels = homogeneity_cones(preset, k)
    orthant = RationalCone(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    if not equals(psef, orthant):
        raise InternalError("closed-form orthant drifted from the product cone")
    return _report(preset, k, labels, nef, orthant)


def eff_k_ruled(rank, k, mu):
    """Codimension-k cones of a bundle over a ruled surface, 1 < k < rank.

    Four generators in the basis (lambda^k, lambda^(k-1)*piEta,
    lambda^(k-1)*piF, lambda^(k-2)*F); the pulled-back base ray eta - mu*f
    becomes (0, 1, -mu, 0).
    """
    rank = int(rank)
    if not 1 < k < rank:
        raise InputError(f"k out of range 2..{rank - 1}")
    mu = Fraction(mu)
    preset = SpacePreset.ruled_surface(rank, mu, (0, 0), 0)
    psef, nef, labels = homogeneity_cones(preset, k)
    closed = RationalCone(
        4,
        [(1, 0, 0, 0), (0, 1, -mu, 0), (0, 0, 1, 0), (0, 0, 0, 1)],
    )
    if not equals(psef, closed):
        raise InternalError("closed-form cone drifted from the product cone")
    return _report(preset, k, labels, nef, closed)


def surface_cone_report(preset, k):
    """Codimension-k report for a surface preset; dispatches k = 1 (divisor
    case, orthant over base generators) and 1 < k < rank (monomial bases)."""
    if not preset.is_surface:
        raise InputError("invalid preset: expected a surface-base preset")
    if k == 1:
        psef, nef, labels = homogeneity_cones(preset, 1)
        if preset.kind == PROJ_BUNDLE_OVER_SURFACE_RHO1:
            closed = semistable_bundle_cone(("L",), preset.rank)
        else:
            # base rays eta - mu*f and f, written in the (lambda, piEta, piF)
            # coordinates alongside lambda itself
            closed = RationalCone(
                3, [(1, 0, 0), (0, 1, -preset.mu), (0, 0, 1)]
            )
        if not equals(psef, closed):
            raise InternalError("divisor cone drifted from the product cone")
        return _report(preset, 1, labels, nef, closed)
    if preset.kind == PROJ_BUNDLE_OVER_SURFACE_RHO1:
        return eff_k_surface_rho1(preset.rank, k, preset.L2)
    return eff_k_ruled(preset.rank, k, preset.mu)
