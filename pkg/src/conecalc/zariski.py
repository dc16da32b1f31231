"""Weak Zariski decomposition on a fibre product of two projectivized
bundles over a curve.

A pseudoeffective divisor class a*xi + b*zeta + c*F is split into a nef
part P and an effective part N by walking the Harder-Narasimhan ladders of
the two bundles. Every ladder step is recorded as a numerical blow-up
ledger entry (center rank plus exceptional multiplicity); the coordinate
transport along a step is the identity, so the input coordinates ride the
whole chain unchanged. Certificates are dumb value objects: `verify`
re-derives every claim from the two bundles alone, and `decompose` refuses
to return a certificate its own verifier rejects.
"""

from dataclasses import dataclass, replace
from fractions import Fraction

from . import bundles as bn
from .bundles import HNCurveBundle
from .catalog import nef_fibre_product, psef_fibre_product
from .cones import primitive
from .errors import InputError, InternalError
from .rationals import format_rational, parse_rational
from .ring import build_fibre_product_ring

BOTH_SEMISTABLE = "both_semistable"
ONE_CORANK_ONE = "one_corank_one"
BOTH_CORANK_ONE = "both_corank_one"
TERMINAL_CASES = (BOTH_SEMISTABLE, ONE_CORANK_ONE, BOTH_CORANK_ONE)

_COORD_NAMES = ("a", "b", "c")


def _as_coords(cls):
    """Normalize a divisor class to its (a, b, c) coordinate triple."""
    if hasattr(cls, "coordinates"):
        if cls.degree != 1 or len(cls.gens) != 3:
            raise InputError("expected a divisor class with three generators")
        return tuple(cls.coordinates(_IDENTITY_BASIS))
    coords = tuple(
        parse_rational(x) if isinstance(x, str) else Fraction(x) for x in cls
    )
    if len(coords) != 3:
        raise InputError("divisor coordinates must be a triple (a, b, c)")
    return coords


_IDENTITY_BASIS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _class_coords(cls):
    if cls.degree != 1 or len(cls.gens) != 3:
        raise InputError("expected a divisor class on the fibre product")
    return tuple(cls.coordinates(_IDENTITY_BASIS))


def _inequality_text(kind, normal):
    parts = []
    for coef, name in zip(normal, _COORD_NAMES):
        if coef == 0:
            continue
        if coef == 1:
            parts.append(name)
        elif coef == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"{format_rational(coef)}*{name}")
    lhs = " + ".join(parts).replace("+ -", "- ") if parts else "0"
    return f"{lhs} = 0" if kind == "span" else f"{lhs} >= 0"


def _require_psef(coords, cone):
    hit = cone.violated_constraint(coords)
    if hit is not None:
        kind, normal, value = hit
        raise InputError(
            "class is not pseudoeffective: violated inequality "
            f"{_inequality_text(kind, normal)} (value {format_rational(value)})"
        )


def _same_bundle(x, y):
    # names are display-only; chain replay compares numerical content
    return (x.rank, x.degree, x.quotients) == (y.rank, y.degree, y.quotients)


def _terminal_shaped(bundle):
    return bundle.semistable or bundle.quotients[0][0] == bundle.rank - 1


def _terminal_label(first, second):
    unstable = (not first.semistable) + (not second.semistable)
    return TERMINAL_CASES[unstable]


def _axis_label(name, mu):
    if mu == 0:
        return name
    if mu > 0:
        return f"{name} - {format_rational(mu)}*F"
    return f"{name} + {format_rational(-mu)}*F"


@dataclass(frozen=True)
class ReductionStep:
    """One ladder step on one factor, as a pure numerical record.

    The step replaces ``from_bundle`` by the subbundle left after peeling
    off the minimal-slope quotient; the blow-up center is the
    projectivization of that quotient and the exceptional multiplicity is
    the xi (resp. zeta) coefficient of the class being decomposed. Negative
    multiplicities are storable on purpose: `verify` flags them.
    """

    factor: str
    from_bundle: HNCurveBundle
    to_bundle: HNCurveBundle
    blowup_center_rank: int
    exceptional_multiplicity: Fraction

    def __post_init__(self):
        if self.factor not in ("first", "second"):
            raise InputError(f"unknown factor {self.factor!r}")
        if self.blowup_center_rank + self.to_bundle.rank != self.from_bundle.rank:
            raise InputError("blow-up center rank does not match the rank drop")
        if self.blowup_center_rank < 1:
            raise InputError("blow-up center rank must be positive")
        if self.blowup_center_rank >= self.from_bundle.rank - 1:
            raise InputError(
                "reduction step needs quotient rank at most rank - 2; "
                "corank-one shapes are terminal"
            )
        object.__setattr__(
            self,
            "exceptional_multiplicity",
            Fraction(self.exceptional_multiplicity),
        )

    def to_json(self):
        return {
            "factor": self.factor,
            "mult": format_rational(self.exceptional_multiplicity),
            "to": self.to_bundle.to_json(),
        }

    @classmethod
    def from_json(cls, obj, from_bundle):
        try:
            factor = obj["factor"]
            mult = parse_rational(obj["mult"])
            to_bundle = HNCurveBundle.from_json(obj["to"])
        except (KeyError, TypeError):
            raise InputError("malformed reduction step record") from None
        return cls(
            factor,
            from_bundle,
            to_bundle,
            from_bundle.rank - to_bundle.rank,
            mult,
        )


@dataclass(frozen=True)
class ZariskiCertificate:
    """Decomposition evidence: input coordinates, the reduction chain, the
    terminal case label, nef part P, and the effective combination N.

    P lives in the terminal-pair intersection ring; N lists (generator,
    coefficient) pairs over the terminal effective generators. The record
    asserts nothing by itself; `verify` is the sole judge and `verified`
    just caches its latest verdict.
    """

    input_coords: tuple
    steps: tuple
    terminal_case: str
    P: object
    N: tuple
    verified: bool

    def __post_init__(self):
        coords = tuple(Fraction(x) for x in self.input_coords)
        if len(coords) != 3:
            raise InputError("certificate input must be a coordinate triple")
        if self.terminal_case not in TERMINAL_CASES:
            raise InputError(f"unknown terminal case {self.terminal_case!r}")
        object.__setattr__(self, "input_coords", coords)
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(
            self, "N", tuple((gen, Fraction(coeff)) for gen, coeff in self.N)
        )

    def to_json(self):
        return {
            "input": [format_rational(x) for x in self.input_coords],
            "steps": [step.to_json() for step in self.steps],
            "terminal": self.terminal_case,
            "P": [format_rational(x) for x in _class_coords(self.P)],
            "N": [
                {
                    "gen": [format_rational(x) for x in _class_coords(gen)],
                    "coeff": format_rational(coeff),
                }
                for gen, coeff in self.N
            ],
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, obj, first, second):
        try:
            input_coords = tuple(parse_rational(x) for x in obj["input"])
            step_objs = list(obj["steps"])
            terminal = obj["terminal"]
            p_coords = tuple(parse_rational(x) for x in obj["P"])
            n_objs = list(obj["N"])
            verified = bool(obj["verified"])
        except (KeyError, TypeError):
            raise InputError("malformed certificate record") from None
        # rebuild steps in chain order so from_bundle links stay consistent
        chain = [first, second]
        steps = []
        for step_obj in step_objs:
            if not isinstance(step_obj, dict):
                raise InputError("malformed reduction step record")
            idx = 0 if step_obj.get("factor") == "first" else 1
            step = ReductionStep.from_json(step_obj, chain[idx])
            chain[0 if step.factor == "first" else 1] = step.to_bundle
            steps.append(step)
        ring = build_fibre_product_ring(
            chain[0].rank, chain[1].rank, chain[0].degree, chain[1].degree
        )
        P = ring.class_from_coordinates(1, p_coords)
        N = []
        for entry in n_objs:
            try:
                gen_coords = tuple(parse_rational(x) for x in entry["gen"])
                coeff = parse_rational(entry["coeff"])
            except (KeyError, TypeError):
                raise InputError("malformed effective-part record") from None
            N.append((ring.class_from_coordinates(1, gen_coords), coeff))
        return cls(input_coords, tuple(steps), terminal, P, tuple(N), verified)


def coordinate_transport(cls):
    """Transport of (a, b, c) along one reduction step: the identity.

    Named so the chain's basis relabeling is an explicit, logged operation
    rather than an implicit assumption; defined on all coordinate triples,
    not just the pseudoeffective ones.
    """
    return _as_coords(cls)


def reduce_step(bundle, cls, factor="first", psef_cone=None):
    """One reduction step on one factor, or None when the factor is
    terminal-shaped (semistable, or minimal-slope quotient of corank one).

    When ``psef_cone`` is supplied the class is first checked against it
    and a non-member is rejected with the violated facet inequality.
    """
    if factor not in ("first", "second"):
        raise InputError(f"unknown factor {factor!r}")
    coords = _as_coords(cls)
    if psef_cone is not None:
        _require_psef(coords, psef_cone)
    if _terminal_shaped(bundle):
        return None
    mult = coords[0] if factor == "first" else coords[1]
    step = ReductionStep(
        factor,
        bundle,
        bn.sub_bundle_after_step(bundle, 1),
        bundle.quotients[0][0],
        mult,
    )
    return step, coordinate_transport(coords)


def terminal_decompose(first, second, cls):
    """Split a class on a terminal-shaped pair into (P, N).

    The identity cls = a*(xi - mu_max*F) + b*(zeta - mu'_max*F) + c''*F with
    c'' = c + a*mu_max + b*mu'_max drives everything: unstable factors send
    their term to N (those rays are classes of actual subbundle loci),
    semistable factors and the F term stay in P. Pseudoeffectivity is
    exactly nonnegativity of the three expansion coefficients.
    """
    if not (_terminal_shaped(first) and _terminal_shaped(second)):
        raise InputError("factors are not terminal-shaped; reduce them first")
    a, b, c = _as_coords(cls)
    mu1 = bn.mu_max(first)
    mu2 = bn.mu_max(second)
    c_top = c + a * mu1 + b * mu2
    expansion = (
        (a, _axis_label("xi", mu1)),
        (b, _axis_label("zeta", mu2)),
        (c_top, "F"),
    )
    for value, label in expansion:
        if value < 0:
            raise InputError(
                "class is not pseudoeffective: expansion coefficient of "
                f"{label} is {format_rational(value)}"
            )
    ring = build_fibre_product_ring(first.rank, second.rank, first.degree, second.degree)

    def cls_at(coords):
        return ring.class_from_coordinates(1, coords)

    N = []
    if first.semistable and second.semistable:
        P = cls_at((a, b, c))
    elif second.semistable:
        if a:
            N.append((cls_at((1, 0, -mu1)), a))
        P = cls_at((0, b, c + a * mu1))
    elif first.semistable:
        if b:
            N.append((cls_at((0, 1, -mu2)), b))
        P = cls_at((a, 0, c + b * mu2))
    else:
        if a:
            N.append((cls_at((1, 0, -mu1)), a))
        if b:
            N.append((cls_at((0, 1, -mu2)), b))
        P = cls_at((0, 0, c_top))
    if not nef_fibre_product(first, second).contains(_class_coords(P)):
        raise InternalError("terminal nef part escaped the nef cone")
    return P, tuple(N)


def decompose(first, second, cls, order="first_then_second"):
    """Weak Zariski decomposition of a pseudoeffective class, certified.

    Each factor is reduced along its ladder until terminal-shaped (first
    factor first by default; the terminal data is order-independent because
    the transport is the identity), then the terminal split is taken. The
    certificate is verified before being returned.
    """
    if order not in ("first_then_second", "second_then_first"):
        raise InputError(f"unknown reduction order {order!r}")
    coords = _as_coords(cls)
    psef = psef_fibre_product(first, second)
    _require_psef(coords, psef)
    chain = [first, second]
    steps = []
    sequence = (0, 1) if order == "first_then_second" else (1, 0)
    for idx in sequence:
        factor = "first" if idx == 0 else "second"
        while True:
            got = reduce_step(chain[idx], coords, factor=factor, psef_cone=psef)
            if got is None:
                break
            step, coords = got
            steps.append(step)
            chain[idx] = step.to_bundle
    # peeling minimal-slope quotients never touches the deepest piece, so
    # the mu_max closed form must be stable along the whole chain
    if psef_fibre_product(chain[0], chain[1]) != psef:
        raise InternalError("pseudoeffective cone drifted along the chain")
    P, N = terminal_decompose(chain[0], chain[1], coords)
    cert = ZariskiCertificate(
        input_coords=_as_coords(cls),
        steps=tuple(steps),
        terminal_case=_terminal_label(chain[0], chain[1]),
        P=P,
        N=N,
        verified=False,
    )
    result = verify(cert, first, second)
    if not result:
        raise InternalError(
            "decomposition failed its own verification: " + "; ".join(result.reasons)
        )
    return replace(cert, verified=True)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reasons: tuple

    def __bool__(self):
        return self.ok


def verify(cert, first, second):
    """Re-check a certificate from scratch against the two bundles.

    Replays the reduction chain (corank hypothesis, center ranks, reduced
    bundles, multiplicities equal to the transported coordinates), then
    checks multiplicities and N coefficients for sign, P for nef membership,
    N generators against the terminal effective generators, and the sum
    P + N against the transported input. Never raises; returns a
    VerifyResult that is falsy when any reason was collected.
    """
    reasons = []
    if first.rank < 2 or second.rank < 2:
        return VerifyResult(False, ("factors must have rank at least 2",))
    chain = [first, second]
    for i, step in enumerate(cert.steps):
        label = f"step {i + 1}"
        idx = 0 if step.factor == "first" else 1
        current = chain[idx]
        if not _same_bundle(step.from_bundle, current):
            reasons.append(f"{label}: from-bundle does not match the chain")
            return VerifyResult(False, tuple(reasons))
        if current.semistable:
            reasons.append(f"{label}: factor is already semistable")
            return VerifyResult(False, tuple(reasons))
        if step.blowup_center_rank != current.quotients[0][0]:
            reasons.append(
                f"{label}: center rank is not the minimal-slope quotient rank"
            )
        reduced = bn.sub_bundle_after_step(current, 1)
        if not _same_bundle(step.to_bundle, reduced):
            reasons.append(f"{label}: reduced bundle mismatch")
            return VerifyResult(False, tuple(reasons))
        expected = cert.input_coords[idx]
        if step.exceptional_multiplicity != expected:
            coordinate = "xi" if idx == 0 else "zeta"
            reasons.append(
                f"{label}: multiplicity differs from the {coordinate} coefficient"
            )
        if step.exceptional_multiplicity < 0:
            reasons.append("negative exceptional multiplicity")
        chain[idx] = reduced
    if chain[0].rank < 2 or chain[1].rank < 2:
        reasons.append("chain reduced a factor below rank 2")
        return VerifyResult(False, tuple(reasons))
    if not (_terminal_shaped(chain[0]) and _terminal_shaped(chain[1])):
        reasons.append("chain stops before a terminal shape")
    expected_case = _terminal_label(chain[0], chain[1])
    if cert.terminal_case != expected_case:
        reasons.append(f"terminal case label should be {expected_case!r}")
    try:
        p_coords = _class_coords(cert.P)
        n_parts = [(_class_coords(gen), coeff) for gen, coeff in cert.N]
    except (InputError, InternalError) as err:
        reasons.append(str(err))
        return VerifyResult(False, tuple(reasons))
    nef = nef_fibre_product(chain[0], chain[1])
    psef = psef_fibre_product(chain[0], chain[1])
    effective = set(psef.generators)
    if not nef.contains(p_coords):
        reasons.append("P not nef")
    total = list(p_coords)
    for gen_coords, coeff in n_parts:
        if coeff < 0:
            reasons.append(f"negative N coefficient {format_rational(coeff)}")
        if any(gen_coords):
            if tuple(primitive(gen_coords)) not in effective:
                reasons.append("N generator is not a terminal effective generator")
        else:
            reasons.append("zero N generator")
        total = [t + coeff * g for t, g in zip(total, gen_coords)]
    if tuple(total) != tuple(coordinate_transport(cert.input_coords)):
        reasons.append("P + N does not reproduce the input class")
    return VerifyResult(not reasons, tuple(reasons))


def extremal_ray_decompositions(first, second):
    """Decompose every extremal ray of the pseudoeffective cone.

    Each ray comes back with its certificate: nef rays split as P = ray
    with empty N, the others as P = 0 with N = ray.
    """
    cone = psef_fibre_product(first, second)
    return [(ray, decompose(first, second, ray)) for ray in cone.extremal_rays()]
