"""Graded numerical intersection rings with rewrite-rule normal forms.

A ring is specified by generator names with integer codimensions, a finite
ordered list of rewrite rules (monomial -> same-degree linear combination),
and one top-degree monomial whose evaluation is normalized to 1. Monomials
are exponent tuples aligned with the generator list.

Every rule strictly decreases the lexicographic order on exponent tuples
(generators are listed fibre class first, base pullbacks next, point-fibre
class last), so reduction terminates no matter the order rules are applied
in; confluence on the published monomial sets is asserted by test.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalError
from .rationals import format_rational, parse_rational


def format_monomial(gens, mono):
    parts = []
    for name, exp in zip(gens, mono):
        if exp == 1:
            parts.append(name)
        elif exp > 1:
            parts.append(f"{name}^{exp}")
    return "*".join(parts) if parts else "1"


def parse_monomial(gens, text):
    exps = [0] * len(gens)
    text = text.strip()
    if text == "1":
        return tuple(exps)
    for factor in text.split("*"):
        name, _, power = factor.strip().partition("^")
        if name not in gens:
            raise InputError(f"unknown generator {name!r}; ring has {', '.join(gens)}")
        if power:
            try:
                exp = int(power)
            except ValueError:
                raise InputError(f"bad exponent in {factor!r}") from None
            if exp < 1:
                raise InputError(f"bad exponent in {factor!r}")
        else:
            exp = 1
        exps[gens.index(name)] += exp
    return tuple(exps)


@dataclass(frozen=True)
class NumClass:
    """A homogeneous class: exact rational coefficients over monomials.

    ``coeffs`` maps exponent tuples to nonzero Fractions; zero classes have
    an empty map but keep their degree. Instances are value objects; the
    coefficient map is never mutated after construction.
    """

    gens: tuple
    degree: int
    coeffs: dict

    @property
    def is_zero(self):
        return not self.coeffs

    def terms(self):
        # descending lex = published display order
        return sorted(self.coeffs.items(), key=lambda kv: kv[0], reverse=True)

    def coordinates(self, basis):
        vec = []
        seen = set(self.coeffs)
        for mono in basis:
            vec.append(self.coeffs.get(mono, Fraction(0)))
            seen.discard(mono)
        if seen:
            extra = ", ".join(format_monomial(self.gens, m) for m in sorted(seen))
            raise InternalError(f"class has terms outside the basis: {extra}")
        return tuple(vec)

    def to_json(self):
        return {
            "degree": self.degree,
            "terms": [
                {
                    "monomial": format_monomial(self.gens, mono),
                    "coeff": format_rational(coeff),
                }
                for mono, coeff in self.terms()
            ],
        }

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for mono, coeff in self.terms():
            name = format_monomial(self.gens, mono)
            if name == "1":
                parts.append(format_rational(coeff))
            elif coeff == 1:
                parts.append(name)
            elif coeff == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{format_rational(coeff)}*{name}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


def _clean(poly):
    return {m: c for m, c in poly.items() if c != 0}


def _padd(a, b):
    out = dict(a)
    for mono, coeff in b.items():
        out[mono] = out.get(mono, Fraction(0)) + coeff
    return _clean(out)


def _pscale(a, s):
    s = Fraction(s)
    return _clean({m: c * s for m, c in a.items()})


def _pmul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            mono = tuple(x + y for x, y in zip(m1, m2))
            out[mono] = out.get(mono, Fraction(0)) + c1 * c2
    return _clean(out)


def _ppow(a, n, width):
    out = {(0,) * width: Fraction(1)}
    for _ in range(n):
        out = _pmul(out, a)
    return out


class IntersectionRing:
    """Numerical ring of a preset space; all queries are pure and exact."""

    def __init__(self, preset, gens, gen_degrees, dim, rules, top_monomial):
        self.preset = preset
        self.gens = tuple(gens)
        self.gen_degrees = tuple(int(d) for d in gen_degrees)
        self.dim = int(dim)
        self.top_monomial = tuple(top_monomial)
        self.rules = tuple(
            (tuple(lhs), {tuple(m): Fraction(c) for m, c in rhs.items() if c != 0})
            for lhs, rhs in rules
        )
        for lhs, rhs in self.rules:
            want = self.monomial_degree(lhs)
            if any(self.monomial_degree(m) != want for m in rhs):
                raise InternalError("rewrite rule does not preserve degree")
        if self.monomial_degree(self.top_monomial) != self.dim:
            raise InternalError("top monomial degree differs from the dimension")
        if self._matching_rules(self.top_monomial):
            raise InternalError("top monomial is reducible")
        self._basis_cache = {}

    def monomial_degree(self, mono):
        return sum(e * d for e, d in zip(mono, self.gen_degrees))

    def _matching_rules(self, mono):
        return [
            i
            for i, (lhs, _) in enumerate(self.rules)
            if all(e >= l for e, l in zip(mono, lhs))
        ]

    def _reduce(self, poly, pick=None):
        """Rewrite until irreducible. ``pick(mono, rule_indices)`` overrides
        the deterministic first-listed-rule choice; used to test confluence."""
        result = {}
        stack = [(m, c) for m, c in poly.items() if c != 0]
        guard = 0
        while stack:
            guard += 1
            if guard > 1_000_000:
                raise InternalError("rewrite did not terminate")
            mono, coeff = stack.pop()
            hits = self._matching_rules(mono)
            if not hits:
                result[mono] = result.get(mono, Fraction(0)) + coeff
                continue
            index = hits[0] if pick is None else pick(mono, hits)
            lhs, rhs = self.rules[index]
            rest = tuple(e - l for e, l in zip(mono, lhs))
            for rmono, rcoeff in rhs.items():
                stack.append((tuple(a + b for a, b in zip(rest, rmono)), coeff * rcoeff))
        return _clean(result)

    def _as_poly(self, expr):
        if isinstance(expr, NumClass):
            if expr.gens != self.gens:
                raise InputError("class belongs to a ring with different generators")
            return dict(expr.coeffs), expr.degree
        if isinstance(expr, str):
            return parse_expression(self, expr), None
        if isinstance(expr, dict):
            width = len(self.gens)
            poly = {}
            for mono, coeff in expr.items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != width or any(e < 0 for e in mono):
                    raise InputError(f"bad monomial exponents {mono}")
                coeff = Fraction(coeff)
                if coeff:
                    poly[mono] = poly.get(mono, Fraction(0)) + coeff
            return poly, None
        raise InputError(f"cannot interpret {type(expr).__name__} as a ring element")

    def normal_form(self, expr, degree=None, _pick=None):
        """Reduce to the unique irreducible representative, as a NumClass.

        The expression must be homogeneous as written (rules preserve degree,
        so distinct degrees could never recombine); a mixed input raises.
        """
        poly, known = self._as_poly(expr)
        degrees = {self.monomial_degree(m) for m in poly}
        if len(degrees) > 1:
            raise InputError(
                "degree mismatch: expression mixes degrees "
                + ", ".join(str(d) for d in sorted(degrees))
            )
        if known is None:
            known = degrees.pop() if degrees else (degree if degree is not None else 0)
        reduced = self._reduce(poly, pick=_pick)
        return NumClass(self.gens, known, reduced)

    def degree_eval(self, expr):
        """Evaluate a top-degree class against the normalized top monomial."""
        cls = self.normal_form(expr)
        if cls.is_zero:
            return Fraction(0)
        if cls.degree != self.dim:
            raise InputError(
                f"degree mismatch: degree {cls.degree} class in a "
                f"{self.dim}-dimensional ring"
            )
        value = Fraction(0)
        for mono, coeff in cls.coeffs.items():
            if mono == self.top_monomial:
                value = coeff
            else:
                # every preset has a one-element top-degree basis
                raise InternalError(
                    "irreducible top-degree monomial besides the top monomial: "
                    + format_monomial(self.gens, mono)
                )
        return value

    def basis(self, k):
        """Irreducible monomials of degree k, descending lex. Frozen order:
        this list defines coordinates and serialization for degree k."""
        if not 0 <= k <= self.dim:
            raise InputError(f"degree {k} out of range 0..{self.dim}")
        if k not in self._basis_cache:
            found = []

            def walk(prefix, remaining):
                idx = len(prefix)
                if idx == len(self.gens):
                    if remaining == 0:
                        mono = tuple(prefix)
                        if not self._matching_rules(mono):
                            found.append(mono)
                    return
                step = self.gen_degrees[idx]
                for e in range(remaining // step, -1, -1):
                    walk(prefix + [e], remaining - e * step)

            walk([], k)
            # the descending loop above already emits descending lex order
            self._basis_cache[k] = tuple(found)
        return self._basis_cache[k]

    def basis_labels(self, k):
        return tuple(format_monomial(self.gens, m) for m in self.basis(k))

    def class_from_coordinates(self, k, coords):
        basis = self.basis(k)
        if len(coords) != len(basis):
            raise InputError(
                f"expected {len(basis)} coordinates for degree {k}, got {len(coords)}"
            )
        poly = {m: Fraction(c) for m, c in zip(basis, coords) if Fraction(c) != 0}
        return NumClass(self.gens, k, poly)

    def class_from_json(self, obj):
        try:
            degree = int(obj["degree"])
            terms = obj["terms"]
        except (KeyError, TypeError, ValueError):
            raise InputError("class record needs degree and terms") from None
        basis = set(self.basis(degree))
        poly = {}
        for term in terms:
            mono = parse_monomial(self.gens, term["monomial"])
            if mono not in basis:
                raise InputError(
                    f"monomial {term['monomial']!r} is not in the degree-{degree} basis"
                )
            coeff = parse_rational(term["coeff"])
            if coeff:
                poly[mono] = poly.get(mono, Fraction(0)) + coeff
        return NumClass(self.gens, degree, _clean(poly))


# ---------------------------------------------------------------------------
# expression parsing


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] == "/" and j + 1 < len(text) and text[j + 1].isdigit():
                j += 1
                while j < len(text) and text[j].isdigit():
                    j += 1
            tokens.append(text[i:j])
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise InputError(f"unexpected character {ch!r} in expression")
    return tokens


def parse_expression(ring, text):
    """Parse '2*xi^3*zeta - 1/2*F' style input into a monomial polynomial.

    Grammar: sums and differences of terms; a term is '*'-joined factors;
    a factor is a rational literal, a generator, or a parenthesized
    expression, optionally raised to a nonnegative integer power.
    """
    tokens = _tokenize(text)
    pos = 0
    width = len(ring.gens)
    one = {(0,) * width: Fraction(1)}

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def parse_sum():
        sign = Fraction(1)
        if peek() in ("+", "-"):
            sign = Fraction(-1) if take() == "-" else Fraction(1)
        total = _pscale(parse_term(), sign)
        while peek() in ("+", "-"):
            sign = Fraction(-1) if take() == "-" else Fraction(1)
            total = _padd(total, _pscale(parse_term(), sign))
        return total

    def parse_term():
        poly = parse_factor()
        while peek() == "*":
            take()
            poly = _pmul(poly, parse_factor())
        return poly

    def parse_factor():
        base = parse_atom()
        if peek() == "^":
            take()
            tok = take()
            if tok is None or not tok.isdigit():
                raise InputError("exponent must be a nonnegative integer")
            return _ppow(base, int(tok), width)
        return base

    def parse_atom():
        tok = take()
        if tok is None:
            raise InputError("expression ended unexpectedly")
        if tok == "(":
            inner = parse_sum()
            if take() != ")":
                raise InputError("missing closing parenthesis")
            return inner
        if tok[0].isdigit():
            return _pscale(one, parse_rational(tok))
        if tok in ring.gens:
            mono = tuple(1 if g == tok else 0 for g in ring.gens)
            return {mono: Fraction(1)}
        raise InputError(f"unknown generator {tok!r}; ring has {', '.join(ring.gens)}")

    poly = parse_sum()
    if pos != len(tokens):
        raise InputError(f"unexpected token {tokens[pos]!r}")
    return poly


# ---------------------------------------------------------------------------
# space presets


PROJ_BUNDLE_OVER_CURVE = "proj_bundle_over_curve"
FIBRE_PRODUCT_OVER_CURVE = "fibre_product_over_curve"
PROJ_BUNDLE_OVER_SURFACE_RHO1 = "proj_bundle_over_surface_rho1"
PROJ_BUNDLE_OVER_RULED_SURFACE = "proj_bundle_over_ruled_surface"

_SURFACE_KINDS = (PROJ_BUNDLE_OVER_SURFACE_RHO1, PROJ_BUNDLE_OVER_RULED_SURFACE)


@dataclass(frozen=True)
class SpacePreset:
    """One of the supported total spaces, pinned down by numerical data.

    Use the classmethod constructors; they validate the preset contracts
    (ranks at least 2, positive L2, and 2r*c2 = (r-1)*c1^2 for surface
    presets, the condition under which the lambda-basis presentation holds).
    """

    kind: str
    rank: int = None
    degree: int = None
    rank2: int = None
    degree2: int = None
    L2: Fraction = None
    e: Fraction = None
    c2: Fraction = None
    mu: Fraction = None
    c1: tuple = None

    @classmethod
    def curve(cls, rank, degree):
        if rank < 2:
            raise InputError("invalid preset: rank must be at least 2")
        return cls(kind=PROJ_BUNDLE_OVER_CURVE, rank=int(rank), degree=int(degree))

    @classmethod
    def fibre_product(cls, m, n, d, d2):
        if m < 2 or n < 2:
            raise InputError("invalid preset: both ranks must be at least 2")
        return cls(
            kind=FIBRE_PRODUCT_OVER_CURVE,
            rank=int(m),
            degree=int(d),
            rank2=int(n),
            degree2=int(d2),
        )

    @classmethod
    def surface_rho1(cls, rank, L2, e, c2):
        L2, e, c2 = Fraction(L2), Fraction(e), Fraction(c2)
        if rank < 2:
            raise InputError("invalid preset: rank must be at least 2")
        if L2 <= 0:
            raise InputError("invalid preset: L2 must be positive")
        preset = cls(kind=PROJ_BUNDLE_OVER_SURFACE_RHO1, rank=int(rank), L2=L2, e=e, c2=c2)
        _require_c2_end_zero(preset)
        return preset

    @classmethod
    def ruled_surface(cls, rank, mu, c1, c2):
        mu, c2 = Fraction(mu), Fraction(c2)
        c1 = tuple(Fraction(x) for x in c1)
        if rank < 2:
            raise InputError("invalid preset: rank must be at least 2")
        if len(c1) != 2:
            raise InputError("invalid preset: c1 needs coordinates in (eta, f)")
        preset = cls(kind=PROJ_BUNDLE_OVER_RULED_SURFACE, rank=int(rank), mu=mu, c1=c1, c2=c2)
        _require_c2_end_zero(preset)
        return preset

    @property
    def is_surface(self):
        return self.kind in _SURFACE_KINDS

    @property
    def base_gram(self):
        """Intersection matrix of the base surface's published divisor basis."""
        if self.kind == PROJ_BUNDLE_OVER_SURFACE_RHO1:
            return ((self.L2,),)
        if self.kind == PROJ_BUNDLE_OVER_RULED_SURFACE:
            return ((2 * self.mu, Fraction(1)), (Fraction(1), Fraction(0)))
        raise InputError(f"{self.kind} has no surface base")

    @property
    def c1_coords(self):
        if self.kind == PROJ_BUNDLE_OVER_SURFACE_RHO1:
            return (self.e,)
        if self.kind == PROJ_BUNDLE_OVER_RULED_SURFACE:
            return self.c1
        raise InputError(f"{self.kind} has no surface base")

    @property
    def c1_squared(self):
        gram = self.base_gram
        coords = self.c1_coords
        return sum(
            coords[i] * gram[i][j] * coords[j]
            for i in range(len(coords))
            for j in range(len(coords))
        )

    @property
    def c2_end(self):
        return 2 * self.rank * self.c2 - (self.rank - 1) * self.c1_squared

    def to_json(self):
        out = {"kind": self.kind}
        if self.kind == PROJ_BUNDLE_OVER_CURVE:
            out.update({"rank": self.rank, "degree": self.degree})
        elif self.kind == FIBRE_PRODUCT_OVER_CURVE:
            out.update(
                {
                    "rank": self.rank,
                    "degree": self.degree,
                    "rank2": self.rank2,
                    "degree2": self.degree2,
                }
            )
        elif self.kind == PROJ_BUNDLE_OVER_SURFACE_RHO1:
            out.update(
                {
                    "rank": self.rank,
                    "L2": format_rational(self.L2),
                    "e": format_rational(self.e),
                    "c2": format_rational(self.c2),
                }
            )
        else:
            out.update(
                {
                    "rank": self.rank,
                    "mu": format_rational(self.mu),
                    "c1": [format_rational(x) for x in self.c1],
                    "c2": format_rational(self.c2),
                }
            )
        return out

    @classmethod
    def from_json(cls, obj):
        kind = obj.get("kind")
        if kind == PROJ_BUNDLE_OVER_CURVE:
            return cls.curve(int(obj["rank"]), int(obj["degree"]))
        if kind == FIBRE_PRODUCT_OVER_CURVE:
            return cls.fibre_product(
                int(obj["rank"]), int(obj["rank2"]), int(obj["degree"]), int(obj["degree2"])
            )
        if kind == PROJ_BUNDLE_OVER_SURFACE_RHO1:
            return cls.surface_rho1(
                int(obj["rank"]),
                parse_rational(obj["L2"]),
                parse_rational(obj["e"]),
                parse_rational(obj["c2"]),
            )
        if kind == PROJ_BUNDLE_OVER_RULED_SURFACE:
            return cls.ruled_surface(
                int(obj["rank"]),
                parse_rational(obj["mu"]),
                tuple(parse_rational(x) for x in obj["c1"]),
                parse_rational(obj["c2"]),
            )
        raise InputError(f"unknown preset kind {kind!r}")


def _require_c2_end_zero(preset):
    if preset.c2_end != 0:
        raise InputError(
            "invalid preset: 2r*c2 - (r-1)*c1^2 must vanish, got "
            + format_rational(preset.c2_end)
        )


# ---------------------------------------------------------------------------
# ring builders


def build_curve_bundle_ring(rank, degree):
    """Ring of a projectivized bundle over a curve, basis powers of (xi, f)."""
    preset = SpacePreset.curve(rank, degree)
    r, d = preset.rank, preset.degree
    gens = ("xi", "f")
    rules = [
        ((r, 0), {(r - 1, 1): Fraction(d)}),
        ((0, 2), {}),
    ]
    return IntersectionRing(preset, gens, (1, 1), r, rules, (r - 1, 1))


def build_fibre_product_ring(m, n, d, d2):
    """Ring of a fibre product of two projectivized bundles over a curve.

    Generators (xi, zeta, F), all codimension 1; the two bundle relations
    rewrite xi^m and zeta^n, and the fibre class squares to zero. The top
    monomial xi^(m-1)*zeta^(n-1)*F (a point of the product fibre) maps to 1.
    """
    preset = SpacePreset.fibre_product(m, n, d, d2)
    m, n, d, d2 = preset.rank, preset.rank2, preset.degree, preset.degree2
    gens = ("xi", "zeta", "F")
    rules = [
        ((m, 0, 0), {(m - 1, 0, 1): Fraction(d)}),
        ((0, n, 0), {(0, n - 1, 1): Fraction(d2)}),
        ((0, 0, 2), {}),
    ]
    return IntersectionRing(preset, gens, (1, 1, 1), m + n - 1, rules, (m - 1, n - 1, 1))


def _surface_xi_ring(preset, rank, base_names, gram, c1_coords, c2):
    """Low-level builder for the xi-basis ring over a surface.

    No preset validation happens here: the Chern data may be arbitrary
    rationals, which the lambda-vanishing check depends on.
    """
    nb = len(base_names)
    gens = ("xi",) + tuple(base_names) + ("F",)
    width = len(gens)
    degrees = (1,) + (1,) * nb + (2,)

    def unit(i, e=1):
        mono = [0] * width
        mono[i] = e
        return tuple(mono)

    F = width - 1
    rules = []
    # bundle relation: xi^r = xi^(r-1)*pullback(c1) - c2*xi^(r-2)*F
    rhs = {}
    for j, cj in enumerate(c1_coords):
        if cj:
            mono = [0] * width
            mono[0] = rank - 1
            mono[1 + j] = 1
            rhs[tuple(mono)] = Fraction(cj)
    if c2:
        mono = [0] * width
        mono[0] = rank - 2
        mono[F] = 1
        rhs[tuple(mono)] = rhs.get(tuple(mono), Fraction(0)) - Fraction(c2)
    rules.append((unit(0, rank), rhs))
    # base surface products land on the point-fibre class
    for i in range(nb):
        for j in range(i, nb):
            mono = [0] * width
            mono[1 + i] += 1
            mono[1 + j] += 1
            rules.append((tuple(mono), {unit(F): Fraction(gram[i][j])}))
    for i in range(nb):
        mono = [0] * width
        mono[1 + i] = 1
        mono[F] = 1
        rules.append((tuple(mono), {}))
    rules.append((unit(F, 2), {}))
    top = [0] * width
    top[0] = rank - 1
    top[F] = 1
    return IntersectionRing(preset, gens, degrees, rank + 1, rules, tuple(top))


def build_xi_ring_surface(preset):
    """Xi-basis presentation over a surface; the oracle for the lambda basis."""
    if not preset.is_surface:
        raise InputError("invalid preset: expected a surface-base preset")
    if preset.kind == PROJ_BUNDLE_OVER_SURFACE_RHO1:
        names = ("piL",)
    else:
        names = ("piEta", "piF")
    return _surface_xi_ring(
        preset, preset.rank, names, preset.base_gram, preset.c1_coords, preset.c2
    )


def build_lambda_ring_surface(preset):
    """Lambda-basis ring over a surface; valid only when c2(End) vanishes.

    Generators (lambda, base pullbacks, F) with lambda^rank = 0, base products
    landing on F through the base intersection form, and lambda^(rank-1)*F the
    top monomial.
    """
    if not preset.is_surface:
        raise InputError("invalid preset: expected a surface-base preset")
    _require_c2_end_zero(preset)
    r = preset.rank
    if preset.kind == PROJ_BUNDLE_OVER_SURFACE_RHO1:
        L2 = preset.L2
        gens = ("lambda", "piL", "F")
        rules = [
            ((r, 0, 0), {}),
            ((0, 2, 0), {(0, 0, 1): L2}),
            ((0, 1, 1), {}),
            ((0, 0, 2), {}),
        ]
        return IntersectionRing(preset, gens, (1, 1, 2), r + 1, rules, (r - 1, 0, 1))
    mu = preset.mu
    gens = ("lambda", "piEta", "piF", "F")
    rules = [
        ((r, 0, 0, 0), {}),
        ((0, 2, 0, 0), {(0, 0, 0, 1): 2 * mu}),
        ((0, 1, 1, 0), {(0, 0, 0, 1): Fraction(1)}),
        ((0, 0, 2, 0), {}),
        ((0, 1, 0, 1), {}),
        ((0, 0, 1, 1), {}),
        ((0, 0, 0, 2), {}),
    ]
    return IntersectionRing(preset, gens, (1, 1, 1, 2), r + 1, rules, (r - 1, 0, 0, 1))


def verify_lambda_vanishing(rank, c1_squared, c2):
    """Symbolically expand (xi - pullback(c1)/rank)^rank and test for zero.

    Works over a synthetic base class A with A^2 = c1_squared (any rational,
    positivity not required) and c1 = A. The expansion vanishes exactly when
    2*rank*c2 = (rank-1)*c1_squared.
    """
    rank = int(rank)
    if rank < 2:
        raise InputError("rank must be at least 2")
    c1_squared, c2 = Fraction(c1_squared), Fraction(c2)
    ring = _surface_xi_ring(None, rank, ("piA",), ((c1_squared,),), (Fraction(1),), c2)
    lam = {(1, 0, 0): Fraction(1), (0, 1, 0): Fraction(-1, rank)}
    power = _ppow(lam, rank, 3)
    return ring.normal_form(power, degree=rank).is_zero
