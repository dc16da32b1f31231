"""Command-line front end.

A workspace JSON file names the base, the bundles, and the selected total
space; subcommands then evaluate ring expressions, print cones, test
membership, decompose classes, check k-homogeneity, or run the built-in
selftest. Exit codes: 0 success, 1 negative answer to a yes/no question,
2 invalid input, 3 internal invariant violation.
"""

import argparse
import io
import json
import sys
from fractions import Fraction

from .bundles import HNCurveBundle, SurfaceBundleData
from .catalog import (
    fibre_product_cones,
    k_homogeneous_check,
    miyaoka_cones,
    surface_cone_report,
)
from .errors import InputError, InternalError
from .rationals import format_rational, parse_rational
from .ring import (
    FIBRE_PRODUCT_OVER_CURVE,
    PROJ_BUNDLE_OVER_CURVE,
    SpacePreset,
    build_curve_bundle_ring,
    build_fibre_product_ring,
    build_lambda_ring_surface,
)
from .selftest import CHECKS, run_check
from .zariski import decompose


class WorkspaceSpec:
    """Validated workspace: base kind, named bundles, selected space.

    ``space`` is ("proj_bundle", bundle) or ("fibre_product", (first,
    second)) with resolved bundle objects; ``preset`` is the matching ring
    preset. ``classes`` maps optional names to coordinate tuples.
    """

    def __init__(self, base_kind, bundles, space, preset, classes):
        self.base_kind = base_kind
        self.bundles = dict(bundles)
        self.space = space
        self.preset = preset
        self.classes = dict(classes)


def _fail(path, message):
    raise InputError(f"{path}: {message}")


def _rescope(path, exc):
    return InputError(f"{path}: {exc}", reasons=exc.reasons)


def parse_workspace(data):
    """Parse and validate workspace JSON given as bytes or str."""
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError:
            raise InputError("workspace: file is not UTF-8") from None
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as err:
        raise InputError(f"workspace: not valid JSON ({err})") from None
    if not isinstance(obj, dict):
        _fail("workspace", "top level must be an object")

    base = obj.get("base")
    if not isinstance(base, dict):
        _fail("base", "missing or not an object")
    base_kind = base.get("kind")
    if base_kind not in ("curve", "surface_rho1", "ruled_surface"):
        _fail("base.kind", f"unknown base kind {base_kind!r}")
    if base_kind == "surface_rho1":
        try:
            L2 = parse_rational(base["L2"])
        except KeyError:
            _fail("base.L2", "missing")
        except InputError as err:
            raise _rescope("base.L2", err) from None
        if L2 <= 0:
            _fail("base.L2", "must be positive")
        gram = ((L2,),)
    elif base_kind == "ruled_surface":
        try:
            mu = parse_rational(base["mu"])
        except KeyError:
            _fail("base.mu", "missing")
        except InputError as err:
            raise _rescope("base.mu", err) from None
        one = Fraction(1)
        gram = ((2 * mu, one), (one, Fraction(0)))

    records = obj.get("bundles")
    if not isinstance(records, list) or not records:
        _fail("bundles", "missing or empty list")
    bundles = {}
    for i, record in enumerate(records):
        path = f"bundles[{i}]"
        if not isinstance(record, dict):
            _fail(path, "must be an object")
        name = record.get("name")
        if not isinstance(name, str) or not name:
            _fail(f"{path}.name", "missing bundle name")
        if name in bundles:
            _fail(f"{path}.name", f"duplicate bundle name {name!r}")
        try:
            if base_kind == "curve":
                bundles[name] = HNCurveBundle.from_json(record)
            else:
                want = 1 if base_kind == "surface_rho1" else 2
                if len(record.get("c1", ())) != want:
                    _fail(f"{path}.c1", f"needs {want} coordinate(s) for this base")
                bundles[name] = SurfaceBundleData.from_json(record, gram)
        except InputError as err:
            raise _rescope(path, err) from None

    space = obj.get("space")
    if not isinstance(space, dict):
        _fail("space", "missing or not an object")
    space_kind = space.get("kind")

    def resolve(path, name):
        if not isinstance(name, str) or name not in bundles:
            _fail(path, f"unknown bundle {name!r}")
        return bundles[name]

    if space_kind == "proj_bundle":
        bundle = resolve("space.bundle", space.get("bundle"))
        try:
            if base_kind == "curve":
                preset = SpacePreset.curve(bundle.rank, bundle.degree)
            elif not bundle.semistable:
                _fail("space.bundle", "surface presets need a semistable bundle")
            elif base_kind == "surface_rho1":
                preset = SpacePreset.surface_rho1(bundle.rank, L2, bundle.c1[0], bundle.c2)
            else:
                preset = SpacePreset.ruled_surface(bundle.rank, mu, bundle.c1, bundle.c2)
        except InputError as err:
            raise _rescope("space", err) from None
        selected = ("proj_bundle", bundle)
    elif space_kind == "fibre_product":
        if base_kind != "curve":
            _fail("space", "fibre products are supported over curve bases only")
        factors = space.get("factors")
        if not isinstance(factors, list) or len(factors) != 2:
            _fail("space.factors", "needs exactly two bundle names")
        first = resolve("space.factors[0]", factors[0])
        second = resolve("space.factors[1]", factors[1])
        try:
            preset = SpacePreset.fibre_product(
                first.rank, second.rank, first.degree, second.degree
            )
        except InputError as err:
            raise _rescope("space", err) from None
        selected = ("fibre_product", (first, second))
    else:
        _fail("space.kind", f"unknown space kind {space_kind!r}")

    classes = {}
    payload = obj.get("classes", {})
    if not isinstance(payload, dict):
        _fail("classes", "must map names to coordinate lists")
    for name, coords in payload.items():
        path = f"classes[{name!r}]"
        if not isinstance(coords, list):
            _fail(path, "must be a list of rationals")
        try:
            classes[name] = tuple(parse_rational(x) for x in coords)
        except InputError as err:
            raise _rescope(path, err) from None

    return WorkspaceSpec(base_kind, bundles, selected, preset, classes)


# ---------------------------------------------------------------------------
# command plumbing


def _split_flags(tokens, allowed):
    positional = []
    flags = {}
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if token.startswith("--"):
            name, eq, value = token[2:].partition("=")
            if name not in allowed:
                raise InputError(f"unknown flag --{name}")
            if not eq:
                i += 1
                if i >= len(tokens):
                    raise InputError(f"flag --{name} needs a value")
                value = tokens[i]
            flags[name] = value
        else:
            positional.append(token)
        i += 1
    return positional, flags


def _parse_k(flags, default=1):
    raw = flags.get("k")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"flag --k needs an integer, got {raw!r}") from None


def _space_ring(spec):
    preset = spec.preset
    if preset.kind == PROJ_BUNDLE_OVER_CURVE:
        return build_curve_bundle_ring(preset.rank, preset.degree)
    if preset.kind == FIBRE_PRODUCT_OVER_CURVE:
        return build_fibre_product_ring(
            preset.rank, preset.rank2, preset.degree, preset.degree2
        )
    return build_lambda_ring_surface(preset)


def _cone_report(spec, k):
    preset = spec.preset
    if preset.kind == PROJ_BUNDLE_OVER_CURVE:
        if k != 1:
            raise InputError("curve spaces only carry k = 1 divisor cones")
        return miyaoka_cones(spec.space[1])
    if preset.kind == FIBRE_PRODUCT_OVER_CURVE:
        if k != 1:
            raise InputError("fibre product cones are computed for k = 1 only")
        return fibre_product_cones(*spec.space[1])
    return surface_cone_report(spec.preset, k)


def _parse_class(spec, tokens, expected):
    if len(tokens) == 1 and tokens[0] in spec.classes:
        coords = spec.classes[tokens[0]]
    else:
        text = ",".join(tokens)
        parts = [p.strip() for p in text.split(",") if p.strip()]
        coords = tuple(parse_rational(p) for p in parts)
    if len(coords) != expected:
        raise InputError(
            f"class needs {expected} coordinates in the published basis, "
            f"got {len(coords)}"
        )
    return coords


def _format_vector(vec):
    return "(" + ", ".join(format_rational(x) for x in vec) + ")"


def _inequality_text(kind, normal, labels):
    parts = []
    for coef, label in zip(normal, labels):
        if coef == 0:
            continue
        if coef == 1:
            parts.append(f"[{label}]")
        elif coef == -1:
            parts.append(f"-[{label}]")
        else:
            parts.append(f"{format_rational(coef)}*[{label}]")
    lhs = " + ".join(parts).replace("+ -", "- ") if parts else "0"
    return f"{lhs} = 0" if kind == "span" else f"{lhs} >= 0"


def _cmd_ring(spec, rest, json_output):
    if not rest or rest[0] != "eval" or len(rest) < 2:
        raise InputError("usage: ring eval <expression>")
    ring = _space_ring(spec)
    cls = ring.normal_form(" ".join(rest[1:]))
    if json_output:
        payload = cls.to_json()
        payload["text"] = str(cls)
        return 0, _dump(payload)
    return 0, f"degree {cls.degree}: {cls}"


def _cmd_cone(spec, rest, json_output):
    positional, flags = _split_flags(rest, {"k"})
    if len(positional) != 1 or positional[0] not in ("nef", "psef"):
        raise InputError("usage: cone nef|psef [--k K]")
    which = positional[0]
    report = _cone_report(spec, _parse_k(flags))
    cone = report.nef if which == "nef" else report.psef
    if json_output:
        payload = cone.to_json()
        payload.update(
            {
                "cone": which,
                "k": report.k,
                "basis": list(report.basis),
                "equal": report.equal,
            }
        )
        return 0, _dump(payload)
    lines = [
        f"codimension: {report.k}",
        "basis: " + ", ".join(report.basis),
        f"{which} generators:",
    ]
    lines += ["  " + _format_vector(g) for g in cone.generators]
    lines.append(f"nef = psef: {'yes' if report.equal else 'no'}")
    return 0, "\n".join(lines)


def _cmd_member(spec, rest, json_output):
    positional, flags = _split_flags(rest, {"k", "cone"})
    which = flags.get("cone", "nef")
    if which not in ("nef", "psef"):
        raise InputError("flag --cone must be nef or psef")
    if not positional:
        raise InputError("usage: member <class> [--cone nef|psef] [--k K]")
    report = _cone_report(spec, _parse_k(flags))
    cone = report.nef if which == "nef" else report.psef
    coords = _parse_class(spec, positional, cone.dim)
    hit = cone.violated_constraint(coords)
    if json_output:
        payload = {
            "member": hit is None,
            "cone": which,
            "k": report.k,
            "basis": list(report.basis),
            "coordinates": [format_rational(x) for x in coords],
        }
        if hit is not None:
            kind, normal, value = hit
            payload["violated"] = {
                "kind": kind,
                "normal": [format_rational(x) for x in normal],
                "value": format_rational(value),
            }
        return (0 if hit is None else 1), _dump(payload)
    if hit is None:
        return 0, f"member of {which} cone: yes"
    kind, normal, value = hit
    text = _inequality_text(kind, normal, report.basis)
    return 1, (
        f"member of {which} cone: no\n"
        f"violated inequality: {text} (value {format_rational(value)})"
    )


def _cmd_zariski(spec, rest, json_output):
    if spec.space[0] != "fibre_product":
        raise InputError("zariski needs a fibre_product space")
    if not rest:
        raise InputError("usage: zariski <class>")
    coords = _parse_class(spec, rest, 3)
    first, second = spec.space[1]
    cert = decompose(first, second, coords)
    if json_output:
        return 0, _dump(cert.to_json())
    lines = [f"input: {_format_vector(cert.input_coords)}"]
    if cert.steps:
        lines.append(f"steps: {len(cert.steps)}")
        for i, step in enumerate(cert.steps):
            lines.append(
                f"  {i + 1}. factor {step.factor}: center rank "
                f"{step.blowup_center_rank}, multiplicity "
                f"{format_rational(step.exceptional_multiplicity)}, "
                f"to rank {step.to_bundle.rank} degree {step.to_bundle.degree}"
            )
    else:
        lines.append("steps: none")
    lines.append(f"terminal case: {cert.terminal_case}")
    lines.append(f"P: {cert.P}")
    if cert.N:
        for gen, coeff in cert.N:
            lines.append(f"N: {format_rational(coeff)} * ({gen})")
    else:
        lines.append("N: empty")
    lines.append(f"verified: {'yes' if cert.verified else 'no'}")
    return 0, "\n".join(lines)


def _cmd_homog(spec, rest, json_output):
    positional, flags = _split_flags(rest, {"k"})
    if positional or "k" not in flags:
        raise InputError("usage: homog --k K")
    if not spec.preset.is_surface:
        raise InputError("homog needs a surface-base space")
    k = _parse_k(flags)
    answer = k_homogeneous_check(spec.preset, k)
    if json_output:
        return (0 if answer else 1), _dump({"k": k, "homogeneous": answer})
    text = f"codimension-{k} effective and nef cones coincide: "
    return (0 if answer else 1), text + ("yes" if answer else "no")


def _cmd_selftest(json_output):
    if json_output:
        results = []
        all_ok = True
        for index in range(len(CHECKS)):
            name, ok, detail = run_check(index)
            results.append({"name": name, "ok": ok, "detail": detail})
            all_ok = all_ok and ok
        return (0 if all_ok else 1), _dump({"ok": all_ok, "results": results})
    stream = io.StringIO()
    all_ok = True
    for index in range(len(CHECKS)):
        name, ok, detail = run_check(index)
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}", file=stream)
        all_ok = all_ok and ok
    return (0 if all_ok else 1), stream.getvalue().rstrip("\n")


def _dump(payload):
    return json.dumps(payload, indent=2, sort_keys=True)


def run_command(spec, command, json_output=False):
    """Dispatch one command list; returns (exit_code, output text)."""
    if not command:
        raise InputError(
            "no command given; expected ring, cone, member, zariski, homog "
            "or selftest"
        )
    head, *rest = command
    if head == "selftest":
        return _cmd_selftest(json_output)
    if spec is None:
        raise InputError(f"command {head!r} needs a workspace file (-w PATH)")
    handlers = {
        "ring": _cmd_ring,
        "cone": _cmd_cone,
        "member": _cmd_member,
        "zariski": _cmd_zariski,
        "homog": _cmd_homog,
    }
    if head not in handlers:
        raise InputError(f"unknown command {head!r}")
    return handlers[head](spec, rest, json_output)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="conecalc",
        description="Exact nef/pseudoeffective cone calculator for "
        "projectivized bundles and their fibre products.",
    )
    parser.add_argument("-w", "--workspace", help="workspace JSON file")
    parser.add_argument("--json", action="store_true", help="JSON output")
    parser.add_argument("command", nargs=argparse.REMAINDER)
    args = parser.parse_args(argv)
    command = [t for t in args.command if t != "--json"]
    json_output = args.json or "--json" in args.command
    try:
        spec = None
        if args.workspace:
            try:
                with open(args.workspace, "rb") as handle:
                    raw = handle.read()
            except OSError as err:
                raise InputError(f"workspace: cannot read file ({err})") from None
            spec = parse_workspace(raw)
        code, text = run_command(spec, command, json_output)
    except InputError as err:
        code, text = 2, _error_text(err, json_output)
    except InternalError as err:
        code, text = 3, _error_text(err, json_output)
    if text:
        print(text)
    return code


def _error_text(err, json_output):
    if json_output:
        return _dump({"error": str(err), "reasons": list(err.reasons)})
    return f"error: {err}"


if __name__ == "__main__":
    sys.exit(main())
