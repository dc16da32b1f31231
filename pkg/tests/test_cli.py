"""Workspace parsing, command dispatch, exit codes, output formats."""

import json

import pytest

from conecalc import cli
from conecalc.cones import RationalCone, equals
from conecalc.errors import InputError, InternalError
from conecalc.ring import FIBRE_PRODUCT_OVER_CURVE
from conecalc.zariski import ZariskiCertificate, verify

FIBRE_WS = {
    "base": {"kind": "curve"},
    "bundles": [
        {"name": "E", "rank": 2, "degree": 0, "hn": [[1, -1], [1, 1]]},
        {"name": "E2", "rank": 2, "degree": 0},
    ],
    "space": {"kind": "fibre_product", "factors": ["E", "E2"]},
    "classes": {"alpha": ["1", "1", "0"]},
}

SEMISTABLE_WS = {
    "base": {"kind": "curve"},
    "bundles": [
        {"name": "E", "rank": 2, "degree": 0},
        {"name": "E2", "rank": 2, "degree": 0},
    ],
    "space": {"kind": "fibre_product", "factors": ["E", "E2"]},
}

CURVE_WS = {
    "base": {"kind": "curve"},
    "bundles": [{"name": "E", "rank": 2, "degree": 3}],
    "space": {"kind": "proj_bundle", "bundle": "E"},
}

RHO1_WS = {
    "base": {"kind": "surface_rho1", "L2": "1"},
    "bundles": [
        {"name": "S", "rank": 3, "c1": ["0"], "c2": "0", "semistable": True}
    ],
    "space": {"kind": "proj_bundle", "bundle": "S"},
}

RULED_WS = {
    "base": {"kind": "ruled_surface", "mu": "1/2"},
    "bundles": [
        {"name": "S", "rank": 3, "c1": ["2", "1"], "c2": "8/3", "semistable": True}
    ],
    "space": {"kind": "proj_bundle", "bundle": "S"},
}


def ws_file(tmp_path, payload, name="ws.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def run(capsys, argv):
    code = cli.main(argv)
    return code, capsys.readouterr().out


# --- workspace parsing -----------------------------------------------------


def test_parse_workspace_ok():
    spec = cli.parse_workspace(json.dumps(FIBRE_WS))
    assert spec.base_kind == "curve"
    assert spec.preset.kind == FIBRE_PRODUCT_OVER_CURVE
    assert spec.space[0] == "fibre_product"
    assert spec.classes["alpha"] == (1, 1, 0)


def test_parse_workspace_accepts_bytes():
    spec = cli.parse_workspace(json.dumps(CURVE_WS).encode())
    assert spec.space[1].degree == 3


def test_parse_workspace_bad_ladder():
    bad = json.loads(json.dumps(FIBRE_WS))
    bad["bundles"][0]["hn"] = [[1, 1], [1, -1]]
    with pytest.raises(InputError) as err:
        cli.parse_workspace(json.dumps(bad))
    assert "bundles[0]" in str(err.value)
    assert "slopes not strictly increasing" in str(err.value)


def test_parse_workspace_bad_rational_is_path_addressed():
    bad = json.loads(json.dumps(RHO1_WS))
    bad["base"]["L2"] = "1/0"
    with pytest.raises(InputError) as err:
        cli.parse_workspace(json.dumps(bad))
    assert str(err.value).startswith("base.L2:")
    assert "malformed rational" in str(err.value)


def test_parse_workspace_misc_rejections():
    with pytest.raises(InputError):
        cli.parse_workspace(b"\xff\xfe")
    with pytest.raises(InputError):
        cli.parse_workspace("not json")
    with pytest.raises(InputError):
        cli.parse_workspace("[1, 2]")

    surface_fibre = json.loads(json.dumps(RHO1_WS))
    surface_fibre["space"] = {"kind": "fibre_product", "factors": ["S", "S"]}
    with pytest.raises(InputError) as err:
        cli.parse_workspace(json.dumps(surface_fibre))
    assert "curve bases only" in str(err.value)

    dangling = json.loads(json.dumps(CURVE_WS))
    dangling["space"]["bundle"] = "missing"
    with pytest.raises(InputError) as err:
        cli.parse_workspace(json.dumps(dangling))
    assert "unknown bundle" in str(err.value)


def test_parse_workspace_surface_constraints():
    crooked = json.loads(json.dumps(RHO1_WS))
    crooked["bundles"][0] = {
        "name": "S",
        "rank": 2,
        "c1": ["2"],
        "c2": "0",
        "semistable": True,
    }
    with pytest.raises(InputError) as err:
        cli.parse_workspace(json.dumps(crooked))
    assert "space" in str(err.value)

    unstable = json.loads(json.dumps(RHO1_WS))
    unstable["bundles"][0]["semistable"] = False
    with pytest.raises(InputError) as err:
        cli.parse_workspace(json.dumps(unstable))
    assert "semistable" in str(err.value)


# --- commands through main() ------------------------------------------------


def test_cone_psef_text(tmp_path, capsys):
    code, out = run(capsys, ["-w", ws_file(tmp_path, SEMISTABLE_WS), "cone", "psef"])
    assert code == 0
    assert "(1, 0, 0)" in out and "(0, 1, 0)" in out and "(0, 0, 1)" in out
    assert "nef = psef: yes" in out


def test_cone_json_round_trips(tmp_path, capsys):
    code, out = run(
        capsys, ["-w", ws_file(tmp_path, FIBRE_WS), "--json", "cone", "psef"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["equal"] is False
    assert payload["basis"] == ["xi", "zeta", "F"]
    restored = RationalCone.from_json(payload)
    assert equals(restored, RationalCone(3, [(1, 0, -1), (0, 1, 0), (0, 0, 1)]))


def test_json_flag_after_command(tmp_path, capsys):
    code, out = run(
        capsys, ["-w", ws_file(tmp_path, FIBRE_WS), "cone", "nef", "--json"]
    )
    assert code == 0
    assert json.loads(out)["cone"] == "nef"


def test_member_yes_no(tmp_path, capsys):
    path = ws_file(tmp_path, SEMISTABLE_WS)
    code, out = run(capsys, ["-w", path, "member", "1,2,3"])
    assert code == 0 and "yes" in out

    code, out = run(capsys, ["-w", path, "member", "-1,0,0"])
    assert code == 1
    assert "violated inequality" in out and ">= 0" in out

    code, out = run(capsys, ["-w", path, "--json", "member", "-1,0,0"])
    assert code == 1
    payload = json.loads(out)
    assert payload["member"] is False
    assert payload["violated"]["kind"] == "facet"


def test_member_named_class_and_psef_flag(tmp_path, capsys):
    path = ws_file(tmp_path, FIBRE_WS)
    # (1,1,0) is pseudoeffective but not nef on this unstable pair
    code, _ = run(capsys, ["-w", path, "member", "alpha", "--cone", "psef"])
    assert code == 0
    code, _ = run(capsys, ["-w", path, "member", "alpha"])
    assert code == 1


def test_zariski_text_and_json(tmp_path, capsys):
    path = ws_file(tmp_path, FIBRE_WS)
    code, out = run(capsys, ["-w", path, "zariski", "1,1,0"])
    assert code == 0
    assert "terminal case: one_corank_one" in out
    assert "P: zeta + F" in out
    assert "verified: yes" in out

    code, out = run(capsys, ["-w", path, "--json", "zariski", "alpha"])
    assert code == 0
    payload = json.loads(out)
    assert payload == {
        "input": ["1", "1", "0"],
        "steps": [],
        "terminal": "one_corank_one",
        "P": ["0", "1", "1"],
        "N": [{"gen": ["1", "0", "-1"], "coeff": "1"}],
        "verified": True,
    }
    spec = cli.parse_workspace(json.dumps(FIBRE_WS))
    first, second = spec.space[1]
    cert = ZariskiCertificate.from_json(payload, first, second)
    assert verify(cert, first, second).ok


def test_zariski_requires_fibre_product(tmp_path, capsys):
    code, out = run(capsys, ["-w", ws_file(tmp_path, CURVE_WS), "zariski", "1,0"])
    assert code == 2
    assert "fibre_product" in out


def test_ring_eval(tmp_path, capsys):
    code, out = run(
        capsys, ["-w", ws_file(tmp_path, CURVE_WS), "ring", "eval", "xi^2"]
    )
    assert code == 0
    assert "3*xi*f" in out

    code, out = run(
        capsys,
        ["-w", ws_file(tmp_path, RULED_WS), "--json", "ring", "eval", "lambda^3"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["terms"] == [] and payload["text"] == "0"


def test_homog(tmp_path, capsys):
    code, out = run(capsys, ["-w", ws_file(tmp_path, RHO1_WS), "homog", "--k", "2"])
    assert code == 0 and "yes" in out
    code, out = run(
        capsys, ["-w", ws_file(tmp_path, RULED_WS), "--json", "homog", "--k=1"]
    )
    assert code == 0
    assert json.loads(out) == {"k": 1, "homogeneous": True}


def test_cone_k_flag_on_surface(tmp_path, capsys):
    code, out = run(
        capsys, ["-w", ws_file(tmp_path, RHO1_WS), "--json", "cone", "nef", "--k", "2"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["k"] == 2
    assert payload["basis"] == ["lambda^2", "lambda*piL", "F"]
    code, _ = run(capsys, ["-w", ws_file(tmp_path, CURVE_WS), "cone", "nef", "--k", "2"])
    assert code == 2


def test_input_error_exit_codes(tmp_path, capsys):
    code, out = run(capsys, ["cone", "psef"])
    assert code == 2 and "workspace" in out

    code, out = run(capsys, ["-w", str(tmp_path / "absent.json"), "cone", "nef"])
    assert code == 2 and "cannot read file" in out

    broken = tmp_path / "broken.json"
    broken.write_text("{")
    code, out = run(capsys, ["-w", str(broken), "cone", "nef"])
    assert code == 2 and "not valid JSON" in out

    code, out = run(capsys, ["-w", ws_file(tmp_path, CURVE_WS), "conjure"])
    assert code == 2 and "unknown command" in out

    code, out = run(capsys, ["-w", ws_file(tmp_path, CURVE_WS)])
    assert code == 2 and "no command" in out


def test_internal_error_exit_code(tmp_path, capsys, monkeypatch):
    def boom(spec, command, json_output=False):
        raise InternalError("invariant cracked")

    monkeypatch.setattr(cli, "run_command", boom)
    code, out = run(capsys, ["-w", ws_file(tmp_path, CURVE_WS), "cone", "nef"])
    assert code == 3
    assert "invariant cracked" in out


def test_error_json_payload(tmp_path, capsys):
    code, out = run(capsys, ["--json", "cone", "psef"])
    assert code == 2
    payload = json.loads(out)
    assert "error" in payload and payload["reasons"]


def test_selftest_json(capsys):
    code, out = run(capsys, ["--json", "selftest"])
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert len(payload["results"]) == 9
    assert all(entry["ok"] for entry in payload["results"])
