import io as _io
import json

import pytest

from hopfkit import io
from hopfkit.catalog import group_algebra, symmetric
from hopfkit.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, parse_report
from hopfkit.errors import FormatError


def run(*args):
    out, err = _io.StringIO(), _io.StringIO()
    code = main([str(a) for a in args], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def fx(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    assert main(["catalog", "--out", str(d)], out=_io.StringIO()) == EXIT_OK
    return d


def test_verify_hopf_passes(fx):
    code, out, _ = run("verify-hopf", fx / "sweedler4.json")
    assert code == EXIT_OK and "verdict: PASS" in out


def test_verify_hopf_reports_unimodularity(fx):
    code, out, _ = run("verify-hopf", fx / "sweedler4.json", "--format", "json")
    rep = parse_report(out)
    assert code == EXIT_OK and rep.data["unimodular"] is False
    code, out, _ = run("verify-hopf", fx / "group-algebra_symmetric_3.json", "--format", "json")
    assert parse_report(out).data["unimodular"] is True


def test_corrupted_comultiplication_exits_one(fx, tmp_path):
    d = json.loads((fx / "group-algebra_cyclic_2.json").read_text())
    d["comult"] = [e for e in d["comult"] if e[0] != 1] + [[1, 0, 1, "1"], [1, 1, 0, "1"]]
    for key in ("counit", "antipode", "antipode_inverse"):
        d.pop(key)
    path = tmp_path / "bad.json"
    path.write_text(io.dumps(d))
    code, out, _ = run("verify-hopf", path)
    assert code == EXIT_FAIL and "Δ multiplicative" in out and "verdict: FAIL" in out


def test_usage_and_format_errors(fx, tmp_path):
    assert run("no-such-command")[0] == EXIT_USAGE
    assert run("verify-hopf")[0] == EXIT_USAGE
    code, _, err = run("verify-hopf", tmp_path / "missing.json")
    assert code == EXIT_USAGE and "I/O error" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"basis": [')
    code, _, err = run("verify-hopf", bad)
    assert code == EXIT_USAGE and "line 1" in err


def test_version():
    assert run("--version")[0] == EXIT_OK


def test_dual_of_function_algebra_is_group_algebra(fx, tmp_path):
    out_path = tmp_path / "dual.json"
    code, out, _ = run("dual", fx / "function-algebra_symmetric_3.json", "--out", out_path, "--format", "json")
    assert code == EXIT_OK
    D = io.hopf_from_dict(json.loads(out_path.read_text()))
    assert D.same_structure(group_algebra(symmetric(3)))
    assert parse_report(out).data["self-dual (small-coefficient search)"] == "not searched"


def test_dual_self_duality_note(fx):
    _, out, _ = run("dual", fx / "sweedler4.json", "--format", "json")
    assert parse_report(out).data["self-dual (small-coefficient search)"] == "iso found"


def test_integrals(fx):
    code, out, _ = run("integrals", fx / "sweedler4.json", "--format", "json")
    rep = parse_report(out)
    assert code == EXIT_OK and rep.data["unimodular"] is False
    assert len(rep.data["left integrals"]) == 1


def test_report_round_trip(fx):
    _, out, _ = run("integrals", fx / "sweedler4.json", "--format", "json")
    env = json.loads(out)
    assert env["tool"] == "hopfkit" and env["command"] == "integrals"
    assert env["inputs"][0]["sha256"] == io.digest(fx / "sweedler4.json")
    rep = parse_report(out)
    assert rep.to_dict() == env["report"]
    with pytest.raises(FormatError):
        parse_report('{"tool": "other"}')


def test_catalog_entry(fx):
    code, out, _ = run("catalog", "sweedler4")
    assert code == EXIT_OK
    assert json.loads(out) == json.loads((fx / "sweedler4.json").read_text())
    code, out, _ = run("catalog", "coeff-parity.json")
    assert code == EXIT_OK and json.loads(out)["format"] == io.GROUP_MODULE_ALGEBRA
    assert run("catalog", "no-such-entry")[0] == EXIT_USAGE


def test_catalog_verifies_everything(fx):
    code, out, _ = run("catalog")
    assert code == EXIT_OK and "verdict: PASS" in out


def test_subgroup_check(fx):
    code, _, _ = run("subgroup-check", "--hopf", fx / "sweedler4.json", "--subgroup", fx / "U-sweedler.json",
                     "--pi", fx / "pi-sweedler.json")
    assert code == EXIT_OK


def test_mismatched_pi_fails_at_inputs(fx):
    code, out, _ = run("morita", "--algebra", fx / "A-graded-sweedler.json", "--hopf", fx / "sweedler4.json",
                       "--subgroup", fx / "U-sweedler.json", "--pi", fx / "pi-s3-sub.json", "--format", "json")
    assert code == EXIT_FAIL
    rep = parse_report(out)
    stage = rep.child("stage: inputs")
    assert not stage.check("π matches H and U").ok


def test_verify_action(fx):
    code, out, _ = run("verify-action", fx / "A-parity.json")
    assert code == EXIT_OK and "verdict: PASS" in out


def test_invariants(fx):
    code, out, _ = run("invariants", "--algebra", fx / "A-translation-s3.json",
                       "--hopf", fx / "function-algebra_symmetric_3.json",
                       "--subgroup", fx / "U-s3-sub.json", "--pi", fx / "pi-s3-sub.json", "--format", "json")
    rep = parse_report(out)
    assert code == EXIT_OK and rep.data["dim invariants"] == 6


def test_smash(fx, tmp_path):
    out_path = tmp_path / "smash.json"
    code, out, _ = run("smash", fx / "A-parity.json", "--out", out_path, "--format", "json")
    assert code == EXIT_OK and parse_report(out).data["dim"] == 4
    assert len(io.algebra_from_dict(json.loads(out_path.read_text())).labels) == 4


def test_morita_graded_sweedler(fx):
    code, out, _ = run("morita", "--algebra", fx / "A-graded-sweedler.json", "--hopf", fx / "sweedler4.json",
                       "--subgroup", fx / "U-sweedler.json", "--pi", fx / "pi-sweedler.json",
                       "--strategy", "reduce-to-invariants")
    assert code == EXIT_OK and "verdict: PASS" in out


def test_ind_context_command(fx):
    code, out, _ = run("prop32", "--group", "infinite-dihedral", "--subgroup", "e,s", "--coeff",
                       fx / "coeff-parity.json", "--samples", 20, "--targets", 5)
    assert code == EXIT_OK and "seed 42" in out


def test_ind_context_with_group_file(fx, tmp_path):
    coeff = tmp_path / "coeff.json"
    coeff.write_text(io.dumps({"algebra": io.algebra_to_dict(io.algebra_from_dict(
        json.loads((fx / "coeff-parity.json").read_text())["algebra"])),
        "action": {"(1 2)": [["1", "0"], ["0", "-1"]]}}))
    code, out, _ = run("prop32", "--group", fx / "group-s3.json", "--subgroup", "e,(1 2)", "--coeff", coeff,
                       "--samples", 10, "--targets", 3)
    assert code == EXIT_OK, out


def test_ind_context_bad_subgroup_element(fx):
    code, _, err = run("prop32", "--group", "infinite-dihedral", "--subgroup", "e,q", "--coeff",
                       fx / "coeff-parity.json")
    assert code == EXIT_USAGE and "format error" in err
