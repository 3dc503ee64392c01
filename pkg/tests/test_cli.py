import json

import pytest

from closint.cli import main
from closint.models import SemigroupRing
from closint.fields import GF
from closint.semigroups import NumericalSemigroup

CUSP = ["--ring", "semigroup S<2,3>", "--field", "GF(5)"]


def run(capsys, *argv):
    code = main([*argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_hull_example(capsys):
    code, rec = run_json(capsys, *CUSP, "--json", "hull", "--ideal", "(t^4, t^5)", "--closure", "tight[dim1]")
    assert code == 0
    assert rec["outputs"]["hull"] == ["t^2", "t^3"]
    assert set(rec) >= {"command", "args", "input_hash", "provenance", "outputs", "timing_seconds"}


def test_interior_of_identity_is_the_ideal(capsys):
    code, rec = run_json(capsys, *CUSP, "--json", "interior", "--ideal", "(t^3, t^4)", "--closure", "identity")
    assert code == 0 and rec["outputs"]["interior"] == ["t^3", "t^4"]


def test_core_cross_check(capsys):
    code, rec = run_json(capsys, *CUSP, "--json", "core", "--ideal", "(t^2, t^3)", "--mode", "cross-check")
    assert code == 0 and rec["outputs"]["core"] == ["t^4", "t^5"]


def test_subcommand_json_flag(capsys):
    code, rec = run_json(capsys, *CUSP, "core", "--ideal", "(t^2, t^3)", "--json")
    assert rec["outputs"]["core"] == ["t^4", "t^5"]


def test_inconclusive_exit_code(capsys):
    code, rec = run_json(capsys, *CUSP, "--json", "interior", "--ideal", "(t^5)", "--closure", "tight[dim1]",
                         "--t-max", "2")
    assert code == 2
    assert rec["error"] == "inconclusive" and len(rec["partials"]) == 2


def test_capability_exit_code(capsys):
    code, _, err = run(capsys, "--ring", "presented x,y: x^2 - y^3", "closure", "--ideal", "(x, y)")
    assert code == 3 and "integral" in err
    code, _, _ = run(capsys, *CUSP, "hull", "--ideal", "(t^4, t^5)", "--mode", "via-duality")
    assert code == 3


def test_resource_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("CLOSINT_LATTICE_CAP", "5")
    code, _, err = run(capsys, *CUSP, "core", "--ideal", "(t^2, t^3)", "--mode", "enumerate")
    assert code == 4 and "cap" in err


def test_cross_check_exit_code(capsys, monkeypatch):
    import closint.corehull as ch

    real = ch.i_hull
    monkeypatch.setattr(ch, "i_hull", lambda *a, **k: real(*a, **k).module.full())
    code, rec = run_json(capsys, *CUSP, "--json", "core", "--ideal", "(t^2, t^3)", "--mode", "cross-check")
    assert code == 5
    assert set(rec["diff"]) == {"enumerate", "via-duality"}


@pytest.mark.parametrize("argv", [
    ["core", "--ideal", "(t^2)"],                      # no ring
    [*CUSP, "nosuchverb"],
    [*CUSP, "core", "--ideal", "(t^-1)"],             # parse error
    [*CUSP, "core", "--ideal", "(t^2)", "--mode", "sideways"],
    ["--spec", "/nonexistent/ring.txt", "core", "--ideal", "(t^2)"],
])
def test_usage_exit_code(capsys, argv):
    with pytest.raises(SystemExit) as err:
        raise SystemExit(main(argv))
    assert err.value.code == 1


def test_parse_error_is_positioned(capsys):
    code, _, err = run(capsys, *CUSP, "core", "--ideal", "(t^-1)")
    assert code == 1 and "line 1, column 4" in err


def test_determinism(capsys):
    argv = [*CUSP, "--json", "--seed", "7", "reductions", "--ideal", "(t^2, t^3)"]
    a = run_json(capsys, *argv)[1]
    b = run_json(capsys, *argv)[1]
    a.pop("timing_seconds"), b.pop("timing_seconds")
    assert a == b
    assert a["provenance"]["seed"] == 7


def test_output_generators_reparse(capsys):
    R = SemigroupRing(NumericalSemigroup((2, 3)), GF(5))
    for verb, key in (("core", "core"), ("closure", "closure"), ("hull", "hull")):
        code, rec = run_json(capsys, *CUSP, "--json", verb, "--ideal", "(t^4 + 2*t^5, t^7)")
        assert code == 0
        text = "(" + ", ".join(rec["outputs"][key]) + ")"
        again = R.parse_ideal(text)
        assert R.parse_ideal(again.format()).equals(again)


def test_spec_file(tmp_path, capsys):
    f = tmp_path / "cusp.ring"
    f.write_text("closint-ring 1\nfamily: semigroup S<2,3>\nfield: GF(7)\nideal I = (t^4, t^5)\n"
                 "closure c = tight[dim1]\n")
    code, rec = run_json(capsys, "--spec", str(f), "--json", "hull", "--ideal", "I", "--closure", "c")
    assert code == 0 and rec["outputs"]["hull"] == ["t^2", "t^3"]
    assert rec["provenance"]["field"] == "GF(7)"


def test_dual_and_check(capsys):
    code, rec = run_json(capsys, *CUSP, "--json", "dual", "--precision", "6", "--ideal", "(t^4, t^5)")
    assert code == 0
    assert rec["outputs"]["socle_dimension"] == 1
    assert set(rec["outputs"]["actions"]) == {"t^2", "t^3"}
    assert len(rec["outputs"]["dual_submodule"]) == rec["outputs"]["dim"] - 2
    code, rec = run_json(capsys, *CUSP, "--json", "check", "--closure", "socle-collapse")
    assert code == 0 and rec["outputs"]["nakayama"] is False
    code, rec = run_json(capsys, *CUSP, "--json", "check", "--closure", "broken")
    assert code == 1


def test_hom_test_and_testideal(capsys):
    code, rec = run_json(capsys, *CUSP, "--json", "hom-test", "--element", "t^2", "--ideal", "(t^4)", "--c", "t^2")
    assert code == 0 and rec["outputs"]["exists"] is True
    code, rec = run_json(capsys, *CUSP, "--json", "testideal", "--closure", "tight[dim1]")
    assert rec["outputs"]["interior"] == ["t^2", "t^3"]


def test_plain_output(capsys):
    code, out, _ = run(capsys, *CUSP, "spread", "--ideal", "(t^2, t^3)")
    assert code == 0 and "spread: 1" in out


def test_paper_suite_quick(capsys):
    code, out, _ = run(capsys, "paper-suite", "--quick")
    assert code == 0
    assert "FAIL" not in out and "pass" in out
