import json

import pytest

from ternary_cyclic.cli import GOLDEN, main
from ternary_cyclic.theorems import TheoremReport, Verdict


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_factor_signed(capsys):
    code, out, _ = run(capsys, "factor", "--poly", "x^17-x^16+x^15+x^14+x^11+x^10-x^9+x^8-x^7-x^6-x^3-x^2+x-1", "--signed")
    assert code == 0
    assert out.strip() == "(x-1)^5(x^4-x^3+x^2-x+1)(x^4-x^3-1)(x^4+x-1)"


def test_factor_json(capsys):
    code, d = run_json(capsys, "factor", "--poly", "x^2+2")
    assert code == 0
    assert [f["factor"] for f in d["factors"]] == ["x+1", "x+2"]


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--n", "80", "--d", "5", "--k", "73")
    assert code == 0
    assert "denominator=12801" in out and "Excluded" in out


def test_bound_json_and_large(capsys):
    code, d = run_json(capsys, "bound", "--n", "728", "--d", "5", "--k", "718")
    assert d["verdict"] == "Excluded" and d["t"] == 724 and d["r"] == 2
    code, out, _ = run(capsys, "bound", "--n", "59048", "--d", "5")
    assert code == 0 and "floor(3^" in out


def test_coset(capsys):
    code, out, _ = run(capsys, "coset", "--m", "4", "--j", "50")
    assert code == 0
    assert "size 2" in out and "[50, 70]" in out


def test_minpoly(capsys):
    code, out, _ = run(capsys, "minpoly", "--field", "m=4,mod=x^4+2x^3+2", "--i", "0")
    assert out.strip() == "x+2"


def test_gencode(capsys):
    code, d = run_json(capsys, "gencode", "--field", "m=4,mod=x^4+2x^3+2", "--zeros", "0,1,50")
    assert code == 0
    assert (d["n"], d["k"], d["generator"]) == (80, 73, "x^7+2x^6+x^5+x^3+2x+2")
    assert d["generator_machine"] == "2,2,0,1,0,1,2,1"


@pytest.mark.parametrize("mode", ["--oracle", "--reduced"])
def test_mindist_example1(capsys, mode):
    code, out, _ = run(capsys, "mindist", "--field", "m=4,mod=x^4+2x^3+2", "--zeros", "0,1,50", mode)
    assert code == 0
    assert "no codeword of weight <= 3" in out or "d >= 4" in out


def test_mindist_reduced_root(capsys):
    # e = 14 at m = 3 admits a root outside F_3
    code, d = run_json(capsys, "mindist", "--m", "3", "--zeros", "0,1,14", "--reduced")
    assert code == 0
    assert d["weight_le_3"] and d["result"] is not None
    code, d = run_json(capsys, "mindist", "--m", "3", "--zeros", "0,1,14")
    assert d["witness"]["weight"] <= 3


def test_mindist_exact_and_weight4(capsys):
    code, d = run_json(capsys, "mindist", "--m", "3", "--zeros", "1,4", "--exact", "--dual")
    assert d["distance"] == 4
    code, d = run_json(capsys, "mindist", "--m", "3", "--zeros", "1,4", "--max-weight", "4")
    assert d["witness"]["weight"] == 4


def test_mindist_exact_budget(capsys):
    code, _, err = run(capsys, "mindist", "--m", "4", "--zeros", "0,1,50", "--exact")
    assert code == 1 and "budget" in err


def test_mindist_shape_mismatch(capsys):
    code, _, err = run(capsys, "mindist", "--m", "3", "--zeros", "5,7,9", "--reduced")
    assert code == 2


def test_verify_t6_m7(capsys):
    code, d = run_json(capsys, "verify", "--theorem", "T6", "--m", "7")
    assert code == 0
    assert d["verdict"] == "Verified" and d["e"] == 16
    assert d["code"]["k"] == 3**7 - 2 * 7 - 1
    back = TheoremReport.from_dict(d)
    assert back.verdict is Verdict.VERIFIED


def test_verify_inequivalence_attached(capsys):
    code, d = run_json(capsys, "verify", "--theorem", "T3", "--m", "6")
    assert code == 0
    assert d["inequivalence"] and all(c["ok"] for c in d["inequivalence"])


def test_verify_condition_violation_is_reported(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "T5", "--m", "8")
    assert code == 0
    assert "HypothesisFailed" in out and "[FAIL]" in out


def test_verify_all_writes_reports_and_figure(capsys, tmp_path):
    out_dir = tmp_path / "reports"
    code, out, _ = run(capsys, "verify", "--all", "--max-m", "5", "--jobs", "1", "--out", str(out_dir))
    assert code == 0
    assert "failures: 0" in out
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["verdicts"] == {"Verified": summary["instances"]}
    assert (out_dir / "bound_margin.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert (out_dir / "T1_m4.json").exists()
    assert (out_dir / "T4_m5_h1.json").exists()


def test_table(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 0
    assert out.count("PASS") == len(GOLDEN) == 5
    assert "[80,73,4]" in out and "[6560,6547,4]" in out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bound", "--n", "80"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["factor", "--poly", "x^^2"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["gencode", "--field", "m=4,mod=x^4+1", "--zeros", "1"])
    assert info.value.code == 2
    assert main(["gencode", "--zeros", "1"]) == 2
    assert main(["verify", "--theorem", "T1"]) == 2


def test_computation_errors(capsys):
    assert main(["verify", "--theorem", "T1", "--m", "14"]) == 1
    assert main(["factor", "--poly", "2"]) == 1
    assert main(["bound", "--n", "5", "--d", "9"]) == 1
    capsys.readouterr()
