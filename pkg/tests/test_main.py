import json
from unittest.mock import patch

import pytest

from quantum_seifert.invariants.rt_invariants import InvariantResult
from quantum_seifert.main import main
from quantum_seifert.utils.file_utils import GoldenStore


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_describe(capsys):
    code, out, _ = _run(capsys, ["describe", "--algebra", "A2"])
    assert code == 0
    assert json.loads(out)["dual_coxeter"] == 3


def test_phi_and_dedekind_print_exact_rationals(capsys):
    assert _run(capsys, ["phi", "1", "0", "1", "1"])[1].strip() == "2/1"
    assert _run(capsys, ["dedekind", "1", "3"])[1].strip() == "1/18"
    out = _run(capsys, ["dedekind", "3", "7", "--cotangent"])[1].split()
    assert out[0] == "-1/14"
    assert float(out[1]) == pytest.approx(-1 / 14)


def test_cf(capsys):
    data = json.loads(_run(capsys, ["cf", "5", "2"])[1])
    assert data["terms"] == [2, 3]
    assert data["matrix"] == [[5, -3], [2, -1]]
    data = json.loads(_run(capsys, ["cf", "--matrix", "2", "1", "5", "3"])[1])
    assert data["matrix"] == [[2, 1], [5, 3]]
    assert _run(capsys, ["cf", "1", "0"])[0] == 2


def test_not_unimodular_is_a_usage_error(capsys):
    code, _, err = _run(capsys, ["phi", "2", "0", "0", "1"])
    assert code == 2
    assert err.startswith("Error:")


def test_modular_data(capsys):
    data = json.loads(_run(capsys, ["modular-data", "--algebra", "A1", "--level", "5", "--matrices"])[1])
    assert data["index_set"] == [[1], [2], [3], [4]]
    assert len(data["S"]) == 4


def test_rep_both(capsys):
    code, out, _ = _run(capsys, ["rep", "2", "1", "5", "3", "--level", "5"])
    data = json.loads(out)
    assert code == 0
    assert data["max_discrepancy"] < 1e-9
    assert "closed" in data and "brute" in data


def test_rep_with_zero_c_falls_back_to_words(capsys):
    code, out, err = _run(capsys, ["rep", "1", "3", "0", "1", "--level", "5"])
    assert code == 0
    assert "Warning" in err
    assert "closed" not in json.loads(out)


def test_invariant_of_the_sphere(capsys):
    code, out, _ = _run(capsys, ["invariant", "--algebra", "A1", "--level", "4", "--lens", "1", "0"])
    data = json.loads(out)
    assert code == 0
    assert data["value"][0] == pytest.approx(0.5)
    assert data["method"] == "lens_cf"


def test_invariant_all_methods_agree(capsys):
    code, out, _ = _run(capsys, ["invariant", "--level", "5", "--seifert", "o;0|-1;(2,1),(3,1),(5,1)",
                                 "--method", "all"])
    data = json.loads(out)
    assert code == 0
    assert data["agree"]
    assert [r["method"] for r in data["results"]] == ["matrix_form", "closed_form"]


def test_invariant_lens_all_skips_closed_form_for_p_zero(capsys):
    code, out, _ = _run(capsys, ["invariant", "--level", "5", "--lens", "0", "1", "--method", "all"])
    data = json.loads(out)
    assert code == 0
    assert [r["method"] for r in data["results"]] == ["lens_cf", "lens_rtlens"]
    assert data["results"][0]["value"][0] == pytest.approx(1.0)


def test_invariant_disagreement_exits_one(capsys):
    values = iter([1.0, 2.0])

    def fake(md, M, method, **kwargs):
        return InvariantResult(next(values), method)

    with patch("quantum_seifert.main.tau_seifert", side_effect=fake):
        code, _, err = _run(capsys, ["invariant", "--level", "5", "--seifert", "o;0|-1", "--method", "all"])
    assert code == 1
    assert "methods disagree" in err


def test_invariant_sweep_as_csv(capsys):
    code, out, _ = _run(capsys, ["invariant", "--r-range", "4:6", "--lens", "1", "0", "--format", "csv"])
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "r,method,re,im"
    assert len(lines) == 4
    assert lines[1].startswith("4,lens_cf,")
    assert float(lines[1].split(",")[2]) == pytest.approx(0.5)


def test_invariant_plain_format(capsys):
    out = _run(capsys, ["invariant", "--level", "4", "--lens", "1", "0", "--format", "plain"])[1]
    assert out.startswith("r=4 lens_cf: 0.5")


def test_malformed_seifert_string(capsys):
    code, _, err = _run(capsys, ["invariant", "--level", "5", "--seifert", "o;0|1;(2,1"])
    assert code == 2
    assert "unclosed pair" in err


def test_method_must_fit_the_manifold(capsys):
    code, _, err = _run(capsys, ["invariant", "--level", "5", "--seifert", "o;0|-1", "--method", "rtlens"])
    assert code == 2
    assert "does not apply" in err


def test_missing_level(capsys):
    code, _, err = _run(capsys, ["invariant", "--lens", "1", "0"])
    assert code == 2
    assert "--level" in err


def test_level_too_small(capsys):
    code, _, err = _run(capsys, ["invariant", "--algebra", "A2", "--level", "2", "--lens", "1", "0"])
    assert code == 2
    assert "dual Coxeter" in err


def test_lens_and_seifert_are_exclusive(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["invariant", "--level", "5", "--lens", "1", "0", "--seifert", "o;0|-1"])
    assert exc.value.code == 2


def test_invariant_cache(tmp_path, capsys):
    argv = ["invariant", "--level", "5", "--lens", "5", "2", "--cache", "--cache-dir", str(tmp_path)]
    first = json.loads(_run(capsys, argv)[1])
    with patch("quantum_seifert.main.tau_lens") as mock_tau:
        second = json.loads(_run(capsys, argv)[1])
    mock_tau.assert_not_called()
    assert second["metadata"]["cached"]
    assert second["value"] == first["value"]


def test_invariant_golden_values(tmp_path, capsys):
    with patch("quantum_seifert.main.GoldenStore", side_effect=lambda: GoldenStore(str(tmp_path / "golden.json"))):
        argv = ["invariant", "--level", "5", "--lens", "3", "1", "--method", "all", "--golden"]
        assert _run(capsys, argv)[0] == 0
        assert _run(capsys, argv)[0] == 0
    stored = json.loads((tmp_path / "golden.json").read_text())
    assert list(stored) == ["A1|5|L(3,1)"]


def test_save_writes_the_output(tmp_path, capsys):
    with patch("quantum_seifert.main.save_result_file") as mock_save:
        _run(capsys, ["describe", "--save", "a1.json"])
    name, content = mock_save.call_args[0]
    assert name == "a1.json"
    assert json.loads(content)["rank"] == 1


def test_asymptotics_expansion_only(capsys):
    data = json.loads(_run(capsys, ["asymptotics", "--lens", "2", "1", "--order", "1"])[1])
    assert [t["alpha"] for t in data["expansion"]["terms"]] == ["0", "1/2"]


def test_asymptotics_with_residuals(capsys):
    code, out, err = _run(capsys, ["asymptotics", "--lens", "3", "1", "--order", "1", "--r-range", "15:45:15"])
    data = json.loads(out)
    assert code == 0
    assert len(data["residuals"]) == 3
    assert "decay" not in data
    assert "Warning" in err


def test_asymptotics_csv(capsys):
    out = _run(capsys, ["asymptotics", "--lens", "3", "1", "--order", "0", "--r-range", "15:30:15",
                        "--format", "csv"])[1]
    assert out.splitlines()[0] == "r,exact_re,exact_im,regrouped_gap,residual_0"


def test_verify_reports_failures(capsys):
    failing = [{"suite": "oracle", "passed": False, "checks": []}]
    with patch("quantum_seifert.main.run_suite", return_value=failing) as mock_run:
        code, out, _ = _run(capsys, ["verify", "oracle", "--level", "7", "--seed", "3"])
    assert code == 1
    assert json.loads(out)["passed"] is False
    mock_run.assert_called_once_with("oracle", algebra="A1", level=7, trials=100, seed=3, precision="double")


def test_verify_oracle(capsys):
    code, out, _ = _run(capsys, ["verify", "oracle", "--level", "5"])
    assert code == 0
    assert json.loads(out)["passed"]

