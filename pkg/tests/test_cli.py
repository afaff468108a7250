import io
import json

import jsonschema
import pytest

from lame3.cli import CSV_COLUMNS, ScanConfig, UsageError, main
from lame3.monodromy import MONODROMY_REPORT_SCHEMA
from lame3.roots import ROOT_REPORT_SCHEMA
from lame3.sympoly import WPOLY_SCHEMA, WeightedPoly


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_poly_symbolic_p30():
    code, text = run(["poly", "P", "--n", "3", "--l", "0", "--symbolic"])
    assert code == 0
    data = json.loads(text)
    jsonschema.validate(data["terms"], WPOLY_SCHEMA)
    p = WeightedPoly.from_records(data["terms"])
    assert p == WeightedPoly.B() * WeightedPoly.B() - WeightedPoly.g2().scale(12)


def test_poly_numeric_and_lame():
    code, text = run(["poly", "lame", "--m", "1", "--tau", "0,1"])
    assert code == 0
    assert json.loads(text)["degree"] == 3
    code, text = run(["poly", "Q", "--n", "0", "--l", "1"])
    assert code == 0 and json.loads(text)["text"].startswith("B^5")


def test_invariants():
    code, text = run(["invariants", "--tau", "0,1"])
    data = json.loads(text)
    assert code == 0
    assert abs(data["g3"][0]) < 1e-12
    assert data["g2"][0] > 0


def test_roots_roundtrip(tmp_path):
    code, text = run(["poly", "P", "--n", "5", "--l", "0", "--tau", "0,1"])
    f = tmp_path / "p.json"
    f.write_text(text)
    code, text = run(["roots", "--poly-file", str(f), "--certify-real"])
    assert code == 0
    data = json.loads(text)
    jsonschema.validate(data, ROOT_REPORT_SCHEMA)
    assert data["all_real"] and len(data["roots"]) == 3


def test_roots_symbolic_file_needs_tau(tmp_path):
    _, text = run(["poly", "P", "--n", "3", "--l", "0"])
    f = tmp_path / "p.json"
    f.write_text(text)
    assert run(["roots", "--poly-file", str(f)])[0] == 2
    code, text = run(["roots", "--poly-file", str(f), "--tau", "0,1"])
    assert code == 0 and len(json.loads(text)["roots"]) == 2


def test_monodromy_klein_four():
    code, text = run(["monodromy", "--n", "1", "--l", "0", "--B", "0,0", "--tau", "0,1"])
    assert code == 0
    data = json.loads(text)
    jsonschema.validate(data, MONODROMY_REPORT_SCHEMA)
    assert data["classification"] == "KleinFour"


def test_output_is_deterministic():
    argv = ["monodromy", "--n", "0", "--l", "1", "--B", "2,0", "--tau", "0.2,1.1"]
    assert run(argv)[1] == run(argv)[1]


def test_verify_suite_exit_codes():
    code, text = run(["verify", "lame-bridge"])
    assert code == 0
    assert "Q_n,1 = l_n+2" in text
    assert text.strip().endswith("2/2 passed")


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["poly", "X"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["monodromy", "--n", "1"])
    assert exc.value.code == 2
    assert run(["invariants", "--tau", "0,-1"])[0] == 2
    assert run(["poly", "P", "--n", "2", "--l", "1"])[0] == 2


def test_tol_out_of_range_is_usage_error():
    assert run(["monodromy", "--n", "1", "--l", "0", "--B", "0", "--tau", "0,1", "--tol", "1e-13"])[0] == 2


def test_numerical_failure_exit_code(monkeypatch):
    import lame3.monodromy as mono
    from lame3.errors import StepUnderflow

    def fail(*a, **k):
        raise StepUnderflow("step size underflow near z=0.5")

    monkeypatch.setattr(mono, "monodromy_pair", fail)
    code, text = run(["monodromy", "--n", "1", "--l", "0", "--B", "0", "--tau", "0,1"])
    assert code == 3
    data = json.loads(text)
    assert data["error"] == "StepUnderflow" and data["command"] == "monodromy"


def scan_config(tmp_path, fmt, workers):
    cfg = {
        "n": 0, "l": 1,
        "B_grid": {"re_min": -1, "re_max": 1, "im_min": 0, "im_max": 1, "n_re": 2, "n_im": 2},
        "tau_list": [[0.2, 1.1]],
        "format": fmt, "workers": workers,
    }
    f = tmp_path / f"scan_{fmt}_{workers}.json"
    f.write_text(json.dumps(cfg))
    return f


def test_scan_csv_ordered_and_parallel_identical(tmp_path):
    serial = run(["scan", "--config", str(scan_config(tmp_path, "csv", 1))])[1]
    parallel = run(["scan", "--config", str(scan_config(tmp_path, "csv", 2))])[1]
    assert serial == parallel
    lines = serial.strip().split("\n")
    assert lines[0].split(",") == CSV_COLUMNS
    assert len(lines) == 5
    Bs = [tuple(map(float, ln.split(",")[2:4])) for ln in lines[1:]]
    assert Bs == [(-1, 0), (1, 0), (-1, 1), (1, 1)]


def test_scan_json_rows(tmp_path):
    code, text = run(["scan", "--config", str(scan_config(tmp_path, "json", 1))])
    rows = [json.loads(ln) for ln in text.strip().split("\n")]
    assert code == 0 and len(rows) == 4
    for row in rows:
        assert {"B", "lambda1", "lambda2", "abs_lambda1", "abs_lambda2", "classification"} <= set(row)


def test_scan_config_validation():
    with pytest.raises(UsageError):
        ScanConfig.from_dict({"n": 0, "l": 1, "B_grid": {"re_min": 0, "re_max": 1, "im_min": 0, "im_max": 1,
                                                          "n_re": 1, "n_im": 2}, "tau_list": [[0, 1]]})
    with pytest.raises(UsageError):
        ScanConfig.from_dict({"n": 0, "l": 1, "B_grid": {}, "bogus": 1})
