import json
import math
import subprocess
import sys

import pytest

from bellsim.bell import quantum_I_closed_form
from bellsim.cli import ConfigError, ScanSpec, load_config, main, run_scan

PI = math.pi


def read_rows(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


def test_load_config_minimal(tmp_path):
    doc = {"subcommand": "interf", "grids": {"phi": [0.0, 1.0]}}
    path = tmp_path / "scan.json"
    path.write_text(json.dumps(doc))
    spec = load_config(str(path))
    assert spec.subcommand == "interf"
    assert spec.grids == {"phi": (0.0, 1.0)}
    assert spec.format == "csv" and spec.output == "-"
    assert spec.tolerance == 1e-10 and spec.workers == 1 and spec.seed is None


def test_load_config_rejects_unknown_key(tmp_path):
    path = tmp_path / "scan.json"
    path.write_text(json.dumps({"subcommand": "interf", "grids": {"phi": [0]}, "extra": 1}))
    with pytest.raises(ConfigError, match="extra"):
        load_config(str(path))


def test_load_config_rejects_empty_grid(tmp_path):
    path = tmp_path / "scan.json"
    path.write_text(json.dumps({"subcommand": "interf", "grids": {"phi": []}}))
    with pytest.raises(ConfigError, match="nonempty"):
        load_config(str(path))


def test_load_config_parse_error_reports_position(tmp_path):
    path = tmp_path / "scan.json"
    path.write_text('{"subcommand": "interf",\n  "grids": }')
    with pytest.raises(ConfigError, match=r"line 2"):
        load_config(str(path))


def test_spec_round_trip():
    spec = ScanSpec(subcommand="chained", grids={"n": (2.0, 3.0)},
                    params={"theta": PI, "model": "quantum"},
                    output="out.csv", format="json", seed=5, tolerance=1e-9, workers=2)
    again = ScanSpec.from_dict(spec.to_dict())
    assert again == spec


def test_validation_errors():
    with pytest.raises(ConfigError, match="subcommand"):
        run_scan(ScanSpec(subcommand="nope", grids={"phi": (0.0,)}))
    with pytest.raises(ConfigError, match="does not scan"):
        run_scan(ScanSpec(subcommand="interf", grids={"bogus": (0.0,)}))
    with pytest.raises(ConfigError, match="requires a seed"):
        run_scan(ScanSpec(subcommand="sample", grids={"phi": (0.0,)}))
    with pytest.raises(ConfigError, match="requires a 'phi' grid"):
        run_scan(ScanSpec(subcommand="interf", grids={"dphi": (0.0,)}))


def test_interf_scan_endpoints(tmp_path):
    out = tmp_path / "interf.csv"
    code = main(["interf", "--grid", "phi=linspace:0:6.283185307179586:101",
                 "--output", str(out)])
    assert code == 0
    rows = read_rows(out)
    assert len(rows) == 101
    assert rows[0]["phi"] == "0.0" and rows[0]["p_plus"] == "1.0"
    assert rows[-1]["p_plus"] == "1.0"
    mid = rows[50]
    assert float(mid["p_plus"]) == pytest.approx(0.0, abs=1e-12)
    for row in rows:
        assert float(row["p_plus"]) + float(row["p_minus"]) == pytest.approx(1.0, abs=1e-12)
        assert row["error"] == ""


def test_interf_wavepacket_grid(tmp_path):
    out = tmp_path / "wp.csv"
    code = main(["interf", "--grid", "phi=0.0", "--grid", "dphi=6.283185307179586",
                 "--output", str(out)])
    assert code == 0
    rows = read_rows(out)
    assert float(rows[0]["p_plus"]) == pytest.approx(0.5, abs=1e-8)


def test_chained_scan_matches_closed_form(tmp_path):
    out = tmp_path / "chained.csv"
    grid = ",".join(str(n) for n in range(2, 65))
    code = main(["chained", "--grid", f"n={grid}", "--theta", str(PI),
                 "--model", "quantum", "--output", str(out)])
    assert code == 0
    rows = read_rows(out)
    assert len(rows) == 63
    for row in rows:
        n = int(float(row["n"]))
        assert float(row["i_value"]) == pytest.approx(quantum_I_closed_form(n, PI), abs=1e-12)
        assert float(row["i_value"]) == pytest.approx(float(row["i_closed_form"]), abs=1e-12)
        assert row["classification"] == "bounded_nonlocal"


def test_unitarity_scan(tmp_path):
    out = tmp_path / "unit.csv"
    code = main(["unitarity",
                 "--grid", "reflection_phase=0.7853981633974483,1.5707963267948966",
                 "--grid", "phi=0.7853981633974483", "--output", str(out)])
    assert code == 0
    rows = read_rows(out)
    pi_quarter, physical = rows[0], rows[1]
    assert pi_quarter["valid"] == "0"
    assert float(pi_quarter["total"]) == pytest.approx(1.0 + math.sqrt(2) / 2, abs=1e-12)
    assert physical["valid"] == "1"
    assert float(physical["total"]) == pytest.approx(1.0, abs=1e-12)


def test_franson_ideal_scan(tmp_path):
    out = tmp_path / "franson.csv"
    code = main(["franson", "--grid", "phi=0.0,1.5707963267948966,3.141592653589793",
                 "--output", str(out)])
    assert code == 0
    rows = read_rows(out)
    assert [float(r["p_equal"]) for r in rows] == [1.0, 0.5, 0.0]
    assert all(float(r["marginal_a"]) == 0.5 for r in rows)


def test_franson_physical_scan(tmp_path):
    out = tmp_path / "physical.csv"
    code = main(["franson", "--mode", "physical",
                 "--grid", "tau_b=1e-9",
                 "--pump-center", "2.4e15", "--pump-bandwidth", "6283.185307179586",
                 "--offset-bandwidth", "6.283185307179586e12", "--tau-a", "1e-9",
                 "--output", str(out)])
    assert code == 0
    rows = read_rows(out)
    assert float(rows[0]["visibility"]) >= 0.98
    assert float(rows[0]["marginal_a"]) == pytest.approx(0.5, abs=1e-12)


def test_extensions_scan(tmp_path):
    out = tmp_path / "ext.csv"
    code = main(["extensions", "--grid", "d=0.1,0.9", "--output", str(out)])
    assert code == 0
    rows = read_rows(out)
    assert rows[0]["witness_n"] == "19"
    assert rows[1]["witness_n"] == "2"
    assert rows[1]["bound_at_prev"] == ""


def test_row_error_continues_scan_and_exits_one(tmp_path):
    out = tmp_path / "err.csv"
    code = main(["extensions", "--grid", "d=0.9,1e-9,0.5", "--n-cap", "50",
                 "--output", str(out)])
    assert code == 1
    rows = read_rows(out)
    assert len(rows) == 3
    assert rows[0]["error"] == "" and rows[2]["error"] == ""
    assert "FalsificationCapError" in rows[1]["error"]
    assert rows[1]["witness_n"] == ""


def test_sample_determinism_across_runs_and_workers(tmp_path):
    args = ["sample", "--grid", "phi=linspace:0:3.141592653589793:9",
            "--seed", "123", "--n", "100000", "--model", "local"]
    paths = [tmp_path / name for name in ("a.csv", "b.csv", "c.csv")]
    assert main(args + ["--output", str(paths[0])]) == 0
    assert main(args + ["--output", str(paths[1])]) == 0
    assert main(args + ["--workers", "4", "--output", str(paths[2])]) == 0
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1] == blobs[2]


def test_json_output_structure(tmp_path):
    out = tmp_path / "out.json"
    code = main(["chained", "--grid", "n=2,3", "--format", "json",
                 "--output", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {"spec", "rows"}
    assert doc["spec"]["subcommand"] == "chained"
    assert len(doc["rows"]) == 2
    assert doc["rows"][0]["i_value"] == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-12)


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "scan.json"
    cfg.write_text(json.dumps({
        "subcommand": "chained",
        "grids": {"n": [2, 3, 4]},
        "params": {"theta": PI, "model": "suppressed"},
        "format": "csv",
    }))
    out = tmp_path / "out.csv"
    code = main(["chained", "--config", str(cfg), "--model", "quantum",
                 "--output", str(out)])
    assert code == 0
    rows = read_rows(out)
    assert all(row["model"] == "quantum" for row in rows)


def test_usage_errors_exit_two(tmp_path):
    assert main(["sample", "--grid", "phi=0"]) == 2  # missing seed
    assert main(["interf", "--grid", "nonsense"]) == 2  # malformed grid
    assert main([]) == 2
    cfg = tmp_path / "scan.json"
    cfg.write_text(json.dumps({"subcommand": "interf", "grids": {"phi": [0]}}))
    assert main(["chained", "--config", str(cfg)]) == 2  # subcommand mismatch


def test_module_entry_point(tmp_path):
    out = tmp_path / "cli.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "bellsim", "interf", "--grid", "phi=0,1",
         "--output", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert out.read_text().startswith("phi,p_plus,p_minus,error")
