import math
import json

import pytest

from qsc_sta import cli
from qsc_sta.dynamics import DecayRates
from qsc_sta.errors import InvalidArgumentError


def summary(out: str) -> dict:
    line = [ln for ln in out.strip().splitlines() if "fidelity=" in ln][-1]
    return dict(kv.split("=", 1) for kv in line.split())


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_tau():
    units = cli.Units("si", 5.0)
    assert cli.parse_tau("2T0", 3.24, units) == pytest.approx(6.48)
    assert cli.parse_tau("3.5", 3.24, units) == 3.5
    assert cli.parse_tau("103.1ns", 3.24, units) == pytest.approx(103.1e-9 * 2 * math.pi * 5e6)
    for bad in ("0", "-1T0", "abc", "5 parsecs"):
        with pytest.raises(InvalidArgumentError):
            cli.parse_tau(bad, 3.24, units)
    with pytest.raises(InvalidArgumentError):
        cli.parse_tau("100ns", 3.24, cli.Units("dimensionless", 5.0))


def test_parse_rates():
    assert cli.parse_rates("benchmark") == DecayRates.benchmark()
    assert cli.parse_rates("none").is_zero
    assert cli.parse_rates("0.1,0.2,0.3") == DecayRates(0.1, 0.2, 0.3)
    with pytest.raises(InvalidArgumentError):
        cli.parse_rates("1,2")


def test_simulate_adiabatic_5t0(capsys, tmp_path):
    out = tmp_path / "run.csv"
    code, stdout, _ = run(capsys, "simulate", "--variant", "adiabatic", "--tau", "5T0", "--rates", "none",
                          "--out", str(out))
    assert code == 0
    assert float(summary(stdout)["fidelity"]) == pytest.approx(0.984, abs=0.003)
    lines = out.read_text().splitlines()
    assert lines[0].startswith("#")
    assert lines[1] == "t,g1,g2,g1_mod,g2_mod,P_vac,P_a1,P_bm,P_a2,fidelity"
    assert len(lines) == 2 + 4001


def test_simulate_dressed_benchmark_rates(capsys):
    code, stdout, _ = run(capsys, "simulate", "--variant", "dressed", "--tau", "1T0", "--squeeze", "0")
    assert code == 0
    assert float(summary(stdout)["fidelity"]) == pytest.approx(0.9653, abs=0.005)


def test_simulate_invalid(capsys):
    assert run(capsys, "simulate", "--tau", "0")[0] == 2
    assert run(capsys, "simulate", "--samples", "10")[0] == 2
    assert run(capsys, "simulate", "--variant", "satd", "--squeeze", "0.5")[0] == 2
    assert run(capsys, "simulate", "--variant", "bogus")[0] == 2


def test_simulate_output_is_byte_identical(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        run(capsys, "simulate", "--tau", "1T0", "--squeeze", "0.5", "--format", "json", "--out", str(p))
    assert paths[0].read_bytes() == paths[1].read_bytes()
    doc = json.loads(paths[0].read_text())
    assert doc["summary"]["squeeze"] == 0.5
    assert set(doc["rows"][0]) == set(cli.CSV_COLUMNS)


def test_simulate_si_units(capsys, tmp_path):
    out = tmp_path / "si.csv"
    code, stdout, _ = run(capsys, "simulate", "--units", "si", "--g0", "5", "--tau", "103.1ns", "--rates", "none",
                          "--out", str(out))
    assert code == 0
    assert float(summary(stdout)["tau"]) == pytest.approx(103.1)
    last = out.read_text().splitlines()[-1].split(",")
    assert float(last[0]) == pytest.approx(103.1)
    assert float(last[1]) == pytest.approx(5.0)


def test_config_file_with_flag_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# benchmark\nvariant = adiabatic\ntau = 5T0\nrates = none\n")
    code, stdout, _ = run(capsys, "simulate", "--config", str(cfg))
    assert code == 0
    s = summary(stdout)
    assert s["variant"] == "adiabatic"
    assert float(s["fidelity"]) == pytest.approx(0.984, abs=0.003)
    code, stdout, _ = run(capsys, "simulate", "--config", str(cfg), "--tau", "8T0")
    assert float(summary(stdout)["fidelity"]) == pytest.approx(0.999, abs=0.002)
    cfg.write_text("nonsense = 1\n")
    assert run(capsys, "simulate", "--config", str(cfg))[0] == 2


def test_find_t0(capsys, tmp_path):
    out = tmp_path / "t0.json"
    code, stdout, _ = run(capsys, "find-t0", "--format", "json", "--out", str(out))
    assert code == 0
    fields = dict(kv.split("=", 1) for kv in stdout.split() if "=" in kv)
    assert float(fields["tau_min"]) == pytest.approx(3.24, abs=0.05)
    assert float(fields["tau_min_si"]) == pytest.approx(103.1, abs=1.6)
    report = json.loads(out.read_text())["rows"][0]
    assert report["feasible"] and report["binding"]


def test_find_t0_malformed(capsys):
    assert run(capsys, "find-t0", "--tol", "abc")[0] == 2


@pytest.mark.parametrize("tau, expected", [("1T0", 0.85), ("2T0", 0.69)])
def test_find_max_squeeze(capsys, tau, expected):
    code, stdout, _ = run(capsys, "find-max-squeeze", "--tau", tau)
    assert code == 0
    fields = dict(kv.split("=", 1) for kv in stdout.split() if "=" in kv)
    assert float(fields["squeeze_max"]) == pytest.approx(expected, abs=0.02)
    assert fields["binding_coupling"] in ("g1", "g2")


def test_find_max_squeeze_infeasible(capsys):
    code, _, err = run(capsys, "find-max-squeeze", "--tau", "0.5T0")
    assert code == 3
    assert "infeasible" in err


def test_sweep_adiabatic_times(capsys, tmp_path):
    out = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "sweep", "--variant", "adiabatic", "--rates", "none", "--tau-list", "8T0,5T0,7T0,6T0",
                     "--out", str(out), "--workers", "2")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[1] == ",".join(cli.SWEEP_COLUMNS)
    rows = [ln.split(",") for ln in lines[2:]]
    taus = [float(r[0]) for r in rows]
    fids = [float(r[2]) for r in rows]
    assert taus == sorted(taus)
    assert fids == sorted(fids)
    assert fids[0] == pytest.approx(0.984, abs=0.003)
    assert fids[-1] == pytest.approx(0.999, abs=0.002)


def test_sweep_squeeze_values(capsys, tmp_path):
    out = tmp_path / "sweep.json"
    code, _, _ = run(capsys, "sweep", "--squeeze-list", "0,0.2,0.4,0.6,0.85", "--format", "json", "--out", str(out))
    assert code == 0
    peaks = [row["peak_P_bm"] for row in json.loads(out.read_text())["rows"]]
    assert all(b < a for a, b in zip(peaks, peaks[1:]))


def test_sweep_empty_range(capsys):
    assert run(capsys, "sweep", "--squeeze-list", "")[0] == 2
    assert run(capsys, "sweep", "--tau-list", " , ")[0] == 2


def test_reproduce_list(capsys):
    code, stdout, _ = run(capsys, "reproduce-paper", "--list")
    assert code == 0
    assert "t0" in stdout and "max-squeeze-2T0" in stdout


def test_reproduce_negative_control(capsys):
    code, stdout, _ = run(capsys, "reproduce-paper", "--debug-zero-gx")
    assert code == 1
    failed = {ln.split()[2] for ln in stdout.splitlines() if ln.startswith("[FAIL]")}
    assert {"closed-transfer", "sin2mu-law", "frame-residual", "dressed-T0-A085", "peak-bm-A0"} <= failed


def test_reproduce_fresh_build_passes(capsys):
    code, stdout, _ = run(capsys, "reproduce-paper")
    assert code == 0, stdout
