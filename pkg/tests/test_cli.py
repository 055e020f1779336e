import json

import numpy as np
import pytest

from dirac_osc import cli
from dirac_osc.observables import band_power


def run(*argv):
    return cli.main([str(a) for a in argv])


def read_csv(path):
    lines = path.read_text().splitlines()
    meta = dict(line[2:].split(" = ", 1) for line in lines[1:] if line.startswith("# "))
    body = [line for line in lines if not line.startswith("#")]
    columns = body[0].split(",")
    data = np.array([[float(v) for v in row.split(",")] for row in body[1:]])
    return meta, columns, data


def test_spins_output_layout(tmp_path):
    out = tmp_path / "s.csv"
    assert run("spins", "--N", 20, "--r", 0.5, "--t-end", 5, "--t_steps", 11, "-o", out) == 0
    text = out.read_text().splitlines()
    assert text[0] == cli.MAGIC
    meta, columns, data = read_csv(out)
    assert columns == list(cli.SPIN_COLUMNS)
    assert data.shape == (11, len(columns))
    assert meta["r"] == "0.5" and meta["representation"] == "dirac"
    for key in cli.CONFIG_KEYS:
        assert key in meta
    # 17 significant digits in scientific notation
    first = text[-1].split(",")[2]
    mantissa = first.lstrip("-").split("e")[0]
    assert len(mantissa.replace(".", "")) == 17
    assert data[0, 2] == pytest.approx(1.0, abs=1e-12)


def test_determinism_and_round_trip(tmp_path):
    a, b, c = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    args = ("spins", "--N", 7, "--r", 0.025, "--beta-im", 0.3, "--t_steps", 9, "--workers", 3)
    assert run(*args, "-o", a) == 0
    assert run(*args, "-o", b) == 0
    assert a.read_bytes() == b.read_bytes()
    assert run("spins", "--config", a, "-o", c) == 0
    assert c.read_bytes() == a.read_bytes()


def test_flags_override_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# base run\nN = 20\nr = 0.5\nt_steps = 5\nrepresentation = fw\n")
    out = tmp_path / "o.csv"
    assert run("spins", "--config", cfg, "--r", 0.025, "-o", out) == 0
    meta, _, data = read_csv(out)
    assert meta["r"] == "0.025" and meta["representation"] == "fw" and data.shape[0] == 5
    assert np.all(data[:, -1] == 0.0)


def test_spin_up_columns_constant(tmp_path):
    out = tmp_path / "up.csv"
    assert run("spins", "--alpha-re", 1, "--beta-re", 0, "--t_steps", 20, "-o", out) == 0
    _, columns, data = read_csv(out)
    for name in ("sigma_x", "sigma_y", "sigma_z"):
        col = data[:, columns.index(name)]
        assert np.ptp(col) < 1e-14


def test_compare_nonrel_period(tmp_path):
    out = tmp_path / "cmp.csv"
    assert run("compare-representations", "--N", 20, "--r", 0.001, "--t_steps", 101, "-o", out) == 0
    meta, columns, data = read_csv(out)
    assert float(meta["t_end"]) == pytest.approx(6283.185, abs=1e-3)
    for name in ("sigma_x_nonrel", "sigma_y_nonrel", "sigma_z_nonrel"):
        col = data[:, columns.index(name)]
        assert col[-1] == pytest.approx(col[0], abs=1e-9)
    # relativistic curves do not close after one nonrelativistic period
    assert abs(data[-1, columns.index("sigma_x_dirac")] - 1.0) > 0.1


def test_fw_washes_out_rapid_fluctuations(tmp_path):
    cols = {}
    for rep in ("dirac", "fw"):
        out = tmp_path / f"{rep}.csv"
        assert run("spins", "--r", 0.5, "--representation", rep, "--t-end", 200, "--t-steps", 8192, "-o", out) == 0
        _, columns, data = read_csv(out)
        cols[rep] = data[:, columns.index("sigma_z")]
        dt = data[1, 0] - data[0, 0]
    assert band_power(cols["dirac"], dt, 1.5) > 10 * band_power(cols["fw"], dt, 1.5)


def test_density_files(tmp_path):
    outdir = tmp_path / "maps"
    assert run("density", "--times", "0,10", "--kinds", "total,negative", "--theta-points", 31,
               "--phi-points", 72, "--workers", 2, "-o", outdir) == 0
    files = sorted(p.name for p in outdir.iterdir())
    assert files == ["density_negative_t0.csv", "density_negative_t10.csv",
                     "density_total_t0.csv", "density_total_t10.csv"]
    meta, columns, data = read_csv(outdir / "density_total_t0.csv")
    assert columns == ["theta", "phi", "value"] and data.shape == (31 * 72, 3)
    assert meta["kind"] == "total" and meta["time"] == "0.0"
    peak = data[np.argmax(data[:, 2])]
    assert peak[0] == pytest.approx(np.pi / 2) and peak[1] == 0.0
    # a density file also works as a config source
    again = tmp_path / "again"
    assert run("density", "--config", outdir / "density_total_t0.csv", "--times", "0", "-o", again) == 0
    assert (again / "density_total_t0.csv").read_bytes() != b""


def test_density_rejects_sector_kinds_outside_dirac(tmp_path, capsys):
    assert run("density", "--representation", "fw", "--kinds", "negative", "-o", tmp_path) == 1
    assert "Dirac" in capsys.readouterr().err


def test_decompose_profiles(tmp_path):
    out = tmp_path / "d.csv"
    assert run("decompose", "--times", 10, "-o", out) == 0
    _, columns, data = read_csv(out)
    assert columns == ["phi", "total", "c1", "c2", "c3", "c4", "positive", "negative"]
    np.testing.assert_allclose(data[:, 1], data[:, 2:6].sum(axis=1), atol=1e-12)
    assert run("decompose", "--times", "1,2", "-o", out) == 1


def test_oracle_check(tmp_path, capsys, monkeypatch):
    out = tmp_path / "o.csv"
    assert run("oracle-check", "--r", 0.5, "--times", "0,1,5,10", "-o", out) == 0
    _, _, data = read_csv(out)
    assert data[0, 1] < 1e-15 and data[:, 1].max() < 1e-10
    assert run("oracle-check", "--r", 0.001, "-o", out) == 0
    assert run("oracle-check", "--basis-cap", 10, "-o", out) == 1
    monkeypatch.setattr(cli, "ORACLE_THRESHOLD", 0.0)
    assert run("oracle-check", "-o", out) == 2
    assert "failed" in capsys.readouterr().err


def test_json_output(tmp_path):
    out = tmp_path / "s.json"
    assert run("spins", "--t_steps", 3, "--format", "json", "-o", out) == 0
    doc = json.loads(out.read_text())
    assert doc["columns"] == list(cli.SPIN_COLUMNS) and len(doc["rows"]) == 3
    assert doc["metadata"]["scenario"] == "spins"


@pytest.mark.parametrize("argv", [
    ["spins", "--bogus", "1"],
    ["nonsense"],
    ["spins", "--N", "-3"],
    ["spins", "--N", "abc"],
    ["spins", "--representation", "pauli"],
    ["spins", "--config", "/nonexistent/cfg"],
])
def test_usage_errors_exit_1(argv, tmp_path):
    with pytest.raises(SystemExit) as exc:
        code = cli.main(argv + ["-o", str(tmp_path / "x.csv")])
        raise SystemExit(code)
    assert exc.value.code == 1


def test_unknown_config_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("N = 20\nfrequency = 3\n")
    assert run("spins", "--config", cfg, "-o", tmp_path / "x.csv") == 1
