import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from dirac_trap.cli import figure_panels, main, parse_sweep, to_csv
from dirac_trap.dirac import PlanarConfig


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_eigen_reference(capsys):
    code, out, _ = run(capsys, "eigen")
    assert code == 0
    table = rows(out)
    assert len(table) == 4
    for r in table:
        assert sum(float(r[f"mod_{x}"]) ** 2 for x in "abcd") == pytest.approx(1, abs=1e-12)


def test_eigen_degenerate_exit_code(capsys):
    code, _, err = run(capsys, "eigen", "--kappa", "0", "--mu", "0")
    assert code == 3
    assert "degenerate g2" in err and "--oracle" in err
    code, out, _ = run(capsys, "eigen", "--kappa", "0", "--mu", "0", "--oracle")
    assert code == 0
    assert all(r["degenerate"] == "1" for r in rows(out))


def test_eigen_right_angle_has_no_chirality(capsys):
    _, out, _ = run(capsys, "eigen", "--theta", repr(np.pi / 2))
    assert all(abs(float(r["chirality"])) <= 1e-12 for r in rows(out))


def test_parameter_errors(capsys):
    assert run(capsys, "eigen", "--p", "-1")[0] == 2
    assert run(capsys, "evolve", "--steps", "1")[0] == 2
    assert run(capsys, "sweep")[0] == 2
    assert run(capsys, "sweep", "--sweep", "zz=0:1:3")[0] == 2
    assert run(capsys, "figure", "9", "--out", "/tmp/unused")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["eigen", "--mode", "2,0"])
    assert exc.value.code == 2


def test_evolve_rows(capsys):
    _, out, _ = run(capsys, "evolve", "--kappa", "0", "--mu", "1", "--steps", "201")
    table = rows(out)
    assert float(table[0]["P_a"]) == pytest.approx(1, abs=1e-15)
    assert float(table[0]["concurrence"]) == pytest.approx(0, abs=1e-15)
    for r in table:
        probs = [float(r[f"P_{x}"]) for x in "abcd"]
        assert sum(probs) == pytest.approx(1, abs=1e-10)
        assert probs[1] == 0.0 and probs[2] == 0.0
        assert float(r["chirality"]) == pytest.approx(2 * (float(r["P_ac"]) + float(r["P_bd"])) - 1, abs=1e-12)


def test_sweep(capsys):
    _, out, _ = run(capsys, "sweep", "--sweep", "m_over_p=0.01:100:5:log", "--format", "json")
    data = json.loads(out)
    assert len(data) == 20
    assert data[0]["m_over_p"] == pytest.approx(0.01)


def test_parse_sweep():
    spec = parse_sweep("theta=0.1:3:7")
    assert (spec.axis, spec.n, spec.log) == ("theta", 7, False)
    with pytest.raises(ValueError):
        parse_sweep("m=1:2")
    with pytest.raises(ValueError):
        parse_sweep("m=-1:2:3:log")


def test_json_complex_pairs(capsys):
    _, out, _ = run(capsys, "eigen", "--format", "json")
    data = json.loads(out)
    assert isinstance(data, list) and len(data) == 4
    phase = data[0]["phase_b"]
    assert isinstance(phase, list) and len(phase) == 2
    assert phase[0] ** 2 + phase[1] ** 2 == pytest.approx(1)


def test_csv_round_trip_and_determinism(capsys, tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    main(["evolve", "--steps", "101", "--out", str(out1)])
    main(["evolve", "--steps", "101", "--out", str(out2)])
    raw = out1.read_bytes()
    assert raw == out2.read_bytes()
    assert b"\r\n" not in raw
    parsed = rows(raw.decode("utf-8"))
    regenerated = to_csv([{k: (float(v)) for k, v in r.items()} for r in parsed])
    assert regenerated == raw.decode("utf-8")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dirac_trap", "eigen", "--format", "csv"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.startswith("m,p,eps,theta,kappa,mu,n,s,lambda")


def test_figure_files(tmp_path, capsys):
    for fig in (2, 3, 4):
        assert main(["figure", str(fig), "--out", str(tmp_path), "--steps", "201"]) == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert "fig2_P_a_to_b.csv" in names and "fig3_m0.csv" in names and "fig4_concurrence.csv" in names
    b = rows((tmp_path / "fig2_P_a_to_b.csv").read_text())
    c = rows((tmp_path / "fig2_P_a_to_c.csv").read_text())
    for table in (b, c):
        for r in table:
            assert float(r["m0_k0_mu1"]) == 0.0 and float(r["m1_k0_mu1"]) == 0.0


def test_figure1_panels_decrease():
    panels = figure_panels(1, PlanarConfig(m=1.0, p=1.0))
    assert set(panels) == {"fig1_m_over_p_s0", "fig1_m_over_p_s1", "fig1_theta_s0", "fig1_theta_s1"}
    for s in (0, 1):
        table = panels[f"fig1_m_over_p_s{s}"]
        for tag in ("k0_mu1", "k1_mu0", "k1_mu1"):
            col = np.array([r[f"C_{tag}"] for r in table])
            assert np.all(np.diff(col) < 0)


def test_figure4_kappa_zero_massive_reaches_one():
    panels = figure_panels(4, PlanarConfig(m=1.0, p=1.0))
    col = [r["m1_k0_mu1"] for r in panels["fig4_concurrence"]]
    assert max(col) >= 1 - 1e-6
