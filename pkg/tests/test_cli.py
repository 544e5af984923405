import json

import numpy as np
import pytest

from qcherenkov.cli import main
from qcherenkov.io import read_table_csv


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_angle_conventional(capsys):
    code, out, _ = run_cli(capsys, "angle", "--beta", "0.75", "--n", "1.5")
    assert code == 0
    assert "27.266" in out


def test_angle_at_cutoff_tangency(capsys):
    code, out, _ = run_cli(capsys, "angle", "--beta", "0.685", "--n", "1.45986",
                           "--theta-i-deg", "10.3", "--photon-ev", "5.08",
                           "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["inner_cone"]["deg"] == pytest.approx(10.3, abs=0.01)
    assert rep["outer_cone"]["deg"] == pytest.approx(10.3, abs=0.01)
    assert rep["backward"] is False


def test_angle_below_threshold_is_success(capsys):
    code, out, _ = run_cli(capsys, "angle", "--beta", "0.5", "--n", "1.3")
    assert code == 0
    assert "below threshold" in out


def test_angle_backward_cone(capsys):
    code, out, _ = run_cli(capsys, "angle", "--beta", "0.99", "--n", "1.5",
                           "--theta-i-deg", "50", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["backward"] is True
    assert rep["outer_cone"]["deg"] > 90.0


def test_angle_requires_exactly_one_medium(capsys):
    code, _, err = run_cli(capsys, "angle", "--beta", "0.7")
    assert code == 1
    assert "exactly one" in err


def test_cutoff_constant_medium(capsys):
    code, out, _ = run_cli(capsys, "cutoff", "--beta", "0.685",
                           "--n", "1.45986", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["cutoff_lambda_nm"] == pytest.approx(243.85, abs=0.01)


def test_cutoff_silica(capsys):
    code, out, _ = run_cli(capsys, "cutoff", "--beta", "0.685",
                           "--material", "silica", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["dispersion_cutoff_nm"] == pytest.approx(551.35, abs=1.0)
    assert rep["quantum_cutoff_nm"] == pytest.approx(551.29, abs=1.0)


def test_cutoff_below_threshold(capsys):
    code, out, _ = run_cli(capsys, "cutoff", "--beta", "0.3", "--n", "1.5")
    assert code == 0
    assert "below threshold" in out


def test_spectrum_with_bundled_config(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "spectrum", "--config", "fig3b",
                           "--out", str(tmp_path), "--points", "40",
                           "--formats", "csv,json,svg")
    assert code == 0
    csv_path = tmp_path / "fig3b.csv"
    assert csv_path.is_file()
    assert (tmp_path / "fig3b.json").is_file()
    assert (tmp_path / "fig3b.svg").is_file()
    meta, cols = read_table_csv(csv_path)
    flip = cols["rate_flip_azimuthal"]
    lam = cols["lambda_nm"]
    assert np.all(flip[lam < 243.0] == 0.0)
    assert np.all(flip[lam > 245.0] > 0.0)


def test_ampmap_with_bundled_config(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "ampmap", "--config", "fig2b",
                           "--out", str(tmp_path))
    assert code == 0
    meta, cols = read_table_csv(tmp_path / "fig2b.csv")
    assert meta["config"]["scan"]["photon_oam"] == 8
    assert np.any(cols["zone"] == 1)


def test_config_error_reports_line(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n "beam": {,}\n}\n')
    code, _, err = run_cli(capsys, "spectrum", "--config", str(bad))
    assert code == 1
    assert "line 2" in err


def test_schema_violation_exits_one(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "beam": {"beta": 0.685},
        "medium": {"constant_n": 1.45986},
        "scan": {"kind": "spectrum", "lambda_nm": [400.0, 200.0],
                 "points": 10},
    }))
    code, _, err = run_cli(capsys, "spectrum", "--config", str(cfg))
    assert code == 1
    assert "lambda_nm" in err


def test_unknown_config_name(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--config", "fig9z")
    assert code == 1


def test_usage_error_exits_one(capsys):
    assert main(["angle"]) == 1          # missing --beta
    assert main(["no-such-command"]) == 1


def test_oracle_command(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "oracle", "--cases", "4", "--seed", "7",
                           "--out", str(tmp_path))
    assert code == 0
    assert "worst relative error" in out
    table = (tmp_path / "oracle_check.csv").read_text().splitlines()
    assert table[0].startswith("case,l_i,l_f")
    assert len(table) == 5


def test_oracle_disagreement_exits_two(capsys, monkeypatch):
    import qcherenkov.cli as cli

    class Fake:
        value = 1e6
        spread = 0.0
        reliable = True

    monkeypatch.setattr(cli, "oracle_triple_bessel", lambda *a, **k: Fake())
    code = main(["oracle", "--cases", "2", "--seed", "7"])
    assert code == 2
