import json
import math

import numpy as np
import pytest

from relphase import TwoModeState, state_to_json
from relphase.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows_of(text):
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    data = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    return header, data


def test_phase_vacuum_uniform(capsys):
    code, out, _ = run(capsys, "phase", "--state", "num:0", "--k", "16")
    assert code == 0
    header, data = rows_of(out)
    assert header == ["phi", "density"]
    assert np.allclose(data[:, 1], 1 / (2 * np.pi))


def test_phase_coherent_peaks_at_zero(capsys):
    code, out, _ = run(capsys, "phase", "--state", "coh:1", "--k", "1024")
    assert code == 0
    _, data = rows_of(out)
    assert abs(data[np.argmax(data[:, 1]), 0]) < 1e-12


def test_phase_aliasing_is_exit_3(capsys):
    code, _, err = run(capsys, "phase", "--state", "coh:9", "--k", "8")
    assert code == 3
    assert "aliasing" in err


def test_bad_spec_is_exit_2(capsys):
    code, _, err = run(capsys, "phase", "--state", "wat:7")
    assert code == 2
    assert "wat:7" in err


def test_truncation_error_is_exit_3(capsys):
    code, _, err = run(capsys, "phase", "--state", "coh:9", "--n-max", "5")
    assert code == 3
    assert "n_max" in err


def test_pb_masses_and_report(capsys, tmp_path):
    report = tmp_path / "conv.json"
    code, out, _ = run(
        capsys, "pb", "--state", "coh:1", "--s", "64,128,256", "--report", str(report)
    )
    assert code == 0
    header, data = rows_of(out)
    assert header == ["s", "theta", "mass"]
    assert data.shape[0] == 65 + 129 + 257
    for s in (64, 128, 256):
        sel = data[data[:, 0] == s]
        assert abs(sel[:, 2].sum() - 1.0) < 1e-10
    doc = json.loads(report.read_text())
    ds = [entry["distance"] for entry in doc]
    assert [entry["s"] for entry in doc] == [64, 128, 256]
    assert ds[0] > ds[1] > ds[2]


def test_moments_fields_and_values(capsys):
    code, out, _ = run(capsys, "moments", "--state", "num:5")
    assert code == 0
    doc = json.loads(out)
    for name in ("mean_Y1", "mean_Y2", "second_Y1", "second_Y2", "var_X", "var_P"):
        assert name in doc
    assert doc["mean_Y1"] == doc["mean_Y2"] == 0.0
    assert abs(doc["second_Y1"] + doc["second_Y2"] - 1.0) < 1e-12
    code, out, _ = run(capsys, "moments", "--state", "coh:4")
    doc = json.loads(out)
    assert abs(doc["var_X"] - 0.5) < 1e-8


def test_sweep_slices_normalized(capsys):
    code, out, _ = run(capsys, "sweep", "--pol", "xsup:1,1;2,1", "--kt", "16", "--k", "64")
    assert code == 0
    header, data = rows_of(out)
    assert header == ["t", "phi", "density"]
    t0 = data[data[:, 0] == 0.0]
    assert abs(t0[:, 2].mean() * 2 * np.pi - 1.0) < 1e-8
    assert abs(t0[np.argmax(t0[:, 2]), 1]) < 1e-12  # peak up along x


def test_sweep_reports_gaps(capsys, tmp_path):
    # (|0,0> + |1,1>)/sqrt(2) loses all conditioning probability at t = pi/2
    state = TwoModeState(
        {(0, 0): 1 / math.sqrt(2), (1, 1): 1 / math.sqrt(2)}, 2
    )
    path = tmp_path / "state.json"
    path.write_text(state_to_json(state))
    code, out, err = run(
        capsys, "sweep", "--pol", f"file:{path}", "--kt", "17", "--k", "32"
    )
    assert code == 0
    assert "skipped" in err
    _, data = rows_of(out)
    times = set(data[:, 0])
    assert not any(abs(t - math.pi / 2) < 1e-9 for t in times)


def test_ellipse_db_contrast(capsys):
    code, out, _ = run(capsys, "ellipse", "--pol", "xcoh:9", "--db", "--k", "512")
    assert code == 0
    header, data = rows_of(out)
    assert header == ["phi", "db"]
    k = data.shape[0]
    assert data[:, 1].max() == 60.0
    y_axis_db = data[3 * k // 4, 1]
    assert 60.0 - y_axis_db == pytest.approx(37.55, abs=0.3)


def test_ellipse_one_photon_zeros(capsys):
    code, out, _ = run(capsys, "ellipse", "--pol", "xnum:1", "--k", "64")
    assert code == 0
    _, data = rows_of(out)
    assert data[16, 1] < 1e-14 and data[48, 1] < 1e-14


def test_ellipse_flat_for_vacuum(capsys):
    code, out, _ = run(capsys, "ellipse", "--pol", "xcoh:0", "--db", "--k", "64")
    assert code == 0
    _, data = rows_of(out)
    assert np.allclose(data[:, 1], 60.0)


def test_timepdf_single_branch_uniform(capsys):
    code, out, _ = run(capsys, "timepdf", "--pol", "xnum:2", "--kt", "64")
    assert code == 0
    header, data = rows_of(out)
    assert header == ["t", "density"]
    assert np.allclose(data[:, 1], 1 / (2 * np.pi))


def test_timepdf_coherent_concentrates(capsys):
    code, out, _ = run(capsys, "timepdf", "--pol", "xcoh:9", "--kt", "256")
    assert code == 0
    _, data = rows_of(out)
    # density lives near t=0 (grid midpoint); the quarter period is suppressed
    k = data.shape[0]
    assert data[3 * k // 4, 1] / data[k // 2, 1] < 1e-3


def test_timepdf_shared_m_interference(capsys):
    # 0+2 photons share m=0 across branches: density 1 + cos(2t)/sqrt(2) up to 2pi
    code, out, _ = run(capsys, "timepdf", "--pol", "xsup:0,1;2,1", "--kt", "64")
    assert code == 0
    _, data = rows_of(out)
    want = (1 + np.cos(2 * data[:, 0]) / math.sqrt(2)) / (2 * np.pi)
    assert np.abs(data[:, 1] - want).max() < 1e-12


def test_timepdf_disjoint_m_uniform(capsys):
    # 1+2 photons share no m value: constant conditioning probability
    code, out, _ = run(capsys, "timepdf", "--pol", "xsup:1,1;2,1", "--kt", "32")
    assert code == 0
    _, data = rows_of(out)
    assert np.allclose(data[:, 1], 1 / (2 * np.pi))


def test_outputs_are_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, _, _ = run(capsys, "ellipse", "--pol", "xcoh:4", "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_json_format_option(capsys):
    code, out, _ = run(capsys, "phase", "--state", "num:1", "--k", "8", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["columns"] == ["phi", "density"]
    assert len(doc["rows"]) == 8


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "relphase" in capsys.readouterr().out


def test_file_state_round_trip(capsys, tmp_path):
    from relphase import make_number_state

    path = tmp_path / "s.json"
    _, out, _ = run(capsys, "phase", "--state", "num:1", "--k", "16")
    path.write_text(state_to_json(make_number_state(1, 1)))
    code, out_file, _ = run(capsys, "phase", "--state", f"file:{path}", "--k", "16")
    assert code == 0
    assert out_file == out


def test_missing_file_is_exit_2(capsys):
    code, _, err = run(capsys, "phase", "--state", "file:/nonexistent.json")
    assert code == 2
