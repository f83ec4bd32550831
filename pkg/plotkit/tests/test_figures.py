import numpy as np
import pytest

from plotkit import (EmptyWindow, FigureSpec, KINDS, MissingColumn,
                     load_columns, render)
from plotkit.cli import main


def test_kinds_catalogue():
    assert set(KINDS) == {"phase_space", "quadrature_trace", "sync_trace",
                          "thermal_sweep"}


def test_spec_rejects_unknown_kind(traj_csv, tmp_path):
    with pytest.raises(ValueError, match="unknown panel kind"):
        FigureSpec(str(traj_csv), "pie_chart", str(tmp_path / "x.png"))


def test_load_columns_values(traj_csv):
    cols = load_columns(traj_csv, ("t", "qbar1", "Sq_phi"))
    assert len(cols["t"]) == 400
    assert cols["t"][1] == pytest.approx(0.05)
    assert np.all(cols["Sq_phi"] == 0.95)
    # the sentinel-bearing Sc column is simply never parsed
    assert "Sc" not in cols


def test_load_columns_missing(traj_csv):
    with pytest.raises(MissingColumn, match="no_such"):
        load_columns(traj_csv, ("t", "no_such"))


def test_load_columns_empty_file(tmp_path):
    blank = tmp_path / "blank.csv"
    blank.write_text("")
    with pytest.raises(EmptyWindow):
        load_columns(blank, ("t",))


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("ext", ["png", "svg"])
def test_render_all_kinds_idempotent(kind, ext, traj_csv, sweep_csv, tmp_path):
    src = sweep_csv if kind == "thermal_sweep" else traj_csv
    out = tmp_path / f"{kind}.{ext}"
    spec = FigureSpec(str(src), kind, str(out))
    assert render(spec) == out
    first = out.read_bytes()
    assert len(first) > 1000
    render(spec)
    assert out.read_bytes() == first


def test_render_window(traj_csv, tmp_path):
    out = tmp_path / "w.png"
    render(FigureSpec(str(traj_csv), "phase_space", str(out),
                      window=(5.0, 10.0)))
    assert out.exists()


def test_render_window_outside_range(traj_csv, tmp_path):
    with pytest.raises(EmptyWindow, match="selects no rows"):
        render(FigureSpec(str(traj_csv), "sync_trace",
                          str(tmp_path / "x.png"), window=(100.0, 200.0)))
    assert not (tmp_path / "x.png").exists()  # no image on error


def test_render_header_only(empty_csv, tmp_path):
    with pytest.raises(EmptyWindow, match="no data rows"):
        render(FigureSpec(str(empty_csv), "quadrature_trace",
                          str(tmp_path / "x.png")))


def test_render_sweep_window_on_nm(sweep_csv, tmp_path):
    out = tmp_path / "sw.png"
    render(FigureSpec(str(sweep_csv), "thermal_sweep", str(out),
                      window=(0.0, 1.0)))
    assert out.exists()


def test_cli_ok(traj_csv, tmp_path, capsys):
    out = tmp_path / "cli.png"
    code = main(["--kind", "phase_space", "--in", str(traj_csv),
                 "--out", str(out)])
    assert code == 0
    assert out.exists()
    assert "wrote" in capsys.readouterr().out


def test_cli_window(traj_csv, tmp_path):
    out = tmp_path / "cli_w.svg"
    assert main(["--kind", "sync_trace", "--in", str(traj_csv),
                 "--out", str(out), "--window", "2,8"]) == 0


def test_cli_errors(traj_csv, empty_csv, tmp_path, capsys):
    assert main(["--kind", "sync_trace", "--in", str(empty_csv),
                 "--out", str(tmp_path / "a.png")]) == 1
    assert main(["--kind", "phase_space", "--in", str(tmp_path / "nope.csv"),
                 "--out", str(tmp_path / "b.png")]) == 2
    capsys.readouterr()
    with pytest.raises(SystemExit):
        main(["--kind", "phase_space", "--in", str(traj_csv),
              "--out", str(tmp_path / "c.png"), "--window", "9,1"])
    capsys.readouterr()
