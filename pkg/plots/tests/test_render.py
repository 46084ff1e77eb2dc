import pathlib

import pytest

from erasure_plots import PlotSpec, SchemaError, plot_erasure_panel, plot_pdf_overlay
from erasure_plots.cli import main

DATA = pathlib.Path(__file__).parent / "data"
PANEL_A = str(DATA / "panel_a_golden.csv")
PDF_DATA = str(DATA / "pdf_golden.csv")


def test_panel_a_renders(tmp_path):
    out = tmp_path / "panel_a.png"
    fig = plot_erasure_panel(PlotSpec(csv_path=PANEL_A, output_path=str(out)))
    assert out.stat().st_size > 0
    # two methods x two n_rt values -> four curves
    assert len(fig.axes[0].lines) == 4
    assert fig.axes[0].get_yscale() == "log"


def test_pdf_overlay_renders(tmp_path):
    out = tmp_path / "pdf.png"
    fig = plot_pdf_overlay(PlotSpec(csv_path=PDF_DATA, output_path=str(out)))
    assert out.stat().st_size > 0
    # one analytic curve per (statistic, snr) group: 2 stats x 2 snrs
    assert len(fig.axes[0].lines) == 4


@pytest.mark.parametrize("kind,csv", [("erasure", PANEL_A), ("pdf", PDF_DATA)])
def test_rendering_deterministic(kind, csv, tmp_path):
    outs = []
    for name in ("one.png", "two.png"):
        out = tmp_path / name
        assert main([kind, "--csv", csv, "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_header_only_csv_rejected(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text(open(PANEL_A).readline())
    out = tmp_path / "x.png"
    with pytest.raises(SchemaError, match="no data rows"):
        plot_erasure_panel(PlotSpec(csv_path=str(path), output_path=str(out)))
    assert not out.exists()


def test_schema_mismatch_names_column(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("snr_db,n,n_rt,lp,lh,ld,offset,method\n1,2,3,4,5,6,7,8\n")
    with pytest.raises(SchemaError, match="'foff_fac', found 'offset'"):
        plot_erasure_panel(PlotSpec(csv_path=str(path), output_path="x.png"))


def test_cli_error_exit(tmp_path, capsys):
    rc = main(["erasure", "--csv", str(tmp_path / "missing.csv"),
               "--out", str(tmp_path / "x.png")])
    assert rc == 1
    assert "error" in capsys.readouterr().err


def test_linear_y_flag(tmp_path):
    out = tmp_path / "lin.png"
    assert main(["erasure", "--csv", PANEL_A, "--out", str(out), "--linear-y"]) == 0
    assert out.stat().st_size > 0
