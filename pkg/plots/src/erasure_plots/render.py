"""Render erasure-probability panels and pdf overlays from result CSVs.

Pure presentation: every number plotted is read from the CSV, nothing is
recomputed.  Rendering is deterministic for a fixed input file.
"""

from __future__ import annotations

import csv
from collections import defaultdict
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

RESULT_COLUMNS = [
    "snr_db", "n", "n_rt", "lp", "lh", "ld", "foff_fac", "method",
    "p_erasure", "p_ne_one", "ci_low", "ci_high", "trials", "seed",
]
PDF_COLUMNS = [
    "statistic", "snr_db", "n", "n_rt", "lp", "lh", "bin_low", "bin_high",
    "count", "density", "analytic_density", "trials", "seed",
]

_STYLE = {
    "figure.figsize": (6.0, 4.5),
    "figure.dpi": 110,
    "savefig.dpi": 150,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "grid.linestyle": "--",
    "font.size": 9,
    "lines.linewidth": 1.2,
    "lines.markersize": 4,
}


class SchemaError(ValueError):
    """The CSV does not match the expected result schema."""


@dataclass(frozen=True)
class PlotSpec:
    csv_path: str
    panel: str = "erasure"
    output_path: str = "plot.png"
    log_y: bool = True


def _read_rows(path: str, expected_columns: list[str]) -> list[dict]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        names = reader.fieldnames or []
        for i, col in enumerate(expected_columns):
            if i >= len(names) or names[i] != col:
                found = names[i] if i < len(names) else "<missing>"
                raise SchemaError(
                    f"{path}: expected column {i} to be {col!r}, found {found!r}"
                )
        if len(names) > len(expected_columns):
            raise SchemaError(
                f"{path}: unexpected extra column {names[len(expected_columns)]!r}"
            )
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def plot_erasure_panel(spec: PlotSpec):
    """One curve per (method, N_rt) or (method, FOFF_FAC), log-scale y.

    Returns the figure after writing it to spec.output_path.
    """
    rows = _read_rows(spec.csv_path, RESULT_COLUMNS)

    foffs = {row["foff_fac"] for row in rows}
    family_key = "foff_fac" if len(foffs) > 1 else "n_rt"
    curves = defaultdict(list)
    for row in rows:
        key = (row["method"], row["n"], row[family_key])
        curves[key].append((float(row["snr_db"]), float(row["p_erasure"])))

    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        for (method, n, family) in sorted(curves):
            pts = sorted(curves[(method, n, family)])
            style = "o--" if method == "monte_carlo" else "-"
            label = f"{method}, N={n}, {family_key}={family}"
            ax.plot([p[0] for p in pts], [p[1] for p in pts], style, label=label)
        if spec.log_y:
            ax.set_yscale("log")
        ax.set_xlabel("average SNR per bit (dB)")
        ax.set_ylabel("probability of erasure")
        ax.legend(fontsize=7)
        fig.savefig(spec.output_path)
        plt.close(fig)
    return fig


def plot_pdf_overlay(spec: PlotSpec):
    """Histogram bars with the analytic max-pdf curve, shared axes per
    statistic."""
    rows = _read_rows(spec.csv_path, PDF_COLUMNS)

    groups = defaultdict(list)
    for row in rows:
        groups[(row["statistic"], row["snr_db"], row["n_rt"])].append(row)

    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        for (stat, snr, n_rt) in sorted(groups):
            grp = groups[(stat, snr, n_rt)]
            lows = [float(r["bin_low"]) for r in grp]
            highs = [float(r["bin_high"]) for r in grp]
            centers = [(a + b) / 2 for a, b in zip(lows, highs)]
            widths = [b - a for a, b in zip(lows, highs)]
            ax.bar(
                centers,
                [float(r["density"]) for r in grp],
                width=widths,
                alpha=0.35,
                label=f"empirical {stat}, snr={snr}, n_rt={n_rt}",
            )
            ax.plot(
                centers,
                [float(r["analytic_density"]) for r in grp],
                "-",
                label=f"analytic {stat}, snr={snr}, n_rt={n_rt}",
            )
        ax.set_xlabel("squared tap magnitude")
        ax.set_ylabel("density")
        ax.legend(fontsize=7)
        fig.savefig(spec.output_path)
        plt.close(fig)
    return fig
