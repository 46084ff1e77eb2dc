"""SNR sweeps reproducing the result panels, and CSV emission."""

from __future__ import annotations

import csv
import sys
from dataclasses import dataclass, field, replace

from .analytic import (
    QuadratureSpec,
    TailPair,
    analytic_estimate,
    pdf_max_noise,
    pdf_max_signal,
)
from .config import SystemConfig, derive_variances
from .montecarlo import estimate_erasure_mc, histogram_max_statistics

CSV_HEADER = (
    "snr_db,n,n_rt,lp,lh,ld,foff_fac,method,p_erasure,p_ne_one,"
    "ci_low,ci_high,trials,seed"
)
PDF_CSV_HEADER = (
    "statistic,snr_db,n,n_rt,lp,lh,bin_low,bin_high,count,density,"
    "analytic_density,trials,seed"
)

ANALYTIC_METHODS = ("closed_form", "quadrature")
ALL_METHODS = ANALYTIC_METHODS + ("monte_carlo",)

DEFAULT_SNR_GRID = [float(s) for s in range(0, 11)]
DEFAULT_N_RT = [1, 2, 3, 4]
DEFAULT_FOFF = [0.0, 0.05, 0.1, 0.2]


class SweepError(ValueError):
    """Invalid sweep request."""


@dataclass(frozen=True)
class SweepSpec:
    """One sweep request: which panel, grids, methods and budgets."""

    panel: str = "custom"
    snr_points_db: list = field(default_factory=lambda: list(DEFAULT_SNR_GRID))
    n_rt_list: list = field(default_factory=lambda: list(DEFAULT_N_RT))
    foff_fac_list: list = field(default_factory=lambda: [0.0])
    methods: tuple = ("quadrature", "monte_carlo")
    trials: int = 100_000
    master_seed: int = 1
    output_path: str | None = None
    base: SystemConfig = field(default_factory=SystemConfig)
    delta: float = 1e-3
    z_max: float | None = None
    precision_bits: int = 4096

    def __post_init__(self) -> None:
        if self.panel not in ("a", "b", "c", "d", "pdf", "custom"):
            raise SweepError(f"unknown panel {self.panel!r}")
        if not self.snr_points_db:
            raise SweepError("snr_points_db must be non-empty")
        if not self.methods:
            raise SweepError("methods must be non-empty")
        for m in self.methods:
            if m not in ALL_METHODS:
                raise SweepError(f"unknown method {m!r}")


@dataclass(frozen=True)
class ResultRow:
    """One (sweep point, method) result."""

    snr_db: float
    n: int
    n_rt: int
    lp: int
    lh: int
    ld: int
    foff_fac: float
    method: str
    p_erasure: float
    p_ne_one: float
    ci_low: float
    ci_high: float
    trials: int
    seed: int


def _panel_jobs(spec: SweepSpec):
    """Expand a sweep spec into (config, methods) jobs.

    Panels pin the scenario shape from the reference setups: (a) N=4 and
    (b) N=8 with a 512-sample preamble and N_rt swept, (c) doubled preamble
    and data lengths at N_rt=2 for both antenna counts, (d) Monte Carlo with
    the frequency-offset factor swept.
    """
    base = spec.base
    if spec.panel == "a":
        base = replace(base, n_antennas=4, preamble_len=512, channel_len=10,
                       data_len=1024, foff_fac=0.0)
        grid = [(base, n_rt, 0.0) for n_rt in spec.n_rt_list]
    elif spec.panel == "b":
        base = replace(base, n_antennas=8, preamble_len=512, channel_len=10,
                       data_len=1024, foff_fac=0.0)
        grid = [(base, n_rt, 0.0) for n_rt in spec.n_rt_list]
    elif spec.panel == "c":
        base = replace(base, preamble_len=1024, channel_len=10, data_len=2048,
                       foff_fac=0.0)
        grid = [(replace(base, n_antennas=n), 2, 0.0) for n in (4, 8)]
    elif spec.panel == "d":
        grid = [
            (base, n_rt, foff)
            for n_rt in spec.n_rt_list
            for foff in spec.foff_fac_list
        ]
    else:  # custom
        grid = [
            (base, n_rt, foff)
            for n_rt in spec.n_rt_list
            for foff in spec.foff_fac_list
        ]

    methods = spec.methods
    if spec.panel == "d":
        methods = tuple(m for m in methods if m == "monte_carlo") or ("monte_carlo",)

    jobs = []
    for cfg, n_rt, foff in grid:
        for snr in spec.snr_points_db:
            cfg_point = replace(
                cfg, n_retransmissions=n_rt, foff_fac=foff, snr_av_b_p_db=snr
            )
            jobs.append((cfg_point, methods))
    return jobs


def _estimate(config: SystemConfig, method: str, spec: SweepSpec, progress=None):
    vs = derive_variances(config)
    if method in ANALYTIC_METHODS:
        if config.foff_fac != 0.0:
            raise SweepError(
                f"method {method!r} has no frequency-offset model; "
                "use monte_carlo for foff_fac != 0"
            )
        tp = TailPair.from_variances(config, vs)
        q = None
        if spec.z_max is not None:
            n_steps = round(spec.z_max / spec.delta)
            q = QuadratureSpec(
                delta=spec.delta, z_max=n_steps * spec.delta, n_steps=n_steps
            )
        return analytic_estimate(
            tp,
            config.n_antennas,
            config.n_retransmissions,
            method=method,
            q=q,
            precision_bits=spec.precision_bits,
        )
    return estimate_erasure_mc(
        config, spec.trials, spec.master_seed, progress=progress
    )


def run_panel(spec: SweepSpec, progress=None):
    """Run all points of a sweep; returns deterministically sorted rows."""
    if spec.panel == "pdf":
        raise SweepError("use run_pdf_panel for the pdf panel")
    rows = []
    jobs = _panel_jobs(spec)
    for i, (cfg, methods) in enumerate(jobs):
        for method in methods:
            est = _estimate(cfg, method, spec)
            rows.append(
                ResultRow(
                    snr_db=cfg.snr_av_b_p_db,
                    n=cfg.n_antennas,
                    n_rt=cfg.n_retransmissions,
                    lp=cfg.preamble_len,
                    lh=cfg.channel_len,
                    ld=cfg.data_len,
                    foff_fac=cfg.foff_fac,
                    method=method,
                    p_erasure=est.p_erasure,
                    p_ne_one=est.p_ne_one,
                    ci_low=est.ci_low,
                    ci_high=est.ci_high,
                    trials=est.trials,
                    seed=est.seed,
                )
            )
        if progress is not None:
            progress(i + 1, len(jobs))
    rows.sort(
        key=lambda r: (r.n, r.n_rt, r.foff_fac, r.snr_db, r.method)
    )
    return rows


def run_pdf_panel(spec: SweepSpec, bins: int = 100, progress=None):
    """Histogram rows for the pdf-of-maximum figures, with the analytic pdf
    evaluated at bin centers so plot scripts never recompute anything."""
    rows = []
    for j, snr in enumerate(spec.snr_points_db):
        for n_rt in spec.n_rt_list:
            cfg = replace(
                spec.base, n_retransmissions=n_rt, snr_av_b_p_db=snr, foff_fac=0.0
            )
            vs = derive_variances(cfg)
            tp = TailPair.from_variances(cfg, vs)
            hist_sig, hist_noise = histogram_max_statistics(
                cfg, spec.trials, spec.master_seed, bins=bins
            )
            for name, hist, pdf in (
                ("max_signal", hist_sig, pdf_max_signal),
                ("max_noise", hist_noise, pdf_max_noise),
            ):
                centers = hist.bin_centers
                analytic = pdf(centers, tp)
                for b in range(len(hist.counts)):
                    rows.append(
                        (
                            name,
                            snr,
                            cfg.n_antennas,
                            n_rt,
                            cfg.preamble_len,
                            cfg.channel_len,
                            float(hist.bin_edges[b]),
                            float(hist.bin_edges[b + 1]),
                            int(hist.counts[b]),
                            float(hist.normalized_density[b]),
                            float(analytic[b]),
                            spec.trials,
                            spec.master_seed,
                        )
                    )
        if progress is not None:
            progress(j + 1, len(spec.snr_points_db))
    return rows


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def emit_csv(rows, path: str) -> None:
    """Write result rows with the stable schema and 12 significant digits."""
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(CSV_HEADER + "\n")
            for r in rows:
                fh.write(
                    ",".join(
                        _fmt(v)
                        for v in (
                            r.snr_db, r.n, r.n_rt, r.lp, r.lh, r.ld, r.foff_fac,
                            r.method, r.p_erasure, r.p_ne_one, r.ci_low,
                            r.ci_high, r.trials, r.seed,
                        )
                    )
                    + "\n"
                )
    except OSError as exc:
        raise OSError(f"cannot write results to {path!r}: {exc}") from exc


def emit_pdf_csv(rows, path: str) -> None:
    """Write pdf-histogram rows (see PDF_CSV_HEADER)."""
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(PDF_CSV_HEADER + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write results to {path!r}: {exc}") from exc


def read_csv(path: str):
    """Parse a result CSV back into ResultRow objects."""
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER.split(","):
            raise SweepError(f"{path}: unexpected CSV header {reader.fieldnames}")
        for rec in reader:
            rows.append(
                ResultRow(
                    snr_db=float(rec["snr_db"]),
                    n=int(rec["n"]),
                    n_rt=int(rec["n_rt"]),
                    lp=int(rec["lp"]),
                    lh=int(rec["lh"]),
                    ld=int(rec["ld"]),
                    foff_fac=float(rec["foff_fac"]),
                    method=rec["method"],
                    p_erasure=float(rec["p_erasure"]),
                    p_ne_one=float(rec["p_ne_one"]),
                    ci_low=float(rec["ci_low"]),
                    ci_high=float(rec["ci_high"]),
                    trials=int(rec["trials"]),
                    seed=int(rec["seed"]),
                )
            )
    return rows


def print_progress(done: int, total: int, stream=sys.stderr) -> None:
    stream.write(f"\r{done}/{total}")
    stream.flush()
    if done == total:
        stream.write("\n")
