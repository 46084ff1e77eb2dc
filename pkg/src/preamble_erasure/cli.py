"""Command-line front end for erasure-probability sweeps.

Examples:
    erasure-sim --panel a --method quadrature monte_carlo --trials 100000 \
        --seed 1 --out panel_a.csv
    erasure-sim --panel pdf --snr-db 0 4 8 --trials 10000 --out pdf_data.csv
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import ConfigError, SystemConfig, config_from_file
from .sweeps import (
    DEFAULT_FOFF,
    SweepError,
    SweepSpec,
    emit_csv,
    emit_pdf_csv,
    print_progress,
    run_panel,
    run_pdf_panel,
)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="erasure-sim",
        description="Erasure probability of MIMO-OFDM preamble detection: "
        "closed form, quadrature and Monte Carlo.",
    )
    p.add_argument("--panel", choices=["a", "b", "c", "d", "pdf", "custom"],
                   default="custom")
    p.add_argument("--n", type=int, help="antenna count (transmit = receive)")
    p.add_argument("--n-rt", type=int, nargs="+", help="re-transmission counts")
    p.add_argument("--lp", type=int, help="preamble length (power of two)")
    p.add_argument("--lh", type=int, help="channel length")
    p.add_argument("--ld", type=int, help="data length (SNR definition only)")
    p.add_argument("--snr-db", type=float, nargs="+", help="SNR grid in dB")
    p.add_argument("--foff-fac", type=float, nargs="+",
                   help="frequency offsets as fractions of subcarrier spacing")
    p.add_argument("--es", type=float, help="per-subcarrier preamble energy")
    p.add_argument("--sigma-f-sq", type=float,
                   help="per-dimension channel tap variance")
    p.add_argument("--method", nargs="+",
                   choices=["closed_form", "closed-form", "quadrature",
                            "monte_carlo", "monte-carlo"],
                   help="estimation methods to run")
    p.add_argument("--trials", type=int, default=100_000,
                   help="Monte Carlo frames per point")
    p.add_argument("--seed", type=int, default=1, help="master seed")
    p.add_argument("--precision-bits", type=int, default=4096)
    p.add_argument("--delta", type=float, default=1e-3,
                   help="quadrature step size")
    p.add_argument("--zmax", type=float,
                   help="quadrature upper limit (default: auto)")
    p.add_argument("--bins", type=int, default=100,
                   help="histogram bins for --panel pdf")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--config", help="key=value config file with base parameters")
    p.add_argument("--quiet", action="store_true", help="suppress the progress counter")
    return p


def spec_from_args(args: argparse.Namespace) -> SweepSpec:
    base = config_from_file(args.config) if args.config else SystemConfig()
    overrides = {}
    for attr, field_name in (
        ("n", "n_antennas"),
        ("lp", "preamble_len"),
        ("lh", "channel_len"),
        ("ld", "data_len"),
        ("es", "preamble_energy"),
        ("sigma_f_sq", "channel_var_1d"),
    ):
        value = getattr(args, attr)
        if value is not None:
            overrides[field_name] = value
    if overrides:
        base = replace(base, **overrides)

    methods = tuple(
        m.replace("-", "_") for m in (args.method or ["quadrature", "monte_carlo"])
    )
    kwargs = dict(
        panel=args.panel,
        methods=methods,
        trials=args.trials,
        master_seed=args.seed,
        output_path=args.out,
        base=base,
        delta=args.delta,
        z_max=args.zmax,
        precision_bits=args.precision_bits,
    )
    if args.snr_db is not None:
        kwargs["snr_points_db"] = list(args.snr_db)
    if args.n_rt is not None:
        kwargs["n_rt_list"] = list(args.n_rt)
    if args.foff_fac is not None:
        kwargs["foff_fac_list"] = list(args.foff_fac)
    elif args.panel == "d":
        kwargs["foff_fac_list"] = list(DEFAULT_FOFF)
    return SweepSpec(**kwargs)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    progress = None if args.quiet else print_progress
    try:
        spec = spec_from_args(args)
        if spec.panel == "pdf":
            rows = run_pdf_panel(spec, bins=args.bins, progress=progress)
            emit_pdf_csv(rows, args.out)
        else:
            rows = run_panel(spec, progress=progress)
            emit_csv(rows, args.out)
    except (ConfigError, SweepError, OSError, ValueError, ArithmeticError) as exc:
        print(f"erasure-sim: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
