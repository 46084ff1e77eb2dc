"""Erasure probability of MIMO-OFDM preamble detection.

Three independent evaluators of the same quantity: a closed-form alternating
series in extended precision, a double Riemann quadrature over the pdfs of
the two competing tap maxima, and a full baseband Monte Carlo simulation.
"""

from .analytic import (
    ErasureEstimate,
    PrecisionError,
    QuadratureSpec,
    TailPair,
    analytic_estimate,
    cdf_max_noise,
    cdf_max_signal,
    p_erasure_all,
    p_ne_one_closed_form,
    p_ne_one_quadrature,
    pdf_max_noise,
    pdf_max_signal,
)
from .config import (
    ConfigError,
    SystemConfig,
    VarianceSet,
    config_from_file,
    derive_variances,
    sigma_w_sq_from_snr,
)
from .montecarlo import (
    Histogram,
    RandomStream,
    estimate_erasure_mc,
    histogram_max_statistics,
    run_frame_trial,
    wilson_interval,
)
from .sweeps import ResultRow, SweepSpec, emit_csv, read_csv, run_panel

__all__ = [
    "ConfigError",
    "ErasureEstimate",
    "Histogram",
    "PrecisionError",
    "QuadratureSpec",
    "RandomStream",
    "ResultRow",
    "SweepSpec",
    "SystemConfig",
    "TailPair",
    "VarianceSet",
    "analytic_estimate",
    "cdf_max_noise",
    "cdf_max_signal",
    "config_from_file",
    "derive_variances",
    "emit_csv",
    "estimate_erasure_mc",
    "histogram_max_statistics",
    "p_erasure_all",
    "p_ne_one_closed_form",
    "p_ne_one_quadrature",
    "pdf_max_noise",
    "pdf_max_signal",
    "read_csv",
    "run_frame_trial",
    "run_panel",
    "sigma_w_sq_from_snr",
    "wilson_interval",
]

__version__ = "0.1.0"
