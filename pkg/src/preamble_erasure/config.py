"""Scenario parameters and derived noise/tap variances.

The operating point is specified as an average SNR per bit in dB; everything
downstream works with the one-dimensional variances sigma_w^2 (time-domain
AWGN), sigma_Z^2 (signal-region taps) and sigma_Y^2 (noise-only taps).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace


class ConfigError(ValueError):
    """Raised when a scenario parameter set is invalid."""


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class SystemConfig:
    """All scenario parameters for one operating point.

    SNR is accepted in dB and converted to a noise variance exactly once,
    in :func:`sigma_w_sq_from_snr`.
    """

    n_antennas: int = 4
    n_retransmissions: int = 1
    preamble_len: int = 512
    channel_len: int = 10
    data_len: int = 1024
    snr_av_b_p_db: float = 0.0
    foff_fac: float = 0.0
    preamble_energy: float = 2.0
    channel_var_1d: float = 0.5

    def __post_init__(self) -> None:
        if self.n_antennas < 1:
            raise ConfigError(f"n_antennas must be >= 1, got {self.n_antennas}")
        if self.n_retransmissions < 1:
            raise ConfigError(
                f"n_retransmissions must be >= 1, got {self.n_retransmissions}"
            )
        if not _is_power_of_two(self.preamble_len):
            raise ConfigError(
                f"preamble_len must be a power of two, got {self.preamble_len}"
            )
        if self.channel_len < 1:
            raise ConfigError(f"channel_len must be >= 1, got {self.channel_len}")
        if self.channel_len >= self.preamble_len:
            raise ConfigError(
                "channel_len must be < preamble_len "
                f"(got {self.channel_len} >= {self.preamble_len}); the "
                "noise-only tap region would be empty"
            )
        if self.channel_len > self.preamble_len // 4:
            warnings.warn(
                f"channel_len={self.channel_len} exceeds preamble_len/4="
                f"{self.preamble_len // 4}; the short-channel assumption "
                "behind the analysis is weak here",
                stacklevel=2,
            )
        if self.data_len < 1:
            raise ConfigError(f"data_len must be >= 1, got {self.data_len}")
        if not math.isfinite(self.snr_av_b_p_db):
            raise ConfigError(f"snr_av_b_p_db must be finite, got {self.snr_av_b_p_db}")
        if self.foff_fac < 0:
            raise ConfigError(f"foff_fac must be >= 0, got {self.foff_fac}")
        if self.preamble_energy <= 0:
            raise ConfigError(
                f"preamble_energy must be > 0, got {self.preamble_energy}"
            )
        # channel_var_1d = 0 is allowed as a degenerate no-channel case; it is
        # used by the symmetry oracles in the test suite.
        if self.channel_var_1d < 0:
            raise ConfigError(
                f"channel_var_1d must be >= 0, got {self.channel_var_1d}"
            )

    @property
    def n_links(self) -> int:
        """Number of independent preamble links per frame (N_rt * N^2)."""
        return self.n_retransmissions * self.n_antennas**2

    @property
    def omega_0(self) -> float:
        """Carrier frequency offset in radians per sample."""
        return self.foff_fac * 2.0 * math.pi / self.preamble_len

    def with_snr_db(self, snr_db: float) -> "SystemConfig":
        return replace(self, snr_av_b_p_db=snr_db)


@dataclass(frozen=True)
class VarianceSet:
    """One-dimensional variances derived from a config.

    Satisfies sigma_z_sq = channel_var_1d + sigma_y_sq and
    sigma_y_sq = sigma_w_sq / preamble_energy exactly.
    """

    sigma_w_sq: float
    sigma_z_sq: float
    sigma_y_sq: float

    def __post_init__(self) -> None:
        # zero is allowed as the degenerate no-channel/no-noise case that the
        # SNR definition forces when channel_var_1d = 0
        if self.sigma_w_sq < 0:
            raise ConfigError(f"sigma_w_sq must be >= 0, got {self.sigma_w_sq}")
        if self.sigma_y_sq < 0 or self.sigma_z_sq < 0:
            raise ConfigError("tap variances must be >= 0")


def sigma_w_sq_from_snr(config: SystemConfig) -> float:
    """One-dimensional AWGN variance implied by the average SNR per bit.

    sigma_w^2 = 4 L_h sigma_f^2 N N_rt / (L_d * 10^(snr_db/10)).
    """
    snr_lin = 10.0 ** (config.snr_av_b_p_db / 10.0)
    return (
        4.0
        * config.channel_len
        * config.channel_var_1d
        * config.n_antennas
        * config.n_retransmissions
        / (config.data_len * snr_lin)
    )


def derive_variances(config: SystemConfig) -> VarianceSet:
    """Map a config to its noise and per-tap variances."""
    sigma_w_sq = sigma_w_sq_from_snr(config)
    sigma_y_sq = sigma_w_sq / config.preamble_energy
    sigma_z_sq = config.channel_var_1d + sigma_y_sq
    return VarianceSet(
        sigma_w_sq=sigma_w_sq, sigma_z_sq=sigma_z_sq, sigma_y_sq=sigma_y_sq
    )


# keys accepted in key=value config files, mapped to SystemConfig fields
_FILE_KEYS = {
    "n": ("n_antennas", int),
    "n_rt": ("n_retransmissions", int),
    "lp": ("preamble_len", int),
    "lh": ("channel_len", int),
    "ld": ("data_len", int),
    "snr_db": ("snr_av_b_p_db", float),
    "foff_fac": ("foff_fac", float),
    "es": ("preamble_energy", float),
    "sigma_f_sq": ("channel_var_1d", float),
}


def config_from_file(path: str) -> SystemConfig:
    """Build a config from a plain key=value text file.

    Blank lines and '#' comments are ignored; unknown keys are errors.
    """
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _FILE_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            field, cast = _FILE_KEYS[key]
            try:
                values[field] = cast(value.strip())
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key!r}: {exc}")
    return SystemConfig(**values)
