"""Single-link preamble-phase baseband simulation.

One link is: frequency-domain QPSK preamble -> time domain (IFFT) ->
circular convolution with the channel (ideal cyclic prefix) -> optional
carrier frequency offset -> AWGN -> receiver FFT -> per-subcarrier matched
filter S*/E_s -> IFFT.  The output taps hold channel-plus-noise in the first
L_h positions and pure noise elsewhere; an erasure is a noise-region maximum
reaching the signal-region maximum.

Blocks are plain complex numpy arrays; rng arguments are numpy Generators
(see montecarlo.RandomStream for how streams are derived).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.fft

_QPSK = np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j]) / math.sqrt(2.0)


@dataclass(frozen=True)
class LinkObservation:
    """Post-matched-filter taps and the two region maxima of one link."""

    taps: np.ndarray
    max_signal_region: float
    max_noise_region: float
    erased: bool


def complex_normal(rng: np.random.Generator, n: int, sigma_sq_1d: float) -> np.ndarray:
    """n iid zero-mean complex Gaussians, per-dimension variance sigma_sq_1d.

    Draw order (all real parts, then all imaginary parts) is part of the
    reproducibility contract; the batched Monte Carlo kernel relies on it.
    """
    x = rng.standard_normal(2 * n)
    return math.sqrt(sigma_sq_1d) * (x[:n] + 1j * x[n:])


def generate_preamble(l_p: int, e_s: float, rng: np.random.Generator) -> np.ndarray:
    """Frequency-domain QPSK preamble with per-subcarrier energy e_s exactly."""
    if l_p < 1 or l_p & (l_p - 1):
        raise ValueError(f"preamble length must be a power of two, got {l_p}")
    return math.sqrt(e_s) * _QPSK[rng.integers(0, 4, size=l_p)]


def generate_channel(
    l_h: int, sigma_f_sq: float, rng: np.random.Generator
) -> np.ndarray:
    """l_h iid complex Gaussian taps, per-dimension variance sigma_f_sq."""
    if l_h < 1:
        raise ValueError(f"channel length must be >= 1, got {l_h}")
    return complex_normal(rng, l_h, sigma_f_sq)


def transmit_receive_link(
    s_freq: np.ndarray,
    h: np.ndarray,
    sigma_w_sq: float,
    omega_0: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Time-domain received block for one link.

    r_n = e^{j omega_0 n} (s (*) h)_n + w_n with (*) circular convolution over
    the preamble length (cyclic prefix assumed ideal) and w complex AWGN with
    per-dimension variance sigma_w_sq.
    """
    l_p = len(s_freq)
    # circular convolution of ifft(S) with h, done in the frequency domain
    h_freq = scipy.fft.fft(h, n=l_p)
    conv = scipy.fft.ifft(s_freq * h_freq)
    if omega_0 != 0.0:
        conv = conv * np.exp(1j * omega_0 * np.arange(l_p))
    if sigma_w_sq > 0.0:
        return conv + complex_normal(rng, l_p, sigma_w_sq)
    return conv


def matched_filter_ifft(
    r: np.ndarray, s_freq: np.ndarray, e_s: float
) -> np.ndarray:
    """Receiver FFT, per-subcarrier matched filter S*/E_s, then IFFT.

    Returns the tap-domain block: channel estimate plus noise in the first
    L_h samples, noise alone in the rest.
    """
    if len(r) != len(s_freq):
        raise ValueError(f"length mismatch: {len(r)} vs {len(s_freq)}")
    return scipy.fft.ifft(scipy.fft.fft(r) * np.conj(s_freq) / e_s)


def erasure_test(taps: np.ndarray, l_h: int) -> LinkObservation:
    """Compare the two region maxima; an exact tie counts as erasure."""
    if not 0 < l_h < len(taps):
        raise ValueError(f"need 0 < l_h < len(taps), got l_h={l_h}, {len(taps)} taps")
    power = np.abs(taps) ** 2
    max_sig = float(power[:l_h].max())
    max_noise = float(power[l_h:].max())
    return LinkObservation(
        taps=taps,
        max_signal_region=max_sig,
        max_noise_region=max_noise,
        erased=max_sig <= max_noise,
    )


def simulate_link(
    config, vs, s_freq: np.ndarray, rng: np.random.Generator
) -> LinkObservation:
    """One full link: channel draw, transmission, matched filter, decision.

    Channel and noise are drawn from the same generator, channel first; the
    batched kernel in montecarlo reproduces this order exactly.
    """
    h = generate_channel(config.channel_len, config.channel_var_1d, rng)
    r = transmit_receive_link(s_freq, h, vs.sigma_w_sq, config.omega_0, rng)
    taps = matched_filter_ifft(r, s_freq, config.preamble_energy)
    return erasure_test(taps, config.channel_len)
