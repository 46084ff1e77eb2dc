"""Frame-level Monte Carlo estimation of the erasure probability.

Every (trial, link) pair owns a counter-based Philox substream whose key is a
pure function of the master seed and the pair's indices, so results are
bit-identical regardless of chunking or execution order.  The hot path is a
vectorized kernel that stacks all links of a chunk of trials into one batched
FFT pipeline; it is draw-for-draw identical to composing the per-link
operations in baseband.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.fft

from .analytic import ErasureEstimate
from .baseband import _QPSK
from .config import SystemConfig, VarianceSet, derive_variances

# children per stream; link indices must stay below this
_CHILD_SPAN = 1 << 20
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RandomStream:
    """A named position in a tree of Philox counter-based streams.

    Streams with distinct (master_seed, stream_id) are independent; the same
    pair always reproduces the same sequence.
    """

    master_seed: int
    stream_id: int = 0

    def child(self, index: int) -> "RandomStream":
        if not 0 <= index < _CHILD_SPAN - 1:
            raise ValueError(f"child index {index} out of range")
        new_id = (self.stream_id * _CHILD_SPAN + index + 1) & _MASK64
        return RandomStream(self.master_seed, new_id)

    def generator(self) -> np.random.Generator:
        key = [self.master_seed & _MASK64, self.stream_id]
        return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class Histogram:
    """Normalized empirical density over contiguous bins."""

    bin_edges: np.ndarray
    counts: np.ndarray
    normalized_density: np.ndarray

    def __post_init__(self) -> None:
        widths = np.diff(self.bin_edges)
        mass = float(np.sum(self.normalized_density * widths))
        if abs(mass - 1.0) > 1e-9:
            raise ValueError(f"density integrates to {mass}, not 1")

    @property
    def bin_centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054):
    """95% Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p_hat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p_hat + z2 / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(
        p_hat * (1.0 - p_hat) / trials + z2 / (4.0 * trials * trials)
    )
    # rounding can push the bounds a hair past the point estimate at 0 or n
    low = min(max(0.0, center - half), p_hat)
    high = max(min(1.0, center + half), p_hat)
    return low, high


def _trial_stream(master_seed: int, trial_index: int) -> RandomStream:
    # two-level split keeps every child index inside one span while
    # supporting trial counts far beyond it
    base = _CHILD_SPAN - 1
    root = RandomStream(master_seed)
    return root.child(trial_index % base).child(trial_index // base)


def _link_maxima_batch(
    config: SystemConfig,
    vs: VarianceSet,
    trial_indices: np.ndarray,
    master_seed: int,
):
    """Simulate all links of the given trials in one batched FFT pipeline.

    Returns (max_signal, max_noise) arrays of shape (n_trials, n_links).
    Draw order per stream matches baseband.simulate_link exactly.
    """
    l_p = config.preamble_len
    l_h = config.channel_len
    n_links = config.n_links
    n_trials = len(trial_indices)
    sqrt_es = math.sqrt(config.preamble_energy)
    sqrt_sf = math.sqrt(config.channel_var_1d)
    sqrt_sw = math.sqrt(vs.sigma_w_sq)

    draw_len = 2 * (l_h + l_p)
    raw = np.empty((n_trials, n_links, draw_len))
    s_freq = np.empty((n_trials, l_p), dtype=complex)
    for t, trial in enumerate(trial_indices):
        ts = _trial_stream(master_seed, int(trial))
        g = ts.child(0).generator()
        s_freq[t] = sqrt_es * _QPSK[g.integers(0, 4, size=l_p)]
        for link in range(n_links):
            raw[t, link] = ts.child(1 + link).generator().standard_normal(draw_len)

    # same draw order as baseband.simulate_link: channel block, then noise
    h = np.zeros((n_trials, n_links, l_p), dtype=complex)
    h[..., :l_h] = sqrt_sf * (raw[..., :l_h] + 1j * raw[..., l_h : 2 * l_h])
    w = sqrt_sw * (
        raw[..., 2 * l_h : 2 * l_h + l_p] + 1j * raw[..., 2 * l_h + l_p :]
    )
    del raw
    h_freq = scipy.fft.fft(h, axis=-1)
    conv = scipy.fft.ifft(s_freq[:, None, :] * h_freq, axis=-1)
    if config.omega_0 != 0.0:
        conv *= np.exp(1j * config.omega_0 * np.arange(l_p))
    r = conv + w
    taps = scipy.fft.ifft(
        scipy.fft.fft(r, axis=-1) * np.conj(s_freq[:, None, :]) / config.preamble_energy,
        axis=-1,
    )
    power = np.abs(taps) ** 2
    return power[..., :l_h].max(axis=-1), power[..., l_h:].max(axis=-1)


def run_frame_trial(
    config: SystemConfig, vs: VarianceSet, rng_or_trial, master_seed: int = 0
) -> bool:
    """Simulate one frame (all N_rt * N^2 links); True iff any link erased.

    Accepts either a RandomStream or a plain trial index (with master_seed).
    """
    if isinstance(rng_or_trial, RandomStream):
        ts = rng_or_trial
    else:
        ts = _trial_stream(master_seed, int(rng_or_trial))
    from .baseband import generate_preamble, simulate_link

    s_freq = generate_preamble(
        config.preamble_len, config.preamble_energy, ts.child(0).generator()
    )
    erased = False
    for link in range(config.n_links):
        obs = simulate_link(config, vs, s_freq, ts.child(1 + link).generator())
        erased = erased or obs.erased
    return erased


def estimate_erasure_mc(
    config: SystemConfig,
    trials: int,
    master_seed: int,
    chunk_size: int = 256,
    progress=None,
) -> ErasureEstimate:
    """Erased-frame fraction over `trials` frames with a 95% Wilson interval.

    Deterministic for fixed (config, trials, master_seed) regardless of
    chunk_size.  `progress`, if given, is called with (done, total).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    vs = derive_variances(config)
    erased_frames = 0
    erased_links = 0
    for start in range(0, trials, chunk_size):
        idx = np.arange(start, min(start + chunk_size, trials))
        max_sig, max_noise = _link_maxima_batch(config, vs, idx, master_seed)
        link_erased = max_sig <= max_noise
        erased_links += int(link_erased.sum())
        erased_frames += int(link_erased.any(axis=1).sum())
        if progress is not None:
            progress(int(idx[-1]) + 1, trials)
    p = erased_frames / trials
    ci_low, ci_high = wilson_interval(erased_frames, trials)
    p_ne_one = 1.0 - erased_links / (trials * config.n_links)
    return ErasureEstimate(
        p_erasure=p,
        p_ne_one=p_ne_one,
        method="monte_carlo",
        ci_low=ci_low,
        ci_high=ci_high,
        trials=trials,
        seed=master_seed,
    )


def collect_link_maxima(
    config: SystemConfig,
    trials: int,
    master_seed: int,
    chunk_size: int = 256,
):
    """Per-link region maxima over `trials` frames, flattened across links."""
    sig_parts, noise_parts = [], []
    vs = derive_variances(config)
    for start in range(0, trials, chunk_size):
        idx = np.arange(start, min(start + chunk_size, trials))
        max_sig, max_noise = _link_maxima_batch(config, vs, idx, master_seed)
        sig_parts.append(max_sig.ravel())
        noise_parts.append(max_noise.ravel())
    return np.concatenate(sig_parts), np.concatenate(noise_parts)


def _histogram(values: np.ndarray, bins: int) -> Histogram:
    counts, edges = np.histogram(values, bins=bins)
    density = counts / (counts.sum() * np.diff(edges))
    return Histogram(bin_edges=edges, counts=counts, normalized_density=density)


def histogram_max_statistics(
    config: SystemConfig, trials: int, master_seed: int, bins: int = 100
):
    """Empirical densities of the two region maxima (signal first)."""
    if trials < 1000:
        raise ValueError("need at least 1000 trials for stable histograms")
    max_sig, max_noise = collect_link_maxima(config, trials, master_seed)
    return _histogram(max_sig, bins), _histogram(max_noise, bins)
