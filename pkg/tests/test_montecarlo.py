import numpy as np
import pytest

from preamble_erasure import (
    SystemConfig,
    TailPair,
    derive_variances,
    estimate_erasure_mc,
    histogram_max_statistics,
    p_ne_one_quadrature,
    run_frame_trial,
    wilson_interval,
)
from preamble_erasure.montecarlo import (
    RandomStream,
    _link_maxima_batch,
    _trial_stream,
    collect_link_maxima,
)

SMALL = dict(preamble_len=64, channel_len=4, data_len=128)


class TestRandomStream:
    def test_same_pair_same_sequence(self):
        a = RandomStream(7, 123).generator().standard_normal(32)
        b = RandomStream(7, 123).generator().standard_normal(32)
        assert np.array_equal(a, b)

    def test_distinct_children_disagree(self):
        root = RandomStream(7)
        a = root.child(0).generator().standard_normal(32)
        b = root.child(1).generator().standard_normal(32)
        assert not np.allclose(a, b)

    def test_child_ids_unique_across_levels(self):
        root = RandomStream(1)
        ids = {root.child(i).stream_id for i in range(100)}
        ids |= {root.child(i).child(j).stream_id for i in range(10) for j in range(10)}
        assert len(ids) == 200

    def test_child_index_bounds(self):
        with pytest.raises(ValueError):
            RandomStream(1).child(-1)

    def test_split_draws_concatenate(self):
        # the batched kernel draws channel+noise in one call; per-link ops
        # draw them in two calls from the same generator
        one = RandomStream(3, 9).generator().standard_normal(40)
        g = RandomStream(3, 9).generator()
        two = np.concatenate([g.standard_normal(8), g.standard_normal(32)])
        assert np.array_equal(one, two)


class TestWilson:
    def test_known_value(self):
        low, high = wilson_interval(5, 100)
        assert low == pytest.approx(0.0215, abs=5e-4)
        assert high == pytest.approx(0.1118, abs=5e-4)

    def test_zero_successes(self):
        low, high = wilson_interval(0, 1000)
        assert low == 0.0
        assert 0 < high < 0.01

    def test_all_successes(self):
        low, high = wilson_interval(1000, 1000)
        assert high == 1.0
        assert 0.99 < low < 1.0

    def test_brackets_point_estimate(self):
        for k, n in [(0, 10), (1, 10), (3, 7), (10, 10), (0, 100000)]:
            low, high = wilson_interval(k, n)
            assert low <= k / n <= high


class TestFrameTrials:
    def test_single_link_frame(self):
        cfg = SystemConfig(n_antennas=1, n_retransmissions=1, **SMALL)
        assert cfg.n_links == 1
        vs = derive_variances(cfg)
        results = [run_frame_trial(cfg, vs, t, master_seed=5) for t in range(64)]
        assert all(isinstance(r, bool) for r in results)

    def test_batch_matches_per_link_composition(self):
        cfg = SystemConfig(n_antennas=2, n_retransmissions=2, snr_av_b_p_db=1.0, **SMALL)
        vs = derive_variances(cfg)
        max_sig, max_noise = _link_maxima_batch(cfg, vs, np.arange(16), 11)
        batch = (max_sig <= max_noise).any(axis=1)
        per_link = [run_frame_trial(cfg, vs, t, master_seed=11) for t in range(16)]
        assert batch.tolist() == per_link

    def test_accepts_explicit_stream(self):
        cfg = SystemConfig(n_antennas=1, **SMALL)
        vs = derive_variances(cfg)
        ts = _trial_stream(3, 7)
        assert run_frame_trial(cfg, vs, ts) == run_frame_trial(cfg, vs, 7, master_seed=3)


class TestEstimator:
    def test_deterministic_same_seed(self):
        cfg = SystemConfig(n_antennas=2, snr_av_b_p_db=0.0, **SMALL)
        a = estimate_erasure_mc(cfg, 500, master_seed=21)
        b = estimate_erasure_mc(cfg, 500, master_seed=21)
        assert a == b

    def test_chunking_does_not_change_result(self):
        cfg = SystemConfig(n_antennas=2, snr_av_b_p_db=0.0, **SMALL)
        a = estimate_erasure_mc(cfg, 500, master_seed=21, chunk_size=17)
        b = estimate_erasure_mc(cfg, 500, master_seed=21, chunk_size=256)
        assert a == b

    def test_different_seeds_differ(self):
        cfg = SystemConfig(n_antennas=2, snr_av_b_p_db=-3.0, **SMALL)
        a = estimate_erasure_mc(cfg, 500, master_seed=1)
        b = estimate_erasure_mc(cfg, 500, master_seed=2)
        assert a.p_erasure != b.p_erasure

    def test_symmetry_oracle(self):
        # deep-noise limit with equal region sizes: the channel contributes
        # ~1e-12 of the tap variance, so erasure probability is 1/2
        with pytest.warns(UserWarning):
            cfg = SystemConfig(
                n_antennas=1,
                preamble_len=32,
                channel_len=16,
                data_len=64,
                snr_av_b_p_db=-120.0,
            )
        est = estimate_erasure_mc(cfg, 10_000, master_seed=3)
        sigma = 0.5 / 100  # sqrt(p(1-p)/n)
        assert abs(est.p_erasure - 0.5) < 3 * sigma

    def test_noiseless_limit_never_erases(self):
        cfg = SystemConfig(n_antennas=2, snr_av_b_p_db=300.0, **SMALL)
        est = estimate_erasure_mc(cfg, 300, master_seed=4)
        assert est.p_erasure == 0.0

    def test_per_link_rate_matches_quadrature(self):
        cfg = SystemConfig(n_antennas=2, n_retransmissions=1, snr_av_b_p_db=-2.0, **SMALL)
        tp = TailPair.from_variances(cfg, derive_variances(cfg))
        p1 = p_ne_one_quadrature(tp)
        est = estimate_erasure_mc(cfg, 20_000, master_seed=5)
        n_obs = 20_000 * cfg.n_links
        sigma = np.sqrt(p1 * (1 - p1) / n_obs)
        assert abs(est.p_ne_one - p1) < 3 * sigma

    def test_frame_rate_consistent_with_link_rate(self):
        cfg = SystemConfig(n_antennas=2, n_retransmissions=2, snr_av_b_p_db=-2.0, **SMALL)
        est = estimate_erasure_mc(cfg, 20_000, master_seed=6)
        predicted = 1 - est.p_ne_one**cfg.n_links
        ci_half = (est.ci_high - est.ci_low) / 2
        assert abs(est.p_erasure - predicted) < 3 * ci_half

    def test_trials_floor(self):
        with pytest.raises(ValueError):
            estimate_erasure_mc(SystemConfig(**SMALL), 0, master_seed=1)


class TestHistograms:
    def test_densities_normalized(self):
        cfg = SystemConfig(n_antennas=1, snr_av_b_p_db=0.0, **SMALL)
        hist_sig, hist_noise = histogram_max_statistics(cfg, 2000, master_seed=8)
        for h in (hist_sig, hist_noise):
            mass = np.sum(h.normalized_density * np.diff(h.bin_edges))
            assert mass == pytest.approx(1.0, abs=1e-9)
            assert np.all(h.counts >= 0)

    def test_minimum_trials_enforced(self):
        with pytest.raises(ValueError):
            histogram_max_statistics(SystemConfig(**SMALL), 100, master_seed=1)

    def test_maxima_collection_deterministic(self):
        cfg = SystemConfig(n_antennas=1, snr_av_b_p_db=0.0, **SMALL)
        a_sig, a_noise = collect_link_maxima(cfg, 500, 9, chunk_size=64)
        b_sig, b_noise = collect_link_maxima(cfg, 500, 9, chunk_size=500)
        assert np.array_equal(a_sig, b_sig)
        assert np.array_equal(a_noise, b_noise)
