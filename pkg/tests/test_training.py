import numpy as np
import pytest

from xlwave import (
    Codebook,
    SupportConfig,
    UserState,
    angular_transform,
    asw_je,
    exhaustive_search,
    far_steering_vector,
    near_steering_vector,
    noise_power,
    perfect_csi,
    polar_codebook,
    rayleigh_distance,
    simulate_sweep,
    spatial_channel,
    wdsw_je,
)

NOISELESS_DB = 300.0


def test_sweep_noiseless_limit(cfg, fig_user):
    sweep = simulate_sweep(cfg, fig_user, np.inf, 0)
    clean = angular_transform(spatial_channel(cfg, fig_user), cfg)
    assert np.array_equal(sweep.values, clean.values)
    assert sweep.noise_var == 0.0


def test_sweep_deterministic(cfg, fig_user):
    a = simulate_sweep(cfg, fig_user, 10.0, 42)
    b = simulate_sweep(cfg, fig_user, 10.0, 42)
    c = simulate_sweep(cfg, fig_user, 10.0, 43)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)


def test_sweep_noise_power_empirical(cfg, fig_user):
    s2 = noise_power(cfg, fig_user, 20.0)
    clean = angular_transform(spatial_channel(cfg, fig_user), cfg).values
    rng_seeds = range(1000, 1040)
    resid = np.concatenate(
        [simulate_sweep(cfg, fig_user, 20.0, s).values - clean for s in rng_seeds]
    )
    empirical = np.mean(np.abs(resid) ** 2)
    assert empirical == pytest.approx(s2, rel=0.05)


def test_noise_power_conventions(cfg, fig_user):
    per = noise_power(cfg, fig_user, 20.0, "per_measurement")
    matched = noise_power(cfg, fig_user, 20.0, "matched_beam")
    assert per == pytest.approx(abs(fig_user.path_gain) ** 2 / 100.0)
    assert matched == pytest.approx(256 * per)
    with pytest.raises(ValueError):
        noise_power(cfg, fig_user, 20.0, "bogus")


def test_wdsw_noiseless_round_trip(cfg, scfg):
    user = UserState(20.0, 0.3)
    sweep = simulate_sweep(cfg, user, NOISELESS_DB, 0)
    res = wdsw_je(sweep, cfg, user, scfg)
    assert abs(res.omega_hat - 0.3) <= 0.01
    assert abs(res.r_hat - 20.0) / 20.0 <= 0.1
    assert res.t_train == 256
    assert not res.used_fallback
    assert np.linalg.norm(res.beamformer) == pytest.approx(1.0)


def test_wdsw_far_user_verdict(cfg, scfg):
    omega = cfg.omega_grid[200]
    user = UserState(5 * rayleigh_distance(cfg), omega)
    sweep = simulate_sweep(cfg, user, NOISELESS_DB, 1)
    res = wdsw_je(sweep, cfg, user, scfg)
    assert res.r_hat == np.inf
    expected = far_steering_vector(cfg, res.omega_hat).values
    assert np.max(np.abs(res.beamformer - expected)) < 1e-12


def test_asw_on_grid_user(cfg):
    omega = cfg.omega_grid[150]
    user = UserState(20.0, omega)
    sweep = simulate_sweep(cfg, user, NOISELESS_DB, 2)
    res = asw_je(sweep, cfg, user, 3)
    assert abs(res.omega_hat - omega) <= 1.0 / cfg.n_antennas
    assert res.t_train == 259


def test_asw_rejects_even_k(cfg, fig_user):
    sweep = simulate_sweep(cfg, fig_user, 20.0, 3)
    with pytest.raises(ValueError):
        asw_je(sweep, cfg, fig_user, 4, k_candidates=2)


def test_polar_codebook_shape_and_norms(cfg):
    cb = polar_codebook(cfg, rings=8)
    assert len(cb) == 256 * 9
    assert np.linalg.norm(cb.beamformers, axis=1) == pytest.approx(np.ones(len(cb)))
    far_rows = ~np.isfinite(cb.range_labels)
    assert far_rows.sum() == 256


def test_codebook_rejects_unnormalized():
    with pytest.raises(ValueError):
        Codebook(
            np.array([[2.0 + 0j, 0.0]]),
            np.array([0.0]),
            np.array([10.0]),
        )


def test_exhaustive_picks_exact_codeword(cfg):
    cb = polar_codebook(cfg, rings=8)
    idx = 100 * 9 + 4
    user = UserState(cb.range_labels[idx], cb.omega_labels[idx])
    res = exhaustive_search(cfg, user, cb, NOISELESS_DB, 5)
    assert res.omega_hat == pytest.approx(cb.omega_labels[idx])
    assert res.r_hat == pytest.approx(cb.range_labels[idx])
    assert res.t_train == len(cb)


def test_perfect_csi_properties(cfg, fig_user):
    res = perfect_csi(cfg, fig_user, 20.0)
    assert res.t_train == 0
    assert res.omega_hat == fig_user.direction_cosine
    assert res.r_hat == fig_user.distance
    assert np.linalg.norm(res.beamformer) == pytest.approx(1.0)
    b = near_steering_vector(cfg, fig_user).values
    aligned = b / np.linalg.norm(b)
    assert np.max(np.abs(res.beamformer - aligned)) < 1e-12


def test_perfect_csi_far_limit(cfg):
    omega = 0.25
    user = UserState(1e7, omega)
    res = perfect_csi(cfg, user, 20.0)
    far = far_steering_vector(cfg, omega).values
    phase = res.beamformer[128] / far[128]
    assert np.max(np.abs(res.beamformer - phase * far)) < 1e-4


def test_perfect_rate_upper_bounds_schemes(cfg):
    cb = polar_codebook(cfg, rings=8)
    means = {"perfect": [], "wdsw": [], "asw": [], "ex": []}
    for trial in range(12):
        rng = np.random.default_rng(trial)
        user = UserState(20.0, float(rng.uniform(-1, 1)))
        sweep = simulate_sweep(cfg, user, 15.0, 100 + trial)
        means["wdsw"].append(wdsw_je(sweep, cfg, user).rate)
        means["asw"].append(asw_je(sweep, cfg, user, 200 + trial).rate)
        means["ex"].append(exhaustive_search(cfg, user, cb, 15.0, 300 + trial).rate)
        means["perfect"].append(perfect_csi(cfg, user, 15.0).rate)
    for name in ("wdsw", "asw", "ex"):
        assert np.mean(means["perfect"]) >= np.mean(means[name]) - 1e-9


def test_schemes_deterministic_given_seed(cfg, scfg):
    user = UserState(20.0, -0.41)
    r1 = wdsw_je(simulate_sweep(cfg, user, 12.0, 7), cfg, user, scfg)
    r2 = wdsw_je(simulate_sweep(cfg, user, 12.0, 7), cfg, user, scfg)
    assert r1.omega_hat == r2.omega_hat
    assert r1.r_hat == r2.r_hat
    assert r1.rate == r2.rate
    a1 = asw_je(simulate_sweep(cfg, user, 12.0, 8), cfg, user, 9)
    a2 = asw_je(simulate_sweep(cfg, user, 12.0, 8), cfg, user, 9)
    assert a1.omega_hat == a2.omega_hat
    assert a1.rate == a2.rate


def test_unit_norm_beamformers_all_schemes(cfg, scfg):
    cb = polar_codebook(cfg, rings=8)
    user = UserState(20.0, 0.62)
    sweep = simulate_sweep(cfg, user, 10.0, 11)
    results = [
        wdsw_je(sweep, cfg, user, scfg),
        asw_je(sweep, cfg, user, 12),
        exhaustive_search(cfg, user, cb, 10.0, 13),
        perfect_csi(cfg, user, 10.0),
    ]
    for res in results:
        assert np.linalg.norm(res.beamformer) == pytest.approx(1.0, abs=1e-9)
