"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines; tolerances are fixed here, not tuned elsewhere.
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from xlwave import (
    ArrayConfig,
    UserState,
    angular_transform,
    canonical_wave_grid,
    channel_phase_pair,
    diffusion_interval,
    effective_rayleigh_distance,
    estimate_user,
    extract_support,
    farfield_spectrum,
    jaccard,
    rayleigh_distance,
    simplified_interval,
    sinc_interpolate,
    spatial_channel,
    stationary_point,
    support_from_angular,
    wavenumber_quadrature,
)
from xlwave.experiments import TrainingBlock, collect_beamtrain_records, cmd_beamtrain, default_config
from xlwave.metrics import nmse_angle
from xlwave.support import SupportConfig

WAVELENGTH = 0.01
FC = 30e9


def _cfg(convention="n_minus_1"):
    return ArrayConfig(256, FC, WAVELENGTH, aperture_convention=convention)


def _report(name, ok, detail=""):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return ok


def test_criterion_01_rayleigh_constant():
    r_n = rayleigh_distance(_cfg("n"))
    r_n1 = rayleigh_distance(_cfg())
    ok = abs(r_n - 327.68) <= 1e-12 * 327.68 and abs(r_n1 - 325.125) <= 1e-12 * 325.125
    assert _report("rayleigh-constant", ok, f"n: {r_n} m, n-1: {r_n1} m")


def test_criterion_02_stationary_phase_suite():
    cfg = _cfg()
    rng = np.random.default_rng(2)
    kappa = cfg.wavenumber
    worst = 0.0
    for _ in range(200):
        r0 = rng.uniform(2 * cfg.aperture, rayleigh_distance(cfg))
        omega = rng.uniform(-0.95, 0.95)
        user = UserState(r0, omega)
        band = diffusion_interval(cfg, user)
        k = band.lower + rng.uniform(0.01, 0.99) * band.width
        xs = stationary_point(cfg, user, k)
        pair = channel_phase_pair(cfg, user, k)
        h = 1e-4
        fd = (pair.phase_at(xs + h) - pair.phase_at(xs - h)) / (2 * h)
        worst = max(worst, abs(fd))
    ok = worst < 1e-6 * kappa
    assert _report("stationary-phase-suite", ok, f"max |psi'(x_s)| = {worst:.3e} rad/m")


def test_criterion_03_inversion_exactness():
    cfg = _cfg()
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(1000):
        omega = rng.uniform(-0.95, 0.95)
        # keep draws strictly inside the resolvable (near-field) region so the
        # width-based inversion is defined
        r0 = rng.uniform(2 * cfg.aperture, 0.9 * effective_rayleigh_distance(cfg, omega))
        om_hat, r_hat = estimate_user(simplified_interval(cfg, UserState(r0, omega)), cfg)
        worst = max(worst, abs(om_hat - omega) / max(abs(omega), 1e-300), abs(r_hat - r0) / r0)
    ok = worst < 1e-10
    assert _report("inversion-exactness", ok, f"max relative error = {worst:.3e}")


def test_criterion_04_reconstruction():
    cfg = _cfg()
    grid = canonical_wave_grid(cfg, 16)
    mask = np.abs(grid.points) <= 0.9 * cfg.wavenumber
    worst = 0.0
    for omega in (0.0, 0.05, 0.5):
        user = UserState(10.0, omega)
        quad = wavenumber_quadrature(cfg, user, grid)
        rec = sinc_interpolate(angular_transform(spatial_channel(cfg, user), cfg), cfg, grid)
        err = np.max(np.abs(np.abs(rec.values[mask]) - np.abs(quad.values[mask])))
        worst = max(worst, err / np.max(np.abs(quad.values)))
    ok = worst <= 0.02
    assert _report("reconstruction", ok, f"max magnitude error = {100 * worst:.2f}% of peak")


def test_criterion_05_farfield_convergence():
    cfg = _cfg()
    grid = canonical_wave_grid(cfg, 16)
    r0 = 10 * rayleigh_distance(cfg)
    worst = 0.0
    for omega in (0.0, 0.3, 0.7):
        quad = wavenumber_quadrature(cfg, UserState(r0, omega), grid)
        closed = farfield_spectrum(cfg, omega, grid)
        rel = np.linalg.norm(quad.values - closed.values) / np.linalg.norm(closed.values)
        worst = max(worst, rel)
    ok = worst <= 0.02
    assert _report("farfield-convergence", ok, f"max relative L2 distance = {100 * worst:.2f}%")


def test_criterion_06_jaccard_accuracy():
    cfg = _cfg()
    scfg = SupportConfig()
    grid = canonical_wave_grid(cfg, scfg.oversample)
    values = []
    for omega in np.linspace(-0.9, 0.9, 7):
        r_eff = effective_rayleigh_distance(cfg, omega)
        for r0 in np.geomspace(5 * cfg.aperture, r_eff, 6):
            if not r0 < r_eff:  # strictly inside the resolvable region
                continue
            user = UserState(float(r0), float(omega))
            measured = extract_support(wavenumber_quadrature(cfg, user, grid), scfg)
            values.append(jaccard(diffusion_interval(cfg, user), measured))
    lo, med = min(values), float(np.median(values))
    ok = lo >= 0.70 and med >= 0.80
    assert _report("jaccard-accuracy", ok, f"min = {lo:.3f}, median = {med:.3f} over {len(values)} cells")


def test_criterion_07_simplified_degradation():
    # Measured outcome (documented): the criterion's expected >= 0.1 gap does
    # not exist at these two distances because the beta-thresholded support is
    # itself biased at 50 D, masking the simplified model's geometric error.
    cfg = _cfg()
    scfg = SupportConfig()
    grid = canonical_wave_grid(cfg, scfg.oversample)
    js = {}
    for mult in (1.5, 50.0):
        user = UserState(mult * cfg.aperture, 0.5)
        measured = extract_support(wavenumber_quadrature(cfg, user, grid), scfg)
        js[mult] = jaccard(simplified_interval(cfg, user), measured)
    ok = js[1.5] <= js[50.0] - 0.1
    assert _report(
        "simplified-degradation", ok,
        f"J(1.5D) = {js[1.5]:.3f}, J(50D) = {js[50.0]:.3f} (need J(1.5D) <= J(50D) - 0.1)",
    )


def test_criterion_08_wdsw_noiseless_roundtrip():
    cfg = _cfg()
    scfg = SupportConfig()
    worst_om, worst_r = 0.0, 0.0
    for omega in np.linspace(-0.6, 0.6, 50):
        user = UserState(20.0, float(omega))
        angular = angular_transform(spatial_channel(cfg, user), cfg)
        om_hat, r_hat = estimate_user(support_from_angular(angular, cfg, scfg), cfg)
        worst_om = max(worst_om, abs(om_hat - omega))
        worst_r = max(worst_r, abs(r_hat - 20.0) / 20.0)
    ok = worst_om <= 0.01 and worst_r <= 0.1
    assert _report(
        "wdsw-noiseless-roundtrip", ok,
        f"max |dOmega| = {worst_om:.4f} (<= 0.01), max |dr|/r = {worst_r:.4f} (<= 0.1)",
    )


def test_criterion_09_monte_carlo_ordering():
    exp = replace(
        default_config(),
        training=TrainingBlock(snr_db=(20.0,), trials=500, seed=1, distance=20.0),
    )
    grouped = collect_beamtrain_records(exp, threads=2)
    recs = {s: grouped[(0, s)] for s in ("wdsw-je", "asw-je", "exhaustive", "perfect-csi")}
    nm = {s: nmse_angle(r) for s, r in recs.items()}
    mean_rate = {s: float(np.mean([x.rate for x in r])) for s, r in recs.items()}
    se_rate = {
        s: float(np.std([x.rate for x in r]) / math.sqrt(len(r))) for s, r in recs.items()
    }
    mean_eff = {s: float(np.mean([x.eff_rate for x in r])) for s, r in recs.items()}

    ok_nmse = nm["wdsw-je"] < nm["asw-je"]
    ok_rate = (
        mean_rate["perfect-csi"] >= mean_rate["wdsw-je"] - se_rate["wdsw-je"]
        and mean_rate["wdsw-je"] >= mean_rate["asw-je"] - se_rate["asw-je"]
    )
    ok_eff = mean_eff["wdsw-je"] > mean_eff["exhaustive"]
    ok = ok_nmse and ok_rate and ok_eff
    assert _report(
        "monte-carlo-ordering", ok,
        f"nmse_angle wdsw {nm['wdsw-je']:.2e} < asw {nm['asw-je']:.2e}: {ok_nmse}; "
        f"rates {mean_rate['perfect-csi']:.3f} >= {mean_rate['wdsw-je']:.3f} >= "
        f"{mean_rate['asw-je']:.3f} (1 SE): {ok_rate}; "
        f"eff {mean_eff['wdsw-je']:.3f} > {mean_eff['exhaustive']:.3f}: {ok_eff}",
    )


def test_criterion_10_beamtrain_determinism(tmp_path):
    exp = replace(
        default_config(),
        training=TrainingBlock(snr_db=(10.0, 20.0), trials=8, seed=7, distance=20.0),
    )
    out1, out2 = tmp_path / "bt1.csv", tmp_path / "bt2.csv"
    cmd_beamtrain(exp, str(out1), threads=1)
    cmd_beamtrain(exp, str(out2), threads=1)
    ok = out1.read_bytes() == out2.read_bytes()
    assert _report("beamtrain-determinism", ok, f"{out1.stat().st_size} bytes, identical rerun")
