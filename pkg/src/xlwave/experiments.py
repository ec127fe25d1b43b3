"""Experiment configuration, runners and CSV artifacts.

Three experiments are provided: a single-user spectrum comparison (numerical
quadrature vs. stationary-phase approximation vs. angular samples), an
interval-accuracy (Jaccard) map over user positions, and a Monte-Carlo
beam-training comparison.  Each writes one CSV whose comment header echoes
the fully resolved configuration and seed, so the file can be reproduced
byte-for-byte.
"""

from __future__ import annotations

import configparser
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .geometry import ArrayConfig, UserState, effective_rayleigh_distance, spatial_channel
from .metrics import TrialRecord, farfield_count, jaccard, nmse_angle, nmse_distance
from .posp import approx_spectrum, diffusion_interval, simplified_interval
from .support import SupportConfig, extract_support
from .training import (
    SNR_CONVENTIONS,
    asw_je,
    exhaustive_search,
    perfect_csi,
    polar_codebook,
    simulate_sweep,
    wdsw_je,
)
from .transforms import angular_transform, canonical_wave_grid, wavenumber_quadrature

SPECTRUM_HEADER = "k_x,abs_H_quadrature,abs_H_posp,abs_H_angular"
JACCARD_HEADER = "r0_m,omega,jaccard_exact,jaccard_simplified,inside_effective_rayleigh"
BEAMTRAIN_HEADER = (
    "scheme,snr_db,nmse_angle,nmse_distance,mean_rate,mean_eff_rate,"
    "farfield_count,t_train"
)

SCHEMES = ("asw-je", "exhaustive", "perfect-csi", "wdsw-je")


class ConfigError(ValueError):
    """Invalid or unknown experiment configuration entry."""


@dataclass(frozen=True)
class UserBlock:
    distance: float = 10.0
    omega: float = 0.05


@dataclass(frozen=True)
class MapBlock:
    r_min: float = 2.0
    r_max: float = 400.0
    r_points: int = 24
    omega_min: float = -0.95
    omega_max: float = 0.95
    omega_points: int = 19


@dataclass(frozen=True)
class TrainingBlock:
    snr_db: tuple = (0.0, 5.0, 10.0, 15.0, 20.0)
    trials: int = 1000
    k_candidates: int = 3
    distance_rings: int = 8
    t_total: int = 2000
    seed: int = 1
    distance: float = 20.0
    rate_convention: str = "power"
    snr_convention: str = "per_measurement"

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("training.trials must be >= 1")
        if not self.snr_db:
            raise ConfigError("training.snr_db must be non-empty")
        if self.snr_convention not in SNR_CONVENTIONS:
            raise ConfigError(f"training.snr_reference must be one of {SNR_CONVENTIONS}")


@dataclass(frozen=True)
class ExperimentConfig:
    array: ArrayConfig
    user: UserBlock
    support: SupportConfig
    map_block: MapBlock
    training: TrainingBlock
    out_path: str | None = None


def default_config() -> ExperimentConfig:
    return ExperimentConfig(
        array=ArrayConfig(n_antennas=256, carrier_freq=30e9),
        user=UserBlock(),
        support=SupportConfig(),
        map_block=MapBlock(),
        training=TrainingBlock(),
    )


_SCHEMA = {
    "array": {
        "n_antennas": int,
        "carrier_freq_hz": float,
        "wavelength_m": float,
        "spacing_m": float,
        "aperture_convention": str,
    },
    "user": {"distance_m": float, "direction_cosine": float},
    "support": {"beta": float, "oversample": int, "band_fraction": float},
    "map": {
        "r_min_m": float,
        "r_max_m": float,
        "r_points": int,
        "omega_min": float,
        "omega_max": float,
        "omega_points": int,
    },
    "training": {
        "snr_db": str,
        "trials": int,
        "k_candidates": int,
        "distance_rings": int,
        "t_total": int,
        "seed": int,
        "distance_m": float,
        "rate_convention": str,
        "snr_reference": str,
    },
    "output": {"path": str},
}


def load_config(path: str | None) -> ExperimentConfig:
    """Parse an INI-style config; unknown sections or keys are hard errors."""
    if path is None:
        return default_config()
    parser = configparser.RawConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"cannot read config file: {path}")

    raw: dict[str, dict[str, object]] = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        raw[section] = {}
        for key, value in parser.items(section):
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")
            conv = _SCHEMA[section][key]
            try:
                raw[section][key] = conv(value)
            except ValueError as exc:
                raise ConfigError(f"bad value for {section}.{key}: {value!r}") from exc

    try:
        arr = raw.get("array", {})
        array = ArrayConfig(
            n_antennas=arr.get("n_antennas", 256),
            carrier_freq=arr.get("carrier_freq_hz", None if "wavelength_m" in arr else 30e9),
            wavelength=arr.get("wavelength_m"),
            spacing=arr.get("spacing_m"),
            aperture_convention=arr.get("aperture_convention", "n_minus_1"),
        )
        usr = raw.get("user", {})
        user = UserBlock(
            distance=usr.get("distance_m", 10.0),
            omega=usr.get("direction_cosine", 0.05),
        )
        sup = raw.get("support", {})
        support = SupportConfig(
            beta=sup.get("beta", 0.42),
            oversample=sup.get("oversample", 16),
            band_fraction=sup.get("band_fraction", 1.0),
        )
        mp = raw.get("map", {})
        map_block = MapBlock(
            r_min=mp.get("r_min_m", 2.0),
            r_max=mp.get("r_max_m", 400.0),
            r_points=mp.get("r_points", 24),
            omega_min=mp.get("omega_min", -0.95),
            omega_max=mp.get("omega_max", 0.95),
            omega_points=mp.get("omega_points", 19),
        )
        tr = raw.get("training", {})
        if "snr_db" in tr:
            snr_db = tuple(float(s) for s in str(tr["snr_db"]).split(",") if s.strip())
        else:
            snr_db = TrainingBlock.snr_db
        training = TrainingBlock(
            snr_db=snr_db,
            trials=tr.get("trials", 1000),
            k_candidates=tr.get("k_candidates", 3),
            distance_rings=tr.get("distance_rings", 8),
            t_total=tr.get("t_total", 2000),
            seed=tr.get("seed", 1),
            distance=tr.get("distance_m", 20.0),
            rate_convention=tr.get("rate_convention", "power"),
            snr_convention=tr.get("snr_reference", "per_measurement"),
        )
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc

    out_path = raw.get("output", {}).get("path")
    return ExperimentConfig(array, user, support, map_block, training, out_path)


def with_seed(exp: ExperimentConfig, seed: int) -> ExperimentConfig:
    return replace(exp, training=replace(exp.training, seed=seed))


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def config_echo(exp: ExperimentConfig, experiment: str) -> list[str]:
    """Comment-header lines fully describing the run (for byte-exact reruns)."""
    a = exp.array
    lines = {
        "experiment": experiment,
        "array.n_antennas": a.n_antennas,
        "array.carrier_freq_hz": a.carrier_freq,
        "array.wavelength_m": a.wavelength,
        "array.spacing_m": a.spacing,
        "array.aperture_convention": a.aperture_convention,
        "array.aperture_m": a.aperture,
        "user.distance_m": exp.user.distance,
        "user.direction_cosine": exp.user.omega,
        "support.beta": exp.support.beta,
        "support.oversample": exp.support.oversample,
        "support.band_fraction": exp.support.band_fraction,
        "map.r_min_m": exp.map_block.r_min,
        "map.r_max_m": exp.map_block.r_max,
        "map.r_points": exp.map_block.r_points,
        "map.omega_min": exp.map_block.omega_min,
        "map.omega_max": exp.map_block.omega_max,
        "map.omega_points": exp.map_block.omega_points,
        "training.snr_db": ",".join(_fmt(s) for s in exp.training.snr_db),
        "training.trials": exp.training.trials,
        "training.k_candidates": exp.training.k_candidates,
        "training.distance_rings": exp.training.distance_rings,
        "training.t_total": exp.training.t_total,
        "training.distance_m": exp.training.distance,
        "training.rate_convention": exp.training.rate_convention,
        "training.snr_reference": exp.training.snr_convention,
        "seed": exp.training.seed,
    }
    return [f"{key}={_fmt(val)}" for key, val in lines.items()]


def write_csv(path: str, comments: list[str], header: str, rows: list[list[str]]) -> None:
    """Write atomically (temp file + rename) so failures leave no partial file."""
    tmp = f"{path}.tmp"
    with open(tmp, "w", newline="", encoding="utf-8") as f:
        for line in comments:
            f.write(f"# {line}\n")
        f.write(header + "\n")
        for row in rows:
            f.write(",".join(row) + "\n")
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# spectrum


def run_spectrum(exp: ExperimentConfig) -> list[list[str]]:
    """Normalized |H| from quadrature, stationary phase, and angular samples."""
    cfg = exp.array
    user = UserState(exp.user.distance, exp.user.omega)
    grid = canonical_wave_grid(cfg, exp.support.oversample, 1.0)
    quad = wavenumber_quadrature(cfg, user, grid)
    posp = approx_spectrum(cfg, user, grid)
    ha = angular_transform(spatial_channel(cfg, user), cfg)

    norm = float(np.max(np.abs(quad.values)))
    ang_scale = cfg.spacing * np.sqrt(cfg.n_antennas)
    ang_col = {}
    base = grid.points[1] - grid.points[0]
    for n, ks in enumerate(cfg.wavenumber_samples):
        idx = int(round((ks - grid.points[0]) / base))
        if 0 <= idx < len(grid) and abs(grid.points[idx] - ks) < 1e-9 * cfg.wavenumber:
            ang_col[idx] = ang_scale * abs(ha.values[n]) / norm

    rows = []
    for i, k in enumerate(grid.points):
        rows.append(
            [
                _fmt(k),
                _fmt(abs(quad.values[i]) / norm),
                _fmt(abs(posp.values[i]) / norm),
                _fmt(ang_col[i]) if i in ang_col else "",
            ]
        )
    return rows


# ---------------------------------------------------------------------------
# jaccard map


def _map_batch(args):
    exp, cells = args
    cfg = exp.array
    grid = canonical_wave_grid(cfg, exp.support.oversample, exp.support.band_fraction)
    out = []
    for idx, r0, omega in cells:
        user = UserState(r0, omega)
        spectrum = wavenumber_quadrature(cfg, user, grid)
        measured = extract_support(spectrum, exp.support)
        j_exact = jaccard(diffusion_interval(cfg, user), measured)
        j_simpl = jaccard(simplified_interval(cfg, user), measured)
        inside = int(r0 < effective_rayleigh_distance(cfg, omega))
        out.append((idx, r0, omega, j_exact, j_simpl, inside))
    return out


def map_cells(exp: ExperimentConfig) -> list[tuple[int, float, float]]:
    mb = exp.map_block
    r_grid = np.geomspace(mb.r_min, mb.r_max, mb.r_points)
    om_grid = np.linspace(mb.omega_min, mb.omega_max, mb.omega_points)
    return [
        (i * len(om_grid) + j, float(r), float(om))
        for i, r in enumerate(r_grid)
        for j, om in enumerate(om_grid)
    ]


def run_jaccard_map(exp: ExperimentConfig, threads: int = 1) -> list[list[str]]:
    cells = map_cells(exp)
    batches = _split_batches(cells, threads)
    results = _parallel_map(_map_batch, [(exp, b) for b in batches], threads)
    flat = sorted(cell for batch in results for cell in batch)
    return [
        [_fmt(r0), _fmt(om), _fmt(j1), _fmt(j2), str(inside)]
        for _, r0, om, j1, j2, inside in flat
    ]


# ---------------------------------------------------------------------------
# beam training


def _beamtrain_batch(args):
    """Records for trials [start, stop) at one SNR; deterministic per-trial seeds."""
    exp, snr_idx, start, stop = args
    cfg = exp.array
    tr = exp.training
    snr_db = tr.snr_db[snr_idx]
    codebook = polar_codebook(cfg, tr.distance_rings)
    records = []
    for trial in range(start, stop):
        streams = np.random.SeedSequence(
            entropy=tr.seed, spawn_key=(snr_idx, trial)
        ).spawn(5)
        omega = float(np.random.default_rng(streams[0]).uniform(-1.0, 1.0))
        user = UserState(tr.distance, omega)

        sweep_w = simulate_sweep(cfg, user, snr_db, streams[1], tr.snr_convention)
        res_w = wdsw_je(sweep_w, cfg, user, exp.support, tr.t_total, tr.rate_convention)
        sweep_a = simulate_sweep(cfg, user, snr_db, streams[2], tr.snr_convention)
        res_a = asw_je(
            sweep_a, cfg, user, streams[3], tr.k_candidates, exp.support.beta,
            tr.t_total, tr.rate_convention,
        )
        res_e = exhaustive_search(
            cfg, user, codebook, snr_db, streams[4], tr.t_total,
            tr.snr_convention, tr.rate_convention,
        )
        res_p = perfect_csi(
            cfg, user, snr_db, tr.t_total, tr.snr_convention, tr.rate_convention
        )
        for res in (res_a, res_e, res_p, res_w):
            records.append(
                (
                    trial,
                    TrialRecord(
                        true_omega=omega,
                        est_omega=res.omega_hat,
                        true_r=tr.distance,
                        est_r=res.r_hat,
                        rate=res.rate,
                        eff_rate=res.eff_rate,
                        scheme=res.scheme,
                        snr_db=snr_db,
                    ),
                )
            )
    return snr_idx, records


def collect_beamtrain_records(
    exp: ExperimentConfig, threads: int = 1
) -> dict[tuple[int, str], list[TrialRecord]]:
    """All trial records keyed by (snr index, scheme), in trial order."""
    tr = exp.training
    jobs = []
    for snr_idx in range(len(tr.snr_db)):
        for start, stop in _trial_ranges(tr.trials, threads):
            jobs.append((exp, snr_idx, start, stop))
    results = _parallel_map(_beamtrain_batch, jobs, threads)

    grouped: dict[tuple[int, str], list[tuple[int, TrialRecord]]] = {}
    for snr_idx, records in results:
        for trial, rec in records:
            grouped.setdefault((snr_idx, rec.scheme), []).append((trial, rec))
    return {
        key: [rec for _, rec in sorted(pairs, key=lambda p: p[0])]
        for key, pairs in grouped.items()
    }


def run_beamtrain(exp: ExperimentConfig, threads: int = 1) -> list[list[str]]:
    grouped = collect_beamtrain_records(exp, threads)
    cfg = exp.array
    tr = exp.training
    t_train = {
        "wdsw-je": cfg.n_antennas,
        "asw-je": cfg.n_antennas + tr.k_candidates,
        "exhaustive": cfg.n_antennas * (tr.distance_rings + 1),
        "perfect-csi": 0,
    }
    rows = []
    for scheme in sorted(SCHEMES):
        for snr_idx, snr_db in enumerate(tr.snr_db):
            recs = grouped[(snr_idx, scheme)]
            finite = [r for r in recs if math.isfinite(r.est_r)]
            rows.append(
                [
                    scheme,
                    _fmt(snr_db),
                    _fmt(nmse_angle(recs)),
                    _fmt(nmse_distance(finite)) if finite else "",
                    _fmt(float(np.mean([r.rate for r in recs]))),
                    _fmt(float(np.mean([r.eff_rate for r in recs]))),
                    str(farfield_count(recs)),
                    str(t_train[scheme]),
                ]
            )
    return rows


# ---------------------------------------------------------------------------
# command entry points: compute rows, then write atomically


def cmd_spectrum(exp: ExperimentConfig, out_path: str, threads: int = 1) -> None:
    rows = run_spectrum(exp)
    write_csv(out_path, config_echo(exp, "spectrum"), SPECTRUM_HEADER, rows)


def cmd_jaccard_map(exp: ExperimentConfig, out_path: str, threads: int = 1) -> None:
    rows = run_jaccard_map(exp, threads)
    write_csv(out_path, config_echo(exp, "jaccard_map"), JACCARD_HEADER, rows)


def cmd_beamtrain(exp: ExperimentConfig, out_path: str, threads: int = 1) -> None:
    rows = run_beamtrain(exp, threads)
    write_csv(out_path, config_echo(exp, "beamtrain"), BEAMTRAIN_HEADER, rows)


# ---------------------------------------------------------------------------
# parallel plumbing


def _trial_ranges(trials: int, threads: int) -> list[tuple[int, int]]:
    n_chunks = max(1, min(threads, trials))
    bounds = np.linspace(0, trials, n_chunks + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _split_batches(items: list, threads: int) -> list[list]:
    n_chunks = max(1, min(threads * 4, len(items)))
    bounds = np.linspace(0, len(items), n_chunks + 1).astype(int)
    return [items[a:b] for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _parallel_map(fn, jobs: list, threads: int) -> list:
    if threads <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, jobs))
