"""Interval similarity and estimation/rate quality metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .posp import WaveInterval


@dataclass(frozen=True)
class TrialRecord:
    """One Monte-Carlo trial of one scheme; est_r may be the far-field sentinel."""

    true_omega: float
    est_omega: float
    true_r: float
    est_r: float
    rate: float
    eff_rate: float
    scheme: str
    snr_db: float


def jaccard(a: WaveInterval, b: WaveInterval) -> float:
    """Intersection-over-union of two intervals with length measure.

    Two identical zero-width intervals score 1; any other zero-measure
    overlap scores 0.
    """
    inter = min(a.upper, b.upper) - max(a.lower, b.lower)
    union = a.width + b.width - max(inter, 0.0)
    if union <= 0.0:
        return 1.0 if (a.lower, a.upper) == (b.lower, b.upper) else 0.0
    return max(inter, 0.0) / union


def nmse_angle(records: Sequence[TrialRecord]) -> float:
    """E(|est - true|^2) / E(|true|^2) over direction cosines."""
    if not records:
        raise ValueError("nmse_angle needs at least one record")
    err = np.array([(r.est_omega - r.true_omega) ** 2 for r in records])
    ref = np.array([r.true_omega**2 for r in records])
    denom = ref.mean()
    if denom <= 0.0:
        raise ValueError("nmse_angle undefined: E(|Omega|^2) is zero")
    return float(err.mean() / denom)


def nmse_distance(records: Sequence[TrialRecord]) -> float:
    """Distance NMSE over records with a finite distance estimate.

    Far-field-sentinel estimates are excluded here; count them separately
    with farfield_count.
    """
    kept = [r for r in records if math.isfinite(r.est_r)]
    if not kept:
        raise ValueError("nmse_distance needs at least one finite-distance record")
    err = np.array([(r.est_r - r.true_r) ** 2 for r in kept])
    ref = np.array([r.true_r**2 for r in kept])
    denom = ref.mean()
    if denom <= 0.0:
        raise ValueError("nmse_distance undefined: E(|r0|^2) is zero")
    return float(err.mean() / denom)


def farfield_count(records: Iterable[TrialRecord]) -> int:
    return sum(1 for r in records if not math.isfinite(r.est_r))


def rates(
    h: np.ndarray,
    v: np.ndarray,
    noise_var: float,
    t_train: float,
    t_total: float,
    convention: str = "power",
) -> tuple[float, float]:
    """Achievable rate and training-overhead-discounted effective rate.

    R = log2(1 + |h^H v|^2 / sigma^2) under the default "power" convention;
    "amplitude" uses |h^H v| / sigma^2 unsquared (dimensionally odd, kept for
    comparison with sources that print it that way).  The effective rate is
    (1 - t_train/t_total)*R, clamped at 0 when training exceeds the frame.
    """
    if noise_var <= 0:
        raise ValueError("noise_var must be positive")
    if t_train < 0 or t_total <= 0:
        raise ValueError("need t_train >= 0 and t_total > 0")
    gain = abs(np.vdot(h, v))
    if convention == "power":
        snr = gain * gain / noise_var
    elif convention == "amplitude":
        snr = gain / noise_var
    else:
        raise ValueError(f"unknown rate convention {convention!r}")
    r = float(np.log2(1.0 + snr))
    r_eff = max(0.0, 1.0 - t_train / t_total) * r
    return r, r_eff
