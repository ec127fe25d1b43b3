"""Measured diffusion support: beta-threshold extraction from a spectrum.

The measured support is the maximal contiguous wave-number interval around
the magnitude peak on which |H| >= beta * max|H|.  The threshold default 0.42
sits slightly below half the peak because the true spectrum oscillates above
the smooth stationary-phase envelope, so its maximum overshoots the envelope
the interval edges are calibrated against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ArrayConfig, ComplexVector
from .posp import WaveInterval
from .transforms import ComplexSpectrum, canonical_wave_grid, sinc_interpolate


class SupportError(ValueError):
    """Support extraction is undefined (empty or all-zero spectrum)."""


@dataclass(frozen=True)
class SupportConfig:
    """Threshold fraction, grid oversampling and searched band fraction."""

    beta: float = 0.42
    oversample: int = 16
    band_fraction: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must be in (0, 1), got {self.beta}")
        if self.oversample < 1:
            raise ValueError(f"oversample must be >= 1, got {self.oversample}")
        if not 0.0 < self.band_fraction <= 1.0:
            raise ValueError(f"band_fraction must be in (0, 1], got {self.band_fraction}")


def extract_support(spectrum: ComplexSpectrum, scfg: SupportConfig = SupportConfig()) -> WaveInterval:
    """Peak-anchored contiguous run of |H| >= beta*max|H|, with sub-grid endpoints.

    Endpoints are refined by linear interpolation of |H| across the threshold
    crossing, which removes the grid-quantization bias that would otherwise
    dominate the distance inversion at long range.  A run that reaches the
    grid edge is truncated there and flagged.
    """
    mag = np.abs(spectrum.values)
    if mag.size == 0 or not np.any(mag > 0.0):
        raise SupportError("cannot extract support from an empty or all-zero spectrum")
    k = spectrum.grid.points
    peak = int(np.argmax(mag))
    thr = scfg.beta * mag[peak]

    lo = peak
    while lo > 0 and mag[lo - 1] >= thr:
        lo -= 1
    hi = peak
    while hi < mag.size - 1 and mag[hi + 1] >= thr:
        hi += 1

    truncated = False
    if lo == 0:
        k_l = float(k[0])
        truncated = True
    else:
        frac = (thr - mag[lo - 1]) / (mag[lo] - mag[lo - 1])
        k_l = float(k[lo - 1] + frac * (k[lo] - k[lo - 1]))
    if hi == mag.size - 1:
        k_r = float(k[-1])
        truncated = True
    else:
        frac = (thr - mag[hi + 1]) / (mag[hi] - mag[hi + 1])
        k_r = float(k[hi + 1] - frac * (k[hi + 1] - k[hi]))
    return WaveInterval(k_l, k_r, truncated=truncated)


def support_from_angular(
    angular: ComplexVector, cfg: ArrayConfig, scfg: SupportConfig = SupportConfig()
) -> WaveInterval:
    """Support of the spectrum reconstructed from angular-domain samples.

    Interpolates onto the oversampled canonical grid and thresholds there;
    this is the front end of the wave-number-domain joint estimator.
    """
    grid = canonical_wave_grid(cfg, scfg.oversample, scfg.band_fraction)
    spectrum = sinc_interpolate(angular, cfg, grid)
    return extract_support(spectrum, scfg)
