"""Closed-form stationary-phase approximation of the wave-number spectrum.

The aperture integral for H(k_x) is an oscillatory integral with amplitude
A(x) = r0/r(x) and phase

    psi(x) = -k_x*x + (2*pi/lambda) * (r0 - r(x)),

whose derivative vanishes at a single point x_s for |k_x| < 2*pi/lambda.  The
stationary-phase value sqrt(2*pi/|psi''|)*A*exp(j*(psi +- pi/4)) approximates
the spectrum wherever x_s falls inside the aperture, which happens exactly on
a closed wave-number interval (the diffusion interval).  For users much
farther than the aperture the interval is symmetric to first order, and its
endpoints invert in closed form to the user's angle and distance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import (
    ArrayConfig,
    UserState,
    element_distance,
    _excess_delay,
)
from .transforms import ComplexSpectrum, WaveGrid

# 3 dB main-lobe width of the aperture sinc is 0.866*(2*pi/D) as rounded in
# the diffusion-width model; below it the width no longer resolves distance.
FAR_FIELD_WIDTH_FACTOR = 0.866

FAR_FIELD = float("inf")


class DegenerateStationaryPointError(ValueError):
    """Second phase derivative vanishes at the stationary point."""


@dataclass(frozen=True)
class PhasePair:
    """Amplitude/phase split of an oscillatory integrand, with phase derivatives."""

    amplitude_at: Callable[[np.ndarray], np.ndarray]
    phase_at: Callable[[np.ndarray], np.ndarray]
    phase_d1_at: Callable[[np.ndarray], np.ndarray]
    phase_d2_at: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class WaveInterval:
    """Closed interval [lower, upper] on the wave-number axis.

    ``truncated`` records that an endpoint was clipped at the band limit or
    the search-grid edge.
    """

    lower: float
    upper: float
    truncated: bool = False

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise ValueError(f"need lower <= upper, got [{self.lower}, {self.upper}]")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def center(self) -> float:
        return 0.5 * (self.lower + self.upper)


def channel_phase_pair(cfg: ArrayConfig, user: UserState, k_x: float) -> PhasePair:
    """Amplitude and phase of the wave-number integrand at a fixed k_x.

    psi'(x)  = -k_x - kappa*(x - r0*Omega)/r(x)
    psi''(x) = -kappa * r0^2*(1 - Omega^2) / r(x)^3
    """
    kappa = cfg.wavenumber
    r0, om = user.distance, user.direction_cosine

    def amplitude_at(x):
        return r0 / element_distance(user, x)

    def phase_at(x):
        return -k_x * np.asarray(x, dtype=float) - kappa * _excess_delay(user, x)

    def phase_d1_at(x):
        x = np.asarray(x, dtype=float)
        return -k_x - kappa * (x - r0 * om) / element_distance(user, x)

    def phase_d2_at(x):
        r = element_distance(user, x)
        return -kappa * r0 * r0 * (1.0 - om * om) / r**3

    return PhasePair(amplitude_at, phase_at, phase_d1_at, phase_d2_at)


def stationary_point(cfg: ArrayConfig, user: UserState, k_x):
    """Aperture coordinate where the integrand phase is stationary.

    x_s = r0 * [Omega - k_x*sqrt(1-Omega^2)/sqrt(kappa^2 - k_x^2)]; only
    defined inside the propagating band |k_x| < 2*pi/lambda.
    """
    k_x = np.asarray(k_x, dtype=float)
    kappa = cfg.wavenumber
    if np.any(np.abs(k_x) >= kappa):
        raise ValueError("stationary point requires |k_x| < 2*pi/lambda")
    r0, om = user.distance, user.direction_cosine
    xs = r0 * (om - k_x * np.sqrt(1.0 - om * om) / np.sqrt(kappa**2 - k_x**2))
    return xs if xs.ndim else float(xs)


def posp_value(pair: PhasePair, x_s, curvature_floor: float = 0.0):
    """Stationary-phase approximation sqrt(2*pi/|psi''|)*A*exp(j*(psi + sgn(psi'')*pi/4))."""
    a = np.asarray(pair.amplitude_at(x_s))
    psi = np.asarray(pair.phase_at(x_s))
    d2 = np.asarray(pair.phase_d2_at(x_s))
    if np.any(np.abs(d2) <= curvature_floor) or np.any(d2 == 0.0):
        raise DegenerateStationaryPointError(
            "second phase derivative vanishes at the stationary point"
        )
    vals = np.sqrt(2.0 * np.pi / np.abs(d2)) * a * np.exp(
        1j * (psi + np.sign(d2) * np.pi / 4.0)
    )
    return vals if vals.ndim else complex(vals)


def _clamped(lo: float, hi: float, kappa: float) -> WaveInterval:
    clo, chi = max(lo, -kappa), min(hi, kappa)
    return WaveInterval(clo, chi, truncated=(clo != lo or chi != hi))


def diffusion_interval(cfg: ArrayConfig, user: UserState) -> WaveInterval:
    """Exact wave-number interval on which the stationary point lies in the aperture."""
    kappa = cfg.wavenumber
    r0, om = user.distance, user.direction_cosine
    a = cfg.aperture / (2.0 * r0)
    lo = kappa * (om - a) / np.sqrt(1.0 + a * a - 2.0 * a * om)
    hi = kappa * (om + a) / np.sqrt(1.0 + a * a + 2.0 * a * om)
    return _clamped(lo, hi, kappa)


def simplified_interval(cfg: ArrayConfig, user: UserState) -> WaveInterval:
    """First-order (r0 >> D) interval, symmetric about kappa*Omega.

    Width is 2*pi*D*(1-Omega^2)/(lambda*r0); accuracy degrades once r0
    approaches the aperture scale.
    """
    kappa = cfg.wavenumber
    r0, om = user.distance, user.direction_cosine
    half = cfg.aperture * (1.0 - om * om) / (2.0 * r0)
    return _clamped(kappa * (om - half), kappa * (om + half), kappa)


def farfield_verdict_width(cfg: ArrayConfig) -> float:
    """Interval width below which the diffusion model cannot resolve distance."""
    return FAR_FIELD_WIDTH_FACTOR * 2.0 * np.pi / cfg.aperture


def estimate_user(interval: WaveInterval, cfg: ArrayConfig) -> tuple[float, float]:
    """Invert interval endpoints to (direction cosine, distance).

    Omega = (lambda/(4*pi))*(k_l + k_r);
    r0    = (2*pi*D/lambda)*(1 - Omega^2)/(k_r - k_l).

    This is the exact algebraic inverse of simplified_interval.  Intervals
    narrower than the aperture's 3 dB beamwidth are a far-field verdict: the
    returned distance is the FAR_FIELD sentinel (+inf).
    """
    omega = cfg.wavelength / (4.0 * np.pi) * (interval.lower + interval.upper)
    omega = float(np.clip(omega, -1.0, 1.0))
    if interval.width < farfield_verdict_width(cfg):
        return omega, FAR_FIELD
    r0 = (
        2.0 * np.pi * cfg.aperture / cfg.wavelength
        * (1.0 - omega * omega)
        / interval.width
    )
    return omega, float(r0)


def approx_spectrum(cfg: ArrayConfig, user: UserState, grid: WaveGrid) -> ComplexSpectrum:
    """Stationary-phase spectrum: posp_value inside the diffusion interval, 0 outside."""
    k = grid.points
    kappa = cfg.wavenumber
    band = diffusion_interval(cfg, user)
    inside = (k >= band.lower) & (k <= band.upper) & (np.abs(k) < kappa)
    vals = np.zeros(k.size, dtype=complex)
    if np.any(inside):
        r0, om = user.distance, user.direction_cosine
        ki = k[inside]
        xs = r0 * (om - ki * np.sqrt(1.0 - om * om) / np.sqrt(kappa**2 - ki**2))
        r = element_distance(user, xs)
        amp = r0 / r
        psi = -ki * xs - kappa * _excess_delay(user, xs)
        d2 = -kappa * r0 * r0 * (1.0 - om * om) / r**3
        floor = 1e-12 * kappa / cfg.aperture
        if np.any(np.abs(d2) <= floor):
            raise DegenerateStationaryPointError(
                "stationary phase is degenerate inside the diffusion interval"
            )
        vals[inside] = user.path_gain * np.sqrt(2.0 * np.pi / np.abs(d2)) * amp * np.exp(
            1j * (psi + np.sign(d2) * np.pi / 4.0)
        )
    return ComplexSpectrum(vals, grid, "posp")
