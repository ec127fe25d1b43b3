"""Spatial <-> angular <-> wave-number domain transforms.

The angular domain is the unitary DFT of the discrete channel on the beam
grid Omega_n; the wave-number domain is the continuous Fourier transform of
the aperture channel,

    H(k_x) = integral_{-D/2}^{D/2} h(x) * exp(-j*k_x*x) dx,

band-limited in practice to |k_x| <= 2*pi/lambda.  Critical (half-wavelength)
spacing makes the angular samples a Nyquist sampling of H(k_x), so H can be
reconstructed from them by periodic sinc interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import czt

from .geometry import (
    ArrayConfig,
    ComplexVector,
    UserState,
    antenna_positions,
    continuous_channel,
)


class QuadratureError(RuntimeError):
    """Oscillatory quadrature failed to reach the requested tolerance."""


@dataclass(frozen=True)
class WaveGrid:
    """Evaluation grid on the wave-number axis.

    ``band_limit`` is 2*pi/lambda (only |k_x| below it carries propagating
    power); ``sample_step`` is the canonical angular-sample spacing
    2*pi/(N*d).
    """

    points: np.ndarray
    band_limit: float
    sample_step: float

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=float))
        if self.points.ndim != 1 or self.points.size == 0:
            raise ValueError("points must be a non-empty 1-D array")
        if self.points.size > 1 and not np.all(np.diff(self.points) > 0):
            raise ValueError("points must be strictly increasing")
        tol = 1e-9 * self.band_limit
        if np.any(np.abs(self.points) > self.band_limit + tol):
            raise ValueError("grid points must satisfy |k_x| <= band_limit")

    def __len__(self) -> int:
        return self.points.size


@dataclass(frozen=True)
class ComplexSpectrum:
    """Complex spectrum samples on a WaveGrid, tagged with how they were produced."""

    values: np.ndarray
    grid: WaveGrid
    provenance: str

    _PROVENANCES = ("quadrature", "interpolated", "posp", "farfield")

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))
        if self.values.shape != self.grid.points.shape:
            raise ValueError("values and grid must have matching length")
        if self.provenance not in self._PROVENANCES:
            raise ValueError(f"provenance must be one of {self._PROVENANCES}")

    def __len__(self) -> int:
        return self.values.size


def canonical_wave_grid(
    cfg: ArrayConfig, oversample: int = 16, band_fraction: float = 1.0
) -> WaveGrid:
    """Uniform grid over |k_x| <= band_fraction*(2*pi/lambda).

    The step is sample_step/oversample and the grid is anchored on the
    angular-sample positions k_{x,n}, so every sample point lies exactly on
    the grid.
    """
    if oversample < 1:
        raise ValueError("oversample must be >= 1")
    if not 0 < band_fraction <= 1:
        raise ValueError("band_fraction must be in (0, 1]")
    kappa = cfg.wavenumber * band_fraction
    base = cfg.wavenumber_step / oversample
    k1 = cfg.wavenumber_samples[0]
    lo = -int(np.floor((kappa + k1) / base + 1e-9))
    hi = int(np.floor((kappa - k1) / base + 1e-9))
    points = k1 + base * np.arange(lo, hi + 1)
    return WaveGrid(points, cfg.wavenumber, cfg.wavenumber_step)


def _dft_matrix(cfg: ArrayConfig) -> np.ndarray:
    """Columns are the far-field steering vectors on the canonical beam grid."""
    n = np.arange(cfg.n_antennas)[:, None]
    om = cfg.omega_grid[None, :]
    return np.exp(1j * cfg.wavenumber * cfg.spacing * om * n) / np.sqrt(cfg.n_antennas)


def angular_transform(h: ComplexVector, cfg: ArrayConfig) -> ComplexVector:
    """Unitary DFT onto the beam grid: entry n is a(Omega_n)^H h."""
    if len(h) != cfg.n_antennas:
        raise ValueError(f"expected {cfg.n_antennas} spatial samples, got {len(h)}")
    vals = _dft_matrix(cfg).conj().T @ h.values
    return ComplexVector(vals, cfg.omega_grid, "angular")


def inverse_angular_transform(ha: ComplexVector, cfg: ArrayConfig) -> ComplexVector:
    """Adjoint of angular_transform; exact inverse since the DFT is unitary."""
    if len(ha) != cfg.n_antennas:
        raise ValueError(f"expected {cfg.n_antennas} angular samples, got {len(ha)}")
    vals = _dft_matrix(cfg) @ ha.values
    return ComplexVector(vals, antenna_positions(cfg), "spatial")


def _fourier_sum(coeffs: np.ndarray, x: np.ndarray, k: np.ndarray) -> np.ndarray:
    """sum_m coeffs[m]*exp(-j*k*x[m]) for every k, via chirp-z on uniform grids."""
    if k.size >= 32 and x.size >= 2:
        dk = np.diff(k)
        dx = np.diff(x)
        if np.allclose(dk, dk[0], rtol=1e-9, atol=0.0) and np.allclose(
            dx, dx[0], rtol=1e-9, atol=0.0
        ):
            k0, dk0 = k[0], (k[-1] - k[0]) / (k.size - 1)
            x0, dx0 = x[0], (x[-1] - x[0]) / (x.size - 1)
            a = coeffs * np.exp(-1j * k0 * dx0 * np.arange(x.size))
            spec = czt(a, m=k.size, w=np.exp(-1j * dk0 * dx0))
            return np.exp(-1j * k0 * x0) * np.exp(-1j * dk0 * x0 * np.arange(k.size)) * spec
    out = np.empty(k.size, dtype=complex)
    block = max(1, int(2**22 // max(x.size, 1)))
    for i in range(0, k.size, block):
        kb = k[i : i + block]
        out[i : i + block] = np.exp(-1j * np.outer(kb, x)) @ coeffs
    return out


def _simpson_weights(n_points: int, step: float) -> np.ndarray:
    w = np.ones(n_points)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (step / 3.0)


def wavenumber_quadrature(
    cfg: ArrayConfig,
    user: UserState,
    grid: WaveGrid,
    rel_tol: float = 1e-6,
    max_refinements: int = 12,
) -> ComplexSpectrum:
    """Numerical wave-number spectrum; the ground-truth oracle of this module.

    Composite Simpson over the aperture with the initial step chosen so the
    integrand's phase advances at most pi/8 per step (the phase rate is
    bounded by |k_x| + 2*pi/lambda), then step-halving until the largest
    change across the grid is below rel_tol times the spectrum's peak.
    """
    k = grid.points
    half = cfg.aperture / 2.0
    rate = float(np.max(np.abs(k))) + cfg.wavenumber
    panels = int(np.ceil(cfg.aperture * rate / (np.pi / 8.0)))
    panels = max(panels + (panels % 2), 64)

    prev = None
    err = scale = float("inf")
    for _ in range(max_refinements + 1):
        x = np.linspace(-half, half, panels + 1)
        f = continuous_channel(cfg, user, x)
        coeffs = f * _simpson_weights(panels + 1, x[1] - x[0])
        vals = _fourier_sum(coeffs, x, k)
        if prev is not None:
            err = float(np.max(np.abs(vals - prev)))
            scale = float(np.max(np.abs(vals)))
            if err <= rel_tol * scale:
                return ComplexSpectrum(vals, grid, "quadrature")
        prev = vals
        panels *= 2
    raise QuadratureError(
        f"no convergence after {max_refinements} refinements "
        f"(last relative change {err / scale:.3e})"
    )


def farfield_spectrum(cfg: ArrayConfig, omega: float, grid: WaveGrid) -> ComplexSpectrum:
    """Closed-form plane-wave limit 2*sin((D/2)*u)/u, u = k_x - (2*pi/lambda)*Omega.

    The removable singularity at u = 0 evaluates to the aperture D.
    """
    if abs(omega) > 1:
        raise ValueError(f"|omega| must be <= 1, got {omega}")
    d_ap = cfg.aperture
    u = grid.points - cfg.wavenumber * omega
    vals = d_ap * np.sinc(u * d_ap / (2.0 * np.pi))
    return ComplexSpectrum(vals.astype(complex), grid, "farfield")


def sinc_interpolate(
    angular: ComplexVector, cfg: ArrayConfig, query: WaveGrid, periods: int = 3
) -> ComplexSpectrum:
    """Reconstruct H(k_x) from the angular-domain samples.

    H(k_x) = d * sum_n c~[n] * sinc((k_x - k_{x,n}) / sample_step) with the
    coefficients periodically extended, c~[n] = c[mod(n, N)].  The unitary DFT
    samples are first rescaled to continuous-transform samples
    (c[n] = sqrt(N) * exp(j*kappa*d*Omega_n*(N-1)/2) * H_A[n], i.e. the factor
    between an element-1-referenced DFT bin and H(k_{x,n})/d), so the
    reconstruction agrees with wavenumber_quadrature rather than being off by
    sqrt(N) and a per-bin phase.

    The doubly infinite sum is truncated to ``periods`` full periods centered
    on each query point; the sinc tail makes the truncation error well below
    the reconstruction's Nyquist accuracy.
    """
    n_ant = cfg.n_antennas
    if len(angular) != n_ant:
        raise ValueError(f"expected {n_ant} angular samples, got {len(angular)}")
    step = cfg.wavenumber_step
    ksam = cfg.wavenumber_samples
    to_ft = np.sqrt(n_ant) * np.exp(
        1j * cfg.wavenumber * cfg.spacing * cfg.omega_grid * (n_ant - 1) / 2.0
    )
    coeffs = to_ft * angular.values

    k = query.points
    span = periods * n_ant
    offsets = np.arange(span) - span // 2
    center = np.rint((k - ksam[0]) / step).astype(int)
    idx = center[:, None] + offsets[None, :]
    positions = ksam[0] + step * idx
    terms = coeffs[np.mod(idx, n_ant)] * np.sinc((k[:, None] - positions) / step)
    vals = cfg.spacing * terms.sum(axis=1)
    return ComplexSpectrum(vals, query, "interpolated")
