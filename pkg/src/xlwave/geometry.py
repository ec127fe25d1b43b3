"""Geometry and exact spatial-domain responses of a centered uniform linear array.

The array lies on the x-axis with its reference element at the origin; user
positions are given by the distance r0 from the reference element and the
direction cosine of the departure angle, Omega = cos(phi).  All phases are
spherical-wavefront phases relative to the reference element, so the channel
seen by the element at coordinate x is

    h(x) = h0 * (r0 / r(x)) * exp(-j * (2*pi/lambda) * (r(x) - r0)),
    r(x) = sqrt(r0**2 + x**2 - 2*r0*x*Omega).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299792458.0

APERTURE_CONVENTIONS = ("n_minus_1", "n")

_DOMAIN_TAGS = ("spatial", "angular", "wavenumber")


class GeometryError(ValueError):
    """User position coincides with an array element (zero propagation distance)."""


@dataclass(frozen=True)
class ArrayConfig:
    """Uniform linear array plus carrier.

    Give ``carrier_freq`` or ``wavelength`` (or both, when working with a
    rounded nominal wavelength); the missing one is derived with
    c = 299792458 m/s.  ``spacing`` defaults to half a wavelength.
    ``aperture_convention`` selects D = (N-1)*d (default) or D = N*d wherever
    an aperture enters a formula; the two differ by one element spacing and
    both conventions appear in the literature.
    """

    n_antennas: int
    carrier_freq: float | None = None
    wavelength: float | None = None
    spacing: float | None = None
    aperture_convention: str = "n_minus_1"

    def __post_init__(self):
        if self.n_antennas < 1:
            raise ValueError(f"n_antennas must be >= 1, got {self.n_antennas}")
        if self.carrier_freq is None and self.wavelength is None:
            raise ValueError("one of carrier_freq or wavelength is required")
        if self.wavelength is None:
            object.__setattr__(self, "wavelength", SPEED_OF_LIGHT / self.carrier_freq)
        if self.carrier_freq is None:
            object.__setattr__(self, "carrier_freq", SPEED_OF_LIGHT / self.wavelength)
        if self.spacing is None:
            object.__setattr__(self, "spacing", self.wavelength / 2.0)
        if self.wavelength <= 0 or self.carrier_freq <= 0 or self.spacing <= 0:
            raise ValueError("carrier_freq, wavelength and spacing must be positive")
        if self.aperture_convention not in APERTURE_CONVENTIONS:
            raise ValueError(
                f"aperture_convention must be one of {APERTURE_CONVENTIONS}, "
                f"got {self.aperture_convention!r}"
            )

    @property
    def aperture(self) -> float:
        n = self.n_antennas if self.aperture_convention == "n" else self.n_antennas - 1
        return n * self.spacing

    @property
    def wavenumber(self) -> float:
        """Carrier wavenumber 2*pi/lambda; also the |k_x| band limit."""
        return 2.0 * np.pi / self.wavelength

    @property
    def wavenumber_step(self) -> float:
        """Canonical wave-number sampling step 2*pi/(N*d) (= 4*pi/(lambda*N) at d = lambda/2)."""
        return 2.0 * np.pi / (self.n_antennas * self.spacing)

    @property
    def omega_grid(self) -> np.ndarray:
        """Direction cosines of the N orthogonal beams, (2n-N-1)/N at d = lambda/2."""
        return self.wavenumber_samples / self.wavenumber

    @property
    def wavenumber_samples(self) -> np.ndarray:
        """Wave-number positions k_{x,n} of the angular-domain samples."""
        n = np.arange(1, self.n_antennas + 1)
        return self.wavenumber_step * (n - (self.n_antennas + 1) / 2.0)


@dataclass(frozen=True)
class UserState:
    """Polar user location (distance, direction cosine) and complex path gain."""

    distance: float
    direction_cosine: float
    path_gain: complex = 1.0 + 0.0j

    def __post_init__(self):
        if not self.distance > 0:
            raise ValueError(f"distance must be positive, got {self.distance}")
        if abs(self.direction_cosine) > 1:
            raise ValueError(
                f"|direction_cosine| must be <= 1, got {self.direction_cosine}"
            )


@dataclass(frozen=True)
class ComplexVector:
    """Sampled complex channel in a named domain, with its sample grid."""

    values: np.ndarray
    grid: np.ndarray
    domain_tag: str

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))
        object.__setattr__(self, "grid", np.asarray(self.grid, dtype=float))
        if self.values.shape != self.grid.shape or self.values.ndim != 1:
            raise ValueError("values and grid must be 1-D arrays of equal length")
        if self.grid.size > 1 and not np.all(np.diff(self.grid) > 0):
            raise ValueError("grid must be strictly increasing")
        if self.domain_tag not in _DOMAIN_TAGS:
            raise ValueError(f"domain_tag must be one of {_DOMAIN_TAGS}")

    def __len__(self) -> int:
        return self.values.size


def antenna_positions(cfg: ArrayConfig) -> np.ndarray:
    """x-coordinates d*(n - (N+1)/2), n = 1..N, symmetric about the origin."""
    n = np.arange(1, cfg.n_antennas + 1)
    return cfg.spacing * (n - (cfg.n_antennas + 1) / 2.0)


def element_distance(user: UserState, x):
    """Distance from the element at coordinate x to the user.

    Raises GeometryError if the user sits exactly on an element (the channel
    amplitude diverges there).
    """
    x = np.asarray(x, dtype=float)
    r0, om = user.distance, user.direction_cosine
    rsq = r0 * r0 + x * x - 2.0 * r0 * x * om
    if np.any(rsq <= 0.0):
        raise GeometryError(
            f"user at (r0={r0}, Omega={om}) coincides with an array element"
        )
    r = np.sqrt(rsq)
    return r if r.ndim else float(r)


def _excess_delay(user: UserState, x):
    """r(x) - r0 in a cancellation-free form, exact for all r0."""
    x = np.asarray(x, dtype=float)
    r0, om = user.distance, user.direction_cosine
    r = element_distance(user, x)
    # r - r0 = (r^2 - r0^2)/(r + r0); the numerator is x*(x - 2*r0*om) exactly.
    return x * (x - 2.0 * r0 * om) / (r + r0)


def near_steering_vector(cfg: ArrayConfig, user: UserState) -> ComplexVector:
    """Spherical-wavefront steering vector with amplitude taper r0/r_n.

    Element n is (1/sqrt(N)) * (r0/r_n) * exp(-j*(2*pi/lambda)*(r_n - r0)),
    so the element at x = 0 has zero phase.
    """
    x = antenna_positions(cfg)
    r = element_distance(user, x)
    delay = _excess_delay(user, x)
    vals = (user.distance / r) * np.exp(-1j * cfg.wavenumber * delay)
    vals /= np.sqrt(cfg.n_antennas)
    return ComplexVector(vals, x, "spatial")


def spatial_channel(cfg: ArrayConfig, user: UserState) -> ComplexVector:
    """Discrete channel vector sqrt(N) * h0 * b(Omega, r0)."""
    b = near_steering_vector(cfg, user)
    vals = np.sqrt(cfg.n_antennas) * user.path_gain * b.values
    return ComplexVector(vals, b.grid, "spatial")


def continuous_channel(cfg: ArrayConfig, user: UserState, x):
    """Channel response at continuous aperture coordinate x.

    Sampling at the antenna positions reproduces spatial_channel exactly.
    |x| beyond the aperture edge D/2 is accepted (useful for derivative and
    edge analysis) even though only the aperture contributes to spectra.
    """
    r = element_distance(user, x)
    delay = _excess_delay(user, x)
    vals = user.path_gain * (user.distance / r) * np.exp(-1j * cfg.wavenumber * delay)
    return vals if np.ndim(vals) else complex(vals)


def far_steering_vector(cfg: ArrayConfig, omega: float) -> ComplexVector:
    """Plane-wave steering vector (1/sqrt(N)) * [1, e^{j*pi*Omega}, ...] at d = lambda/2."""
    if abs(omega) > 1:
        raise ValueError(f"|omega| must be <= 1, got {omega}")
    n = np.arange(cfg.n_antennas)
    phase_step = cfg.wavenumber * cfg.spacing * omega
    vals = np.exp(1j * phase_step * n) / np.sqrt(cfg.n_antennas)
    return ComplexVector(vals, antenna_positions(cfg), "spatial")


def rayleigh_distance(cfg: ArrayConfig) -> float:
    """Classical near-field boundary 2*D**2/lambda."""
    return 2.0 * cfg.aperture**2 / cfg.wavelength


def effective_rayleigh_distance(cfg: ArrayConfig, omega: float) -> float:
    """Direction-dependent boundary 1.155*D**2*(1-Omega**2)/lambda.

    Beyond it the diffusion width falls below the aperture's 3 dB beamwidth
    and the width-based range inversion stops resolving distance.
    """
    return 1.155 * cfg.aperture**2 * (1.0 - omega * omega) / cfg.wavelength
