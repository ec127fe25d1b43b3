import numpy as np
import pytest

from xlwave import (
    ArrayConfig,
    SupportConfig,
    UserState,
    canonical_wave_grid,
    wavenumber_quadrature,
)

# 30 GHz setup with the rounded wavelength the reference constants assume
# (exactly 0.01 m, so d = 5 mm and D = 1.275 m).
NOMINAL_FC = 30e9
NOMINAL_WAVELENGTH = 0.01


@pytest.fixture(scope="session")
def cfg():
    return ArrayConfig(n_antennas=256, carrier_freq=NOMINAL_FC, wavelength=NOMINAL_WAVELENGTH)


@pytest.fixture(scope="session")
def cfg_n():
    return ArrayConfig(
        n_antennas=256,
        carrier_freq=NOMINAL_FC,
        wavelength=NOMINAL_WAVELENGTH,
        aperture_convention="n",
    )


@pytest.fixture(scope="session")
def fig_user():
    """The single-user spectrum setup (10 m, direction cosine 0.05)."""
    return UserState(10.0, 0.05)


@pytest.fixture(scope="session")
def full_grid(cfg):
    return canonical_wave_grid(cfg, oversample=16, band_fraction=1.0)


@pytest.fixture(scope="session")
def fig_quadrature(cfg, fig_user, full_grid):
    """Quadrature spectrum of the (10 m, 0.05) user on the oversampled band grid."""
    return wavenumber_quadrature(cfg, fig_user, full_grid)


@pytest.fixture(scope="session")
def scfg():
    return SupportConfig()


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260808)
