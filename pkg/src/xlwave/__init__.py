"""Near-field XL-array channels across spatial, angular and wave-number domains."""

from .geometry import (
    SPEED_OF_LIGHT,
    ArrayConfig,
    ComplexVector,
    GeometryError,
    UserState,
    antenna_positions,
    continuous_channel,
    effective_rayleigh_distance,
    element_distance,
    far_steering_vector,
    near_steering_vector,
    rayleigh_distance,
    spatial_channel,
)
from .metrics import TrialRecord, farfield_count, jaccard, nmse_angle, nmse_distance, rates
from .posp import (
    FAR_FIELD,
    DegenerateStationaryPointError,
    PhasePair,
    WaveInterval,
    approx_spectrum,
    channel_phase_pair,
    diffusion_interval,
    estimate_user,
    farfield_verdict_width,
    posp_value,
    simplified_interval,
    stationary_point,
)
from .support import SupportConfig, SupportError, extract_support, support_from_angular
from .training import (
    Codebook,
    SweepMeasurement,
    TrainingResult,
    asw_je,
    exhaustive_search,
    measurement_floor_width,
    noise_power,
    perfect_csi,
    polar_codebook,
    simulate_sweep,
    wdsw_je,
)
from .transforms import (
    ComplexSpectrum,
    QuadratureError,
    WaveGrid,
    angular_transform,
    canonical_wave_grid,
    farfield_spectrum,
    inverse_angular_transform,
    sinc_interpolate,
    wavenumber_quadrature,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
