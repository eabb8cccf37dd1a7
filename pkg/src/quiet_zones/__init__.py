"""
Diffuse-field correlation and active noise control zones of quiet.

See the README.md for more information.
"""

from .contour import ContourExtent, ContourSet, Polyline, contour_extent, extract_iso_contour, polygon_area
from .correlation import (
    broadband_correlation,
    cross_correlation,
    puretone_correlation,
    sinc,
    spatial_temporal_correlation,
)
from .enums import ControlMode, CorrelationKind, FilterKind, OracleMethod, Preset
from .error import ConfigError, ErrorKey, ExitCode, SimulationError, ToleranceError
from .geometry import monopole_frequency_limit, radial_difference, separation
from .oracle import oracle_correlation, oracle_sweep, signal_autocorrelation
from .schemas import (
    CorrelationQuery,
    FilteredNoise,
    FilterStage,
    GridSpec,
    OracleConfig,
    PureTone,
    Scenario,
    SignalSpec,
    SpectralGrid,
)
from .settings import RunConfig
from .simulator import ZoneSimulator
from .spectral import PowerSpectrum, butterworth_gain, preset, psd_report, synthesize_psd
from .zones import (
    AttenuationField,
    attenuation_db,
    attenuation_field_2d,
    farfield_attenuation,
    nearfield_attenuation,
    nearfield_attenuation_limit,
    zone_width,
)

__version__ = "0.1.0"

__all__ = [
    "AttenuationField",
    "ConfigError",
    "ContourExtent",
    "ContourSet",
    "ControlMode",
    "CorrelationKind",
    "CorrelationQuery",
    "ErrorKey",
    "ExitCode",
    "FilterKind",
    "FilterStage",
    "FilteredNoise",
    "GridSpec",
    "OracleConfig",
    "OracleMethod",
    "Polyline",
    "PowerSpectrum",
    "Preset",
    "PureTone",
    "RunConfig",
    "Scenario",
    "SignalSpec",
    "SimulationError",
    "SpectralGrid",
    "ToleranceError",
    "ZoneSimulator",
    "attenuation_db",
    "attenuation_field_2d",
    "broadband_correlation",
    "butterworth_gain",
    "contour_extent",
    "cross_correlation",
    "extract_iso_contour",
    "farfield_attenuation",
    "monopole_frequency_limit",
    "nearfield_attenuation",
    "nearfield_attenuation_limit",
    "oracle_correlation",
    "oracle_sweep",
    "polygon_area",
    "preset",
    "psd_report",
    "puretone_correlation",
    "radial_difference",
    "separation",
    "signal_autocorrelation",
    "sinc",
    "spatial_temporal_correlation",
    "synthesize_psd",
    "zone_width",
]
