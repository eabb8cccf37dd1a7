from enum import Enum
from pathlib import Path
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BeforeValidator, Field, model_validator
from pydantic_settings import BaseSettings, NoDecode, SettingsConfigDict, TomlConfigSettingsSource
from typing_extensions import Self

from .defaults import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_C_MPS,
    DEFAULT_EXCLUSION_RADIUS,
    DEFAULT_FS_HZ,
    DEFAULT_GAIN_RATIO,
    DEFAULT_LOG_LEVEL,
    DEFAULT_M_POINTS,
    DEFAULT_MAX_DELTA_R,
    DEFAULT_N_DIRECTIONS,
    DEFAULT_ORACLE_STEP,
    DEFAULT_ORACLE_TOLERANCE,
    DEFAULT_R0,
    DEFAULT_SEED,
    DEFAULT_STEP,
    DEFAULT_THRESHOLD_DB,
    ENV_PREFIX,
)
from .enums import ControlMode, OracleMethod, Preset
from .error import ConfigError
from .schemas import FilteredNoise, GridSpec, OracleConfig, PureTone, Scenario, SignalSpec, SpectralGrid
from .spectral import preset
from .types import Frequency, Point, PositiveFloat, Seed, parse_inline_json

LogLevel = Annotated[
    Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
    BeforeValidator(lambda v: v.upper() if isinstance(v, str) else v),
]
SignalField = Annotated[Union[Preset, SignalSpec], BeforeValidator(parse_inline_json)]


class RunConfig(BaseSettings):
    """
    Every parameter of a simulation run.

    Values resolve, highest priority first, from keyword arguments (command-line
    flags), a TOML file given to :meth:`from_file`, ``QUIET_ZONES_*`` environment
    variables and the defaults in :mod:`quiet_zones.defaults`.

    Example::

        config = RunConfig.from_file("run.toml", signal="lpf600")
        spectrum = synthesize_psd(config.signal_spec(), config.spectral_grid())

    """

    model_config = SettingsConfigDict(env_prefix=ENV_PREFIX, frozen=True, extra="forbid")

    signal: SignalField = Preset.tone300
    fs_hz: Frequency = DEFAULT_FS_HZ
    m_points: int = Field(default=DEFAULT_M_POINTS, ge=2)
    c_mps: PositiveFloat = DEFAULT_C_MPS
    mode: ControlMode = ControlMode.near_field
    r0: Annotated[Point, NoDecode] = DEFAULT_R0
    gain_ratio: float = Field(default=DEFAULT_GAIN_RATIO, ge=0, allow_inf_nan=False)
    grid: Annotated[GridSpec, NoDecode] = GridSpec()
    threshold_db: float = Field(default=DEFAULT_THRESHOLD_DB, lt=0, allow_inf_nan=False)
    max_delta_r: PositiveFloat = DEFAULT_MAX_DELTA_R
    step: PositiveFloat = DEFAULT_STEP
    oracle_step: PositiveFloat = DEFAULT_ORACLE_STEP
    exclusion_radius: PositiveFloat = DEFAULT_EXCLUSION_RADIUS
    source_radius: Optional[PositiveFloat] = None
    n_directions: int = Field(default=DEFAULT_N_DIRECTIONS, ge=1)
    seed: Seed = DEFAULT_SEED
    tolerance: PositiveFloat = DEFAULT_ORACLE_TOLERANCE
    batch_size: int = Field(default=DEFAULT_BATCH_SIZE, ge=1)
    oracle_method: OracleMethod = OracleMethod.table
    workers: int = Field(default=1, ge=1)
    log_level: LogLevel = DEFAULT_LOG_LEVEL

    @model_validator(mode="after")
    def check_sweeps(self) -> Self:
        if self.step > self.max_delta_r or self.oracle_step > self.max_delta_r:
            raise ValueError("sweep step must not exceed max_delta_r.")
        return self

    @classmethod
    def from_file(cls, config_file: Union[str, Path], **overrides: Any) -> "RunConfig":
        """Read a flat TOML file; keyword overrides that are not ``None`` win over it."""
        path = Path(config_file)
        if not path.is_file():
            raise ConfigError("config_file", str(path))
        try:
            values = TomlConfigSettingsSource(cls, toml_file=path)()
        except ValueError as e:
            # tomllib and tomli both raise TOMLDecodeError, a ValueError.
            raise ConfigError("config_file", f"{path}: {e}") from e
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    @classmethod
    def reference(cls, **overrides: Any) -> "RunConfig":
        """The published near-field example: band-pass noise, cancellation point at (0.2, 0)."""
        values: dict[str, Any] = {
            "signal": Preset.bpf,
            "fs_hz": DEFAULT_FS_HZ,
            "m_points": DEFAULT_M_POINTS,
            "c_mps": DEFAULT_C_MPS,
            "mode": ControlMode.near_field,
            "r0": DEFAULT_R0,
            "gain_ratio": DEFAULT_GAIN_RATIO,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def spectral_grid(self) -> SpectralGrid:
        return SpectralGrid(fs_hz=self.fs_hz, m_points=self.m_points)

    def signal_spec(self) -> Union[PureTone, FilteredNoise]:
        if isinstance(self.signal, Preset):
            return preset(self.signal)
        return self.signal

    def scenario(self, mode: Optional[ControlMode] = None) -> Scenario:
        """Control scenario; a set ``source_radius`` widens the exclusion radius."""
        exclusion = self.exclusion_radius
        if self.source_radius is not None:
            exclusion = max(exclusion, self.source_radius)
        return Scenario(
            cancellation_point=self.r0,
            c=self.c_mps,
            mode=mode or self.mode,
            gain_ratio=self.gain_ratio,
            exclusion_radius=exclusion,
        )

    def grid_spec(self) -> GridSpec:
        return self.grid

    def oracle_config(self) -> OracleConfig:
        return OracleConfig(
            n_directions=self.n_directions,
            seed=self.seed,
            batch_size=self.batch_size,
            workers=self.workers,
            method=self.oracle_method,
        )

    @property
    def threshold_epsilon(self) -> float:
        return 10 ** (self.threshold_db / 10)

    def echo(self) -> list[tuple[str, str]]:
        """Fully resolved configuration as ordered ``(key, value)`` pairs."""
        pairs = []
        for name in type(self).model_fields:
            if name == "log_level":
                continue
            pairs.append((name, _format(getattr(self, name))))
        pairs.append(("signal_spec", self.signal_spec().model_dump_json()))
        return pairs


def _format(value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, tuple):
        return ",".join(repr(float(item)) for item in value)
    if isinstance(value, GridSpec):
        return ",".join(repr(value.model_dump()[key]) for key in ("x_min", "x_max", "y_min", "y_max", "spacing"))
    if isinstance(value, (PureTone, FilteredNoise)):
        return value.model_dump_json()
    return repr(value) if isinstance(value, float) else str(value)
