"""Pydantic schemas for quiet-zones."""

import math
from typing import Annotated, Any, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

from .defaults import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_C_MPS,
    DEFAULT_EXCLUSION_RADIUS,
    DEFAULT_FS_HZ,
    DEFAULT_GAIN_RATIO,
    DEFAULT_GRID,
    DEFAULT_M_POINTS,
    DEFAULT_N_DIRECTIONS,
    DEFAULT_R0,
    DEFAULT_SEED,
    GRID_DECIMALS,
)
from .enums import ControlMode, FilterKind, OracleMethod
from .types import Distance, Frequency, Point, PositiveFloat, Seed, split_csv_floats


class FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class FilterStage(FrozenModel):
    """One Butterworth stage of a filtered-noise signal."""

    kind: FilterKind
    order: int = Field(ge=1)
    cutoff_hz: Frequency


class PureTone(FrozenModel):
    variant: Literal["tone"] = "tone"
    freq_hz: Frequency


class FilteredNoise(FrozenModel):
    """Unit white noise passed through a cascade of Butterworth stages."""

    variant: Literal["noise"] = "noise"
    stages: tuple[FilterStage, ...] = Field(min_length=1)


SignalSpec = Annotated[Union[PureTone, FilteredNoise], Field(discriminator="variant")]


class SpectralGrid(FrozenModel):
    """
    DFT evaluation grid.

    Bin ``m`` sits at ``m * fs_hz / m_points`` for ``m <= m_points / 2``; the
    bins above represent the negative frequencies ``(m - m_points) * fs_hz / m_points``.
    """

    fs_hz: Frequency = DEFAULT_FS_HZ
    m_points: int = Field(default=DEFAULT_M_POINTS, ge=2)

    @model_validator(mode="after")
    def check_even(self) -> Self:
        if self.m_points % 2:
            raise ValueError("m_points must be even.")
        return self

    @property
    def nyquist_hz(self) -> float:
        return self.fs_hz / 2

    @property
    def bin_width_hz(self) -> float:
        return self.fs_hz / self.m_points

    def signed_bins(self) -> np.ndarray:
        """Integer bin offsets, negative above ``m_points / 2``."""
        m = np.arange(self.m_points)
        return np.where(m <= self.m_points // 2, m, m - self.m_points)

    def signed_frequencies(self) -> np.ndarray:
        return self.signed_bins() * self.fs_hz / self.m_points

    def abs_frequencies(self) -> np.ndarray:
        # Built from integer offsets so that bins m and M - m are bitwise equal.
        return np.abs(self.signed_bins()) * self.fs_hz / self.m_points

    def frequencies(self) -> np.ndarray:
        """Frequencies of bins ``0 .. m_points / 2``."""
        return np.arange(self.m_points // 2 + 1) * self.fs_hz / self.m_points

    def nearest_bin(self, freq_hz: float) -> int:
        return int(np.rint(freq_hz * self.m_points / self.fs_hz))


class Scenario(FrozenModel):
    """
    Control geometry and medium.

    The secondary source sits at the origin. ``gain_ratio`` is the secondary to
    primary mean-square pressure ratio used in far-field control.
    """

    cancellation_point: Point = DEFAULT_R0
    c: PositiveFloat = DEFAULT_C_MPS
    mode: ControlMode = ControlMode.near_field
    gain_ratio: float = Field(default=DEFAULT_GAIN_RATIO, ge=0, allow_inf_nan=False)
    exclusion_radius: PositiveFloat = DEFAULT_EXCLUSION_RADIUS

    @model_validator(mode="after")
    def check_cancellation_point(self) -> Self:
        if math.hypot(*self.cancellation_point) <= 0:
            raise ValueError("cancellation_point must not coincide with the source.")
        return self

    @property
    def r0(self) -> float:
        return math.hypot(*self.cancellation_point)

    def point(self) -> np.ndarray:
        return np.asarray(self.cancellation_point, dtype=float)


class CorrelationQuery(FrozenModel):
    delta_r: Distance
    delta_t: float = Field(default=0.0, allow_inf_nan=False)
    c: PositiveFloat = DEFAULT_C_MPS


class GridSpec(FrozenModel):
    """Rectangular evaluation grid for attenuation maps."""

    x_min: float = DEFAULT_GRID[0]
    x_max: float = DEFAULT_GRID[1]
    y_min: float = DEFAULT_GRID[2]
    y_max: float = DEFAULT_GRID[3]
    spacing: PositiveFloat = DEFAULT_GRID[4]

    @model_validator(mode="before")
    @classmethod
    def from_sequence(cls, data: Any) -> Any:
        """Accept ``"x_min,x_max,y_min,y_max,spacing"`` or a five-item list."""
        data = split_csv_floats(data)
        if isinstance(data, (list, tuple)):
            if len(data) != 5:
                raise ValueError("grid needs x_min, x_max, y_min, y_max, spacing.")
            return dict(zip(("x_min", "x_max", "y_min", "y_max", "spacing"), data))
        return data

    @model_validator(mode="after")
    def check_bounds(self) -> Self:
        if self.x_max <= self.x_min or self.y_max <= self.y_min:
            raise ValueError("grid bounds must be increasing.")
        return self

    def _axis(self, lo: float, hi: float) -> np.ndarray:
        n = int(np.floor((hi - lo) / self.spacing + 1e-9)) + 1
        # Snap nodes so that nominal coordinates such as 0.2 are hit exactly.
        return np.round(lo + self.spacing * np.arange(n), GRID_DECIMALS)

    def x_coords(self) -> np.ndarray:
        return self._axis(self.x_min, self.x_max)

    def y_coords(self) -> np.ndarray:
        return self._axis(self.y_min, self.y_max)

    def refined(self, factor: int = 2) -> "GridSpec":
        return self.model_copy(update={"spacing": self.spacing / factor})


class OracleConfig(FrozenModel):
    """
    Direction-sampling oracle settings.

    Directions come from numpy's ``PCG64`` generator seeded with ``seed``.
    ``method`` selects exact per-direction autocorrelation sums (``direct``) or
    a cubic lag table accurate to about 1e-10 (``table``).
    """

    n_directions: int = Field(default=DEFAULT_N_DIRECTIONS, ge=1)
    seed: Seed = DEFAULT_SEED
    batch_size: int = Field(default=DEFAULT_BATCH_SIZE, ge=1)
    workers: int = Field(default=1, ge=1)
    method: OracleMethod = OracleMethod.table
