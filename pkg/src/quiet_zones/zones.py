"""
Attenuation around the cancellation point.

``epsilon`` is the controlled mean-square pressure divided by the primary
mean-square pressure. Near-field control cancels the primary field with a
monopole at the origin; far-field control relies on a secondary diffuse field
``gain_ratio`` times stronger than the primary one.
"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import bisect

from .correlation import spatial_temporal_correlation
from .defaults import BISECTION_XTOL, DB_FLOOR, DEFAULT_MAX_DELTA_R, DEFAULT_STEP
from .enums import ControlMode
from .error import ErrorKey
from .geometry import distance_from_source, radial_difference, separation
from .schemas import GridSpec, Scenario
from .spectral import PowerSpectrum, rms_frequency
from .utils import Table, chunk_slices, map_chunks, raise_simulation_error

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class AttenuationField:
    """
    Attenuation sampled on a rectangular grid.

    ``values[i, j]`` is epsilon at ``(x[i], y[j])``; cells inside the exclusion
    radius are ``True`` in ``mask`` and hold ``NaN``.
    """

    x: np.ndarray
    y: np.ndarray
    values: np.ndarray
    mask: np.ndarray

    @property
    def nx(self) -> int:
        return self.x.size

    @property
    def ny(self) -> int:
        return self.y.size

    @property
    def origin(self) -> tuple[float, float]:
        return float(self.x[0]), float(self.y[0])

    @property
    def spacing(self) -> float:
        return float(self.x[1] - self.x[0]) if self.nx > 1 else 0.0

    def db(self, floor_db: float = DB_FLOOR) -> np.ndarray:
        """Values in dB; masked cells stay ``NaN``."""
        out = np.full(self.values.shape, np.nan)
        out[~self.mask] = attenuation_db(self.values[~self.mask], floor_db)
        return out

    def value_at(self, x: float, y: float) -> float:
        i = int(np.argmin(np.abs(self.x - x)))
        j = int(np.argmin(np.abs(self.y - y)))
        return float(self.values[i, j])

    def rows(self) -> Table:
        """``x_m, y_m, epsilon`` for unmasked cells, ``x`` major."""
        xx, yy = np.meshgrid(self.x, self.y, indexing="ij")
        keep = ~self.mask
        return Table(columns=("x_m", "y_m", "epsilon"), data=np.column_stack([xx[keep], yy[keep], self.values[keep]]))


def _check_mode(scenario: Scenario, mode: ControlMode) -> None:
    if scenario.mode is not mode:
        raise_simulation_error(logger, ErrorKey.wrong_mode.value, f"expected {mode.value}, got {scenario.mode.value}")


def _nearfield(spectrum: PowerSpectrum, scenario: Scenario, points: np.ndarray, unit_ratio: bool) -> np.ndarray:
    """Epsilon at ``(n, dim)`` points, ``NaN`` inside the exclusion radius."""
    r0_point = scenario.point()
    r0 = distance_from_source(r0_point)
    r1 = np.asarray(distance_from_source(points))
    out = np.full(r1.shape, np.nan)
    keep = r1 >= scenario.exclusion_radius
    if not np.any(keep):
        return out
    inside = points[keep]
    rho = spatial_temporal_correlation(
        spectrum,
        separation(inside, r0_point),
        np.asarray(radial_difference(inside, r0_point)) / scenario.c,
        scenario.c,
    )
    a = 1.0 if unit_ratio else r0 / r1[keep]
    # 1 + a^2 - 2 a rho, arranged so that a = 1, rho = 1 gives exactly 0.
    out[keep] = np.maximum((1 - a) ** 2 + 2 * a * (1 - rho), 0.0)
    return out


def nearfield_attenuation(spectrum: PowerSpectrum, scenario: Scenario, p1: np.ndarray) -> float:
    """Near-field epsilon at ``p1`` with the true ``r0 / r1`` ratio."""
    _check_mode(scenario, ControlMode.near_field)
    p1 = np.asarray(p1, dtype=float)
    r1 = distance_from_source(p1)
    if r1 == 0:
        raise_simulation_error(logger, ErrorKey.point_at_source.value, f"p1={tuple(p1)}")
    if r1 < scenario.exclusion_radius:
        raise_simulation_error(
            logger, ErrorKey.point_in_exclusion.value, f"|p1|={r1:.6g} < {scenario.exclusion_radius:.6g}"
        )
    return float(_nearfield(spectrum, scenario, p1[None, :], unit_ratio=False)[0])


def nearfield_attenuation_limit(spectrum: PowerSpectrum, d: ArrayLike, c: float) -> ArrayLike:
    """On-axis epsilon ``2 (1 - rho(d, d / c))`` for ``r1`` close to ``r0``."""
    d = np.asarray(d, dtype=float)
    eps = 2 * (1 - np.asarray(spatial_temporal_correlation(spectrum, d, d / c, c)))
    return eps if eps.ndim else float(eps)


def farfield_attenuation(spectrum: PowerSpectrum, scenario: Scenario, d: ArrayLike) -> ArrayLike:
    """Far-field epsilon ``(1 + g)(1 - rho(d, 0)^2)``."""
    _check_mode(scenario, ControlMode.far_field)
    rho = np.asarray(spatial_temporal_correlation(spectrum, d, 0.0, scenario.c))
    eps = (1 + scenario.gain_ratio) * (1 - rho**2)
    return eps if eps.ndim else float(eps)


def attenuation_db(epsilon: ArrayLike, floor_db: float = DB_FLOOR) -> ArrayLike:
    """``10 log10(epsilon)`` clipped below at ``floor_db``."""
    epsilon = np.asarray(epsilon, dtype=float)
    with np.errstate(divide="ignore"):
        db = np.maximum(10 * np.log10(epsilon), floor_db)
    return db if db.ndim else float(db)


def attenuation_profile(spectrum: PowerSpectrum, scenario: Scenario, distances: ArrayLike) -> ArrayLike:
    """1-D epsilon curve: the on-axis limit form for near-field, the gain form for far-field."""
    if scenario.mode is ControlMode.near_field:
        return nearfield_attenuation_limit(spectrum, distances, scenario.c)
    return farfield_attenuation(spectrum, scenario, distances)


def sweep(max_delta_r: float = DEFAULT_MAX_DELTA_R, step: float = DEFAULT_STEP) -> np.ndarray:
    """Distances ``0, step, 2 step, ...`` up to ``max_delta_r`` inclusive."""
    n = int(np.floor(max_delta_r / step + 1e-9))
    return np.arange(n + 1) * step


def zone_width(
    spectrum: PowerSpectrum,
    scenario: Scenario,
    threshold: float,
    *,
    max_delta_r: float = DEFAULT_MAX_DELTA_R,
    step: float = DEFAULT_STEP,
) -> float:
    """
    Width ``2 d`` of the zone of quiet on the 1-D attenuation curve.

    ``d`` is the smallest positive distance at which epsilon reaches
    ``threshold``: the first sweep sample at or above it brackets the root,
    which bisection then refines.
    """
    if not 0 < threshold < 1:
        raise_simulation_error(logger, ErrorKey.invalid_threshold.value, f"{threshold}")
    distances = sweep(max_delta_r, step)
    eps = np.asarray(attenuation_profile(spectrum, scenario, distances))
    above = np.flatnonzero(eps >= threshold)
    if above.size == 0:
        raise_simulation_error(
            logger, ErrorKey.no_crossing.value, f"max epsilon {eps.max():.6g} < {threshold:.6g} up to {max_delta_r} m"
        )
    k = int(above[0])

    def excess(d: float) -> float:
        return float(attenuation_profile(spectrum, scenario, d)) - threshold

    d_star = bisect(excess, distances[k - 1], distances[k], xtol=BISECTION_XTOL)
    logger.debug("Zone edge at d=%.9g m (bracket %d)", d_star, k)
    return 2 * d_star


def first_order_zone_width(spectrum: PowerSpectrum, c: float) -> float:
    """Rule-of-thumb width: a tenth of the wavelength at the RMS frequency."""
    return c / rms_frequency(spectrum) / 10


def attenuation_field_2d(
    spectrum: PowerSpectrum,
    scenario: Scenario,
    grid: GridSpec,
    *,
    unit_ratio: bool = False,
    workers: int = 1,
) -> AttenuationField:
    """
    Epsilon over ``grid``.

    Near-field maps use the general form with the true ``r0 / r1`` ratio unless
    ``unit_ratio`` is set; far-field maps use the separation from the
    cancellation point. Rows of constant ``x`` are evaluated independently.
    """
    x, y = grid.x_coords(), grid.y_coords()
    dim = len(scenario.cancellation_point)
    r0_point = scenario.point()

    def evaluate(rows: slice) -> np.ndarray:
        xx, yy = np.meshgrid(x[rows], y, indexing="ij")
        points = np.zeros(xx.shape + (dim,))
        points[..., 0], points[..., 1] = xx, yy
        flat = points.reshape(-1, dim)
        if scenario.mode is ControlMode.near_field:
            eps = _nearfield(spectrum, scenario, flat, unit_ratio)
        else:
            eps = np.asarray(farfield_attenuation(spectrum, scenario, separation(flat, r0_point)))
        return eps.reshape(xx.shape)

    values = np.concatenate(map_chunks(evaluate, chunk_slices(x.size, max(1, x.size // (4 * workers))), workers))
    mask = np.isnan(values)
    logger.info("Evaluated %dx%d field, %d cells masked", x.size, y.size, int(mask.sum()))
    return AttenuationField(x=x, y=y, values=values, mask=mask)


def field_axis_profile(field: AttenuationField, y: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """``x`` and epsilon along the grid row closest to ``y``."""
    j = int(np.argmin(np.abs(field.y - y)))
    return field.x, field.values[:, j]

