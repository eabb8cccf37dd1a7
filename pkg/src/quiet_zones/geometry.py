"""
Distances to the secondary source at the origin and to the cancellation point.

Points may be 2-D or 3-D; a 2-D point is the ``z = 0`` slice. All functions
accept a single point or an ``(..., dim)`` array of points.
"""

import numpy as np

from .defaults import MONOPOLE_KA_LIMIT


def _as_points(p1: np.ndarray, p0: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p1 = np.asarray(p1, dtype=float)
    p0 = np.asarray(p0, dtype=float)
    dim = max(p1.shape[-1], p0.shape[-1])
    pad = [(0, 0)] * (p1.ndim - 1) + [(0, dim - p1.shape[-1])]
    p1 = np.pad(p1, pad)
    p0 = np.pad(p0, [(0, 0)] * (p0.ndim - 1) + [(0, dim - p0.shape[-1])])
    return p1, p0


def _scalar(value: np.ndarray):
    return value if value.ndim else float(value)


def distance_from_source(p: np.ndarray):
    """``|p|``, summed in coordinate order for every point shape."""
    p = np.asarray(p, dtype=float)
    return _scalar(np.sqrt(np.sum(p * p, axis=-1)))


def separation(p1: np.ndarray, p0: np.ndarray):
    """Euclidean distance ``|p1 - p0|``."""
    p1, p0 = _as_points(p1, p0)
    return distance_from_source(p1 - p0)


def radial_difference(p1: np.ndarray, p0: np.ndarray):
    """``|p1| - |p0|``; negative when ``p1`` is closer to the source."""
    p1, p0 = _as_points(p1, p0)
    return _scalar(np.asarray(distance_from_source(p1)) - np.asarray(distance_from_source(p0)))


def monopole_frequency_limit(source_radius: float, c: float) -> float:
    """Highest frequency at which a piston of radius ``source_radius`` radiates like a monopole."""
    return MONOPOLE_KA_LIMIT * c / (2 * np.pi * source_radius)
