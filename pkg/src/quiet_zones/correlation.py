"""
Diffuse-field spatial-temporal correlation.

For a field of plane waves arriving uniformly from all directions the
correlation between two points ``delta_r`` apart, at time lag ``delta_t``, is
the power-weighted sum of ``sinc(omega delta_r / c) cos(omega delta_t)`` over
the signal spectrum. Negative-frequency bins carry the same weight and the same
(even) kernel as their mirror, so sums run over the folded half-spectrum and
are real by construction.
"""

import logging
from typing import Union

import numpy as np

from .defaults import CHUNK_ELEMENTS, DEFAULT_C_MPS
from .error import ErrorKey
from .schemas import CorrelationQuery
from .spectral import PowerSpectrum
from .utils import chunk_slices, raise_simulation_error

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def sinc(x: ArrayLike) -> ArrayLike:
    """Unnormalized ``sin(x) / x`` with ``sinc(0) = 1``."""
    value = np.sinc(np.asarray(x, dtype=float) / np.pi)
    return value if value.ndim else float(value)


def puretone_correlation(f_hz: float, q: CorrelationQuery) -> float:
    omega = 2 * np.pi * f_hz
    return float(sinc(omega * q.delta_r / q.c) * np.cos(omega * q.delta_t))


def spatial_temporal_correlation(
    spectrum: PowerSpectrum,
    delta_r: ArrayLike,
    delta_t: ArrayLike = 0.0,
    c: float = DEFAULT_C_MPS,
) -> ArrayLike:
    """
    Broadband correlation for broadcastable arrays of separations and lags.

    Rows are evaluated in blocks of at most ``CHUNK_ELEMENTS`` kernel entries;
    each row is summed in ascending bin order, the same order used for the
    total power, so zero separation at zero lag gives exactly 1.
    """
    omega, weights = spectrum.support()
    delta_r, delta_t = np.broadcast_arrays(np.abs(np.asarray(delta_r, dtype=float)), np.asarray(delta_t, dtype=float))
    shape = delta_r.shape
    flat_r, flat_t = delta_r.ravel(), delta_t.ravel()
    total = np.sum(weights)
    out = np.empty(flat_r.size)
    for rows in chunk_slices(flat_r.size, CHUNK_ELEMENTS // omega.size):
        kernel = sinc(np.outer(flat_r[rows] / c, omega)) * np.cos(np.outer(flat_t[rows], omega))
        out[rows] = np.sum(kernel * weights, axis=1) / total
    out = out.reshape(shape)
    return out if out.ndim else float(out)


def broadband_correlation(spectrum: PowerSpectrum, q: CorrelationQuery) -> float:
    return float(spatial_temporal_correlation(spectrum, q.delta_r, q.delta_t, q.c))


def cross_correlation(
    spectrum: PowerSpectrum,
    delta_r_sep: float,
    delta_r_rad: float,
    r0: float,
    r1: float,
    c: float = DEFAULT_C_MPS,
) -> float:
    """
    Normalized primary-secondary cross-correlation at an observation point.

    ``-(r0 / r1) rho(delta_r_sep, delta_r_rad / c)``: the secondary field is the
    negated primary field at the cancellation point, delayed by the extra
    propagation time and scaled by spherical spreading.
    """
    if r1 <= 0:
        raise_simulation_error(logger, ErrorKey.point_at_source.value, f"r1={r1}")
    if r0 <= 0:
        raise_simulation_error(logger, ErrorKey.point_at_source.value, f"r0={r0}")
    rho = spatial_temporal_correlation(spectrum, delta_r_sep, delta_r_rad / c, c)
    return float(-(r0 / r1) * rho)
