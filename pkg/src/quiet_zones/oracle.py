"""
Direction-sampling check of the diffuse-field correlation.

A diffuse field is a superposition of plane waves from uniformly distributed
directions with random phases. Between two points separated by ``delta_r``
along ``z``, a wave from a direction with polar cosine ``mu`` arrives
``mu delta_r / c`` later at one point than at the other, so the field
correlation is the mean over directions of the signal autocorrelation at lag
``delta_t - mu delta_r / c``. No sinc kernel is used here.
"""

import logging
from typing import Optional, Sequence, Union

import numpy as np
from numpy.random import PCG64, Generator
from scipy import fft
from scipy.interpolate import CubicSpline

from .correlation import spatial_temporal_correlation
from .defaults import CHUNK_ELEMENTS, DEFAULT_C_MPS, LAG_TABLE_PHASE_STEP
from .enums import OracleMethod
from .schemas import OracleConfig
from .spectral import PowerSpectrum
from .utils import chunk_slices, map_chunks

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def signal_autocorrelation(spectrum: PowerSpectrum, lag: ArrayLike) -> ArrayLike:
    """Normalized autocorrelation ``sum S cos(omega lag) / sum S`` (Wiener-Khinchin)."""
    omega, weights = spectrum.support()
    lag = np.asarray(lag, dtype=float)
    flat = lag.ravel()
    total = np.sum(weights)
    out = np.empty(flat.size)
    for rows in chunk_slices(flat.size, CHUNK_ELEMENTS // omega.size):
        out[rows] = np.sum(np.cos(np.outer(flat[rows], omega)) * weights, axis=1) / total
    out = out.reshape(lag.shape)
    return out if out.ndim else float(out)


def sample_directions(n_directions: int, seed: int) -> np.ndarray:
    """
    ``(n, 3)`` unit vectors uniform on the sphere from ``PCG64(seed)``.

    The polar cosine is drawn first for all directions, then the azimuth.
    """
    rng = Generator(PCG64(seed))
    mu = rng.uniform(-1.0, 1.0, n_directions)
    phi = rng.uniform(0.0, 2 * np.pi, n_directions)
    s = np.sqrt(1 - mu**2)
    return np.column_stack([s * np.cos(phi), s * np.sin(phi), mu])


def lag_table(spectrum: PowerSpectrum, max_lag: float) -> CubicSpline:
    """
    Cubic interpolant of the autocorrelation on ``[0, max_lag]``.

    Knots are spaced at a fixed fraction of the shortest period carrying power;
    the interpolant reproduces the knot values exactly.
    """
    omega, _ = spectrum.support()
    step = LAG_TABLE_PHASE_STEP / max(float(omega.max()), 1.0)
    n = max(int(np.ceil(max_lag / step)), 3)
    knots = np.arange(n + 1) * step
    logger.debug("Lag table with %d knots, step %.3g s", knots.size, step)
    return CubicSpline(knots, signal_autocorrelation(spectrum, knots))


def oracle_sweep(
    spectrum: PowerSpectrum,
    delta_rs: Sequence[float],
    delta_t: float = 0.0,
    c: float = DEFAULT_C_MPS,
    config: Optional[OracleConfig] = None,
) -> np.ndarray:
    """
    Direction-sampled correlation for every separation in ``delta_rs``.

    All separations share one set of directions. Batches of directions are
    summed independently and the partial sums are added in batch order.
    """
    config = config or OracleConfig()
    delta_rs = np.abs(np.asarray(delta_rs, dtype=float))
    mu = sample_directions(config.n_directions, config.seed)[:, 2]
    if config.method is OracleMethod.table:
        table = lag_table(spectrum, abs(delta_t) + float(delta_rs.max(initial=0.0)) / c)

        def autocorrelation(lags: np.ndarray) -> np.ndarray:
            # Autocorrelation is even in the lag.
            return table(np.abs(lags))

    else:

        def autocorrelation(lags: np.ndarray) -> np.ndarray:
            return np.asarray(signal_autocorrelation(spectrum, lags))

    def partial(batch: slice) -> np.ndarray:
        lags = delta_t - np.outer(mu[batch], delta_rs) / c
        return np.sum(autocorrelation(lags), axis=0)

    partials = map_chunks(partial, chunk_slices(config.n_directions, config.batch_size), config.workers)
    total = np.zeros(delta_rs.size)
    for value in partials:
        total += value
    logger.info("Oracle: %d directions, %d separations", config.n_directions, delta_rs.size)
    return total / config.n_directions


def oracle_correlation(
    spectrum: PowerSpectrum,
    delta_r: float,
    delta_t: float = 0.0,
    c: float = DEFAULT_C_MPS,
    config: Optional[OracleConfig] = None,
) -> float:
    return float(oracle_sweep(spectrum, [delta_r], delta_t, c, config)[0])


def estimate_convergence(
    spectrum: PowerSpectrum,
    delta_rs: Sequence[float],
    n_values: Sequence[int],
    seeds: Sequence[int],
    c: float = DEFAULT_C_MPS,
    config: Optional[OracleConfig] = None,
) -> tuple[np.ndarray, float]:
    """
    RMS over seeds of the largest oracle error, per direction count.

    Returns the errors and the slope of ``log(error)`` against ``log(n)``;
    independent sampling gives about ``-0.5``.
    """
    config = config or OracleConfig()
    analytic = np.asarray(spatial_temporal_correlation(spectrum, np.asarray(delta_rs, dtype=float), 0.0, c))
    errors = []
    for n in n_values:
        worst = []
        for seed in seeds:
            run = config.model_copy(update={"n_directions": n, "seed": seed})
            worst.append(np.max(np.abs(oracle_sweep(spectrum, delta_rs, 0.0, c, run) - analytic)))
        errors.append(np.sqrt(np.mean(np.square(worst))))
    errors = np.asarray(errors)
    slope = float(np.polyfit(np.log(np.asarray(n_values, dtype=float)), np.log(errors), 1)[0])
    return errors, slope


def filtered_noise_realization(spectrum: PowerSpectrum, n_samples: int, seed: int) -> np.ndarray:
    """
    Time-domain realization of the spectrum: white Gaussian noise shaped in frequency.

    The amplitude response is the square root of the PSD interpolated onto the
    realization's frequency grid.
    """
    grid = spectrum.grid
    half = grid.m_points // 2
    rng = Generator(PCG64(seed))
    noise = fft.rfft(rng.standard_normal(n_samples))
    freqs = fft.rfftfreq(n_samples, d=1 / grid.fs_hz)
    gain = np.sqrt(np.interp(freqs, grid.frequencies(), spectrum.weights[: half + 1]))
    return fft.irfft(noise * gain, n=n_samples)


def sample_autocorrelation(x: np.ndarray, max_lag: int) -> np.ndarray:
    """Biased normalized autocorrelation for lags ``0 .. max_lag`` (samples), via zero-padded FFT."""
    x = np.asarray(x, dtype=float)
    x = x - x.mean()
    n = fft.next_fast_len(2 * x.size)
    spectrum = fft.rfft(x, n=n)
    acf = fft.irfft(spectrum * np.conj(spectrum), n=n)[: max_lag + 1]
    return acf / acf[0]
