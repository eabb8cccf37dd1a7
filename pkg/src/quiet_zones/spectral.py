"""
Excitation signals and their discrete power spectral densities.

Filtered-noise spectra use the analytic magnitude-squared Butterworth response
on the DFT grid, which is the expectation of a periodogram of filtered white
noise. Unit white noise has weight 1 per bin; correlation sums normalize by the
total power, so the scale cancels.
"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import expit

from .enums import FilterKind, Preset
from .error import ErrorKey
from .schemas import FilteredNoise, FilterStage, PureTone, SignalSpec, SpectralGrid
from .utils import Table, raise_simulation_error

logger = logging.getLogger(__name__)

PRESETS: dict[Preset, Union[PureTone, FilteredNoise]] = {
    Preset.tone300: PureTone(freq_hz=300.0),
    Preset.lpf300: FilteredNoise(stages=(FilterStage(kind=FilterKind.low_pass, order=32, cutoff_hz=300.0),)),
    Preset.lpf600: FilteredNoise(stages=(FilterStage(kind=FilterKind.low_pass, order=32, cutoff_hz=600.0),)),
    # Cutoffs cross over: the passband is the overlap of both skirts.
    Preset.bpf: FilteredNoise(
        stages=(
            FilterStage(kind=FilterKind.low_pass, order=8, cutoff_hz=400.0),
            FilterStage(kind=FilterKind.high_pass, order=2, cutoff_hz=600.0),
        )
    ),
}


def preset(name: Union[str, Preset]) -> Union[PureTone, FilteredNoise]:
    """Return the signal spec registered under ``name``."""
    try:
        return PRESETS[Preset(name)]
    except ValueError:
        raise_simulation_error(logger, ErrorKey.unknown_preset.value, f"{name!r}")


@dataclass(frozen=True)
class PowerSpectrum:
    """
    Conjugate-symmetric power spectral density on a DFT grid.

    ``weights[m]`` is the power in bin ``m`` for ``m = 0 .. M-1``. The array is
    copied and made read-only on construction.
    """

    grid: SpectralGrid
    weights: np.ndarray

    def __post_init__(self) -> None:
        weights = np.array(self.weights, dtype=float)
        m = self.grid.m_points
        if weights.shape != (m,) or not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise_simulation_error(logger, ErrorKey.invalid_spectrum.value, f"shape {weights.shape}, M={m}")
        if not np.array_equal(weights[1:], weights[:0:-1]):
            raise_simulation_error(logger, ErrorKey.invalid_spectrum.value, "S(m) != S(M-m)")
        if not np.any(weights > 0):
            raise_simulation_error(logger, ErrorKey.zero_power.value)
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    @property
    def total_power(self) -> float:
        return float(np.sum(self.folded()[1]))

    def folded(self) -> tuple[np.ndarray, np.ndarray]:
        """
        Non-negative frequencies ``0 .. fs/2`` and weights with mirror bins merged.

        Every kernel used on a spectrum is even in frequency, so summing the
        folded half in ascending order equals the full signed-frequency sum.
        """
        half = self.grid.m_points // 2
        folded = self.weights[: half + 1].copy()
        folded[1:half] += self.weights[: half : -1]
        return self.grid.frequencies(), folded

    def support(self) -> tuple[np.ndarray, np.ndarray]:
        """Angular frequencies (rad/s) and folded weights of the bins carrying power."""
        freqs, folded = self.folded()
        keep = folded > 0
        return 2 * np.pi * freqs[keep], folded[keep]


def butterworth_gain(stage: FilterStage, f: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    Magnitude-squared Butterworth response at frequency ``f`` (Hz).

    Low-pass: ``1 / (1 + (f/fc)^(2n))``; high-pass: ``(f/fc)^(2n) / (1 + (f/fc)^(2n))``.
    Evaluated as a logistic of ``2n log(f/fc)`` so large orders never overflow.
    """
    f = np.abs(np.asarray(f, dtype=float))
    with np.errstate(divide="ignore"):
        x = 2 * stage.order * np.log(f / stage.cutoff_hz)
    gain = expit(-x) if stage.kind is FilterKind.low_pass else expit(x)
    return gain if gain.ndim else float(gain)


def _check_below_nyquist(freq_hz: float, grid: SpectralGrid) -> None:
    if freq_hz >= grid.nyquist_hz:
        raise_simulation_error(logger, ErrorKey.above_nyquist.value, f"{freq_hz} Hz >= {grid.nyquist_hz} Hz")


def synthesize_psd(spec: SignalSpec, grid: SpectralGrid) -> PowerSpectrum:
    """Build the discrete PSD of ``spec`` on ``grid``."""
    m_points = grid.m_points
    if isinstance(spec, PureTone):
        _check_below_nyquist(spec.freq_hz, grid)
        m = grid.nearest_bin(spec.freq_hz)
        if m == 0 or m == m_points // 2:
            raise_simulation_error(logger, ErrorKey.degenerate_tone.value, f"{spec.freq_hz} Hz -> bin {m}")
        weights = np.zeros(m_points)
        weights[m] = weights[m_points - m] = 0.5
        logger.debug("Tone %.6g Hz snapped to bin %d (%.6g Hz)", spec.freq_hz, m, m * grid.bin_width_hz)
        return PowerSpectrum(grid=grid, weights=weights)

    for stage in spec.stages:
        _check_below_nyquist(stage.cutoff_hz, grid)
    f = grid.abs_frequencies()
    weights = np.ones(m_points)
    for stage in spec.stages:
        weights = weights * butterworth_gain(stage, f)
    logger.debug("Synthesized %d-stage filtered noise on M=%d", len(spec.stages), m_points)
    return PowerSpectrum(grid=grid, weights=weights)


def psd_report(spectrum: PowerSpectrum) -> Table:
    """``freq_hz, psd`` rows for bins ``0 .. M/2`` with the stored weights."""
    half = spectrum.grid.m_points // 2
    return Table(
        columns=("freq_hz", "psd"),
        data=np.column_stack([spectrum.grid.frequencies(), spectrum.weights[: half + 1]]),
    )


def centroid_frequency(spectrum: PowerSpectrum) -> float:
    """Power-weighted mean frequency over the non-negative half."""
    freqs, folded = spectrum.folded()
    return float(np.sum(freqs * folded) / np.sum(folded))


def rms_frequency(spectrum: PowerSpectrum) -> float:
    """
    Power-weighted RMS frequency.

    A tone at this frequency has the same curvature of spatial correlation
    at zero separation as the broadband signal.
    """
    freqs, folded = spectrum.folded()
    return float(np.sqrt(np.sum(freqs**2 * folded) / np.sum(folded)))


def power_fraction_above(spectrum: PowerSpectrum, f_hz: float) -> float:
    freqs, folded = spectrum.folded()
    return float(np.sum(folded[freqs > f_hz]) / np.sum(folded))
