from dataclasses import dataclass
from enum import Enum


@dataclass
class ErrorDescription:
    """What went wrong and what to change."""

    summary: str
    remedy: str


class ExitCode(int, Enum):
    """Process exit codes of the command-line interface."""

    SUCCESS = 0
    CONFIG_ERROR = 1
    VALIDATION_ERROR = 2


class ErrorKey(str, Enum):
    """Simulation error keys."""

    above_nyquist = "ABOVE_NYQUIST"
    degenerate_polygon = "DEGENERATE_POLYGON"
    degenerate_tone = "DEGENERATE_TONE"
    invalid_spectrum = "INVALID_SPECTRUM"
    invalid_threshold = "INVALID_THRESHOLD"
    no_closed_contour = "NO_CLOSED_CONTOUR"
    no_crossing = "NO_CROSSING"
    point_at_source = "POINT_AT_SOURCE"
    point_in_exclusion = "POINT_IN_EXCLUSION"
    too_few_cells = "TOO_FEW_CELLS"
    tolerance_exceeded = "TOLERANCE_EXCEEDED"
    unknown_preset = "UNKNOWN_PRESET"
    wrong_mode = "WRONG_MODE"
    zero_power = "ZERO_POWER"


ErrorDetail = {
    ErrorKey.above_nyquist.value: ErrorDescription(
        summary="Frequency is at or above the Nyquist frequency of the grid!",
        remedy="Lower the frequency or raise the sampling rate.",
    ),
    ErrorKey.degenerate_polygon.value: ErrorDescription(
        summary="Polyline does not enclose an area!", remedy="Use a closed polyline with at least 3 vertices."
    ),
    ErrorKey.degenerate_tone.value: ErrorDescription(
        summary="Tone snaps to the DC or Nyquist bin!", remedy="Pick a frequency strictly inside the band."
    ),
    ErrorKey.invalid_spectrum.value: ErrorDescription(
        summary="Spectrum weights are negative, non-finite or not symmetric!",
        remedy="Synthesize spectra with synthesize_psd.",
    ),
    ErrorKey.invalid_threshold.value: ErrorDescription(
        summary="Attenuation threshold must lie strictly between 0 and 1!", remedy="Use a negative dB threshold."
    ),
    ErrorKey.no_closed_contour.value: ErrorDescription(
        summary="No closed contour at this level!", remedy="Widen the grid or raise the level."
    ),
    ErrorKey.no_crossing.value: ErrorDescription(
        summary="Attenuation never reaches the threshold over the search range!",
        remedy="Extend the search range.",
    ),
    ErrorKey.point_at_source.value: ErrorDescription(
        summary="Point coincides with the secondary source!", remedy="Move the point away from the origin."
    ),
    ErrorKey.point_in_exclusion.value: ErrorDescription(
        summary="Point lies inside the exclusion radius around the source!",
        remedy="The 1/r monopole model is not valid there.",
    ),
    ErrorKey.too_few_cells.value: ErrorDescription(
        summary="Field has fewer than 2x2 evaluated cells!", remedy="Use a larger grid."
    ),
    ErrorKey.tolerance_exceeded.value: ErrorDescription(
        summary="Oracle deviates from the analytic correlation!", remedy="Increase the number of directions."
    ),
    ErrorKey.unknown_preset.value: ErrorDescription(
        summary="Unknown signal preset!", remedy="Use one of tone300, lpf300, lpf600, bpf."
    ),
    ErrorKey.wrong_mode.value: ErrorDescription(
        summary="Operation does not apply to this control mode!", remedy="Check the scenario mode."
    ),
    ErrorKey.zero_power.value: ErrorDescription(
        summary="Spectrum carries no power!", remedy="At least one weight must be positive."
    ),
}

ErrorExitCode = {
    ErrorKey.tolerance_exceeded.value: ExitCode.VALIDATION_ERROR,
}


class SimulationError(Exception):
    """
    Raised when a simulation input or result violates the model.

    Attributes:
        error_key: Machine-readable key (e.g. ``"NO_CROSSING"``).
        detail: Context for this occurrence (values, positions).
        error_detail: Generic description of the key, or ``"No description."``.
        exit_code: Exit code the CLI uses for this error.

    Example::

        try:
            width = zone_width(spectrum, scenario, 0.1)
        except SimulationError as e:
            print(e.error_key)             # "NO_CROSSING"
            print(e.error_detail.summary)

    """

    def __init__(self, *, error_key: str, detail: str = "") -> None:
        self.error_key = error_key
        self.detail = detail
        self.error_detail = ErrorDetail.get(self.error_key, "No description.")
        self.exit_code = ErrorExitCode.get(self.error_key, ExitCode.CONFIG_ERROR)
        self.exception_message = (
            f"error_key: {self.error_key}, detail: {self.detail}, error_description: {self.error_detail}"
        )
        super().__init__(self.exception_message)

    def __repr__(self) -> str:
        return self.exception_message


class ToleranceError(SimulationError):
    """Raised when a validation run exceeds its tolerance."""

    def __init__(self, *, max_abs_err: float, tolerance: float) -> None:
        self.max_abs_err = max_abs_err
        self.tolerance = tolerance
        super().__init__(
            error_key=ErrorKey.tolerance_exceeded.value,
            detail=f"max abs error {max_abs_err:.3g} > tolerance {tolerance:.3g}",
        )


class ConfigError(Exception):
    """Raised when the run is configured wrong."""

    def __init__(self, *attr) -> None:
        self.exception_message = f"incorrect attributes: {attr}"
        super().__init__(self.exception_message)
