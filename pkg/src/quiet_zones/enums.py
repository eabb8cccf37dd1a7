from enum import Enum


class FilterKind(str, Enum):
    """Butterworth filter stage type."""

    low_pass = "low-pass"
    high_pass = "high-pass"


class ControlMode(str, Enum):
    """Where the cancellation point sits relative to the secondary source."""

    near_field = "near-field"
    far_field = "far-field"


class CorrelationKind(str, Enum):
    """Which correlation curve to report."""

    auto = "auto"
    cross = "cross"


class OracleMethod(str, Enum):
    """How the oracle evaluates the signal autocorrelation per direction."""

    table = "table"
    direct = "direct"


class Preset(str, Enum):
    """Named excitation signals."""

    tone300 = "tone300"
    lpf300 = "lpf300"
    lpf600 = "lpf600"
    bpf = "bpf"
