import json
from typing import Annotated, Any

from pydantic import AfterValidator, BeforeValidator, Field, FiniteFloat


def split_csv_floats(v: Any) -> Any:
    """Accept ``"0.2,0"`` as well as ``[0.2, 0.0]``."""
    if isinstance(v, str):
        return [float(item) for item in v.split(",") if item.strip()]
    return v


def check_dimension(v: tuple[float, ...]) -> tuple[float, ...]:
    if len(v) not in (2, 3):
        raise ValueError("Point must have 2 or 3 coordinates.")
    return v


def parse_inline_json(v: Any) -> Any:
    """Inline signal specs arrive from the command line as JSON objects."""
    if isinstance(v, str) and v.lstrip().startswith("{"):
        return json.loads(v)
    return v


Point = Annotated[tuple[FiniteFloat, ...], BeforeValidator(split_csv_floats), AfterValidator(check_dimension)]
Frequency = Annotated[float, Field(gt=0, allow_inf_nan=False)]
Distance = Annotated[float, Field(ge=0, allow_inf_nan=False)]
PositiveFloat = Annotated[float, Field(gt=0, allow_inf_nan=False)]
Seed = Annotated[int, Field(ge=0, lt=2**64)]
