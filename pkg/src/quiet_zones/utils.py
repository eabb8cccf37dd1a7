import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from logging import Logger
from pathlib import Path
from typing import Callable, Iterable, NoReturn, Sequence, TextIO, TypeVar, Union

import click
import numpy as np

from .defaults import CSV_FORMAT
from .error import SimulationError

T = TypeVar("T")
R = TypeVar("R")


def raise_simulation_error(logger: Logger, error_key: str, detail: str = "") -> NoReturn:
    """Log and raise a SimulationError."""
    logger.error("SimulationError %s: %s", error_key, detail)
    raise SimulationError(error_key=error_key, detail=detail)


def map_chunks(func: Callable[[T], R], chunks: Iterable[T], workers: int = 1) -> list[R]:
    """
    Apply ``func`` to every chunk and return the results in chunk order.

    With ``workers > 1`` the chunks run on a thread pool (numpy releases the
    GIL inside its kernels). Callers reduce the returned list themselves, so
    the reduction order never depends on scheduling.
    """
    if workers <= 1:
        return [func(chunk) for chunk in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, chunks))


def chunk_slices(n_items: int, chunk_size: int) -> list[slice]:
    chunk_size = max(1, chunk_size)
    return [slice(start, min(start + chunk_size, n_items)) for start in range(0, n_items, chunk_size)]


@dataclass(frozen=True)
class Table:
    """Column-oriented report ready to be written as CSV."""

    columns: tuple[str, ...]
    data: np.ndarray
    formats: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        data = np.asarray(self.data)
        if data.ndim != 2:
            data = data.reshape(-1, len(self.columns))
        if data.shape[1] != len(self.columns):
            raise ValueError(f"expected {len(self.columns)} columns, got {data.shape[1]}")
        object.__setattr__(self, "data", data)
        if not self.formats:
            object.__setattr__(self, "formats", (CSV_FORMAT,) * len(self.columns))

    def __len__(self) -> int:
        return self.data.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]


def header_lines(pairs: Sequence[tuple[str, str]]) -> list[str]:
    return [f"# {key} = {value}" for key, value in pairs]


def _write(stream: TextIO, table: Table, comments: Sequence[str]) -> None:
    header = "\n".join([*comments, ",".join(table.columns)])
    np.savetxt(stream, table.data, fmt=list(table.formats), delimiter=",", newline="\n", header=header, comments="")


def write_table(path: Union[str, Path], table: Table, comments: Sequence[str] = ()) -> None:
    """Write ``table`` as CSV to ``path`` (``"-"`` is stdout) with ``#`` metadata lines first."""
    if str(path) == "-":
        buffer = io.StringIO()
        _write(buffer, table, comments)
        click.echo(buffer.getvalue(), nl=False)
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as stream:
        _write(stream, table, comments)
