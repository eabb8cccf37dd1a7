import threading
from logging import Logger
from unittest.mock import Mock

import numpy as np
import pytest

from quiet_zones.error import SimulationError
from quiet_zones.utils import Table, chunk_slices, header_lines, map_chunks, raise_simulation_error, write_table


def test_raise_simulation_error_logs_and_raises():
    logger = Mock(spec=Logger)
    with pytest.raises(SimulationError) as exc:
        raise_simulation_error(logger, "NO_CROSSING", "up to 0.5 m")
    logger.error.assert_called_once()
    assert exc.value.error_key == "NO_CROSSING"
    assert exc.value.detail == "up to 0.5 m"


def test_chunk_slices_cover_range_in_order():
    slices = chunk_slices(10, 4)
    assert slices == [slice(0, 4), slice(4, 8), slice(8, 10)]
    assert chunk_slices(0, 4) == []
    assert chunk_slices(3, 0) == [slice(0, 1), slice(1, 2), slice(2, 3)]


@pytest.mark.parametrize("workers", [1, 4])
def test_map_chunks_keeps_chunk_order(workers):
    seen = set()

    def square(x):
        seen.add(threading.get_ident())
        return x * x

    assert map_chunks(square, range(20), workers) == [x * x for x in range(20)]
    if workers == 1:
        assert seen == {threading.get_ident()}


def test_table_reshapes_and_selects_columns():
    table = Table(columns=("a", "b"), data=np.arange(6.0))
    assert len(table) == 3
    np.testing.assert_array_equal(table.column("b"), [1.0, 3.0, 5.0])
    assert table.formats == ("%.12g", "%.12g")


def test_table_rejects_wrong_width():
    with pytest.raises(ValueError):
        Table(columns=("a", "b", "c"), data=np.zeros((2, 2)))


def test_header_lines():
    assert header_lines([("signal", "bpf"), ("c_mps", "343.0")]) == ["# signal = bpf", "# c_mps = 343.0"]


def test_write_table_format(tmp_path):
    path = tmp_path / "out" / "table.csv"
    table = Table(columns=("delta_r_m", "rho"), data=np.array([[0.0, 1.0], [0.001, 1 / 3]]))
    write_table(path, table, header_lines([("signal", "tone300")]))
    with open(path, "rb") as f:
        content = f.read()
    assert content == b"# signal = tone300\ndelta_r_m,rho\n0,1\n0.001,0.333333333333\n"


def test_write_table_empty_and_integer_columns(tmp_path):
    path = tmp_path / "empty.csv"
    table = Table(columns=("polyline_id", "vertex_id", "x_m", "y_m"), data=np.empty((0, 4)), formats=("%d",) * 4)
    write_table(path, table)
    assert path.read_text() == "polyline_id,vertex_id,x_m,y_m\n"


def test_write_table_stdout(capsys):
    write_table("-", Table(columns=("x",), data=np.array([[2.5]])), ["# k = v"])
    assert capsys.readouterr().out == "# k = v\nx\n2.5\n"
