"""
Iso-attenuation contours by marching squares.

The field is contoured in dB. A corner is "inside" when its value is below the
level. Cell corners are numbered counter-clockwise from ``(i, j)``::

    c3 (i, j+1) --e2-- c2 (i+1, j+1)
        |                  |
        e3                 e1
        |                  |
    c0 (i, j)   --e0-- c1 (i+1, j)

Ambiguous saddle cells are resolved with the mean of the four corners.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.spatial.distance import pdist

from .defaults import DB_FLOOR
from .error import ErrorKey
from .utils import Table, raise_simulation_error
from .zones import AttenuationField

logger = logging.getLogger(__name__)

EdgeKey = tuple[str, int, int]

# Edge pairs per case index (bit k set when corner ck is inside); saddles 5 and 10 handled separately.
SEGMENTS: dict[int, tuple[tuple[int, int], ...]] = {
    1: ((3, 0),),
    2: ((0, 1),),
    3: ((3, 1),),
    4: ((1, 2),),
    6: ((0, 2),),
    7: ((3, 2),),
    8: ((2, 3),),
    9: ((0, 2),),
    11: ((1, 2),),
    12: ((1, 3),),
    13: ((0, 1),),
    14: ((3, 0),),
}
SADDLE_SEGMENTS: dict[tuple[int, bool], tuple[tuple[int, int], ...]] = {
    (5, True): ((0, 1), (2, 3)),
    (5, False): ((3, 0), (1, 2)),
    (10, True): ((3, 0), (1, 2)),
    (10, False): ((0, 1), (2, 3)),
}


@dataclass(frozen=True)
class Polyline:
    """Ordered ``(n, 2)`` vertices; a closed polyline does not repeat its first vertex."""

    vertices: np.ndarray
    closed: bool


@dataclass(frozen=True)
class ContourSet:
    level_db: float
    polylines: tuple[Polyline, ...] = ()

    def __len__(self) -> int:
        return len(self.polylines)

    @property
    def is_empty(self) -> bool:
        return not self.polylines

    def closed(self) -> list[Polyline]:
        return [polyline for polyline in self.polylines if polyline.closed]

    def rows(self) -> Table:
        """``polyline_id, vertex_id, x_m, y_m`` rows in polyline order."""
        blocks = [
            np.column_stack([np.full(len(p.vertices), k), np.arange(len(p.vertices)), p.vertices])
            for k, p in enumerate(self.polylines)
        ]
        data = np.concatenate(blocks) if blocks else np.empty((0, 4))
        return Table(
            columns=("polyline_id", "vertex_id", "x_m", "y_m"),
            data=data,
            formats=("%d", "%d", "%.12g", "%.12g"),
        )


@dataclass(frozen=True)
class ContourExtent:
    """Size of the largest closed contour."""

    max_diameter: float
    area: float
    axial_span: float
    lateral_span: float
    centroid: tuple[float, float] = (0.0, 0.0)


def _edge_keys(i: int, j: int) -> tuple[EdgeKey, EdgeKey, EdgeKey, EdgeKey]:
    return ("h", i, j), ("v", i + 1, j), ("h", i, j + 1), ("v", i, j)


def _edge_vertex(key: EdgeKey, x: np.ndarray, y: np.ndarray, db: np.ndarray, level: float) -> tuple[float, float]:
    kind, i, j = key
    i2, j2 = (i + 1, j) if kind == "h" else (i, j + 1)
    t = (level - db[i, j]) / (db[i2, j2] - db[i, j])
    return float(x[i] + t * (x[i2] - x[i])), float(y[j] + t * (y[j2] - y[j]))


def _trace(
    start: EdgeKey, segment: int, segments: list[tuple[EdgeKey, EdgeKey]], adjacency: dict, visited: np.ndarray
) -> list[EdgeKey]:
    keys = [start]
    key: EdgeKey = start
    current: Optional[int] = segment
    while current is not None:
        visited[current] = True
        a, b = segments[current]
        key = b if a == key else a
        keys.append(key)
        current = next((s for s in adjacency[key] if not visited[s]), None)
    return keys


def extract_iso_contour(field: AttenuationField, level_db: float, floor_db: float = DB_FLOOR) -> ContourSet:
    """
    Polylines where the field crosses ``level_db``.

    Cells are scanned in row-major order of ``(i, j)``; cells with a masked
    corner produce nothing. Open chains come first, starting from their end
    with the earliest segment, then closed loops in order of their first cell.
    """
    if field.nx < 2 or field.ny < 2:
        raise_simulation_error(logger, ErrorKey.too_few_cells.value, f"{field.nx}x{field.ny}")
    db = field.db(floor_db)
    valid = ~np.isnan(db)
    cell_ok = valid[:-1, :-1] & valid[1:, :-1] & valid[1:, 1:] & valid[:-1, 1:]
    if not np.any(cell_ok):
        raise_simulation_error(logger, ErrorKey.too_few_cells.value, "no cell with four evaluated corners")

    inside = np.where(valid, db < level_db, False)
    case = (inside[:-1, :-1] * 1 + inside[1:, :-1] * 2 + inside[1:, 1:] * 4 + inside[:-1, 1:] * 8).astype(int)
    centre = (db[:-1, :-1] + db[1:, :-1] + db[1:, 1:] + db[:-1, 1:]) / 4
    crossing = cell_ok & (case != 0) & (case != 15)

    segments: list[tuple[EdgeKey, EdgeKey]] = []
    for i, j in np.argwhere(crossing):
        i, j = int(i), int(j)
        index = int(case[i, j])
        pairs = SADDLE_SEGMENTS[(index, bool(centre[i, j] < level_db))] if index in (5, 10) else SEGMENTS[index]
        edges = _edge_keys(i, j)
        segments.extend((edges[a], edges[b]) for a, b in pairs)

    adjacency: dict[EdgeKey, list[int]] = {}
    for s, (a, b) in enumerate(segments):
        adjacency.setdefault(a, []).append(s)
        adjacency.setdefault(b, []).append(s)

    visited = np.zeros(len(segments), dtype=bool)
    chains: list[tuple[list[EdgeKey], bool]] = []
    for s, pair in enumerate(segments):
        for key in pair:
            if not visited[s] and len(adjacency[key]) == 1:
                chains.append((_trace(key, s, segments, adjacency, visited), False))
    for s, (a, _) in enumerate(segments):
        if not visited[s]:
            keys = _trace(a, s, segments, adjacency, visited)
            chains.append((keys[:-1], True))

    vertices: dict[EdgeKey, tuple[float, float]] = {}
    polylines = []
    for keys, closed in chains:
        for key in keys:
            if key not in vertices:
                vertices[key] = _edge_vertex(key, field.x, field.y, db, level_db)
        polylines.append(Polyline(vertices=np.array([vertices[key] for key in keys]), closed=closed))

    logger.debug("Level %.3g dB: %d segments, %d polylines", level_db, len(segments), len(polylines))
    return ContourSet(level_db=level_db, polylines=tuple(polylines))


def polyline_diameter(vertices: np.ndarray) -> float:
    """Largest distance between any two vertices."""
    vertices = np.asarray(vertices, dtype=float)
    if len(vertices) < 2:
        return 0.0
    return float(pdist(vertices).max())


def polygon_area(polyline: Polyline) -> float:
    """Shoelace area of a closed polyline."""
    if not polyline.closed or len(polyline.vertices) < 3:
        raise_simulation_error(
            logger, ErrorKey.degenerate_polygon.value, f"{len(polyline.vertices)} vertices, closed={polyline.closed}"
        )
    x, y = polyline.vertices[:, 0], polyline.vertices[:, 1]
    return float(abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))) / 2)


def contour_extent(contours: ContourSet, axis: Optional[Sequence[float]] = None) -> ContourExtent:
    """
    Extent of the largest closed polyline by area.

    ``axis`` is the direction for ``axial_span`` (default ``+x``);
    ``lateral_span`` is measured perpendicular to it.
    """
    closed = contours.closed()
    if not closed:
        raise_simulation_error(logger, ErrorKey.no_closed_contour.value, f"level {contours.level_db} dB")
    areas = [polygon_area(polyline) for polyline in closed]
    k = int(np.argmax(areas))
    vertices = closed[k].vertices
    u = np.asarray(axis if axis is not None else (1.0, 0.0), dtype=float)[:2]
    u = u / np.linalg.norm(u)
    v = np.array([-u[1], u[0]])
    axial, lateral = vertices @ u, vertices @ v
    return ContourExtent(
        max_diameter=polyline_diameter(vertices),
        area=areas[k],
        axial_span=float(axial.max() - axial.min()),
        lateral_span=float(lateral.max() - lateral.min()),
        centroid=(float(vertices[:, 0].mean()), float(vertices[:, 1].mean())),
    )
