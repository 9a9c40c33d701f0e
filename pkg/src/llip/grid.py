"""Finite samples of a compact metric space and real functions on them."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernels
from .errors import EmptyAdjacency, GridMismatch, InvalidParameter, InvalidRange, NonFiniteValue

METRICS = {"euclidean": kernels.EUCLIDEAN, "chebyshev": kernels.CHEBYSHEV}
MIN_SEPARATION = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.setflags(write=False)
    return a


class CompactGrid:
    """Ordered point cloud standing in for a compact space K.

    ``points`` has shape ``(n, d)``. The grid is immutable and identified
    by a content hash over the coordinates and the metric name, so functions
    and operators built on equal grids are interchangeable.
    """

    __slots__ = ("points", "metric", "id", "_dist")

    def __init__(self, points, metric: str = "euclidean"):
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise InvalidRange(f"points must be an (n, d) array, got shape {pts.shape}")
        if pts.shape[0] < 2:
            raise InvalidRange("a grid needs at least 2 points")
        if not np.all(np.isfinite(pts)):
            raise NonFiniteValue("grid coordinates must be finite")
        if metric not in METRICS:
            raise InvalidParameter(f"unknown metric {metric!r}; expected one of {sorted(METRICS)}")
        pts = _frozen(pts)
        dist = kernels.distance_matrix(pts, METRICS[metric])
        off = dist + np.diag(np.full(len(pts), np.inf))
        if off.min() < MIN_SEPARATION:
            a, b = np.unravel_index(np.argmin(off), off.shape)
            raise InvalidRange(f"points {min(a, b)} and {max(a, b)} are closer than {MIN_SEPARATION}")
        dist.setflags(write=False)
        h = hashlib.sha256()
        h.update(metric.encode())
        h.update(np.asarray(pts.shape, dtype=np.int64).tobytes())
        h.update(pts.tobytes())
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "id", h.hexdigest()[:16])
        object.__setattr__(self, "_dist", dist)

    def __setattr__(self, name, value):
        raise AttributeError("CompactGrid is immutable")

    def __len__(self) -> int:
        return self.points.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, CompactGrid) and other.id == self.id

    def __hash__(self) -> int:
        return hash(self.id)

    def __repr__(self) -> str:
        return f"CompactGrid(n={len(self)}, dim={self.dim}, metric={self.metric!r}, id={self.id})"

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def metric_code(self) -> int:
        return METRICS[self.metric]

    @property
    def distances(self) -> np.ndarray:
        """Full pairwise distance matrix (read-only)."""
        return self._dist

    def median_spacing(self) -> float:
        """Median nearest-neighbour distance."""
        off = self._dist + np.diag(np.full(len(self), np.inf))
        return float(np.median(off.min(axis=1)))

    def diameter(self) -> float:
        return float(self._dist.max())

    def coords(self) -> np.ndarray:
        """Coordinates as a flat array for 1-d grids, else the ``(n, d)`` array."""
        return self.points[:, 0] if self.dim == 1 else self.points

    def check_same(self, other: CompactGrid) -> None:
        if other.id != self.id:
            raise GridMismatch(f"grid {other.id} does not match grid {self.id}")


@dataclass(frozen=True, eq=False)
class GridFunction:
    """One finite real value per grid point, in grid order."""

    grid: CompactGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (len(self.grid),):
            raise InvalidRange(f"expected {len(self.grid)} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            bad = int(np.flatnonzero(~np.isfinite(v))[0])
            raise NonFiniteValue(f"value at grid point {bad} is not finite")
        object.__setattr__(self, "values", _frozen(v))

    @property
    def grid_id(self) -> str:
        return self.grid.id

    def __len__(self) -> int:
        return len(self.values)

    def __repr__(self) -> str:
        return f"GridFunction(grid={self.grid.id}, n={len(self)})"

    def same_values(self, other: GridFunction) -> bool:
        return self.grid_id == other.grid_id and np.array_equal(self.values, other.values)

    def with_values(self, values) -> GridFunction:
        return GridFunction(self.grid, values)

    def sup_norm(self) -> float:
        return float(np.abs(self.values).max())


def make_interval_grid(a: float, b: float, n: int) -> CompactGrid:
    """``n`` equally spaced points on ``[a, b]`` with the euclidean metric."""
    if not (np.isfinite(a) and np.isfinite(b)) or a >= b:
        raise InvalidRange(f"need a < b, got a={a}, b={b}")
    if n < 2:
        raise InvalidRange(f"need n >= 2, got {n}")
    # a + (b - a) * (i / (n - 1)) keeps dyadic fractions such as the midpoint exact
    pts = a + (b - a) * (np.arange(n) / (n - 1))
    pts[-1] = b
    return CompactGrid(pts[:, None], "euclidean")


def tabulate(grid: CompactGrid, rule: Callable) -> GridFunction:
    """Sample ``rule`` at every grid point.

    ``rule`` receives the point as a float for 1-d grids and as a coordinate
    array otherwise.
    """
    pts = grid.coords()
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        values = np.array([float(rule(p)) for p in pts])
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise NonFiniteValue(f"rule produced {values[bad]} at grid point {bad}")
    return GridFunction(grid, values)


def constant(grid: CompactGrid, c: float) -> GridFunction:
    return GridFunction(grid, np.full(len(grid), float(c)))


@dataclass(frozen=True)
class ContinuityReport:
    """Discrete modulus of continuity over pairs closer than a radius.

    ``flagged_pairs`` lists every close pair whose difference quotient
    exceeds ``threshold``; with a jump discontinuity these cluster around
    the jump.
    """

    modulus: float
    adjacency_radius: float
    threshold: float
    is_flagged_discontinuous: bool
    worst_pair: tuple[int, int]
    flagged_pairs: tuple[tuple[int, int], ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "adjacency_radius": self.adjacency_radius,
            "threshold": self.threshold,
            "flagged_discontinuous": self.is_flagged_discontinuous,
            "worst_pair": list(self.worst_pair),
            "flagged_pairs": [list(p) for p in self.flagged_pairs],
        }


def default_radius(grid: CompactGrid, factor: float = 2.5) -> float:
    return factor * grid.median_spacing()


def continuity_report(
    f: GridFunction,
    adjacency_radius: float | None = None,
    threshold: float | None = None,
    *,
    radius_factor: float = 2.5,
    threshold_factor: float = 50.0,
) -> ContinuityReport:
    """Largest ``|f(i) - f(j)| / d(i, j)`` over pairs with ``d(i, j) <= radius``.

    When ``threshold`` is omitted it is ``threshold_factor`` times the larger
    of the median pair quotient and the global average slope
    ``(max f - min f) / diam K``. The second term keeps the threshold from
    collapsing to zero on functions that are flat almost everywhere.
    """
    grid = f.grid
    if adjacency_radius is None:
        adjacency_radius = default_radius(grid, radius_factor)
    if not adjacency_radius > 0:
        raise InvalidParameter("adjacency_radius must be positive")
    # radius is usually a multiple of a floating spacing; admit pairs sitting on it
    i, j, q = kernels.close_pairs(grid.points, f.values, adjacency_radius * (1 + 1e-9), grid.metric_code)
    if len(q) == 0:
        raise EmptyAdjacency(f"no pair of grid points within radius {adjacency_radius}")
    k = int(np.argmax(q))
    modulus = float(q[k])
    if threshold is None:
        spread = float(f.values.max() - f.values.min()) / grid.diameter()
        threshold = threshold_factor * max(float(np.median(q)), spread)
    hot = np.flatnonzero(q > threshold)
    return ContinuityReport(
        modulus=modulus,
        adjacency_radius=float(adjacency_radius),
        threshold=float(threshold),
        is_flagged_discontinuous=bool(modulus > threshold),
        worst_pair=(int(i[k]), int(j[k])),
        flagged_pairs=tuple((int(i[t]), int(j[t])) for t in hot),
    )
