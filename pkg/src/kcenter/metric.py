"""Point sets, on-demand Euclidean distances and cost accounting."""
from __future__ import annotations

import csv
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from . import _kernels


class PointSetError(ValueError):
    pass


@dataclass
class CostCounter:
    """Distance evaluations and wall time charged to one simulated machine."""

    distance_evals: int = 0
    wall_nanos: int = 0

    def charge(self, evals: int) -> None:
        self.distance_evals += int(evals)

    @contextmanager
    def timed(self):
        start = time.perf_counter_ns()
        try:
            yield self
        finally:
            self.wall_nanos += time.perf_counter_ns() - start

    def merge(self, other: "CostCounter") -> None:
        self.distance_evals += other.distance_evals
        self.wall_nanos += other.wall_nanos


def as_index_array(indices: Iterable[int] | np.ndarray | None, n: int) -> np.ndarray:
    """Validated, sorted, duplicate-free int64 index array."""
    if indices is None:
        return np.arange(n, dtype=np.int64)
    if not isinstance(indices, np.ndarray):
        indices = list(indices)
    arr = np.unique(np.asarray(indices, dtype=np.int64))
    if arr.size and (arr[0] < 0 or arr[-1] >= n):
        raise IndexError(f"point index out of range for n={n}")
    return arr


class PointSet:
    """Immutable n x d array of finite coordinates.

    Distances are never stored; every query computes them from coordinates
    and charges the supplied counter one evaluation per point pair.
    """

    __slots__ = ("_X",)

    def __init__(self, points: Any):
        X = np.array(points, dtype=np.float64, copy=True)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        if X.ndim != 2:
            raise PointSetError(f"points must be a 2-D array, got shape {X.shape}")
        if X.shape[0] < 1:
            raise PointSetError("a point set needs at least one point")
        if X.shape[1] < 1:
            raise PointSetError("points need dimension >= 1")
        if not np.all(np.isfinite(X)):
            raise PointSetError("coordinates must be finite")
        X = np.ascontiguousarray(X)
        X.setflags(write=False)
        self._X = X

    @property
    def coords(self) -> np.ndarray:
        return self._X

    @property
    def n(self) -> int:
        return self._X.shape[0]

    @property
    def dim(self) -> int:
        return self._X.shape[1]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"PointSet(n={self.n}, dim={self.dim})"

    def _check(self, i: int) -> int:
        i = int(i)
        if not 0 <= i < self.n:
            raise IndexError(f"point index {i} out of range for n={self.n}")
        return i

    def distance(self, i: int, j: int, counter: CostCounter | None = None) -> float:
        i, j = self._check(i), self._check(j)
        if counter is not None:
            counter.charge(1)
        return float(_kernels.pair_distance(self._X, i, j))

    def distances_to(self, indices: np.ndarray, j: int,
                     counter: CostCounter | None = None) -> np.ndarray:
        """d(x, j) for every x in ``indices``."""
        j = self._check(j)
        idx = np.ascontiguousarray(indices, dtype=np.int64)
        out = np.empty(idx.shape[0])
        _kernels.distances_to_point(self._X, idx, j, out)
        if counter is not None:
            counter.charge(idx.shape[0])
        return out

    def block(self, centers: np.ndarray) -> "CenterBlock":
        """Gather center coordinates once for repeated nearest-center queries."""
        return CenterBlock(self, centers)

    def distances_to_set(self, indices: np.ndarray, centers: "np.ndarray | CenterBlock",
                         counter: CostCounter | None = None) -> np.ndarray:
        """min over c in ``centers`` of d(x, c), for every x in ``indices``."""
        blk = centers if isinstance(centers, CenterBlock) else CenterBlock(self, centers)
        idx = np.ascontiguousarray(indices, dtype=np.int64)
        out = np.empty(idx.shape[0])
        _kernels.distances_to_block(self._X, idx, blk.coords_t, out)
        if counter is not None:
            counter.charge(idx.shape[0] * blk.size)
        return out

    def subset_of(self, indices: np.ndarray) -> "PointSet":
        return PointSet(self._X[np.asarray(indices, dtype=np.int64)])

    @classmethod
    def from_csv(cls, path: str | Path) -> "PointSet":
        return read_points_csv(path)

    def to_csv(self, path: str | Path, header: str | None = None) -> None:
        write_points_csv(self, path, header)


class CenterBlock:
    """Center indices plus their coordinates laid out dimension-major."""

    __slots__ = ("indices", "coords_t")

    def __init__(self, ps: PointSet, centers):
        ctr = np.ascontiguousarray(centers, dtype=np.int64)
        if ctr.size == 0:
            raise ValueError("center set is empty")
        self.indices = ctr
        self.coords_t = np.ascontiguousarray(ps.coords[ctr].T)

    @property
    def size(self) -> int:
        return self.indices.shape[0]


def covering_radius(ps: PointSet, centers: Iterable[int] | np.ndarray,
                    subset: Iterable[int] | np.ndarray | None = None,
                    counter: CostCounter | None = None) -> float:
    """Largest distance from a point of ``subset`` to its nearest center.

    This is the k-center objective: max over points of the min over centers.
    ``subset`` defaults to every point.
    """
    ctr = as_index_array(centers, ps.n)
    if ctr.size == 0:
        raise ValueError("center set is empty")
    idx = as_index_array(subset, ps.n)
    if idx.size == 0:
        return 0.0
    return float(ps.distances_to_set(idx, ctr, counter).max())


@dataclass(frozen=True)
class CenterSolution:
    """Chosen centers (in selection order), their covering radius, provenance."""

    centers: tuple[int, ...]
    radius: float
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.centers) < 1:
            raise ValueError("a solution needs at least one center")
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")

    @property
    def center_set(self) -> frozenset[int]:
        return frozenset(self.centers)

    def check(self, ps: PointSet, subset=None, k: int | None = None) -> bool:
        """Recompute the radius over ``subset`` and compare exactly."""
        if k is not None and not 1 <= len(self.centers) <= min(k, ps.n):
            return False
        if len(set(self.centers)) != len(self.centers):
            return False
        return covering_radius(ps, self.centers, subset) == self.radius


def read_points_csv(path: str | Path) -> PointSet:
    """Parse one point per line; lines starting with '#' are comments."""
    rows: list[list[float]] = []
    width = None
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (row[0].lstrip().startswith("#")):
                continue
            if all(not cell.strip() for cell in row):
                continue
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise PointSetError(
                    f"{path}: line {lineno}: expected {width} columns, got {len(row)}")
            values = []
            for col, cell in enumerate(row, start=1):
                try:
                    v = float(cell)
                except ValueError:
                    raise PointSetError(
                        f"{path}: line {lineno}, column {col}: not a number: {cell!r}") from None
                if not np.isfinite(v):
                    raise PointSetError(
                        f"{path}: line {lineno}, column {col}: non-finite value {cell!r}")
                values.append(v)
            rows.append(values)
    if not rows:
        raise PointSetError(f"{path}: no points found")
    return PointSet(rows)


def write_points_csv(ps: PointSet, path: str | Path, header: str | None = None) -> None:
    with open(path, "w", newline="") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        w = csv.writer(fh)
        for row in ps.coords:
            w.writerow([repr(float(v)) for v in row])


def indices_tuple(values: Sequence[int] | np.ndarray) -> tuple[int, ...]:
    return tuple(int(v) for v in values)
