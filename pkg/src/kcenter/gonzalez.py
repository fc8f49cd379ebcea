"""Sequential farthest-first traversal (Gonzalez's greedy 2-approximation)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels
from .metric import CenterSolution, CostCounter, PointSet, as_index_array, indices_tuple


@dataclass(frozen=True)
class GonConfig:
    """k and the first-center rule.

    ``start`` is either an int (position within the sorted subset) or the
    string ``"random"``, in which case ``seed`` picks the position.
    """

    k: int
    start: int | str = 0
    seed: int | None = None

    def __post_init__(self):
        if int(self.k) < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if isinstance(self.start, str) and self.start != "random":
            raise ValueError(f"unknown start rule {self.start!r}")

    def start_position(self, size: int, rng: np.random.Generator | None = None) -> int:
        if self.start == "random":
            if rng is None:
                rng = np.random.default_rng(self.seed)
            return int(rng.integers(size))
        pos = int(self.start)
        if not 0 <= pos < size:
            raise ValueError(f"start position {pos} outside subset of size {size}")
        return pos


def _traverse(ps: PointSet, subset, cfg: GonConfig, counter: CostCounter | None,
              rng: np.random.Generator | None):
    idx = as_index_array(subset, ps.n)
    if idx.size == 0:
        raise ValueError("gon needs a nonempty subset")
    k = min(int(cfg.k), idx.size)
    X = ps.coords
    # positions already chosen hold -1 so they never win the argmax again
    nearest = np.full(idx.size, np.inf)
    pos = cfg.start_position(idx.size, rng)
    chosen = [pos]
    steps: list[float] = []
    while True:
        nearest[pos] = -1.0
        pos = _kernels.relax_nearest(X, idx, idx[pos], nearest)
        if counter is not None:
            counter.charge(idx.size)
        if len(chosen) == k:
            break
        steps.append(float(nearest[pos]))
        chosen.append(pos)
    radius = float(max(nearest.max(), 0.0))
    return idx[np.asarray(chosen)], radius, steps


def gon(ps: PointSet, subset: Iterable[int] | np.ndarray | None = None,
        cfg: GonConfig | int = 1, counter: CostCounter | None = None,
        rng: np.random.Generator | None = None) -> CenterSolution:
    """Greedy k-center on ``subset`` (default: all points).

    Starts from ``cfg.start`` and repeatedly adds the point farthest from the
    chosen centers, ties going to the lowest point index. Each new center costs
    one pass over the subset, so ``k * |subset|`` distance evaluations in total.
    The returned radius is measured over ``subset``.
    """
    if not isinstance(cfg, GonConfig):
        cfg = GonConfig(k=int(cfg))
    centers, radius, _ = _traverse(ps, subset, cfg, counter, rng)
    return CenterSolution(indices_tuple(centers), radius,
                          {"algorithm": "gon", "k": int(cfg.k), "start": cfg.start,
                           "seed": cfg.seed})


def gon_farthest_sequence(ps: PointSet, subset=None, cfg: GonConfig | int = 1,
                          counter: CostCounter | None = None,
                          rng: np.random.Generator | None = None) -> list[float]:
    """Distance of each center after the first to the centers chosen before it."""
    if not isinstance(cfg, GonConfig):
        cfg = GonConfig(k=int(cfg))
    _, _, steps = _traverse(ps, subset, cfg, counter, rng)
    return steps
