"""Exhaustive k-center solver for small instances, and approximation factors."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .gonzalez import GonConfig, _traverse
from .metric import CenterSolution, PointSet, covering_radius, indices_tuple

DEFAULT_BUDGET = 10 ** 7


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    opt_radius: float
    opt_centers: tuple[int, ...]
    enumerated: int


def exact_kcenter(ps: PointSet, k: int, budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Optimal covering radius over all k-subsets of the input points.

    Ties go to the lexicographically smallest center tuple. Candidates are
    abandoned as soon as one point is worse off than the incumbent, which only
    affects speed.
    """
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = ps.n
    k = min(k, n)
    total = math.comb(n, k)
    if total > budget:
        raise BudgetExceeded(
            f"C({n},{k}) = {total} center sets exceeds the budget of {budget}; "
            "use fewer points or a smaller k")
    X = ps.coords
    if k == n:
        return OracleResult(0.0, tuple(range(n)), 1)
    # farthest-first visiting order finds the badly covered points early
    order, _, _ = _traverse(ps, None, GonConfig(k=n), None, None)
    order = np.ascontiguousarray(order, dtype=np.int64)
    seed_centers = np.ascontiguousarray(order[:k])
    incumbent = _kernels.set_sq_radius(X, order, seed_centers)
    best_sq, comb = _kernels.enumerate_kcenter(X, order, k, incumbent)
    centers = indices_tuple(comb)
    radius = covering_radius(ps, centers)
    assert radius == math.sqrt(best_sq)
    return OracleResult(radius, centers, total)


def approx_factor(ps: PointSet, solution: CenterSolution, k: int,
                  oracle: OracleResult | None = None, budget: int = DEFAULT_BUDGET) -> float:
    """solution.radius / OPT, with 0/0 = 1 and x/0 = inf."""
    if oracle is None:
        oracle = exact_kcenter(ps, k, budget)
    if oracle.opt_radius == 0.0:
        return 1.0 if solution.radius == 0.0 else math.inf
    return solution.radius / oracle.opt_radius
