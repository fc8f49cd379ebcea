"""Iterative-sampling k-center (EIM) with a tunable pivot rank.

Each iteration of the sampling loop is three MapReduce rounds:

1. every point still in ``R`` joins the sample ``S`` with probability
   ``9 k n^eps ln(n) / |R|`` and the pivot pool ``H`` with probability
   ``4 n^eps ln(n) / |R|`` (a point drawn for both goes to ``S`` only);
2. one machine ranks ``H`` by distance to ``S`` and takes the pivot ``v`` at
   rank ``ceil(phi ln n)``, farthest first;
3. every point of ``R`` at distance ``<= d(v, S)`` from ``S`` leaves ``R``, as
   does every point just added to ``S``.

The loop runs while ``|R| > (4/eps) k n^eps ln n``; GON then picks ``k``
centers from ``S | R`` on one machine. Together the last two removal rules
make ``|R|`` shrink every iteration (``v`` itself always leaves).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .gonzalez import GonConfig, gon
from .harness import Harness, MrTrace, partition
from .metric import CenterSolution, CostCounter, PointSet, covering_radius

SAMPLE_FACTOR = 9
POOL_FACTOR = 4
ORIGINAL_PHI = 8.0
# pivot-rank threshold quoted for the approximation guarantee at b=5, gamma=0
REPORTED_PHI_THRESHOLD = 5.15


@dataclass(frozen=True)
class EimConfig:
    k: int
    eps: float = 0.1
    phi: float = ORIGINAL_PHI
    seed: int | None = None
    log_base: float = math.e
    start: int | str = 0

    def __post_init__(self):
        if int(self.k) < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not 0.0 < self.eps < 1.0:
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")
        if not self.phi > 0:
            raise ValueError(f"phi must be positive, got {self.phi}")
        if not self.log_base > 1:
            raise ValueError(f"log base must exceed 1, got {self.log_base}")

    def log(self, x: float) -> float:
        return math.log(x) / math.log(self.log_base)


def sampling_threshold(n: int, cfg: EimConfig) -> float:
    """Loop runs while |R| exceeds this."""
    return (4.0 / cfg.eps) * cfg.k * n ** cfg.eps * cfg.log(n)


def pivot_rank(n: int, phi: float, pool_size: int, log_base: float = math.e) -> int:
    """1-based rank of the pivot in the farthest-first order, clamped to the pool."""
    r = math.ceil(phi * math.log(n) / math.log(log_base)) if n > 1 else 1
    return min(max(r, 1), pool_size)


def _select(ps: PointSet, H: np.ndarray, S: np.ndarray, phi: float, n: int,
            counter: CostCounter | None, log_base: float) -> tuple[int, float]:
    H = np.asarray(H, dtype=np.int64)
    S = np.asarray(S, dtype=np.int64)
    if H.size == 0 or S.size == 0:
        raise ValueError("select needs nonempty H and S")
    d = ps.distances_to_set(H, S, counter)
    # farthest first, then lowest index
    order = np.lexsort((H, -d))
    pos = order[pivot_rank(n, phi, H.size, log_base) - 1]
    return int(H[pos]), float(d[pos])


def select(ps: PointSet, H, S, phi: float, n: int, counter: CostCounter | None = None,
           log_base: float = math.e) -> int:
    """Pivot: the ceil(phi ln n)-th farthest point of ``H`` from ``S``."""
    return _select(ps, H, S, phi, n, counter, log_base)[0]


@dataclass
class EimState:
    R: np.ndarray
    S: np.ndarray
    H: np.ndarray
    iteration: int = 0


@dataclass
class EimSample:
    sample: np.ndarray
    trace: MrTrace
    iterations: int
    # per-iteration sizes and pivot data, useful for diagnostics and tests
    history: list[dict] = field(default_factory=list)


def eim_sample(ps: PointSet, cfg: EimConfig, harness: Harness | None = None) -> EimSample:
    """Sampling loop only; returns ``S | R`` and the per-round trace."""
    h = harness if harness is not None else Harness(seed=cfg.seed)
    n = ps.n
    k = int(cfg.k)
    ne = n ** cfg.eps
    logn = cfg.log(n)
    threshold = sampling_threshold(n, cfg)
    remove_machines = math.ceil(n ** (1.0 - cfg.eps))

    state = EimState(np.arange(n, dtype=np.int64), np.empty(0, dtype=np.int64),
                     np.empty(0, dtype=np.int64))
    history: list[dict] = []
    while state.R.size > threshold:
        R = state.R
        ell = state.iteration
        p_s = min(1.0, SAMPLE_FACTOR * k * ne * logn / R.size)
        p_h = min(1.0, POOL_FACTOR * ne * logn / R.size)

        def draw(part, mach):
            u_s = mach.rng.random(part.size) < p_s
            u_h = mach.rng.random(part.size) < p_h
            return part[u_s], part[u_h & ~u_s]

        parts = partition(R, math.ceil(R.size / ne))
        outs = h.run_round(f"eim-{ell + 1}-sample", parts, draw)
        new_s = np.concatenate([o[0] for o in outs])
        H = np.concatenate([o[1] for o in outs])

        def pick(mach):
            fresh = new_s
            pool = H
            if state.S.size + fresh.size == 0:
                fresh = R[[int(mach.rng.integers(R.size))]]
            if pool.size == 0:
                rest = np.setdiff1d(R, fresh, assume_unique=True)
                if rest.size:
                    pool = rest[[int(mach.rng.integers(rest.size))]]
            S = np.union1d(state.S, fresh)
            if pool.size == 0:
                return fresh, pool, S, -1, -math.inf
            v, dv = _select(ps, pool, S, cfg.phi, n, mach.counter, cfg.log_base)
            return fresh, pool, S, v, dv

        new_s, H, S, v, dv = h.run_single(f"eim-{ell + 1}-select", pick)
        sampled = np.zeros(n, dtype=bool)
        sampled[new_s] = True

        S_block = ps.block(S)

        def prune(part, mach):
            keep = part[~sampled[part]]
            if keep.size == 0:
                return keep
            d = ps.distances_to_set(keep, S_block, mach.counter)
            return keep[d > dv]

        parts = partition(R, remove_machines)
        outs = h.run_round(f"eim-{ell + 1}-remove", parts, prune)
        R_next = np.concatenate(outs)
        assert R_next.size < R.size
        history.append({"iteration": ell + 1, "R": int(R.size), "new_S": int(new_s.size),
                        "S": int(S.size), "H": int(H.size), "pivot": v, "pivot_distance": dv,
                        "R_next": int(R_next.size)})
        state = EimState(R_next, S, H, ell + 1)

    sample = np.union1d(state.S, state.R)
    return EimSample(sample, h.trace, state.iteration, history)


@dataclass
class EimResult:
    solution: CenterSolution
    trace: MrTrace
    iterations: int
    sample: np.ndarray
    history: list[dict] = field(default_factory=list)


def eim(ps: PointSet, cfg: EimConfig, harness: Harness | None = None) -> EimResult:
    """Sampling loop followed by GON(k) on the sample, on one machine."""
    h = harness if harness is not None else Harness(seed=cfg.seed)
    res = eim_sample(ps, cfg, h)
    gcfg = GonConfig(k=int(cfg.k), start=cfg.start, seed=cfg.seed)
    random_start = cfg.start == "random"
    final = h.run_single(
        "eim-final",
        lambda mach: gon(ps, res.sample, gcfg, mach.counter, mach.rng if random_start else None))
    radius = covering_radius(ps, final.centers)
    sol = CenterSolution(final.centers, radius,
                         {"algorithm": "eim", "k": int(cfg.k), "eps": cfg.eps, "phi": cfg.phi,
                          "seed": cfg.seed, "start": cfg.start})
    return EimResult(sol, h.trace, res.iterations, res.sample, res.history)


def phi_feasible(phi: float, b: float, gamma: float) -> bool:
    """Whether pivot multiplier ``phi`` leaves room for the rank concentration bound.

    With x = 1 + gamma, checks
    (phi + x + sqrt(2 x phi + x^2)) / b <= phi + x/2 - sqrt(2 x phi + x^2/4).
    """
    if b <= 0:
        raise ValueError(f"b must be positive, got {b}")
    if gamma < 0:
        raise ValueError(f"gamma must be nonnegative, got {gamma}")
    x = 1.0 + gamma
    lhs = (phi + x + math.sqrt(2 * x * phi + x * x)) / b
    rhs = phi + x / 2 - math.sqrt(2 * x * phi + x * x / 4)
    return lhs <= rhs


def critical_phi(b: float = 5.0, gamma: float = 0.0, hi: float = 1e3) -> float:
    """Smallest phi for which :func:`phi_feasible` holds, found by root bracketing."""
    x = 1.0 + gamma

    def gap(phi):
        return (phi + x / 2 - math.sqrt(2 * x * phi + x * x / 4)
                - (phi + x + math.sqrt(2 * x * phi + x * x)) / b)

    if gap(hi) < 0:
        raise ValueError(f"no feasible phi below {hi} for b={b}, gamma={gamma}")
    return brentq(gap, 1e-9, hi, xtol=1e-12)
