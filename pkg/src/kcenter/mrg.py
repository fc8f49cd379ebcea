"""Multi-round MapReduce Gonzalez (MRG).

Each round splits the surviving points across machines, runs GON(k) on every
machine and keeps the union of the returned centers. Once the survivors fit
on one machine a final GON(k) picks the output. The first parallel round
always runs. With ``w`` parallel rounds the result is within ``2 * (w + 1)``
of optimal.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gonzalez import GonConfig, gon
from .harness import Harness, MrConfig, MrTrace, ceil_div, partition
from .metric import CenterSolution, PointSet, covering_radius


@dataclass
class MrgResult:
    solution: CenterSolution
    while_iterations: int
    machine_counts: list[int]
    trace: MrTrace
    capacity: int
    # (surviving center indices, largest per-machine GON radius) after each parallel round
    stages: list[tuple[np.ndarray, float]] = field(default_factory=list)

    @property
    def rounds_used(self) -> int:
        return self.while_iterations + 1

    @property
    def approx_bound(self) -> int:
        return 2 * self.rounds_used


def default_capacity(n: int, k: int, m: int) -> int:
    """Smallest capacity for which two rounds suffice: max(ceil(n/m), k*m)."""
    return max(ceil_div(n, m), int(k) * int(m))


def machine_bound(m: int, k: int, c: int, i: int) -> float:
    """Closed-form cap on machines needed after ``i`` parallel rounds."""
    r = k / c
    if r == 1.0:
        return m + i
    return m * r ** i + (1 - r ** i) / (1 - r)


def predict_rounds(n: int, k: int, m: int, c: int) -> int:
    """Rounds (parallel rounds plus the final one) MRG needs.

    Iterates m_i = ceil(k * m_{i-1} / c) from m_0 = m until one machine
    suffices. Assumes every first-round machine holds at least k points.
    """
    k, m, c = int(k), int(m), int(c)
    if k > c:
        raise ValueError(f"cannot fit k={k} centers on one machine of capacity c={c}")
    if c < ceil_div(n, m):
        raise ValueError(f"first round needs c >= ceil(n/m) = {ceil_div(n, m)}, got c={c}")
    if k * m > c and 2 * k >= c:
        raise ValueError(f"recurrence may not converge: need 2k < c, got k={k}, c={c}")
    machines = m
    i = 0
    while True:
        i += 1
        machines = ceil_div(k * machines, c)
        if machines < 2:
            return i + 1


def mrg(ps: PointSet, k: int, cfg: MrConfig | None = None, seed: int | None = None,
        start: int | str = 0, harness: Harness | None = None) -> MrgResult:
    """Run MRG on all of ``ps``; the reported radius is measured over every point."""
    cfg = cfg or MrConfig()
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = ps.n
    c = int(cfg.c) if cfg.c is not None else default_capacity(n, k, cfg.m)
    if k > c:
        raise ValueError(f"cannot fit k centers on one machine: k={k} > c={c}")
    if ceil_div(n, cfg.m) > c:
        raise ValueError(
            f"{n} points do not fit on m={cfg.m} machines of capacity c={c}")
    h = harness if harness is not None else Harness.from_config(cfg, seed)
    gcfg = GonConfig(k=k, start=start, seed=seed)
    random_start = start == "random"

    def reducer(part, mach):
        if part.size == 0:
            return part, 0.0
        sol = gon(ps, part, gcfg, mach.counter, mach.rng if random_start else None)
        return np.asarray(sol.centers, dtype=np.int64), sol.radius

    survivors = np.arange(n, dtype=np.int64)
    machine_counts: list[int] = []
    stages: list[tuple[np.ndarray, float]] = []
    it = 0
    while it == 0 or survivors.size > c:
        machines = cfg.m if it == 0 else ceil_div(survivors.size, c)
        parts = partition(survivors, machines, cfg.partition,
                          seed=None if seed is None else [int(seed), it])
        assert max(p.size for p in parts) <= c
        outs = h.run_round(f"mrg-{it + 1}", parts, reducer)
        merged = np.unique(np.concatenate([o[0] for o in outs]))
        if it > 0 and merged.size >= survivors.size:
            raise ValueError(
                f"recurrence may not converge: {survivors.size} points on {machines} machines "
                f"did not shrink with k={k}, c={c} (need 2k < c)")
        survivors = merged
        machine_counts.append(machines)
        stages.append((survivors, max(o[1] for o in outs)))
        it += 1

    final = h.run_single(
        "mrg-final",
        lambda mach: gon(ps, survivors, gcfg, mach.counter, mach.rng if random_start else None))
    machine_counts.append(1)
    radius = covering_radius(ps, final.centers)
    sol = CenterSolution(final.centers, radius,
                         {"algorithm": "mrg", "k": k, "m": cfg.m, "c": c, "seed": seed,
                          "start": start, "partition": cfg.partition})
    return MrgResult(sol, it, machine_counts, h.trace, c, stages)
