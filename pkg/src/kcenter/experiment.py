"""Experiment specs, algorithm dispatch and CSV result rows."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .datagen import GenSpec, generate
from .eim import EimConfig, eim
from .gonzalez import GonConfig, gon
from .harness import CONTIGUOUS, SEQUENTIAL, Harness, MrConfig, MrTrace
from .metric import CenterSolution, PointSet, read_points_csv
from .mrg import mrg

ALGOS = ("gon", "mrg", "eim")

ROW_COLUMNS = ("repeat", "algo", "n", "dim", "k", "m", "eps", "phi", "seed", "radius",
               "rounds", "iterations", "max_machine_distance_evals", "max_machine_wall_nanos",
               "total_distance_evals")
WALL_COLUMNS = ("max_machine_wall_nanos",)
_MEAN_COLUMNS = ("radius", "rounds", "iterations", "max_machine_distance_evals",
                 "max_machine_wall_nanos", "total_distance_evals")


@dataclass
class RunOutcome:
    solution: CenterSolution
    trace: MrTrace
    rounds: int
    iterations: int


def run_algorithm(ps: PointSet, algo: str, k: int, *, m: int = 50, c: int | None = None,
                  eps: float = 0.1, phi: float = 8.0, seed: int | None = 0,
                  mode: str = SEQUENTIAL, partition: str = CONTIGUOUS,
                  start: int | str = 0) -> RunOutcome:
    if algo == "gon":
        h = Harness(mode, seed)
        cfg = GonConfig(k=k, start=start, seed=seed)
        sol = h.run_single("gon", lambda mach: gon(
            ps, None, cfg, mach.counter, mach.rng if start == "random" else None))
        return RunOutcome(sol, h.trace, 1, 0)
    if algo == "mrg":
        res = mrg(ps, k, MrConfig(m=m, c=c, mode=mode, partition=partition), seed=seed,
                  start=start)
        return RunOutcome(res.solution, res.trace, res.rounds_used, res.while_iterations)
    if algo == "eim":
        res = eim(ps, EimConfig(k=k, eps=eps, phi=phi, seed=seed, start=start),
                  Harness(mode, seed))
        # three rounds per sampling iteration plus the final GON round
        return RunOutcome(res.solution, res.trace, 3 * res.iterations + 1, res.iterations)
    raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGOS}")


@dataclass
class ExperimentSpec:
    """One experiment: a dataset and a grid of (algo, k, phi) runs."""

    dataset: GenSpec | str | Path | PointSet
    algos: Sequence[str] = ("gon",)
    ks: Sequence[int] = (2,)
    m: int = 50
    c: int | None = None
    eps: float = 0.1
    phis: Sequence[float] = (8.0,)
    repeats: int = 1
    seed: int = 0
    mode: str = SEQUENTIAL
    partition: str = CONTIGUOUS
    start: int | str = 0
    out: str | Path | None = None

    def __post_init__(self):
        if isinstance(self.algos, str):
            self.algos = (self.algos,)
        for a in self.algos:
            if a not in ALGOS:
                raise ValueError(f"unknown algorithm {a!r}; expected one of {ALGOS}")
        if int(self.repeats) < 1:
            raise ValueError(f"repeats must be >= 1, got {self.repeats}")
        if not self.ks:
            raise ValueError("at least one k is required")

    def load(self) -> PointSet:
        if isinstance(self.dataset, PointSet):
            return self.dataset
        if isinstance(self.dataset, GenSpec):
            return generate(self.dataset)
        return ingest_csv(self.dataset)


def ingest_csv(path: str | Path) -> PointSet:
    return read_points_csv(path)


def _row(repeat, algo, ps, k, spec, phi, seed, out: RunOutcome) -> dict:
    return {
        "repeat": repeat,
        "algo": algo,
        "n": ps.n,
        "dim": ps.dim,
        "k": k,
        "m": spec.m if algo == "mrg" else "",
        "eps": spec.eps if algo == "eim" else "",
        "phi": phi if algo == "eim" else "",
        "seed": seed,
        "radius": out.solution.radius,
        "rounds": out.rounds,
        "iterations": out.iterations,
        "max_machine_distance_evals": out.trace.max_machine_distance_evals,
        "max_machine_wall_nanos": out.trace.max_machine_wall_nanos,
        "total_distance_evals": out.trace.total_distance_evals,
    }


def run_experiment(spec: ExperimentSpec, ps: PointSet | None = None) -> list[dict]:
    """One row per (algo, k, phi, repeat) followed by a mean row per configuration."""
    ps = ps if ps is not None else spec.load()
    rows: list[dict] = []
    for algo in spec.algos:
        phis = spec.phis if algo == "eim" else spec.phis[:1]
        for k in spec.ks:
            for phi in phis:
                group = []
                for r in range(spec.repeats):
                    seed = spec.seed + r
                    out = run_algorithm(ps, algo, int(k), m=spec.m, c=spec.c, eps=spec.eps,
                                        phi=phi, seed=seed, mode=spec.mode,
                                        partition=spec.partition, start=spec.start)
                    group.append(_row(r, algo, ps, k, spec, phi, seed, out))
                rows.extend(group)
                mean = dict(group[0])
                mean["repeat"] = "mean"
                mean["seed"] = ""
                for col in _MEAN_COLUMNS:
                    mean[col] = sum(g[col] for g in group) / len(group)
                rows.append(mean)
    if spec.out is not None:
        write_rows(rows, spec.out)
    return rows


def rows_to_csv(rows: Sequence[dict], drop: Sequence[str] = ()) -> str:
    cols = [c for c in ROW_COLUMNS if c not in drop]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in cols])
    return buf.getvalue()


def write_rows(rows: Sequence[dict], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(rows_to_csv(rows))


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)
