"""Single-process MapReduce simulator with per-machine cost accounting.

Rounds run their reducers either one after another or on a thread pool.
Either way each machine gets its own counter and its own random stream, and
outputs are collected in machine order, so the two modes agree exactly.
A round's cost is the maximum over its machines; data movement is free.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .metric import CostCounter

SEQUENTIAL = "sequential"
THREADS = "threads"
MODES = (SEQUENTIAL, THREADS)

CONTIGUOUS = "contiguous"
ROUND_ROBIN = "round-robin"
SHUFFLE = "shuffle"
PARTITION_RULES = (CONTIGUOUS, ROUND_ROBIN, SHUFFLE)


class ReducerError(RuntimeError):
    def __init__(self, label: str, part: int, cause: BaseException):
        super().__init__(f"round {label!r}: reducer failed on part {part}: {cause!r}")
        self.label = label
        self.part = part


@dataclass(frozen=True)
class MrConfig:
    """Machine count ``m``, per-machine capacity ``c`` and execution knobs."""

    m: int = 50
    c: int | None = None
    mode: str = SEQUENTIAL
    partition: str = CONTIGUOUS
    workers: int | None = None

    def __post_init__(self):
        if int(self.m) < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.c is not None and int(self.c) < 1:
            raise ValueError(f"c must be >= 1, got {self.c}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.partition not in PARTITION_RULES:
            raise ValueError(f"partition must be one of {PARTITION_RULES}, got {self.partition!r}")


def machine_rng(seed: int | None, round_no: int, machine: int) -> np.random.Generator:
    """Stream for one machine in one round.

    Keyed on (seed, round, machine) so that adding machines to a round does not
    change the draws of the others.
    """
    entropy = 0 if seed is None else int(seed)
    return np.random.default_rng(np.random.SeedSequence(entropy, spawn_key=(round_no, machine)))


def partition(indices: np.ndarray | Sequence[int], m: int, rule: str = CONTIGUOUS,
              seed: int | None = None) -> list[np.ndarray]:
    """Split ``indices`` into ``m`` disjoint parts of size at most ceil(N/m).

    Parts are returned sorted. Empty parts occur only when N < m.
    """
    m = int(m)
    if m < 1:
        raise ValueError(f"machine count must be >= 1, got {m}")
    idx = np.asarray(indices, dtype=np.int64)
    if idx.size == 0:
        raise ValueError("cannot partition an empty index set")
    if rule == CONTIGUOUS:
        parts = np.array_split(idx, m)
    elif rule == ROUND_ROBIN:
        parts = [idx[i::m] for i in range(m)]
    elif rule == SHUFFLE:
        perm = np.random.default_rng(seed).permutation(idx)
        parts = np.array_split(perm, m)
    else:
        raise ValueError(f"unknown partition rule {rule!r}")
    return [np.sort(p) for p in parts]


@dataclass
class Machine:
    """What a reducer sees: its index, its counter and its random stream."""

    index: int
    counter: CostCounter
    _seed: int | None
    _round_no: int
    _rng: np.random.Generator | None = None

    @property
    def rng(self) -> np.random.Generator:
        if self._rng is None:
            self._rng = machine_rng(self._seed, self._round_no, self.index)
        return self._rng


@dataclass
class RoundRecord:
    label: str
    counters: list[CostCounter]

    @property
    def machine_count(self) -> int:
        return len(self.counters)

    @property
    def max_distance_evals(self) -> int:
        return max((c.distance_evals for c in self.counters), default=0)

    @property
    def max_wall_nanos(self) -> int:
        return max((c.wall_nanos for c in self.counters), default=0)

    @property
    def sum_distance_evals(self) -> int:
        return sum(c.distance_evals for c in self.counters)


CSV_COLUMNS = ("round_label", "machine_count", "max_distance_evals", "max_wall_nanos",
               "sum_distance_evals")


@dataclass
class MrTrace:
    rounds: list[RoundRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rounds)

    @property
    def max_machine_distance_evals(self) -> int:
        """Critical-path cost: per-round maxima summed over rounds."""
        return sum(r.max_distance_evals for r in self.rounds)

    @property
    def max_machine_wall_nanos(self) -> int:
        return sum(r.max_wall_nanos for r in self.rounds)

    @property
    def total_distance_evals(self) -> int:
        return sum(r.sum_distance_evals for r in self.rounds)

    def by_label(self, prefix: str) -> list[RoundRecord]:
        return [r for r in self.rounds if r.label.startswith(prefix)]

    def extend(self, other: "MrTrace") -> None:
        self.rounds.extend(other.rounds)

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rounds:
            w.writerow([r.label, r.machine_count, r.max_distance_evals, r.max_wall_nanos,
                        r.sum_distance_evals])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        return text


Reducer = Callable[[np.ndarray, Machine], Any]


class Harness:
    """Runs rounds and accumulates an :class:`MrTrace`. Not reentrant."""

    def __init__(self, mode: str = SEQUENTIAL, seed: int | None = None,
                 workers: int | None = None):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        self.mode = mode
        self.seed = seed
        self.workers = workers
        self.trace = MrTrace()

    @classmethod
    def from_config(cls, cfg: MrConfig, seed: int | None = None) -> "Harness":
        return cls(cfg.mode, seed, cfg.workers)

    def run_round(self, label: str, parts: Sequence[np.ndarray], reducer: Reducer
                  ) -> list[Any]:
        """Apply ``reducer(part, machine)`` to every part; returns outputs in part order."""
        round_no = len(self.trace.rounds)
        machines = [Machine(i, CostCounter(), self.seed, round_no) for i in range(len(parts))]

        def work(i: int):
            mach = machines[i]
            try:
                with mach.counter.timed():
                    return reducer(parts[i], mach)
            except Exception as exc:
                raise ReducerError(label, i, exc) from exc

        if self.mode == THREADS and len(parts) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                outputs = list(pool.map(work, range(len(parts))))
        else:
            outputs = [work(i) for i in range(len(parts))]
        self.trace.rounds.append(RoundRecord(label, [mach.counter for mach in machines]))
        return outputs

    def run_single(self, label: str, reducer: Callable[[Machine], Any]) -> Any:
        """A one-machine round (a barrier step such as pivot selection)."""
        return self.run_round(label, [np.empty(0, dtype=np.int64)],
                              lambda _part, mach: reducer(mach))[0]


def run_round(parts: Sequence[np.ndarray], reducer: Reducer, mode: str = SEQUENTIAL,
              seed: int | None = None, label: str = "round") -> tuple[list[Any], RoundRecord]:
    """One-off round outside any multi-round run."""
    h = Harness(mode, seed)
    outputs = h.run_round(label, parts, reducer)
    return outputs, h.trace.rounds[0]


def ceil_div(a: int, b: int) -> int:
    return -(-int(a) // int(b))


def machines_for(size: int, capacity: float) -> int:
    return max(1, math.ceil(size / capacity))
