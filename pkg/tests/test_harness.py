import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kcenter import Harness, MrConfig, gon, partition, run_round
from kcenter.harness import ReducerError, machine_rng


def _sets(parts):
    return [p.tolist() for p in parts]


def test_partition_examples():
    assert _sets(partition(np.arange(6), 2)) == [[0, 1, 2], [3, 4, 5]]
    assert _sets(partition(np.arange(5), 2)) == [[0, 1, 2], [3, 4]]
    assert _sets(partition(np.arange(7), 1)) == [list(range(7))]
    assert _sets(partition(np.arange(5), 2, "round-robin")) == [[0, 2, 4], [1, 3]]
    with pytest.raises(ValueError):
        partition(np.arange(5), 0)
    with pytest.raises(ValueError):
        partition(np.arange(5), 2, "bogus")


@given(st.integers(1, 300), st.integers(1, 40), st.sampled_from(["contiguous", "round-robin", "shuffle"]),
       st.integers(0, 99))
@settings(max_examples=80, deadline=None)
def test_partition_is_disjoint_cover(n, m, rule, seed):
    idx = np.arange(0, 3 * n, 3)
    parts = partition(idx, m, rule, seed)
    assert len(parts) == m
    joined = np.concatenate(parts)
    assert sorted(joined.tolist()) == idx.tolist()
    assert max(p.size for p in parts) <= -(-n // m)
    assert all(np.all(np.diff(p) > 0) for p in parts)


def test_identity_round_costs_nothing():
    parts = partition(np.arange(10), 3)
    outs, rec = run_round(parts, lambda part, mach: part)
    assert _sets(outs) == _sets(parts)
    assert rec.machine_count == 3
    assert rec.max_distance_evals == 0 and rec.sum_distance_evals == 0


def test_gon_per_part(line6):
    parts = partition(np.arange(6), 2)
    outs, rec = run_round(parts, lambda part, mach: gon(line6, part, 2, mach.counter).centers)
    assert outs == [(0, 2), (3, 5)]
    assert rec.max_distance_evals == 6
    assert rec.sum_distance_evals == 12


def test_modes_agree_including_randomness():
    parts = partition(np.arange(1000), 8)

    def reducer(part, mach):
        mach.counter.charge(int(part.size))
        return mach.rng.choice(part, 5, replace=False).tolist()

    a, ra = run_round(parts, reducer, "sequential", seed=3)
    b, rb = run_round(parts, reducer, "threads", seed=3)
    assert a == b
    assert [c.distance_evals for c in ra.counters] == [c.distance_evals for c in rb.counters]
    c, _ = run_round(parts, reducer, "threads", seed=4)
    assert c != a


def test_machine_streams_are_independent_of_machine_count():
    x = machine_rng(5, 2, 1).random(4)
    h = Harness(seed=5)
    h.run_round("a", [np.arange(1)], lambda p, m: None)
    h.run_round("b", [np.arange(1)], lambda p, m: None)
    out = h.run_round("c", [np.arange(1)] * 7, lambda p, m: m.rng.random(4))
    assert np.array_equal(out[1], x)


def test_trace_accounting():
    h = Harness()
    h.run_round("r1", [np.arange(3), np.arange(5)], lambda p, m: m.counter.charge(p.size * 10))
    h.run_single("r2", lambda m: m.counter.charge(7))
    t = h.trace
    assert len(t) == 2
    assert t.max_machine_distance_evals == 50 + 7
    assert t.total_distance_evals == 80 + 7
    assert [r.label for r in t.by_label("r")] == ["r1", "r2"]
    lines = t.to_csv().splitlines()
    assert lines[0] == "round_label,machine_count,max_distance_evals,max_wall_nanos,sum_distance_evals"
    assert lines[1].startswith("r1,2,50,") and lines[1].endswith(",80")


def test_reducer_errors_name_the_part():
    def bad(part, mach):
        if part[0] == 3:
            raise KeyError("boom")
        return part

    for mode in ("sequential", "threads"):
        with pytest.raises(ReducerError, match="part 1") as info:
            run_round(partition(np.arange(6), 2), bad, mode, label="x")
        assert info.value.part == 1


def test_config_validation():
    with pytest.raises(ValueError):
        MrConfig(m=0)
    with pytest.raises(ValueError):
        MrConfig(mode="parallel-ish")
    with pytest.raises(ValueError):
        Harness(mode="nope")
