import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_opt, small_instance
from kcenter import MrConfig, PointSet, gon, machine_bound, mrg, predict_rounds
from kcenter.mrg import default_capacity


def test_line_example(line6):
    res = mrg(line6, 2, MrConfig(m=2, c=6))
    assert [s[0].tolist() for s in res.stages] == [[0, 2, 3, 5]]
    assert res.solution.centers == (0, 5)
    assert res.solution.radius == 2.0
    assert res.rounds_used == 2 and res.approx_bound == 4
    assert res.machine_counts == [2, 1]
    assert [r.label for r in res.trace.rounds] == ["mrg-1", "mrg-final"]


def test_single_machine_matches_gon(rng):
    ps = PointSet(rng.normal(size=(500, 2)))
    res = mrg(ps, 7, MrConfig(m=1, c=500))
    assert res.solution.centers == gon(ps, None, 7).centers
    assert res.rounds_used == 2


def test_multi_round_obeys_machine_bound(rng):
    ps = PointSet(rng.uniform(size=(1000, 2)))
    res = mrg(ps, 10, MrConfig(m=50, c=20))
    assert res.while_iterations >= 2
    for i, mi in enumerate(res.machine_counts[:-1]):
        assert mi <= machine_bound(50, 10, 20, i) + 1e-9
    # 2k = c here, so the predictor refuses even though each machine still halves its input
    with pytest.raises(ValueError, match="recurrence may not converge"):
        predict_rounds(1000, 10, 50, 20)
    assert res.solution.check(ps, k=10)


def test_predict_rounds_examples():
    assert predict_rounds(10_000, 10, 50, 500) == 2
    assert predict_rounds(5_000, 10, 50, 100) == 3
    assert predict_rounds(50, 3, 1, 50) == 2
    with pytest.raises(ValueError, match="recurrence may not converge"):
        predict_rounds(900, 10, 50, 19)
    with pytest.raises(ValueError, match="cannot fit"):
        predict_rounds(100, 10, 10, 9)


def test_capacity_errors(line6):
    with pytest.raises(ValueError, match="cannot fit k centers"):
        mrg(line6, 3, MrConfig(m=2, c=2))
    with pytest.raises(ValueError, match="do not fit"):
        mrg(line6, 1, MrConfig(m=2, c=2))
    assert default_capacity(1000, 10, 50) == 500


def test_machine_bound_closed_form():
    assert machine_bound(50, 10, 20, 0) == 50
    assert machine_bound(50, 10, 20, 1) == pytest.approx(26.0)
    assert machine_bound(4, 5, 5, 3) == 7


def test_predicted_rounds_match_runs(rng):
    ps = PointSet(rng.uniform(size=(5000, 2)))
    for c in (100, 200, 500):
        assert mrg(ps, 10, MrConfig(m=50, c=c)).rounds_used == predict_rounds(5000, 10, 50, c)


@given(st.integers(0, 10_000), st.integers(4, 12), st.integers(1, 3), st.integers(2, 3),
       st.sampled_from(["contiguous", "round-robin", "shuffle"]))
@settings(max_examples=40, deadline=None)
def test_two_round_factor_four(seed, n, k, m, rule):
    ps = small_instance(seed, n, "gau" if seed % 2 else "unif")
    c = max(k * m, -(-n // m))
    res = mrg(ps, k, MrConfig(m=m, c=c, partition=rule), seed=seed)
    opt, _ = brute_opt(ps.coords, k)
    assert res.rounds_used == 2
    assert res.solution.radius <= 4 * opt + 1e-12


@given(st.integers(0, 10_000))
@settings(max_examples=10, deadline=None)
def test_modes_agree(seed):
    ps = small_instance(seed, 400, "unif")
    a = mrg(ps, 4, MrConfig(m=10, c=40, mode="sequential", partition="shuffle"), seed=seed,
            start="random")
    b = mrg(ps, 4, MrConfig(m=10, c=40, mode="threads", partition="shuffle"), seed=seed,
            start="random")
    assert a.solution == b.solution
    assert a.machine_counts == b.machine_counts
    assert np.array_equal([r.max_distance_evals for r in a.trace.rounds],
                          [r.max_distance_evals for r in b.trace.rounds])
