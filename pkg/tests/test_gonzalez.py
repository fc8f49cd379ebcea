import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_opt, small_instance
from kcenter import CostCounter, GonConfig, PointSet, covering_radius, gon, gon_farthest_sequence


def test_line_example(line6):
    sol = gon(line6, None, GonConfig(k=2, start=0))
    assert sol.centers == (0, 5)
    assert sol.radius == 2.0
    # exhaustive optimum on the same points is 1.0, so the factor is exactly 2
    assert brute_opt(line6.coords, 2) == (1.0, (1, 4))


def test_k_at_least_n_returns_everything(line6):
    for k in (6, 9):
        sol = gon(line6, None, k)
        assert sorted(sol.centers) == list(range(6))
        assert sol.radius == 0.0


def test_duplicates_take_lowest_unused_index():
    ps = PointSet(np.ones((5, 2)))
    sol = gon(ps, None, 3)
    assert sol.centers == (0, 1, 2)
    assert sol.radius == 0.0
    assert gon_farthest_sequence(ps, None, 4) == [0.0, 0.0, 0.0]


def test_farthest_sequence_examples(line6):
    assert gon_farthest_sequence(line6, None, 3) == [12.0, 2.0]
    assert gon_farthest_sequence(line6, None, 1) == []


def test_subset_and_start_position(line6):
    # start is a position in the sorted subset
    assert gon(line6, [3, 4, 5], 2).centers == (3, 5)
    assert gon(line6, [3, 4, 5], GonConfig(k=2, start=2)).centers == (5, 3)
    with pytest.raises(ValueError):
        gon(line6, [], 2)
    with pytest.raises(ValueError):
        GonConfig(k=0)
    with pytest.raises(ValueError):
        gon(line6, None, GonConfig(k=2, start=6))


def test_random_start_is_seeded(rng):
    ps = PointSet(rng.uniform(size=(200, 2)))
    a = gon(ps, None, GonConfig(k=5, start="random", seed=7))
    b = gon(ps, None, GonConfig(k=5, start="random", seed=7))
    assert a.centers == b.centers
    starts = {gon(ps, None, GonConfig(k=1, start="random", seed=s)).centers[0] for s in range(20)}
    assert len(starts) > 1


def test_cost_is_k_passes(rng):
    ps = PointSet(rng.uniform(size=(1000, 3)))
    c = CostCounter()
    gon(ps, None, 7, c)
    assert c.distance_evals == 7 * 1000
    c = CostCounter()
    gon(ps, np.arange(0, 1000, 2), 4, c)
    assert c.distance_evals == 4 * 500


def test_radius_self_consistent(rng):
    ps = PointSet(rng.normal(size=(300, 2)))
    sub = np.arange(0, 300, 3)
    sol = gon(ps, sub, 6)
    assert sol.check(ps, sub, k=6)


@given(st.integers(0, 10_000), st.integers(4, 10), st.integers(1, 3), st.sampled_from(["unif", "gau"]))
@settings(max_examples=40, deadline=None)
def test_factor_two_against_brute_force(seed, n, k, kind):
    ps = small_instance(seed, n, kind)
    opt, _ = brute_opt(ps.coords, k)
    assert gon(ps, None, k).radius <= 2 * opt + 1e-12


@given(st.integers(0, 10_000), st.integers(5, 40), st.integers(1, 6))
@settings(max_examples=40, deadline=None)
def test_sequence_monotone_and_next_step_is_radius(seed, n, k):
    ps = small_instance(seed, n, "unif")
    seq = gon_farthest_sequence(ps, None, k + 1)
    assert all(a >= b for a, b in zip(seq, seq[1:]))
    if k < n:
        assert gon(ps, None, k).radius == seq[k - 1]


@given(st.integers(0, 10_000), st.integers(6, 10), st.integers(1, 3), st.data())
@settings(max_examples=40, deadline=None)
def test_any_subset_within_twice_global_opt(seed, n, k, data):
    ps = small_instance(seed, n, "gau")
    opt, _ = brute_opt(ps.coords, k)
    sub = sorted(data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
    sol = gon(ps, sub, k)
    assert covering_radius(ps, sol.centers, sub) <= 2 * opt + 1e-12
