import itertools
import math

import numpy as np
import pytest

from kcenter import GenSpec, PointSet, gen_gau, gen_unif

LINE6 = [[0.0], [1.0], [2.0], [10.0], [11.0], [12.0]]


@pytest.fixture
def line6():
    return PointSet(LINE6)


def brute_opt(coords, k):
    """Pure-Python reference: (opt radius, lexicographically first optimal tuple)."""
    pts = [tuple(map(float, p)) for p in coords]
    best, best_c = math.inf, None
    for comb in itertools.combinations(range(len(pts)), min(k, len(pts))):
        r = max(min(math.dist(p, pts[c]) for c in comb) for p in pts)
        if r < best:
            best, best_c = r, comb
    return best, best_c


def small_instance(seed, n, kind="unif", dim=2):
    """Mixed small instances for oracle suites."""
    if kind == "unif":
        return gen_unif(GenSpec("unif", n, dim=dim, seed=seed))
    kp = 1 + seed % 3
    return gen_gau(GenSpec("gau", n, kprime=min(kp, n), dim=dim, sigma=2.0, seed=seed))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def record(request):
    """Log one acceptance verdict; the summary prints every logged line."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def _record(criterion, ok, detail):
        line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
