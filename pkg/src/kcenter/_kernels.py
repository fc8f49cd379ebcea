"""Compiled distance loops.

Every kernel accumulates squared differences dimension by dimension in the
same order and takes one ``sqrt`` per reported distance, so a pair distance
is bit-identical no matter which kernel produced it. Comparisons made by the
algorithms rely on that.
"""
import math

import numpy as np
from numba import njit


@njit(cache=True, nogil=True, inline="always")
def _sqdist(X, i, j):
    acc = 0.0
    for t in range(X.shape[1]):
        diff = X[i, t] - X[j, t]
        acc += diff * diff
    return acc


@njit(cache=True, nogil=True)
def pair_distance(X, i, j):
    return math.sqrt(_sqdist(X, i, j))


@njit(cache=True, nogil=True)
def distances_to_point(X, idx, j, out):
    for p in range(idx.shape[0]):
        out[p] = math.sqrt(_sqdist(X, idx[p], j))


@njit(cache=True, nogil=True)
def relax_nearest(X, idx, j, nearest):
    """nearest[p] = min(nearest[p], d(idx[p], j)); returns argmax of the result.

    Ties in the argmax resolve to the lowest position.
    """
    best = -np.inf
    arg = -1
    for p in range(idx.shape[0]):
        d = math.sqrt(_sqdist(X, idx[p], j))
        if d < nearest[p]:
            nearest[p] = d
        if nearest[p] > best:
            best = nearest[p]
            arg = p
    return arg


_BLOCK = 256


@njit(cache=True, nogil=True, fastmath={"nnan", "nsz"})
def distances_to_block(X, idx, CT, out):
    """Nearest-center distance for each point of ``idx``.

    ``CT`` holds the center coordinates transposed (dim x centers) so the
    inner loop runs over contiguous memory. Per pair the squared terms are
    added in dimension order, matching ``_sqdist`` bit for bit.
    """
    d = CT.shape[0]
    m = CT.shape[1]
    buf = np.empty(_BLOCK)
    for p in range(idx.shape[0]):
        a = idx[p]
        best = np.inf
        for q0 in range(0, m, _BLOCK):
            w = min(_BLOCK, m - q0)
            x0 = X[a, 0]
            c0 = CT[0, q0:q0 + w]
            for q in range(w):
                diff = x0 - c0[q]
                buf[q] = diff * diff
            for t in range(1, d):
                xt = X[a, t]
                ct = CT[t, q0:q0 + w]
                for q in range(w):
                    diff = xt - ct[q]
                    buf[q] += diff * diff
            for q in range(w):
                best = min(best, buf[q])
        out[p] = math.sqrt(best)


@njit(cache=True, nogil=True)
def set_sq_radius(X, order, centers):
    worst = 0.0
    for p in range(order.shape[0]):
        best = np.inf
        a = order[p]
        for q in range(centers.shape[0]):
            s = _sqdist(X, a, centers[q])
            if s < best:
                best = s
        if best > worst:
            worst = best
    return worst


@njit(cache=True, nogil=True)
def enumerate_kcenter(X, order, k, incumbent):
    """Exhaustive lexicographic search over k-subsets of range(n).

    ``order`` is the point visiting order used for early abandon; ``incumbent``
    is a squared radius known to be achievable. Returns the squared optimum and
    the lexicographically first subset attaining it.
    """
    n = X.shape[0]
    comb = np.arange(k)
    best = incumbent
    best_comb = comb.copy()
    found = False
    while True:
        worst = 0.0
        abandoned = False
        for p in range(n):
            a = order[p]
            near = np.inf
            for q in range(k):
                s = _sqdist(X, a, comb[q])
                if s < near:
                    near = s
            if near > worst:
                worst = near
                if worst > best:
                    abandoned = True
                    break
        if not abandoned and (worst < best or not found):
            best = worst
            best_comb[:] = comb
            found = True
        # next combination in lexicographic order
        i = k - 1
        while i >= 0 and comb[i] == n - k + i:
            i -= 1
        if i < 0:
            break
        comb[i] += 1
        for j in range(i + 1, k):
            comb[j] = comb[j - 1] + 1
    return best, best_comb
