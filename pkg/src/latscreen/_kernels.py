"""Compiled int64 kernels for the vector enumerators.

Everything here assumes the caller has already proved (with exact big-int
arithmetic) that no intermediate value can leave the int64 range; the kernels
themselves never check.  When numba is missing the same functions run as
plain Python, which is slow but keeps the module importable.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        def wrap(fn):
            return fn
        return wrap


@njit(cache=True)
def _isqrt64(v):
    """Exact floor square root for 0 <= v < 2**62."""
    if v <= 0:
        return np.int64(0)
    s = np.int64(math.sqrt(np.float64(v)))
    while s > 0 and s * s > v:
        s -= 1
    while (s + 1) * (s + 1) <= v:
        s += 1
    return s


@njit(cache=True)
def depth_first_below(h, dmin, bound, cap0):
    """All canonical nonzero x with x^T G x <= bound, via the integer
    triangular recursion.

    h[i] holds the scaled Schur complement at level i (integer matrix
    dmin[i] * S_i padded into a (d, d, d) block); coordinates are chosen from
    the innermost level d-1 outwards.  Returns (vectors, norms) unsorted.
    """
    d = h.shape[0]
    cap = cap0
    out = np.empty((cap, d), np.int64)
    norms = np.empty(cap, np.int64)
    count = 0

    x = np.zeros(d, np.int64)
    lo = np.zeros(d, np.int64)
    hi = np.zeros(d, np.int64)
    bs = np.zeros(d, np.int64)
    cs = np.zeros(d, np.int64)

    i = d - 1
    _set_range(h, dmin, bound, i, x, lo, hi, bs, cs)
    x[i] = lo[i] - 1
    while True:
        x[i] += 1
        if x[i] > hi[i]:
            i += 1
            if i >= d:
                break
            continue
        if i == 0:
            j = 0
            while j < d and x[j] == 0:
                j += 1
            if j < d and x[j] > 0:
                if count == cap:
                    cap2 = cap * 2
                    out2 = np.empty((cap2, d), np.int64)
                    norms2 = np.empty(cap2, np.int64)
                    out2[:count] = out[:count]
                    norms2[:count] = norms[:count]
                    out = out2
                    norms = norms2
                    cap = cap2
                out[count] = x
                norms[count] = h[0, 0, 0] * x[0] * x[0] + 2 * bs[0] * x[0] + cs[0]
                count += 1
        else:
            i -= 1
            _set_range(h, dmin, bound, i, x, lo, hi, bs, cs)
            x[i] = lo[i] - 1
    return out[:count], norms[:count]


@njit(cache=True)
def _set_range(h, dmin, bound, i, x, lo, hi, bs, cs):
    d = h.shape[0]
    n = d - i
    a = h[i, 0, 0]
    b = np.int64(0)
    for j in range(1, n):
        b += h[i, 0, j] * x[i + j]
    c = np.int64(0)
    for j in range(1, n):
        for k in range(1, n):
            c += h[i, j, k] * x[i + j] * x[i + k]
    bs[i] = b
    cs[i] = c
    m = bound * dmin[i]
    disc = b * b - a * (c - m)
    if disc < 0:
        lo[i] = 0
        hi[i] = -1
        return
    s = _isqrt64(disc)
    hival = (-b + s) // a
    loval = (-b - s) // a
    while a * (hival + 1) * (hival + 1) + 2 * b * (hival + 1) + c <= m:
        hival += 1
    while hival >= loval and a * hival * hival + 2 * b * hival + c > m:
        hival -= 1
    while a * (loval - 1) * (loval - 1) + 2 * b * (loval - 1) + c <= m:
        loval -= 1
    while loval <= hival and a * loval * loval + 2 * b * loval + c > m:
        loval += 1
    lo[i] = loval
    hi[i] = hival


@njit(cache=True)
def box_scan(g, limits, bound, cap0):
    """Naive reference enumeration: walk the whole coordinate box and test
    every point's norm directly.  Independent of the recursion above."""
    d = g.shape[0]
    cap = cap0
    out = np.empty((cap, d), np.int64)
    norms = np.empty(cap, np.int64)
    count = 0

    x = np.empty(d, np.int64)
    for j in range(d):
        x[j] = -limits[j]
    while True:
        j = 0
        while j < d and x[j] == 0:
            j += 1
        if j < d and x[j] > 0:
            nrm = np.int64(0)
            for r in range(d):
                row = np.int64(0)
                for c in range(d):
                    row += g[r, c] * x[c]
                nrm += row * x[r]
            if nrm <= bound:
                if count == cap:
                    cap2 = cap * 2
                    out2 = np.empty((cap2, d), np.int64)
                    norms2 = np.empty(cap2, np.int64)
                    out2[:count] = out[:count]
                    norms2[:count] = norms[:count]
                    out = out2
                    norms = norms2
                    cap = cap2
                out[count] = x
                norms[count] = nrm
                count += 1
        # odometer step
        k = d - 1
        while k >= 0 and x[k] == limits[k]:
            x[k] = -limits[k]
            k -= 1
        if k < 0:
            break
        x[k] += 1
    return out[:count], norms[:count]
