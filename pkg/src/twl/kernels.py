"""Hot loops: corner matrices, division search, exhaustive matrix sweeps.

Every kernel exists twice: a numba version (``*_nb``) compiled with ``njit``
and a numpy version (``*_np``). The public names at the bottom of the module
dispatch on ``twl._accel.USE_NUMBA``. Both versions must return identical
results; tests/test_kernels.py checks this on random inputs.

Matrices are ``uint8`` arrays holding 0/1. Prefix sums are ``int64`` arrays
with one extra leading row and column.
"""

from itertools import combinations

import numpy as np

from ._accel import USE_NUMBA, njit


# ---------------------------------------------------------------- corners ---

def corner_matrix_np(bits):
    a = bits[:-1, :-1]
    b = bits[:-1, 1:]
    c = bits[1:, :-1]
    d = bits[1:, 1:]
    not_vertical = (a != c) | (b != d)
    not_horizontal = (a != b) | (c != d)
    return (not_vertical & not_horizontal).astype(np.uint8)


@njit
def corner_matrix_nb(bits):
    m, n = bits.shape
    out = np.zeros((m - 1, n - 1), dtype=np.uint8)
    for i in range(m - 1):
        for j in range(n - 1):
            a = bits[i, j]
            b = bits[i, j + 1]
            c = bits[i + 1, j]
            d = bits[i + 1, j + 1]
            if (a != c or b != d) and (a != b or c != d):
                out[i, j] = 1
    return out


def prefix_sums(ind):
    p = np.zeros((ind.shape[0] + 1, ind.shape[1] + 1), dtype=np.int64)
    np.cumsum(np.cumsum(ind, axis=0, dtype=np.int64), axis=1, out=p[1:, 1:])
    return p


# --------------------------------------------------------- minor search -----
#
# A zone with original rows [r0, r1) and columns [c0, c1) is "good" when the
# indicator matrix has a 1 inside rows [r0, r1 - s) and columns [c0, c1 - s).
# s = 0 gives grid minors over the matrix itself; s = 1 with the corner matrix
# as indicator gives mixed minors (a corner must sit strictly inside the zone).

@njit
def _zone_good(p, r0, r1, c0, c1, s):
    re = r1 - s
    ce = c1 - s
    if re <= r0 or ce <= c0:
        return False
    return p[re, ce] - p[r0, ce] - p[re, c0] + p[r0, c0] > 0


@njit
def _greedy_columns_nb(p, row_cuts, t, n, s, col_cuts):
    # row_cuts has t + 1 entries (0 ... m). Fills col_cuts[0..t] on success.
    c0 = 0
    parts = 0
    col_cuts[0] = 0
    for c1 in range(1, n + 1):
        ok = True
        for k in range(t):
            if not _zone_good(p, row_cuts[k], row_cuts[k + 1], c0, c1, s):
                ok = False
                break
        if ok:
            parts += 1
            if parts == t:
                col_cuts[t] = n
                return True
            col_cuts[parts] = c1
            c0 = c1
    return False


@njit
def find_minor_nb(p, m, n, s, t):
    """Exhaustive over row divisions, greedy over columns.

    Returns (found, row_cuts, col_cuts); cut arrays hold t + 1 boundaries.
    """
    row_cuts = np.zeros(t + 1, dtype=np.int64)
    col_cuts = np.zeros(t + 1, dtype=np.int64)
    row_cuts[t] = m
    if t == 1:
        found = _greedy_columns_nb(p, row_cuts, t, n, s, col_cuts)
        return found, row_cuts, col_cuts
    k = t - 1
    idx = np.arange(1, k + 1)  # first combination of inner cuts from 1..m-1
    if idx[k - 1] > m - 1:
        return False, row_cuts, col_cuts
    while True:
        for q in range(k):
            row_cuts[q + 1] = idx[q]
        if _greedy_columns_nb(p, row_cuts, t, n, s, col_cuts):
            return True, row_cuts, col_cuts
        # next combination in lexicographic order
        q = k - 1
        while q >= 0 and idx[q] == m - 1 - (k - 1 - q):
            q -= 1
        if q < 0:
            break
        idx[q] += 1
        for r in range(q + 1, k):
            idx[r] = idx[r - 1] + 1
    return False, row_cuts, col_cuts


def _greedy_columns_np(p, row_cuts, t, n, s):
    starts = row_cuts[:-1]
    ends = row_cuts[1:] - s
    ends = np.maximum(ends, starts)
    # strip[k, c] = number of indicator ones in row part k, columns [0, c)
    strip = p[ends, :] - p[starts, :]
    ncols = strip.shape[1]
    cuts = [0]
    c0 = 0
    while len(cuts) < t + 1:
        c1 = 0
        for k in range(t):
            q = int(np.searchsorted(strip[k], strip[k, c0], side="right"))
            if q >= ncols:
                return None
            c1 = max(c1, q + s)
        if c1 > n:
            return None
        cuts.append(c1)
        c0 = c1
        if c0 - s >= ncols - 1 and len(cuts) < t + 1:
            return None
    cuts[-1] = n
    return np.asarray(cuts, dtype=np.int64)


def find_minor_np(p, m, n, s, t):
    row_cuts = np.zeros(t + 1, dtype=np.int64)
    row_cuts[t] = m
    for inner in combinations(range(1, m), t - 1):
        row_cuts[1:t] = inner
        col_cuts = _greedy_columns_np(p, row_cuts, t, n, s)
        if col_cuts is not None:
            return True, row_cuts.copy(), col_cuts
    return False, row_cuts, np.zeros(t + 1, dtype=np.int64)


def greedy_rows_for(p, m, n, s, t, row_cuts):
    """Column greedy for one fixed row division (used by the lower-bound mode)."""
    row_cuts = np.asarray(row_cuts, dtype=np.int64)
    if USE_NUMBA:
        col_cuts = np.zeros(t + 1, dtype=np.int64)
        ok = _greedy_columns_nb(p, row_cuts, t, n, s, col_cuts)
        return col_cuts if ok else None
    return _greedy_columns_np(p, row_cuts, t, n, s)


# ------------------------------------------------ exhaustive matrix sweeps --

@njit
def column_bound_sweep_nb(m, n):
    """For every m x n 0/1 matrix: distinct columns vs 2^(p+1).

    Returns (violations, max_distinct, max_p, histogram of p).
    """
    total = 1 << (m * n)
    bits = np.zeros((m, n), dtype=np.uint8)
    hist = np.zeros(m, dtype=np.int64)
    violations = 0
    max_distinct = 0
    max_p = 0
    seen = np.zeros(1 << m, dtype=np.int64)  # stamp of the last matrix using each column value
    for code in range(total):
        for r in range(m):
            for c in range(n):
                bits[r, c] = (code >> (r * n + c)) & 1
        p = 0
        for i in range(m - 1):
            hit = False
            for j in range(n - 1):
                a = bits[i, j]
                b = bits[i, j + 1]
                cc = bits[i + 1, j]
                d = bits[i + 1, j + 1]
                if (a != cc or b != d) and (a != b or cc != d):
                    hit = True
                    break
            if hit:
                p += 1
        distinct = 0
        for c in range(n):
            v = 0
            for r in range(m):
                v |= np.int64(bits[r, c]) << r
            if seen[v] != code + 1:
                seen[v] = code + 1
                distinct += 1
        if distinct > (1 << (p + 1)):
            violations += 1
        if distinct > max_distinct:
            max_distinct = distinct
        if p > max_p:
            max_p = p
        hist[p] += 1
    return violations, max_distinct, max_p, hist


def column_bound_sweep_np(m, n):
    total = 1 << (m * n)
    codes = np.arange(total, dtype=np.int64)
    shifts = np.arange(m * n, dtype=np.int64)
    bits = ((codes[:, None] >> shifts) & 1).astype(np.uint8).reshape(total, m, n)
    if n >= 2:
        a = bits[:, :-1, :-1]
        b = bits[:, :-1, 1:]
        c = bits[:, 1:, :-1]
        d = bits[:, 1:, 1:]
        corner = ((a != c) | (b != d)) & ((a != b) | (c != d))
        p = corner.any(axis=2).sum(axis=1)
    else:
        p = np.zeros(total, dtype=np.int64)
    weights = (np.int64(1) << np.arange(m, dtype=np.int64))[None, :, None]
    cols = (bits.astype(np.int64) * weights).sum(axis=1)
    cols.sort(axis=1)
    distinct = 1 + (np.diff(cols, axis=1) != 0).sum(axis=1)
    violations = int((distinct > (np.int64(1) << (p + 1))).sum())
    hist = np.bincount(p, minlength=m).astype(np.int64)
    return violations, int(distinct.max()), int(p.max()), hist


# ------------------------------------------------------------- dispatch -----

if USE_NUMBA:
    corner_matrix = corner_matrix_nb
    find_minor = find_minor_nb
    column_bound_sweep = column_bound_sweep_nb
else:
    corner_matrix = corner_matrix_np
    find_minor = find_minor_np
    column_bound_sweep = column_bound_sweep_np
