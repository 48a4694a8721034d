"""Dense GF(2) linear algebra on numpy uint8 arrays.

All bases are returned in reduced row-echelon form with pivots in increasing
column order, so every downstream computation is deterministic.
"""
from __future__ import annotations

import numpy as np


def asbits(m) -> np.ndarray:
    """Coerce to a 2-d uint8 array of 0/1 entries."""
    a = np.atleast_2d(np.asarray(m, dtype=np.uint8)) & 1
    return a


def rref(m) -> tuple[np.ndarray, list[int]]:
    """Return (reduced row echelon form, pivot column list) over GF(2)."""
    a = asbits(m).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        elim = np.nonzero(a[:, c])[0]
        for i in elim:
            if i != r:
                a[i, :] ^= a[r, :]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m) -> int:
    """Rank over GF(2)."""
    return len(rref(m)[1])


def row_space(m) -> np.ndarray:
    """Canonical basis (RREF rows) of the row space."""
    a, pivots = rref(m)
    return a[: len(pivots)].copy()


def kernel(m) -> np.ndarray:
    """Canonical basis of {v : m @ v = 0 mod 2}, one row per basis vector."""
    a, pivots = rref(m)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, p in enumerate(pivots):
            basis[i, p] = a[r, f]
    return row_space(basis) if len(free) else basis


def solve(m, b) -> np.ndarray | None:
    """One solution of m @ x = b mod 2, or None if inconsistent."""
    a = asbits(m)
    rhs = np.asarray(b, dtype=np.uint8).reshape(-1, 1) & 1
    aug, pivots = rref(np.hstack([a, rhs]))
    cols = a.shape[1]
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for r, p in enumerate(pivots):
        x[p] = aug[r, cols]
    return x


def in_row_space(m, v) -> bool:
    """True iff v lies in the GF(2) row span of m."""
    a = asbits(m)
    if a.shape[0] == 0 or not a.any():
        return not asbits(v).any()
    return rank(np.vstack([a, asbits(v)])) == rank(a)


def intersect_row_spaces(u, v) -> np.ndarray:
    """Canonical basis of rowspace(u) ∩ rowspace(v) (Zassenhaus)."""
    ub = row_space(u)
    vb = row_space(v)
    cols = ub.shape[1] if ub.size else vb.shape[1]
    if ub.shape[0] == 0 or vb.shape[0] == 0:
        return np.zeros((0, cols), dtype=np.uint8)
    top = np.hstack([ub, ub])
    bot = np.hstack([vb, np.zeros_like(vb)])
    a, pivots = rref(np.vstack([top, bot]))
    out = []
    for r in range(a.shape[0]):
        if not a[r, :cols].any() and a[r, cols:].any():
            out.append(a[r, cols:])
    if not out:
        return np.zeros((0, cols), dtype=np.uint8)
    return row_space(np.array(out, dtype=np.uint8))


def mat_mul(a, b) -> np.ndarray:
    """Matrix product mod 2."""
    return (asbits(a).astype(np.int64) @ asbits(b).astype(np.int64)) % 2
