"""Small dense linear algebra over prime fields F_p, on numpy integer arrays.

Matrices are numpy int64 arrays with entries reduced mod p.  Everything here
is exact; sizes stay tiny (dimensions at most ~30), so simple Gauss
elimination is enough.
"""
from __future__ import annotations

from itertools import combinations, product

import numpy as np


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mod(a: np.ndarray, p: int) -> np.ndarray:
    return np.mod(a, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.mod(a @ b, p)


def _inv_elt(x: int, p: int) -> int:
    return pow(int(x), p - 2, p)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduced echelon form and pivot column list."""
    m = mod(a.copy(), p)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        m[r] = mod(m[r] * _inv_elt(m[r, c], p), p)
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = mod(m[i] - m[i, c] * m[r], p)
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Rows span the right null space {x : a x = 0}."""
    rows, cols = a.shape
    if cols == 0:
        return zeros(0, 0)
    if rows == 0:
        return eye(cols)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(len(free), cols)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, fc]) % p
    return basis


def inv(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([mod(a, p), eye(n)], axis=1)
    r, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is not invertible")
    return r[:, n:]


def is_invertible(a: np.ndarray, p: int) -> bool:
    n = a.shape[0]
    if a.shape[1] != n:
        return False
    if n == 0:
        return True
    return rank(a, p) == n


def solve_matrix(b: np.ndarray, target: np.ndarray, p: int) -> np.ndarray:
    """Solve b^T x = target columnwise: express the columns of ``target`` in
    the row basis ``b`` (k rows of length n).  Raises if not in the span."""
    k, n = b.shape
    if target.shape[0] != n:
        raise ValueError("shape mismatch")
    aug = np.concatenate([b.T % p, target % p], axis=1)
    r, pivots = rref(aug, p)
    if any(c >= k for c in pivots):
        raise ValueError("target not contained in the span")
    x = zeros(k, target.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = r[i, k:]
    return x


def row_space_contains(b: np.ndarray, vecs: np.ndarray, p: int) -> bool:
    """True if every row of vecs lies in the row space of b."""
    if vecs.size == 0:
        return True
    if b.size == 0:
        return not np.any(mod(vecs, p))
    base = rank(b, p)
    return rank(np.concatenate([b, vecs]), p) == base


def all_subspaces(n: int, k: int, p: int):
    """Yield all k-dimensional subspaces of F_p^n as k x n RREF basis matrices."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield zeros(0, n)
        return
    for pivots in combinations(range(n), k):
        free_pos = []
        for i in range(k):
            for c in range(pivots[i] + 1, n):
                if c not in pivots:
                    free_pos.append((i, c))
        for vals in product(range(p), repeat=len(free_pos)):
            m = zeros(k, n)
            for i, pc in enumerate(pivots):
                m[i, pc] = 1
            for (i, c), val in zip(free_pos, vals):
                m[i, c] = val
            yield m


def count_subspaces(n: int, k: int, p: int) -> int:
    """Gaussian binomial [n choose k]_p as an integer."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (k - i) - 1
    return num // den


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def complement_pivots(rows: np.ndarray, n: int, p: int) -> list[int]:
    """Indices of standard basis vectors completing the row space to F_p^n."""
    if rows.size == 0:
        return list(range(n))
    _, pivots = rref(rows, p)
    return [c for c in range(n) if c not in pivots]
