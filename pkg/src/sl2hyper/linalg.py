"""Dense Gaussian elimination over F_p on int64 numpy arrays.

Entries are kept in [0, p), so a single row update never exceeds p**2 and
int64 is safe for any prime below 2**31.
"""

from __future__ import annotations

import numpy as np


def as_matrix(a, p: int) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a % p


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = as_matrix(a, p).copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(a[row:, col])
        if nz.size == 0:
            continue
        k = row + nz[0]
        if k != row:
            a[[row, k]] = a[[k, row]]
        a[row] = a[row] * pow(int(a[row, col]), -1, p) % p
        column = a[:, col].copy()
        column[row] = 0
        others = np.flatnonzero(column)
        if others.size:
            a[others] = (a[others] - np.outer(column[others], a[row])) % p
        pivots.append(col)
        row += 1
    return a[:row], pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Basis (as rows) of {x : a @ x = 0}."""
    a = as_matrix(a, p)
    ncols = a.shape[1]
    r, pivots = rref(a, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = -r[row, f] % p
    return basis


def row_space(rows, p: int, ncols: int | None = None) -> np.ndarray:
    """Canonical basis of the row space (its RREF), usable for equality tests."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        width = ncols if ncols is not None else (rows.shape[-1] if rows.ndim == 2 else 0)
        return np.zeros((0, width), dtype=np.int64)
    return rref(rows, p)[0]


def same_space(u, v, p: int) -> bool:
    ru, rv = row_space(u, p), row_space(v, p)
    return ru.shape == rv.shape and bool(np.array_equal(ru, rv))


def solve_any(a, b, p: int) -> np.ndarray | None:
    """Some x with x @ a = b (rows of a combined), or None if b is not in the row space."""
    a = as_matrix(a, p)
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    k, n = a.shape
    aug = np.concatenate([a.T, b.reshape(-1, 1)], axis=1)
    r, pivots = rref(aug, p)
    if pivots and pivots[-1] == k:
        return None
    x = np.zeros(k, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, k]
    return x


class RowSolver:
    """Expresses vectors as combinations of fixed, linearly independent rows.

    Raises ValueError at construction if the rows are dependent.
    """

    def __init__(self, rows, p: int):
        rows = as_matrix(rows, p)
        self.p = p
        k, n = rows.shape
        self.k = k
        aug = np.concatenate([rows, np.eye(k, dtype=np.int64)], axis=1)
        r, pivots = rref(aug, p)
        self.pivots = [c for c in pivots if c < n]
        if len(self.pivots) < k:
            raise ValueError("rows are linearly dependent")
        self.reduced = r[:, :n]
        self.transform = r[:, n:]

    def solve(self, v) -> np.ndarray | None:
        v = np.asarray(v, dtype=np.int64) % self.p
        lead = v[self.pivots]
        residual = (v - lead @ self.reduced) % self.p
        if residual.any():
            return None
        return lead @ self.transform % self.p
