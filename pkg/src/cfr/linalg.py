"""Exact dense linear algebra: mod-p via vectorized numpy, rationals via
Fraction Gaussian elimination (fixture scale only)."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def modp_rref(A: np.ndarray, p: int):
    """Row-reduce A over GF(p).  Returns (R, pivot_columns)."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        col = A[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        col_vals = A[:, c].copy()
        col_vals[r] = 0
        mask = col_vals != 0
        if mask.any():
            A[mask] = (A[mask] - col_vals[mask, None] * A[r][None, :]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def modp_kernel(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right null space of A over GF(p), rows = basis vectors."""
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        n = A.shape[1] if A.ndim == 2 else 0
        return np.eye(n, dtype=np.int64)
    R, pivots = modp_rref(A, p)
    cols = A.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for ri, pc in enumerate(pivots):
            basis[bi, pc] = (-int(R[ri, fc])) % p
    return basis


def modp_rank(A: np.ndarray, p: int) -> int:
    return len(modp_rref(A, p)[1])


def frac_rref(rows):
    """Fraction RREF of a list-of-lists matrix.  Returns (rows, pivots)."""
    A = [[Fraction(x) for x in row] for row in rows]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    r = 0
    pivots = []
    for c in range(nc):
        pivot = next((i for i in range(r, nr) if A[i][c] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(nr):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def frac_kernel(rows, ncols=None):
    if not rows:
        n = ncols or 0
        return [[Fraction(i == j) for j in range(n)] for i in range(n)]
    R, pivots = frac_rref(rows)
    nc = len(rows[0])
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -R[ri][fc]
        basis.append(v)
    return basis


def kernel_basis(rows, char: int, ncols=None):
    """Field-dispatching kernel: rows of raw coefficients."""
    if char:
        if not rows:
            n = ncols or 0
            return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        A = np.array([[int(x) % char for x in row] for row in rows], dtype=np.int64)
        return [list(map(int, v)) for v in modp_kernel(A, char)]
    return [list(v) for v in frac_kernel(rows, ncols=ncols)]


def matrix_rank(rows, char: int) -> int:
    if not rows:
        return 0
    if char:
        A = np.array([[int(x) % char for x in row] for row in rows], dtype=np.int64)
        return modp_rank(A, char)
    return len(frac_rref(rows)[0])


def field_rref(fld, rows):
    """RREF over an arbitrary FieldDesc.  Returns (rows, pivot_columns);
    the input rows are copied, entries are field elements."""
    A = [list(row) for row in rows]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    r = 0
    pivots = []
    for c in range(nc):
        if r == nr:
            break
        pivot = next((i for i in range(r, nr) if not fld.is_zero(A[i][c])), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        inv = fld.inv(A[r][c])
        A[r] = [fld.mul(inv, x) for x in A[r]]
        for i in range(nr):
            if i != r and not fld.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def field_kernel(fld, rows, ncols=None):
    """Right-kernel basis over an arbitrary FieldDesc."""
    nc = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    R, pivots = field_rref(fld, rows) if rows else ([], [])
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [fld.zero for _ in range(nc)]
        v[fc] = fld.one
        for r, pc in enumerate(pivots):
            v[pc] = fld.neg(R[r][fc])
        basis.append(v)
    return basis


def field_inverse(fld, M):
    """Inverse of a square matrix of field elements, or None if singular."""
    n = len(M)
    aug = [list(M[i]) + [fld.one if j == i else fld.zero for j in range(n)]
           for i in range(n)]
    R, pivots = field_rref(fld, aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in R]
