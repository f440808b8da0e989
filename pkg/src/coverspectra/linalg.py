"""Exact dense linear algebra over F_p, Q, and cyclotomic fields.

Everything here is plain-list Gaussian elimination; matrices are lists of row
lists.  These routines back the verdict-carrying computations, so no floating
point is allowed anywhere in this module.
"""
from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyclotomic

# ---------------------------------------------------------------------------
# F_p
# ---------------------------------------------------------------------------


def rank_mod(rows: list[list[int]], p: int) -> int:
    if not rows:
        return 0
    mat = [[x % p for x in row] for row in rows]
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [(v * inv) % p for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [(a - f * b) % p for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def rref_mod(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot column indices, over F_p."""
    mat = [[x % p for x in row] for row in rows]
    pivots: list[int] = []
    if not mat:
        return mat, pivots
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [(v * inv) % p for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [(a - f * b) % p for a, b in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    return mat[:rank], pivots


def nullspace_mod(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of the right kernel of the matrix, vectors of length ncols."""
    if not rows:
        return [[1 if j == i else 0 for j in range(ncols)] for i in range(ncols)]
    rref, pivots = rref_mod(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-rref[r][fc]) % p
        basis.append(vec)
    return basis


def solve_mod(rows: list[list[int]], rhs: list[int], p: int) -> list[int] | None:
    """One solution of rows * x = rhs over F_p, or None if inconsistent."""
    if not rows:
        return [] if all(v % p == 0 for v in rhs) else None
    ncols = len(rows[0])
    aug = [[x % p for x in row] + [rhs[i] % p] for i, row in enumerate(rows)]
    rref, pivots = rref_mod(aug, p)
    for row in rref:
        if all(v == 0 for v in row[:ncols]) and row[ncols] % p:
            return None
    x = [0] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = rref[r][ncols]
    return x


def mat_mul_mod(a: list[list[int]], b: list[list[int]], p: int) -> list[list[int]]:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t] % p
            if c:
                bt = b[t]
                for j in range(m):
                    oi[j] = (oi[j] + c * bt[j]) % p
    return out


def mat_vec_mod(a: list[list[int]], v: list[int], p: int) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) % p for row in a]


def identity_mod(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# Q
# ---------------------------------------------------------------------------


def rank_frac(rows: list[list[Fraction]]) -> int:
    if not rows:
        return 0
    mat = [[Fraction(x) for x in row] for row in rows]
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(rank + 1, len(mat)):
            if mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def mat_mul_frac(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            c = a[i][t]
            if c:
                bt = b[t]
                oi = out[i]
                for j in range(m):
                    oi[j] += c * bt[j]
    return out


def mat_vec_frac(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


# ---------------------------------------------------------------------------
# Cyclotomic
# ---------------------------------------------------------------------------


def kernel_dim_cyclo(rows: list[list[Cyclotomic]], ncols: int) -> int:
    """Dimension of the right kernel of a matrix with cyclotomic entries."""
    mat = [list(row) for row in rows]
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if not mat[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = mat[rank][col].inverse()
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(rank + 1, len(mat)):
            if not mat[r][col].is_zero():
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return ncols - rank
