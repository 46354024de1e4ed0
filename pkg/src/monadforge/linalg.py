"""Exact Gaussian elimination over Q or F_p, plus a batched mod-p rank in numpy."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def to_mod(c, p: int) -> int:
    c = Fraction(c)
    if c.denominator % p == 0:
        raise ZeroDivisionError(f"denominator {c.denominator} vanishes mod {p}")
    return c.numerator * pow(c.denominator, -1, p) % p


def _prepare(matrix: Sequence[Sequence], p: int | None) -> list[list]:
    if p is None:
        return [[Fraction(x) for x in row] for row in matrix]
    return [[to_mod(x, p) for x in row] for row in matrix]


def row_echelon(matrix: Sequence[Sequence], p: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns.  Input is not modified."""
    m = _prepare(matrix, p)
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if p is None:
            inv = 1 / lead
            m[r] = [x * inv for x in m[r]]
        else:
            inv = pow(lead, -1, p)
            m[r] = [x * inv % p for x in m[r]]
        row_r = m[r]
        for i in range(n_rows):
            if i != r and m[i][c]:
                fac = m[i][c]
                if p is None:
                    m[i] = [a - fac * b for a, b in zip(m[i], row_r)]
                else:
                    m[i] = [(a - fac * b) % p for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(matrix: Sequence[Sequence], p: int | None = None) -> int:
    if not matrix or not len(matrix[0]):
        return 0
    return len(row_echelon(matrix, p)[1])


def nullspace(matrix: Sequence[Sequence], p: int | None = None, n_cols: int | None = None) -> list[list]:
    """Basis of ``{v : M v = 0}``, one vector per free column."""
    if n_cols is None:
        n_cols = len(matrix[0]) if matrix else 0
    if not matrix:
        one = Fraction(1) if p is None else 1
        zero = Fraction(0) if p is None else 0
        return [[one if i == j else zero for i in range(n_cols)] for j in range(n_cols)]
    rref, pivots = row_echelon(matrix, p)
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0) if p is None else 0] * n_cols
        v[fc] = Fraction(1) if p is None else 1
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][fc] if p is None else (-rref[r][fc]) % p
        basis.append(v)
    return basis


def batched_rank_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices (shape ``(N, r, c)``) over ``F_p``.

    Row-by-row elimination: each row picks its first nonzero column as pivot
    and clears it from the rows below.  Requires ``p < 2**31`` so products fit
    in int64.
    """
    if p >= 2**31:
        raise ValueError("batched rank needs p < 2**31")
    a = np.asarray(mats, dtype=np.int64) % p
    if a.ndim != 3:
        raise ValueError("expected a 3-d stack of matrices")
    if a.shape[1] > a.shape[2]:
        a = np.transpose(a, (0, 2, 1)).copy()
    n, r, c = a.shape
    ranks = np.zeros(n, dtype=np.int64)
    if r == 0 or c == 0:
        return ranks
    idx = np.arange(n)
    for i in range(r):
        row = a[:, i, :]
        nz = row != 0
        has = nz.any(axis=1)
        ranks += has
        if i == r - 1:
            break
        col = np.argmax(nz, axis=1)
        lead = row[idx, col]
        inv = _inv_mod(np.where(has, lead, 1), p)
        below = a[:, i + 1:, :]
        fac = below[idx, :, col] * inv[:, None] % p  # (n, r-i-1)
        fac[~has] = 0
        below -= fac[:, :, None] * row[:, None, :] % p
        below %= p
    return ranks


def _inv_mod(x: np.ndarray, p: int) -> np.ndarray:
    result = np.ones_like(x)
    base = x % p
    e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result
