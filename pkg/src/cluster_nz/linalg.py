"""Small dense matrix helpers on lists of lists.

Entries can be Python ints, Fractions, ModP scalars, complex numbers or
RatFuns; nothing here assumes a particular scalar type except where noted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list]


def identity(n: int, one=1, zero=0) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(r: int, c: int, zero=0) -> Matrix:
    return [[zero] * c for _ in range(r)]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x != 0]
        new = []
        for col in bt:
            s = 0
            for k, x in nz:
                y = col[k]
                if y != 0:
                    s = x * y + s
            new.append(s)
        out.append(new)
    return out


def sub(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def add(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def perm_matrix(sigma: Sequence[int]) -> Matrix:
    """P_sigma = (delta_{i, sigma(j)}) for a 1-based one-line permutation."""
    n = len(sigma)
    p = zeros(n, n)
    for j, s in enumerate(sigma):
        p[s - 1][j] = 1
    return p


def det_int(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss fraction-free elimination)."""
    m = [list(r) for r in a]
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            f = ri[k]
            if f == 0:
                if pk != prev:
                    for j in range(k + 1, n):
                        ri[j] = ri[j] * pk // prev
            else:
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * pk - f * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def det_field(a: Sequence[Sequence], one=1):
    """Determinant over a field by Gaussian elimination with nonzero pivoting.

    Suitable for Fraction and ModP entries (exact) and complex/float entries
    (no partial pivoting by magnitude; use numpy for ill-conditioned floats).
    """
    m = [list(r) for r in a]
    n = len(m)
    det = one
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return 0 * one
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        pk = m[k][k]
        det = det * pk
        # a plain int pivot would turn 1/pk into a float
        inv = (one * 0 + 1) / (Fraction(pk) if isinstance(pk, int) and isinstance(one, int) else pk)
        for i in range(k + 1, n):
            f = m[i][k]
            if f != 0:
                f = f * inv
                rk, ri = m[k], m[i]
                for j in range(k + 1, n):
                    ri[j] = ri[j] - f * rk[j]
    return det


def laplace_det(a: Sequence[Sequence], zero=0):
    """Cofactor expansion along the first row; an oracle for tiny matrices."""
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    total = zero
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * laplace_det(minor, zero)
        total = total + term if j % 2 == 0 else total - term
    return total


def is_symmetric(a: Sequence[Sequence]) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def to_tuple(a: Sequence[Sequence]) -> tuple:
    return tuple(tuple(r) for r in a)
