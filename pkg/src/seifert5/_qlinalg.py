"""Small exact linear algebra over Fraction, enough for rank <= 10 lattices."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vec = tuple


def qvec(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def bilinear(gram: Sequence[Sequence[Fraction]], u, v) -> Fraction:
    return sum((Fraction(u[i]) * gram[i][j] * v[j] for i in range(len(u)) for j in range(len(v)) if u[i] and v[j]), Fraction(0))


def det(m: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        result *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return result


def rank(rows: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    rk, ncols = 0, len(a[0])
    for c in range(ncols):
        p = next((r for r in range(rk, len(a)) if a[r][c]), None)
        if p is None:
            continue
        a[rk], a[p] = a[p], a[rk]
        for r in range(len(a)):
            if r != rk and a[r][c]:
                f = a[r][c] / a[rk][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rk])]
        rk += 1
    return rk


def solve_row_combination(basis: Sequence[Sequence], target) -> tuple[Fraction, ...] | None:
    """Coefficients ``x`` with ``sum(x[i] * basis[i]) == target``, or None.

    ``basis`` rows must be linearly independent.
    """
    k = len(basis)
    n = len(target)
    # augmented system: columns are the basis vectors
    a = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(target[j])] for j in range(n)]
    row = 0
    pivots = []
    for c in range(k):
        p = next((r for r in range(row, n) if a[r][c]), None)
        if p is None:
            raise ValueError("basis vectors are linearly dependent")
        a[row], a[p] = a[p], a[row]
        piv = a[row][c]
        a[row] = [x / piv for x in a[row]]
        for r in range(n):
            if r != row and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(c)
        row += 1
    if any(a[r][k] for r in range(row, n)):
        return None
    return tuple(a[i][k] for i in range(k))


def content(v: Sequence[int]) -> int:
    """gcd of the coordinates of an integer vector (0 for the zero vector)."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def as_int_vector(v) -> tuple[int, ...] | None:
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            return None
        out.append(x.numerator)
    return tuple(out)


def proportional(u, v) -> bool:
    """True when one of ``u``, ``v`` is a rational multiple of the other."""
    return rank([u, v]) <= 1
