"""Finitely generated abelian groups over exact integers.

Everything here runs on Python ints; there is no floating point anywhere.
Groups are stored in invariant-factor normal form, so equality of two
:class:`AbGroup` values is plain structural equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, prod
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "AbGroup",
    "smith_normal_form",
    "group_from_presentation",
    "group_equal",
    "is_trivial",
    "torsion_order",
]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.entries)}")
        for r in self.entries:
            if len(r) != self.cols:
                raise ValueError(f"row {r!r} does not have {self.cols} entries")
            for x in r:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"matrix entries must be int, got {x!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        entries = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not entries:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(entries[0])
        return cls(len(entries), cols, entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries),
        )

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: IntMatrix) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Diagonalize ``m`` by unimodular row and column operations.

    Returns ``(d, U, V)`` with ``U @ m @ V`` diagonal, diagonal ``d`` of
    length ``min(rows, cols)``, ``d[0] | d[1] | ...`` with all zeros last,
    and nonzero entries positive.
    """
    r, c = m.rows, m.cols
    a = m.to_lists()
    u = _identity(r)
    v = _identity(c)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    x = a[i][j]
                    if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    d = [a[i][i] for i in range(min(r, c))]
    return d, IntMatrix.from_rows(u, r), IntMatrix.from_rows(v, c)


@dataclass(frozen=True, order=True)
class AbGroup:
    """``Z^free_rank`` plus ``Z/d_1 + ... + Z/d_k`` with ``d_1 | ... | d_k``, each ``d_i >= 2``."""

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        fs = self.invariant_factors
        for d in fs:
            if d < 2:
                raise ValueError(f"invariant factors must be >= 2, got {fs}")
        for x, y in zip(fs, fs[1:]):
            if y % x:
                raise ValueError(f"invariant factors must form a divisibility chain, got {fs}")

    @classmethod
    def trivial(cls) -> "AbGroup":
        return cls()

    @classmethod
    def free(cls, rank: int) -> "AbGroup":
        return cls((), rank)

    @classmethod
    def cyclic(cls, n: int) -> "AbGroup":
        """``Z/n``; ``n = 0`` gives ``Z`` and ``n = 1`` the trivial group."""
        return cls.from_cyclic_orders([n])

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int], free_rank: int = 0) -> "AbGroup":
        """Normalize an arbitrary direct sum of cyclic groups (0 meaning ``Z``)."""
        orders = [abs(int(n)) for n in orders]
        n = len(orders)
        if n == 0:
            return cls((), free_rank)
        diag = IntMatrix.from_rows([[orders[i] if i == j else 0 for j in range(n)] for i in range(n)], n)
        g = group_from_presentation(n, diag)
        return cls(g.invariant_factors, g.free_rank + free_rank)

    def __add__(self, other: "AbGroup") -> "AbGroup":
        return AbGroup.from_cyclic_orders(
            self.invariant_factors + other.invariant_factors,
            self.free_rank + other.free_rank,
        )

    def __pow__(self, k: int) -> "AbGroup":
        return reduce(AbGroup.__add__, [self] * k, AbGroup())

    @property
    def torsion(self) -> "AbGroup":
        return AbGroup(self.invariant_factors)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        """Group order, or ``None`` when the group is infinite."""
        return torsion_order(self) if self.is_finite else None

    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def count_killed_by(self, k: int) -> int:
        """Number of torsion elements ``x`` with ``k*x = 0``."""
        return prod(gcd(k, d) for d in self.invariant_factors)

    def half(self) -> "AbGroup | None":
        """Return ``A`` when the torsion part is ``A + A``, else ``None``."""
        fs = self.invariant_factors
        if len(fs) % 2:
            return None
        if any(fs[i] != fs[i + 1] for i in range(0, len(fs), 2)):
            return None
        return AbGroup(fs[::2])

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        i = 0
        fs = self.invariant_factors
        while i < len(fs):
            j = i
            while j < len(fs) and fs[j] == fs[i]:
                j += 1
            k = j - i
            parts.append(f"Z/{fs[i]}" if k == 1 else f"(Z/{fs[i]})^{k}")
            i = j
        return " + ".join(parts) if parts else "0"


def group_from_presentation(generators: int, relations: IntMatrix | Sequence[Sequence[int]]) -> AbGroup:
    """Cokernel of the relation matrix: ``Z^generators`` modulo the row span."""
    if not isinstance(relations, IntMatrix):
        relations = IntMatrix.from_rows(relations, generators)
    if relations.cols != generators:
        raise ValueError(
            f"relation matrix has {relations.cols} columns but there are {generators} generators"
        )
    d, _, _ = smith_normal_form(relations)
    nonzero = [x for x in d if x]
    return AbGroup(tuple(x for x in nonzero if x > 1), generators - len(nonzero))


def group_equal(a: AbGroup, b: AbGroup) -> bool:
    return a == b


def is_trivial(a: AbGroup) -> bool:
    return a.free_rank == 0 and not a.invariant_factors


def torsion_order(a: AbGroup) -> int:
    return prod(a.invariant_factors)
