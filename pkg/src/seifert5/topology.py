"""Topological criteria on the base orbifold.

* ``H_1(S^0, Z) = 0`` for the smooth locus, via the determinant of the
  intersection form on ``Pic(S)``.
* The abelian orbifold fundamental group ``H_1^orb(S, Delta)`` from its
  presentation on one generator per branch curve.
* The mod-p cover obstruction and the Calabi-Yau branch check built on it.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Sequence

from . import _qlinalg as ql
from .abgroup import AbGroup, IntMatrix, group_from_presentation, is_trivial, smith_normal_form
from .errors import PreconditionError, ValidationError
from .orbsurface import BranchCurve, OrbSurface, Violation, log_canonical_class

__all__ = [
    "SmoothLocusCertificate",
    "OrbH1Report",
    "CYVerdict",
    "h1_smooth_locus_trivial",
    "h1_orb",
    "rho1_h1orb_zero",
    "p_cover_obstruction",
    "p_cover_witness",
    "cy_branch_check",
    "integral_intersection",
]


@dataclass(frozen=True)
class SmoothLocusCertificate:
    trivial: bool
    pic_determinant: int
    local_order_product: int

    def __bool__(self):
        return self.trivial


def h1_smooth_locus_trivial(s: OrbSurface) -> SmoothLocusCertificate:
    """Decide ``H_1(S^0, Z) = 0`` for a surface with ``H_1(S, Z) = 0``."""
    if not s.pic_basis:
        if s.weil_rank == 0:
            return SmoothLocusCertificate(True, 1, prod(s.local_orders))
        raise PreconditionError(f"{s.name}: missing Pic basis")
    if not s.flag("h1_zero"):
        raise PreconditionError(f"{s.name}: H_1(S, Z) = 0 is not attested")
    d = abs(ql.det(s.pic_gram()))
    if d.denominator != 1:
        raise ValidationError([Violation("pic-integral", f"{s.name}: Pic pairing has determinant {d}")])
    n = prod(s.local_orders)
    return SmoothLocusCertificate(d == n, int(d), n)


def integral_intersection(s: OrbSurface, u, v, what: str = "") -> int:
    x = s.dot(u, v)
    if x.denominator != 1:
        raise ValidationError(
            [Violation("intersection-integral", f"{what or 'intersection'} {u}.{v} = {x} is not an integer")]
        )
    return x.numerator


@dataclass(frozen=True)
class OrbH1Report:
    group: AbGroup
    presentation: IntMatrix
    prerequisites_met: bool

    @property
    def trivial(self) -> bool:
        return is_trivial(self.group)


def h1_orb(s: OrbSurface, delta: Sequence[BranchCurve]) -> OrbH1Report:
    """``H_1^orb(S, Delta)``: generators ``g_j``, relations ``m_j g_j`` and ``sum_j (D_j . eta) g_j``."""
    if not h1_smooth_locus_trivial(s):
        raise PreconditionError(f"{s.name}: H_1(S^0) != 0, the curve presentation does not apply")
    n = len(delta)
    rows = []
    for j, c in enumerate(delta):
        rows.append([c.multiplicity if i == j else 0 for i in range(n)])
    for eta in s.pic_basis:
        rows.append([integral_intersection(s, c.degree, eta, f"curve {c.id} with Pic") for c in delta])
    rel = IntMatrix.from_rows(rows, n)
    return OrbH1Report(group_from_presentation(n, rel), rel, True)


def rho1_h1orb_zero(s: OrbSurface, delta: Sequence[BranchCurve]) -> bool:
    """Coprimality form of ``H_1^orb = 0`` on a Picard-number-one base."""
    if s.weil_rank != 1:
        raise PreconditionError(f"{s.name}: weil_rank is {s.weil_rank}, expected 1")
    if not h1_smooth_locus_trivial(s):
        return False
    ms = [c.multiplicity for c in delta]
    if any(gcd(a, b) != 1 for i, a in enumerate(ms) for b in ms[i + 1:]):
        return False
    return all(gcd(c.multiplicity, c.degree[0]) == 1 for c in delta)


def _rank_mod_p(rows: list[list[int]], ncols: int, p: int) -> int:
    if not rows:
        return 0
    d, _, _ = smith_normal_form(IntMatrix.from_rows(rows, ncols))
    return sum(1 for x in d if x % p)


def p_cover_obstruction(s: OrbSurface, delta: Sequence[BranchCurve], p: int) -> bool:
    """True when some ``sum a_i D_i`` over curves with ``p | m_i`` lies in ``p Weil(S)`` with not all ``a_i = 0 mod p``.

    A true result forces ``H_1^orb(S, Delta)`` to have nontrivial p-part.
    """
    rows = [list(c.degree) for c in delta if c.multiplicity % p == 0]
    return _rank_mod_p(rows, s.weil_rank, p) < len(rows)


def p_cover_witness(s: OrbSurface, delta: Sequence[BranchCurve], p: int) -> dict[str, int] | None:
    """Coefficients ``a_i`` realizing the obstruction, or None."""
    curves = [c for c in delta if c.multiplicity % p == 0]
    if not curves:
        return None
    rows = [list(c.degree) for c in curves]
    d, u, _ = smith_normal_form(IntMatrix.from_rows(rows, s.weil_rank))
    # rows of U beyond the mod-p rank give combinations of the degree vectors
    # that are zero mod p; pick the first that is nonzero mod p
    rank = sum(1 for x in d if x % p)
    for i in range(rank, len(curves)):
        coeffs = u.entries[i]
        if any(a % p for a in coeffs):
            return {c.id: a for c, a in zip(curves, coeffs)}
    return None


@dataclass(frozen=True)
class CYVerdict:
    consistent: bool
    prime: int | None = None
    witness: dict | None = None
    obstruction: bool = False

    def __str__(self):
        if self.consistent:
            return "consistent: empty branch divisor"
        return f"obstructed at p={self.prime}: {self.witness} lies in p*Weil, so H_1^orb != 0"


def cy_branch_check(s: OrbSurface, delta: Sequence[BranchCurve]) -> CYVerdict:
    """A Calabi-Yau orbifold base of a bundle with ``H_1 = 0`` has empty branch divisor."""
    k = log_canonical_class(s, delta)
    basis = s.pic_basis or tuple(tuple(int(i == j) for j in range(s.weil_rank)) for i in range(s.weil_rank))
    if any(s.dot(k, eta) != 0 for eta in basis):
        raise PreconditionError(f"not Calabi-Yau input: K + Delta is not numerically trivial on {s.name}")
    if not delta:
        return CYVerdict(True)
    big_m = lcm(*(c.multiplicity for c in delta))
    p = min(q for q in range(2, big_m + 1) if big_m % q == 0)
    e = 1
    while big_m % p ** (e + 1) == 0:
        e += 1
    # M (K + sum D_i) = sum (M/m_i) D_i; every term with p^e not dividing m_i is divisible by p
    chosen = [c for c in delta if c.multiplicity % p ** e == 0]
    witness = {c.id: big_m // c.multiplicity for c in chosen}
    combo = [sum(witness[c.id] * c.degree[i] for c in chosen) for i in range(s.weil_rank)]
    assert all(x % p == 0 for x in combo), "witness combination must be divisible by p"
    return CYVerdict(False, p, witness, p_cover_obstruction(s, delta, p))
