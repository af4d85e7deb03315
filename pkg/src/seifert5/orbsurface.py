"""Base orbifold surfaces ``(S, Delta)`` as lattice data.

A surface is recorded by its Weil divisor class group ``Weil(S) = Z^s`` with
the rational intersection form, the canonical class, a basis of the Cartier
sublattice ``Pic(S)`` and, for each singular point, the restriction map to
its local class group ``Z/n``.  Branch curves are classes in the same
lattice together with a genus and a multiplicity.

All intersection numbers are :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm, prod
from typing import Iterable, Mapping, Sequence

from . import _qlinalg as ql
from .errors import PreconditionError

__all__ = [
    "SingularPoint",
    "SmoothPoint",
    "BranchCurve",
    "CurveClass",
    "OrbSurface",
    "Violation",
    "LocalMultiplicities",
    "GlobalMultiplicities",
    "LogDelPezzoWitness",
    "validate",
    "validate_branch",
    "local_multiplicities",
    "global_multiplicities",
    "log_canonical_class",
    "is_log_del_pezzo",
    "adjunction_genus",
    "intersecting_pairs",
]


def _freeze_map(m) -> tuple[tuple[str, str], ...]:
    if isinstance(m, Mapping):
        m = m.items()
    return tuple(sorted((str(k), str(v)) for k, v in m))


@dataclass(frozen=True)
class SingularPoint:
    """A cyclic quotient point with local class group ``Z/local_order``.

    ``restriction[i]`` is the image of the i-th Weil basis vector in
    ``Z/local_order``.
    """

    id: str
    local_order: int
    restriction: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "restriction", tuple(int(r) for r in self.restriction))

    def residue(self, v: Sequence[int]) -> int:
        return sum(int(a) * r for a, r in zip(v, self.restriction)) % self.local_order


@dataclass(frozen=True)
class SmoothPoint:
    """A point of the smooth locus, named by the branch curves through it."""

    id: str
    curves: tuple[str, ...] = ()


@dataclass(frozen=True)
class BranchCurve:
    id: str
    degree: tuple[int, ...]
    genus: int
    multiplicity: int
    through_points: frozenset[str] = frozenset()
    # claim -> provenance, e.g. ("orbismooth", "general member of a base point free system")
    attestations: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "degree", tuple(int(x) for x in self.degree))
        object.__setattr__(self, "through_points", frozenset(self.through_points))
        object.__setattr__(self, "attestations", _freeze_map(self.attestations))
        if self.multiplicity < 2:
            raise ValueError(f"curve {self.id}: multiplicity must be >= 2, got {self.multiplicity}")
        if self.genus < 0:
            raise ValueError(f"curve {self.id}: negative genus")

    def attested(self, claim: str) -> str | None:
        return dict(self.attestations).get(claim)

    @property
    def coefficient(self) -> Fraction:
        return 1 - Fraction(1, self.multiplicity)


@dataclass(frozen=True)
class CurveClass:
    """A distinguished curve of a catalog surface, before a multiplicity is chosen."""

    id: str
    degree: tuple[int, ...]
    genus: int
    through_points: frozenset[str] = frozenset()
    attestations: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "degree", tuple(int(x) for x in self.degree))
        object.__setattr__(self, "through_points", frozenset(self.through_points))
        object.__setattr__(self, "attestations", _freeze_map(self.attestations))

    def branch(self, m: int, id: str | None = None) -> BranchCurve:
        return BranchCurve(
            id or self.id, self.degree, self.genus, m, self.through_points, self.attestations
        )


@dataclass(frozen=True)
class OrbSurface:
    name: str
    weil_rank: int
    pairing: tuple[tuple[Fraction, ...], ...]
    canonical: tuple[int, ...]
    pic_basis: tuple[tuple[int, ...], ...]
    singular_points: tuple[SingularPoint, ...] = ()
    ample_cone_tests: tuple[tuple[Fraction, ...], ...] = ()
    # flag -> provenance; known flags: h1_zero, smooth_locus_h1_zero, pi1_orb_trivial
    flags: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pairing", tuple(ql.qvec(r) for r in self.pairing))
        object.__setattr__(self, "canonical", tuple(int(x) for x in self.canonical))
        object.__setattr__(self, "pic_basis", tuple(tuple(int(x) for x in v) for v in self.pic_basis))
        object.__setattr__(self, "singular_points", tuple(self.singular_points))
        object.__setattr__(self, "ample_cone_tests", tuple(ql.qvec(v) for v in self.ample_cone_tests))
        object.__setattr__(self, "flags", _freeze_map(self.flags))

    def dot(self, u, v) -> Fraction:
        return ql.bilinear(self.pairing, u, v)

    def flag(self, name: str) -> str | None:
        return dict(self.flags).get(name)

    def point(self, pid: str) -> SingularPoint:
        for p in self.singular_points:
            if p.id == pid:
                return p
        raise KeyError(pid)

    @property
    def local_orders(self) -> tuple[int, ...]:
        return tuple(p.local_order for p in self.singular_points)

    def pic_gram(self) -> list[list[Fraction]]:
        return [[self.dot(u, v) for v in self.pic_basis] for u in self.pic_basis]

    def pic_coordinates(self, v: Sequence[int]) -> tuple[Fraction, ...]:
        coords = ql.solve_row_combination(self.pic_basis, v)
        if coords is None:
            raise ValueError(f"{v} is not in the span of the Pic basis")
        return coords

    def with_flags(self, **flags: str | None) -> "OrbSurface":
        merged = dict(self.flags)
        for k, v in flags.items():
            if v is None:
                merged.pop(k, None)
            else:
                merged[k] = v
        return replace(self, flags=_freeze_map(merged))


@dataclass(frozen=True)
class Violation:
    rule: str
    detail: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.detail}"


def validate(s: OrbSurface) -> list[Violation]:
    """Check the structural rules of an :class:`OrbSurface`; empty list means valid."""
    out: list[Violation] = []
    n = s.weil_rank

    def bad(rule, detail):
        out.append(Violation(rule, detail))

    if len(s.pairing) != n or any(len(r) != n for r in s.pairing):
        bad("shape", f"pairing must be {n}x{n}")
        return out
    if len(s.canonical) != n:
        bad("shape", f"canonical class must have {n} coordinates")
        return out
    for i in range(n):
        for j in range(i + 1, n):
            if s.pairing[i][j] != s.pairing[j][i]:
                bad("pairing-symmetric", f"entry ({i},{j}) differs from ({j},{i})")
    if n and ql.det(s.pairing) == 0:
        bad("pairing-nondegenerate", "intersection form is degenerate")

    for p in s.singular_points:
        if p.local_order < 2:
            bad("local-order", f"point {p.id} has local order {p.local_order} < 2")
            continue
        if len(p.restriction) != n:
            bad("shape", f"point {p.id} restriction has {len(p.restriction)} entries, expected {n}")
            continue
        if any(not 0 <= r < p.local_order for r in p.restriction):
            bad("restriction-range", f"point {p.id} residues must lie in [0, {p.local_order})")
    ids = [p.id for p in s.singular_points]
    if len(set(ids)) != len(ids):
        bad("point-ids", "duplicate singular point ids")

    for v in s.pic_basis:
        if len(v) != n:
            bad("shape", f"pic basis vector {v} has wrong length")
            return out
    if ql.rank(s.pic_basis) != n or len(s.pic_basis) != n:
        bad("pic-basis-rank", f"pic basis must consist of {n} independent vectors")
    for v in s.pic_basis:
        for p in s.singular_points:
            if len(p.restriction) == n and p.local_order >= 2 and p.residue(v):
                bad(
                    "pic-in-kernel",
                    f"pic basis vector {v} restricts to {p.residue(v)} mod {p.local_order} at {p.id}",
                )
        for i in range(n):
            e = [int(i == j) for j in range(n)]
            x = s.dot(v, e)
            if x.denominator != 1:
                bad("pic-integral", f"pic basis vector {v} meets Weil basis vector {i} in {x}")
        k = s.dot(v, s.canonical)
        if k.denominator != 1:
            bad("canonical-integral", f"K meets pic basis vector {v} in {k}")

    if s.flag("smooth_locus_h1_zero") and not any(v.rule in ("pic-basis-rank", "shape") for v in out):
        d = abs(ql.det(s.pic_gram()))
        expected = prod(s.local_orders)
        if d != expected:
            bad(
                "determinant",
                f"|det(pic pairing)| = {d} but product of local orders is {expected}",
            )
        for p in s.singular_points:
            if len(p.restriction) == n and gcd(p.local_order, *p.restriction) != 1:
                bad("restriction-surjective", f"restriction at {p.id} is not onto Z/{p.local_order}")
    return out


def adjunction_genus(s: OrbSurface, curve: BranchCurve | CurveClass) -> Fraction:
    """Genus of an orbismooth curve from adjunction with the orbifold different."""
    d = curve.degree
    total = s.dot(d, ql.add(s.canonical, d))
    for pid in curve.through_points:
        total -= 1 - Fraction(1, s.point(pid).local_order)
    return total / 2 + 1


def validate_branch(s: OrbSurface, delta: Sequence[BranchCurve]) -> list[Violation]:
    """Consistency rules tying branch curves to the surface lattice."""
    out: list[Violation] = []
    ids = [c.id for c in delta]
    if len(set(ids)) != len(ids):
        out.append(Violation("curve-ids", "duplicate curve ids"))
    known = {p.id for p in s.singular_points}
    for c in delta:
        if len(c.degree) != s.weil_rank:
            out.append(Violation("shape", f"curve {c.id} degree has wrong length"))
            continue
        missing = c.through_points - known
        if missing:
            out.append(Violation("through-points", f"curve {c.id} passes through unknown points {sorted(missing)}"))
            continue
        for p in s.singular_points:
            if p.id not in c.through_points and p.residue(c.degree):
                out.append(
                    Violation(
                        "cartier-away",
                        f"curve {c.id} avoids {p.id} but is not Cartier there (residue {p.residue(c.degree)})",
                    )
                )
        for eta in s.pic_basis:
            x = s.dot(c.degree, eta)
            if x.denominator != 1:
                out.append(Violation("intersection-integral", f"curve {c.id} meets pic vector {eta} in {x}"))
        if c.attested("orbismooth"):
            g = adjunction_genus(s, c)
            if g != c.genus:
                out.append(Violation("adjunction", f"curve {c.id} has genus {c.genus}, adjunction gives {g}"))
    return out


@dataclass(frozen=True)
class LocalMultiplicities:
    M_x_Delta: int
    M_x_X: int
    M_x_X_Delta: int


@dataclass(frozen=True)
class GlobalMultiplicities:
    M_Delta: int
    M_X: int
    M_X_Delta: int


def _incident(delta: Sequence[BranchCurve], x: SingularPoint | SmoothPoint) -> list[BranchCurve]:
    if isinstance(x, SmoothPoint):
        by_id = {c.id: c for c in delta}
        try:
            return [by_id[i] for i in x.curves]
        except KeyError as e:
            raise PreconditionError(f"point {x.id} names unknown curve {e.args[0]}") from None
    return [c for c in delta if x.id in c.through_points]


def local_multiplicities(
    s: OrbSurface, delta: Sequence[BranchCurve], x: SingularPoint | SmoothPoint
) -> LocalMultiplicities:
    curves = _incident(delta, x)
    if len(curves) > 2:
        raise PreconditionError(f"not locally cyclic: {len(curves)} branch curves through {x.id}")
    ms = [c.multiplicity for c in curves]
    for a, b in combinations(ms, 2):
        if gcd(a, b) != 1:
            raise PreconditionError(f"not locally cyclic: multiplicities {a}, {b} meet at {x.id}")
    m_delta = lcm(*ms) if ms else 1
    m_x = x.local_order if isinstance(x, SingularPoint) else 1
    return LocalMultiplicities(m_delta, m_x, m_delta * m_x)


def intersecting_pairs(s: OrbSurface, delta: Sequence[BranchCurve]) -> list[tuple[BranchCurve, BranchCurve]]:
    """Pairs of distinct branch curves that meet (positive intersection number)."""
    return [(a, b) for a, b in combinations(delta, 2) if s.dot(a.degree, b.degree) > 0]


def global_multiplicities(s: OrbSurface, delta: Sequence[BranchCurve]) -> GlobalMultiplicities:
    for a, b in intersecting_pairs(s, delta):
        if gcd(a.multiplicity, b.multiplicity) != 1:
            raise PreconditionError(
                f"not locally cyclic: curves {a.id} and {b.id} meet with multiplicities "
                f"{a.multiplicity}, {b.multiplicity}"
            )
    m_delta = lcm(*(c.multiplicity for c in delta)) if delta else 1
    m_x = lcm(*s.local_orders) if s.singular_points else 1
    m_x_delta = m_delta
    for p in s.singular_points:
        m_x_delta = lcm(m_x_delta, local_multiplicities(s, delta, p).M_x_X_Delta)
    assert (m_delta * m_x) % m_x_delta == 0
    return GlobalMultiplicities(m_delta, m_x, m_x_delta)


def log_canonical_class(s: OrbSurface, delta: Iterable[BranchCurve]) -> tuple[Fraction, ...]:
    """``K_S + sum (1 - 1/m_i) D_i`` in ``Weil(S) (x) Q``."""
    v = ql.qvec(s.canonical)
    for c in delta:
        v = ql.add(v, ql.scale(c.coefficient, c.degree))
    return v


@dataclass(frozen=True)
class LogDelPezzoWitness:
    is_log_del_pezzo: bool
    anti_log_canonical: tuple[Fraction, ...]
    pairings: tuple[Fraction, ...]

    def __bool__(self):
        return self.is_log_del_pezzo


def is_log_del_pezzo(s: OrbSurface, delta: Sequence[BranchCurve]) -> LogDelPezzoWitness:
    """Ampleness of ``-(K + Delta)`` tested against the surface's extremal curve classes."""
    if not s.ample_cone_tests:
        raise PreconditionError(f"ampleness undecidable: {s.name} has no ample cone test classes")
    v = ql.scale(-1, log_canonical_class(s, delta))
    pairs = tuple(s.dot(v, t) for t in s.ample_cone_tests)
    return LogDelPezzoWitness(all(x > 0 for x in pairs), v, pairs)
