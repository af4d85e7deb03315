"""Seifert bundles over orbifold surfaces and the integral cohomology of their total space.

A bundle is given by its classifying data: a Weil class ``B`` and for every
branch curve an integer ``0 <= b_i < m_i`` prime to ``m_i``.  Its Chern class
is ``c_1 = B + sum (b_i/m_i) D_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Mapping, Sequence

from . import _qlinalg as ql
from .abgroup import AbGroup, IntMatrix, group_from_presentation
from .errors import ConsistencyError, PreconditionError
from .orbsurface import (
    BranchCurve,
    OrbSurface,
    global_multiplicities,
    local_multiplicities,
    log_canonical_class,
)
from .topology import h1_orb, h1_smooth_locus_trivial, integral_intersection

__all__ = [
    "SeifertData",
    "ChernData",
    "PointSmoothness",
    "SmoothnessReport",
    "CohomologyTable",
    "chern_class",
    "is_smooth",
    "h1_total_space",
    "h1_presentation",
    "fiber_order_bound",
    "cohomology",
    "w2_report",
    "flip_orientation",
    "bundles_with_chern_class",
    "anticanonical_bundle",
]


@dataclass(frozen=True)
class SeifertData:
    base: OrbSurface
    delta: tuple[BranchCurve, ...]
    B: tuple[int, ...]
    b: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(self.delta))
        object.__setattr__(self, "B", tuple(int(x) for x in self.B))
        b = self.b.items() if isinstance(self.b, Mapping) else self.b
        object.__setattr__(self, "b", tuple(sorted((str(k), int(v)) for k, v in b)))
        if len(self.B) != self.base.weil_rank:
            raise ValueError(f"B has {len(self.B)} coordinates, Weil rank is {self.base.weil_rank}")
        bmap = dict(self.b)
        if set(bmap) != {c.id for c in self.delta}:
            raise ValueError(f"b must be given for exactly the branch curves {[c.id for c in self.delta]}")
        for c in self.delta:
            bi = bmap[c.id]
            if not 0 <= bi < c.multiplicity or gcd(bi, c.multiplicity) != 1:
                raise ValueError(f"b[{c.id}] = {bi} must lie in [0, {c.multiplicity}) and be prime to it")

    def b_of(self, cid: str) -> int:
        return dict(self.b)[cid]


def flip_orientation(sd: SeifertData) -> SeifertData:
    """The bundle with Chern class ``-c_1`` (circle orientation reversed), renormalized."""
    new_b = {c.id: c.multiplicity - sd.b_of(c.id) for c in sd.delta}
    new_B = tuple(-x for x in sd.B)
    for c in sd.delta:
        new_B = tuple(x - d for x, d in zip(new_B, c.degree))
    return SeifertData(sd.base, sd.delta, new_B, new_b)


@dataclass(frozen=True)
class ChernData:
    c1: tuple[Fraction, ...]
    M_Delta: int
    M_X_Delta: int
    weil_multiple: tuple[int, ...]       # M(Delta) c_1 in Weil(S)
    pic_multiple: tuple[int, ...]        # M(X,Delta) c_1 in Pic(S), pic-basis coordinates
    local: tuple[tuple[str, int, int, int], ...]  # (point, M(x,Delta), residue, local order)


def _local_multiple(sd: SeifertData, point) -> tuple[int, tuple[int, ...]]:
    s = sd.base
    m_x = local_multiplicities(s, sd.delta, point).M_x_Delta
    v = tuple(m_x * x for x in sd.B)
    for c in sd.delta:
        if point.id in c.through_points:
            k = m_x // c.multiplicity * sd.b_of(c.id)
            v = tuple(a + k * d for a, d in zip(v, c.degree))
    return m_x, v


def chern_class(sd: SeifertData) -> ChernData:
    s = sd.base
    c1 = ql.qvec(sd.B)
    for c in sd.delta:
        c1 = ql.add(c1, ql.scale(Fraction(sd.b_of(c.id), c.multiplicity), c.degree))
    gm = global_multiplicities(s, sd.delta)
    weil = ql.as_int_vector(ql.scale(gm.M_Delta, c1))
    assert weil is not None
    pic_vec = ql.as_int_vector(ql.scale(gm.M_X_Delta, c1))
    coords = ql.as_int_vector(s.pic_coordinates(pic_vec))
    if coords is None:
        raise ConsistencyError(
            f"M(X,Delta) c_1 = {pic_vec} is not in the Pic lattice of {s.name}; check through_points data"
        )
    local = []
    for p in s.singular_points:
        m_x, v = _local_multiple(sd, p)
        local.append((p.id, m_x, p.residue(v), p.local_order))
    return ChernData(c1, gm.M_Delta, gm.M_X_Delta, weil, coords, tuple(local))


@dataclass(frozen=True)
class PointSmoothness:
    point: str
    local_order: int
    residue: int
    smooth: bool


@dataclass(frozen=True)
class SmoothnessReport:
    points: tuple[PointSmoothness, ...]

    @property
    def smooth(self) -> bool:
        return all(p.smooth for p in self.points)

    def __bool__(self):
        return self.smooth


def is_smooth(sd: SeifertData) -> SmoothnessReport:
    """Smooth over a singular point iff ``M(x,Delta) c_1`` generates the local class group there.

    Over smooth points of the base (including transversal crossings of branch
    curves with coprime multiplicities) the local class group is trivial, so
    only singular points are reported.
    """
    out = []
    for pid, _, r, n in chern_class(sd).local:
        out.append(PointSmoothness(pid, n, r, gcd(r, n) == 1))
    return SmoothnessReport(tuple(out))


def h1_presentation(sd: SeifertData) -> IntMatrix:
    """Relations on ``(k, g_1, ..., g_n)``: ``m_i g_i + b_i k`` and ``(B.eta) k - sum (D_i.eta) g_i``."""
    s = sd.base
    n = len(sd.delta)
    rows = []
    for i, c in enumerate(sd.delta):
        rows.append([sd.b_of(c.id)] + [c.multiplicity if j == i else 0 for j in range(n)])
    for eta in s.pic_basis:
        rows.append(
            [integral_intersection(s, sd.B, eta, "B with Pic")]
            + [-integral_intersection(s, c.degree, eta, f"curve {c.id} with Pic") for c in sd.delta]
        )
    return IntMatrix.from_rows(rows, n + 1)


def h1_total_space(sd: SeifertData) -> AbGroup:
    if not h1_smooth_locus_trivial(sd.base):
        raise PreconditionError(f"{sd.base.name}: H_1(S^0) != 0")
    return group_from_presentation(len(sd.delta) + 1, h1_presentation(sd))


def fiber_order_bound(sd: SeifertData) -> int:
    """``d(Y)``: the divisibility of ``M(Delta) c_1`` in ``Weil(S)``; it annihilates the fibre class."""
    d = ql.content(chern_class(sd).weil_multiple)
    if d == 0:
        raise PreconditionError("c_1 = 0, d undefined")
    return d


@dataclass(frozen=True)
class CohomologyTable:
    H: tuple[AbGroup, ...]   # H^0 .. H^5
    d: int
    s: int

    def __getitem__(self, i: int) -> AbGroup:
        return self.H[i]

    def homology(self, i: int) -> AbGroup:
        """``H_i`` by Poincare duality ``H_i = H^{5-i}``."""
        return self.H[5 - i]

    def rows(self):
        return [(f"H^{i}", str(g)) for i, g in enumerate(self.H)]


def cohomology(sd: SeifertData) -> CohomologyTable:
    """The integral cohomology table of the total space.

    Requires ``H_1^orb(S, Delta) = 0``, a smooth total space and ``c_1 != 0``.
    The divisibility ``d`` is computed twice, in ``Weil(S)`` and in
    ``Pic(S)``; disagreement means the input data is inconsistent.
    """
    s = sd.base
    orb = h1_orb(s, sd.delta)
    if not orb.trivial:
        raise PreconditionError(f"H_1^orb = {orb.group} is not trivial")
    smooth = is_smooth(sd)
    if not smooth:
        bad = [p.point for p in smooth.points if not p.smooth]
        raise PreconditionError(f"total space is singular over {bad}")
    ch = chern_class(sd)
    d_w = ql.content(ch.weil_multiple)
    if d_w == 0:
        raise PreconditionError("c_1 = 0: total space is not rationally 1-connected")
    d_p = ql.content(ch.pic_multiple)
    if d_w != d_p:
        raise ConsistencyError(f"divisibility in Weil ({d_w}) differs from divisibility in Pic ({d_p})")
    rank = s.weil_rank
    h2 = AbGroup.free(rank - 1) + AbGroup.cyclic(d_w)
    tors3 = AbGroup()
    for c in sd.delta:
        tors3 = tors3 + AbGroup.cyclic(c.multiplicity) ** (2 * c.genus)
    h3 = AbGroup.free(rank - 1) + tors3
    table = (AbGroup.free(1), AbGroup(), h2, h3, AbGroup.cyclic(d_w), AbGroup.free(1))
    return CohomologyTable(table, d_w, rank)


def w2_report(sd: SeifertData) -> bool:
    """True when ``K + Delta`` is a rational multiple of ``c_1``; with ``H_1 = 0`` this kills ``w_2``."""
    k = log_canonical_class(sd.base, sd.delta)
    c1 = chern_class(sd).c1
    if not any(c1):
        return not any(k)
    return ql.proportional(k, c1)


def bundles_with_chern_class(
    s: OrbSurface, delta: Sequence[BranchCurve], c1: Sequence[Fraction]
) -> list[SeifertData]:
    """All classifying data over ``(s, delta)`` with the given Chern class.

    Searches the ``b_i`` exhaustively; ``B`` is then forced.
    """
    c1 = ql.qvec(c1)
    ranges = [[b for b in range(c.multiplicity) if gcd(b, c.multiplicity) == 1] for c in delta]
    out = []
    for bs in product(*ranges):
        rest = c1
        for c, b in zip(delta, bs):
            rest = ql.add(rest, ql.scale(Fraction(-b, c.multiplicity), c.degree))
        B = ql.as_int_vector(rest)
        if B is not None:
            out.append(SeifertData(s, tuple(delta), B, {c.id: b for c, b in zip(delta, bs)}))
    return out


def anticanonical_bundle(s: OrbSurface, delta: Sequence[BranchCurve]) -> SeifertData:
    """The bundle with ``c_1`` a positive multiple of ``-(K + Delta)`` and ``M(Delta) c_1`` primitive.

    Such a bundle has ``K + Delta`` proportional to ``c_1``; it is the
    natural choice when the base has Weil rank above one.
    """
    k = ql.scale(-1, log_canonical_class(s, delta))
    v = ql.as_int_vector(ql.scale(lcm(*(c.multiplicity for c in delta)), k))
    if v is None:
        raise PreconditionError("M(Delta)(K + Delta) is not integral")
    if not any(v):
        raise PreconditionError("K + Delta = 0: no positive multiple to use")
    c1 = ql.scale(Fraction(1, ql.content(v)), k)
    found = bundles_with_chern_class(s, delta, c1)
    if len(found) != 1:
        raise PreconditionError(f"expected exactly one bundle with c_1 = {c1}, found {len(found)}")
    return found[0]
