"""Classification lists: Del Pezzo deformation types, allowed torsion, genus bounds.

Deformation types ``B_{m_1...m_k} S`` are purely combinatorial: a base
surface together with the multiset of blow-up types performed at points of a
smooth anticanonical elliptic curve.  A blow-up of type ``m`` lowers ``K^2``
by ``m`` and, for ``m >= 2``, creates an ``A_{m-1}`` point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .abgroup import AbGroup, is_trivial
from .catalog import catalog
from .errors import PreconditionError
from .orbsurface import BranchCurve, is_log_del_pezzo
from .rhs import check_rhs_conditions, construct
from .seifert import anticanonical_bundle, cohomology, h1_total_space
from .topology import h1_orb, p_cover_obstruction

__all__ = [
    "BASES",
    "DeformationType",
    "partitions",
    "enumerate_del_pezzo",
    "raw_blowup_types",
    "canonicalize",
    "TorsionVerdict",
    "torsion_allowed",
    "genus_bound",
    "ManifoldId",
    "identify_manifold",
    "BoundaryEntry",
    "BoundaryCheck",
    "nonrational_boundary_catalog",
    "verify_boundary_entry",
]


@dataclass(frozen=True)
class BaseInfo:
    name: str
    k_squared: int
    picard: int
    singularities: tuple[str, ...]
    min_blowup: int


BASES = {
    "P123": BaseInfo("P123", 6, 1, ("A1", "A2"), 2),
    "Q": BaseInfo("Q", 8, 1, ("A1",), 2),
    "P2": BaseInfo("P2", 9, 1, (), 2),
    "P1xP1": BaseInfo("P1xP1", 8, 2, (), 1),
    "S5": BaseInfo("S5", 5, 1, ("A4",), 1),
}

# the only types whose canonical form keeps a blow-up not allowed by the family rule
EXCEPTIONAL = (("S5", ()), ("S5", (3,)), ("S5", (4,)), ("P2", (1,)))


@dataclass(frozen=True, order=True)
class DeformationType:
    base: str
    blowups: tuple[int, ...]
    k_squared_remaining: int = field(compare=False)
    singularity_profile: tuple[str, ...] = field(compare=False)
    picard_number: int = field(compare=False)

    @classmethod
    def make(cls, base: str, blowups: Sequence[int]) -> "DeformationType":
        info = BASES[base]
        bl = tuple(sorted(blowups, reverse=True))
        if any(m < 1 for m in bl):
            raise ValueError(f"blow-up types must be positive, got {bl}")
        ks = info.k_squared - sum(bl)
        if ks <= 0:
            raise ValueError(f"B_{bl}{base} is not Del Pezzo: sum of blow-up types must be < {info.k_squared}")
        sing = tuple(sorted(info.singularities + tuple(f"A{m - 1}" for m in bl if m >= 2),
                            key=lambda s: (int(s[1:]), s)))
        return cls(base, bl, ks, sing, info.picard + len(bl))

    @property
    def family(self) -> str:
        return "exceptional" if (self.base, self.blowups) in EXCEPTIONAL else self.base

    @property
    def singularity_minus_picard(self) -> int:
        return len(self.singularity_profile) - self.picard_number

    @property
    def name(self) -> str:
        if not self.blowups:
            return self.base
        return "B_{" + ",".join(map(str, self.blowups)) + "}" + self.base


def partitions(n: int, min_part: int = 1, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` into parts in ``[min_part, max_part]``, non-increasing."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), min_part - 1, -1):
        for rest in partitions(n - first, min_part, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_del_pezzo() -> tuple[DeformationType, ...]:
    """Del Pezzo surfaces with cyclic Du Val singularities and ``H_1^orb = 0``, up to deformation."""
    out = []
    for base in ("P123", "Q", "P2", "P1xP1"):
        info = BASES[base]
        for total in range(info.k_squared):
            for p in partitions(total, info.min_blowup):
                out.append(DeformationType.make(base, p))
    out.extend(DeformationType.make(b, bl) for b, bl in EXCEPTIONAL if (b, bl) != ("P2", (1,)))
    out.append(DeformationType.make("P2", (1,)))
    return tuple(out)


def raw_blowup_types() -> Iterator[DeformationType]:
    """Every ``B_{m...}S`` over the five bases with ``m_i >= 1``, before identifying isomorphic types."""
    for base, info in BASES.items():
        for total in range(info.k_squared):
            for p in partitions(total, 1):
                yield DeformationType.make(base, p)


def canonicalize(t: DeformationType) -> DeformationType:
    """Rewrite a blow-up type into its representative in :func:`enumerate_del_pezzo`.

    Uses the isomorphisms ``B_1 P123 = B_3 Q``, ``B_1 Q = B_2 P2``,
    ``B_{m,1} P2 = B_m P1xP1``, ``B_1 S5 = B_5 P2`` and ``B_2 S5 = B_5 Q``;
    each one preserves ``K^2`` and the singularities.
    """
    base, bl = t.base, list(t.blowups)
    while True:
        if base == "P123" and 1 in bl:
            bl.remove(1)
            base, bl = "Q", bl + [3]
        elif base == "Q" and 1 in bl:
            bl.remove(1)
            base, bl = "P2", bl + [2]
        elif base == "P2" and 1 in bl and len(bl) >= 2:
            bl.remove(1)
            base = "P1xP1"
        elif base == "S5" and 1 in bl:
            bl.remove(1)
            base, bl = "P2", bl + [5]
        elif base == "S5" and 2 in bl:
            bl.remove(2)
            base, bl = "Q", bl + [5]
        else:
            return DeformationType.make(base, bl)


@dataclass(frozen=True)
class TorsionVerdict:
    allowed: bool
    clause: int | None
    reason: str

    def __bool__(self):
        return self.allowed


def torsion_allowed(t: AbGroup) -> TorsionVerdict:
    """Is ``t`` a possible torsion of ``H_2`` for a positive Seifert bundle with ``H_1 = 0``?

    Allowed shapes: (1) ``(Z/m)^2``; (2) ``(Z/5)^4``, ``(Z/4)^4``;
    (3) ``(Z/3)^4``, ``(Z/3)^6``, ``(Z/3)^8``; (4) ``(Z/2)^{2n}``.
    """
    if not t.is_finite:
        raise PreconditionError(f"{t} is not a torsion group")
    fs = t.invariant_factors
    if not fs:
        return TorsionVerdict(True, 1, "trivial group, (Z/m)^2 with m = 1")
    if len(fs) == 2 and fs[0] == fs[1]:
        return TorsionVerdict(True, 1, f"(Z/m)^2 with m = {fs[0]}")
    if len(set(fs)) == 1:
        p, k = fs[0], len(fs)
        if p in (4, 5) and k == 4:
            return TorsionVerdict(True, 2, f"(Z/{p})^4 from a genus 2 branch curve")
        if p == 3 and k in (4, 6, 8):
            return TorsionVerdict(True, 3, f"(Z/3)^{k} from a genus {k // 2} branch curve")
        if p == 2 and k % 2 == 0:
            return TorsionVerdict(True, 4, f"(Z/2)^{k}")
    return TorsionVerdict(False, None, f"{t} matches none of the allowed shapes")


def genus_bound(a0: Fraction) -> int | None:
    """Largest possible genus of a non-rational boundary curve with coefficient ``a0``.

    ``None`` means this rule gives no bound (``a0 < 2/3``).
    """
    a0 = Fraction(a0)
    if a0 < Fraction(1, 2) or a0 > 1:
        raise PreconditionError(f"coefficient {a0} outside [1/2, 1]")
    if a0 >= Fraction(5, 6):
        return 1
    if a0 >= Fraction(3, 4):
        return 2
    if a0 >= Fraction(2, 3):
        return 4
    return None


@dataclass(frozen=True)
class ManifoldId:
    description: str
    free_rank: int
    torsion_half: AbGroup


def identify_manifold(h2: AbGroup, w2_zero: bool, simply_connected: bool) -> ManifoldId:
    """Name a simply connected spin 5-manifold from ``H_2``.

    ``M_k`` denotes the manifold with ``H_2 = (Z/k)^2``; the answer is a
    connected sum of ``S^2 x S^3`` copies and one ``M_{d_i}`` for each
    invariant factor ``d_i`` of ``A`` where ``tors H_2 = A + A``.
    """
    if not simply_connected:
        raise PreconditionError("classification needs a simply connected manifold")
    if not w2_zero:
        raise PreconditionError("classification used here needs w_2 = 0")
    half = h2.torsion.half()
    if half is None:
        raise PreconditionError(f"not realizable by Smale's theorem: torsion of {h2} is not of the form A + A")
    if is_trivial(h2):
        return ManifoldId("S^5", 0, half)
    parts = []
    if h2.free_rank:
        parts.append("S^2 x S^3" if h2.free_rank == 1 else f"#{h2.free_rank} (S^2 x S^3)")
    parts.extend(f"M_{d}" for d in half.invariant_factors)
    return ManifoldId(" # ".join(parts), h2.free_rank, half)


@dataclass(frozen=True)
class BoundaryEntry:
    label: str
    surface: str
    branch: tuple[tuple[str, int], ...]   # (curve id, m)
    genus: int
    torsion: AbGroup | None                # torsion of H_2 of the bundle with H_1 = 0
    obstruction: int | None = None         # prime p with a p-cover obstruction
    note: str = ""

    def delta(self) -> list[BranchCurve]:
        e = catalog(self.surface)
        return [e.curve(cid).branch(m) for cid, m in self.branch]


def nonrational_boundary_catalog() -> list[BoundaryEntry]:
    """Log Del Pezzo orbifolds whose boundary contains a curve of positive genus."""
    out = [
        BoundaryEntry("(F3, 4/5 C)", "F3", (("quadric_section", 5),), 2, AbGroup((5,) * 4),
                      note="C a quadric section of the cone over the rational cubic"),
        BoundaryEntry("(F3, 3/4 C)", "F3", (("quadric_section", 4),), 2, None, 2,
                      note="not orbifold simply connected"),
        BoundaryEntry("(F4, 2/3 C)", "F4", (("quadric_section", 3),), 3, AbGroup((3,) * 6)),
        BoundaryEntry("(F5, 2/3 C)", "F5", (("quadric_section", 3),), 4, AbGroup((3,) * 8)),
        BoundaryEntry("(Q, 3/4 C)", "Q", (("quintic", 4),), 2, AbGroup((4,) * 4),
                      note="C of degree 5 passes through the vertex; link of x^5+y^5+xz^2+u^4=0"),
        BoundaryEntry("(P125, 3/4 C)", "P125", (("decic", 4),), 2, None, 2,
                      note="log Del Pezzo, but H_1^orb = Z/2"),
        BoundaryEntry("(P123, 1/2 line + 10/11 C)", "P123", (("line", 2), ("sextic", 11)), 1,
                      AbGroup((11, 11)), note="outside the main series although m = 11"),
        BoundaryEntry("(Hirz1, 2/3 D + 1/2 E)", "Hirz1", (("D", 3), ("E", 2)), 2, AbGroup((3,) * 4),
                      note="D in |2E+4F|"),
    ]
    for n in range(2, 6):
        m = 2 * n + 1
        out.append(BoundaryEntry(f"(Hirz{n}, 1/2 C + {m - 1}/{m} E)", f"Hirz{n}", (("C", 2), ("E", m)), n + 2,
                                 AbGroup((2,) * (2 * n + 4)), note=f"C in |2E+{2 * n + 3}F|; needs odd m > {2 * n}"))
    for m in range(2, 8):
        out.append(BoundaryEntry(f"(dP1, {m - 1}/{m} C)", "dP1", (("anticanonical", m),), 1, AbGroup((m, m)),
                                 note="smooth elliptic anticanonical curve on a degree 1 Del Pezzo surface"))
    return out


@dataclass(frozen=True)
class BoundaryCheck:
    entry: BoundaryEntry
    log_del_pezzo: bool
    torsion: AbGroup | None
    obstruction: bool | None
    h1_orb: AbGroup
    d_w: int | None = None

    @property
    def consistent(self) -> bool:
        ok = self.log_del_pezzo and self.torsion == self.entry.torsion
        if self.entry.obstruction is not None:
            ok = ok and bool(self.obstruction)
        return ok


def verify_boundary_entry(entry: BoundaryEntry) -> BoundaryCheck:
    """Recompute the log Del Pezzo property, ``H_1^orb``, torsion and obstruction of a catalog entry."""
    e = catalog(entry.surface)
    s, delta = e.surface, entry.delta()
    ldp = bool(is_log_del_pezzo(s, delta))
    orb = h1_orb(s, delta).group
    obstruction = None
    if entry.obstruction is not None:
        obstruction = p_cover_obstruction(s, delta, entry.obstruction)
    torsion = d = None
    if is_trivial(orb):
        if s.weil_rank == 1 and check_rhs_conditions(s, delta).all_pass:
            sd = construct(s, delta).data
        else:
            sd = anticanonical_bundle(s, delta)
        if is_trivial(h1_total_space(sd)):
            table = cohomology(sd)
            torsion, d = table[3].torsion, table.d
    return BoundaryCheck(entry, ldp, torsion, obstruction, orb, d)
