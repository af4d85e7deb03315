"""Rational homology sphere bundles over Picard-number-one bases.

Given ``(S, Delta)`` with ``Weil(S) = Z``, orbismooth transversal branch
curves and coprimality of the multiplicities, there is exactly one smooth
Seifert bundle (up to orientation) with ``H_1 = 0`` and rational homology of
the 5-sphere.  Its Chern class is ``(1/M) l`` with ``M = prod m_j``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Sequence

from .abgroup import AbGroup, is_trivial
from .catalog import MAIN_SERIES, catalog
from .errors import ConsistencyError, PreconditionError
from .orbsurface import BranchCurve, OrbSurface
from .seifert import SeifertData, chern_class, cohomology, h1_total_space, is_smooth
from .topology import h1_orb, h1_smooth_locus_trivial

__all__ = [
    "Condition",
    "RHSConditions",
    "RHSConstruction",
    "SphereStatus",
    "SphereVerdict",
    "StructureCount",
    "xgcd",
    "solve_linear_diophantine",
    "check_rhs_conditions",
    "construct",
    "pi1_orb_attestation",
    "is_sphere",
    "torsion_profile",
    "count_structures_for_m",
]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a x + b y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def solve_linear_diophantine(coeffs: Sequence[int], rhs: int) -> list[int] | None:
    """One integer solution of ``sum c_i x_i = rhs``, or None when gcd(c) does not divide rhs."""
    if not coeffs:
        return [] if rhs == 0 else None
    g, xs = coeffs[0], [1]
    if g < 0:
        g, xs = -g, [-1]
    for c in coeffs[1:]:
        g2, u, v = xgcd(g, c)
        xs = [u * x for x in xs] + [v]
        g = g2
    if g == 0:
        return [0] * len(coeffs) if rhs == 0 else None
    if rhs % g:
        return None
    k = rhs // g
    return [k * x for x in xs]


@dataclass(frozen=True)
class Condition:
    name: str
    ok: bool
    detail: str

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class RHSConditions:
    cyclic_rank_one: Condition
    orbismooth_transversal: Condition
    coprime: Condition

    @property
    def all_pass(self) -> bool:
        return bool(self.cyclic_rank_one and self.orbismooth_transversal and self.coprime)

    def __iter__(self):
        return iter((self.cyclic_rank_one, self.orbismooth_transversal, self.coprime))

    def failures(self) -> list[Condition]:
        return [c for c in self if not c]


def check_rhs_conditions(s: OrbSurface, delta: Sequence[BranchCurve]) -> RHSConditions:
    if s.weil_rank != 1:
        a = Condition("cyclic-rank-one", False, f"Weil rank is {s.weil_rank}, need 1")
    else:
        try:
            cert = h1_smooth_locus_trivial(s)
            a = Condition("cyclic-rank-one", cert.trivial,
                          f"|det Pic| = {cert.pic_determinant}, product of local orders = {cert.local_order_product}")
        except PreconditionError as e:
            a = Condition("cyclic-rank-one", False, str(e))

    missing = [f"{c.id}:{claim}" for c in delta for claim in ("orbismooth", "transversal") if not c.attested(claim)]
    b = Condition("orbismooth-transversal", not missing, "missing attestations: " + ", ".join(missing) if missing else "attested")

    bad = []
    for i, c in enumerate(delta):
        for e in delta[i + 1:]:
            if gcd(c.multiplicity, e.multiplicity) != 1:
                bad.append(f"gcd(m_{c.id}, m_{e.id}) = {gcd(c.multiplicity, e.multiplicity)}")
        if s.weil_rank == 1 and gcd(c.multiplicity, c.degree[0]) != 1:
            bad.append(f"gcd(m_{c.id}, deg {c.id}) = {gcd(c.multiplicity, c.degree[0])}")
    if s.weil_rank != 1:
        bad.append("degree is only defined on a rank-one Weil lattice")
    cc = Condition("coprime", not bad, "; ".join(bad) if bad else "pairwise coprime, prime to degrees")
    return RHSConditions(a, b, cc)


class SphereStatus(enum.Enum):
    YES = "S5"
    NO = "not S5"
    CONDITIONAL = "S5 modulo pi_1^orb attestation"


@dataclass(frozen=True)
class SphereVerdict:
    status: SphereStatus
    reason: str
    attestation: str | None = None

    def __bool__(self):
        return self.status is SphereStatus.YES


@dataclass(frozen=True)
class RHSConstruction:
    data: SeifertData
    orientation: int
    torsion_profile: AbGroup
    is_S5: SphereVerdict
    certificates: tuple[tuple[str, str, bool], ...]


def _degrees(delta: Sequence[BranchCurve]) -> list[int]:
    return [c.degree[0] for c in delta]


def construct(
    s: OrbSurface, delta: Sequence[BranchCurve], orientation: int = 1, attestation: str | None = None
) -> RHSConstruction:
    """Build the bundle with ``c_1 = orientation/M`` and check every claimed property."""
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    delta = tuple(delta)
    cond = check_rhs_conditions(s, delta)
    if not cond.all_pass:
        raise PreconditionError("rational homology sphere conditions fail: "
                                + "; ".join(f"{c.name}: {c.detail}" for c in cond.failures()))
    ms = [c.multiplicity for c in delta]
    ds = _degrees(delta)
    big_m = prod(ms)
    coeffs = [big_m] + [big_m * d // m for d, m in zip(ds, ms)]
    sol = solve_linear_diophantine(coeffs, orientation)
    if sol is None:
        raise ConsistencyError(f"gcd of {coeffs} is not 1 although the coprimality conditions hold")
    b_B, bs = sol[0], sol[1:]
    for j, (d, m) in enumerate(zip(ds, ms)):
        q, bs[j] = divmod(bs[j], m)
        b_B += d * q
    sd = SeifertData(s, delta, (b_B,), {c.id: b for c, b in zip(delta, bs)})

    certs = []

    def check(name, value, ok):
        certs.append((name, str(value), bool(ok)))
        if not ok:
            raise ConsistencyError(f"constructed bundle fails {name}: {value}")

    ch = chern_class(sd)
    check("c1 = orientation/M", ch.c1[0], ch.c1 == (Fraction(orientation, big_m),))
    smooth = is_smooth(sd)
    check("smooth", [(p.point, p.residue, p.local_order) for p in smooth.points], smooth.smooth)
    h1 = h1_total_space(sd)
    check("H_1 = 0", h1, is_trivial(h1))
    table = cohomology(sd)
    check("H^2 = H^4 = 0", (str(table[2]), str(table[4])), is_trivial(table[2]) and is_trivial(table[4]))
    tp = torsion_profile(s, delta)
    check("H^3 = torsion profile", table[3], table[3] == tp)
    return RHSConstruction(sd, orientation, tp, is_sphere(s, delta, sd, attestation), tuple(certs))


def pi1_orb_attestation(s: OrbSurface, delta: Sequence[BranchCurve]) -> str | None:
    """Provenance for ``pi_1^orb(S, Delta) = 1`` when a known argument covers the input."""
    if not delta:
        return s.flag("pi1_orb_trivial")
    name = s.name
    if name in MAIN_SERIES and len(delta) == 1:
        c = delta[0]
        _, order = MAIN_SERIES[name]
        if c.genus == 1 and tuple(-k for k in s.canonical) == c.degree and gcd(c.multiplicity, order) == 1:
            return (f"pi_1^orb of the complement of a smooth anticanonical curve on {name} is Z/{order} "
                    f"(cyclic cover to a smooth Del Pezzo surface); m = {c.multiplicity} is prime to {order}")
    if name == "P2" and all(c.degree[0] in (1, 2) and c.genus == 0 and c.attested("transversal") for c in delta):
        ms = [c.multiplicity for c in delta]
        coprime = all(gcd(a, b) == 1 for i, a in enumerate(ms) for b in ms[i + 1:])
        odd_conics = all(c.multiplicity % 2 for c in delta if c.degree[0] == 2)
        if coprime and odd_conics:
            return ("transversal lines and conics in the plane: the complement has abelian fundamental group, "
                    "so pi_1^orb equals its trivial abelianization")
    return None


def is_sphere(
    s: OrbSurface, delta: Sequence[BranchCurve], construction=None, attestation: str | None = None
) -> SphereVerdict:
    """Decide whether the rational homology sphere over ``(s, delta)`` is homeomorphic to ``S^5``.

    Needs rational branch curves and ``pi_1^orb = 1``.  Only the abelianization
    is computed; the non-abelian statement comes from an attestation.
    """
    if construction is not None and not isinstance(construction, (SeifertData, RHSConstruction)):
        raise TypeError("construction must be SeifertData or RHSConstruction")
    positive = [c.id for c in delta if c.genus > 0]
    if positive:
        return SphereVerdict(SphereStatus.NO, f"curves {positive} have positive genus, so H_2 != 0")
    orb = h1_orb(s, delta)
    if not orb.trivial:
        return SphereVerdict(SphereStatus.NO, f"H_1^orb = {orb.group} != 0, so L is not simply connected")
    att = attestation or pi1_orb_attestation(s, delta)
    if att:
        return SphereVerdict(SphereStatus.YES, "rational curves and trivial pi_1^orb", att)
    return SphereVerdict(SphereStatus.CONDITIONAL, "rational curves and H_1^orb = 0; pi_1^orb itself not attested")


def torsion_profile(s: OrbSurface, delta: Sequence[BranchCurve]) -> AbGroup:
    """``H_2(L, Z) = sum_i (Z/m_i)^{2 g_i}`` for the rational homology sphere over ``(s, delta)``."""
    cond = check_rhs_conditions(s, delta)
    if not cond.all_pass:
        raise PreconditionError("rational homology sphere conditions fail: "
                                + "; ".join(f"{c.name}: {c.detail}" for c in cond.failures()))
    out = AbGroup()
    for c in delta:
        out = out + AbGroup.cyclic(c.multiplicity) ** (2 * c.genus)
    return out


@dataclass(frozen=True)
class StructureCount:
    m: int
    count: int
    bases: tuple[str, ...]
    in_main_range: bool


def count_structures_for_m(m: int) -> StructureCount:
    """Smooth anticanonical main-series bases admitting a rational homology sphere with ``H_2 = (Z/m)^2``.

    Every base is run through :func:`check_rhs_conditions`; ``m < 12`` is
    computed but flagged, since the classification behind the list needs ``m >= 12``.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    bases = []
    for name, (curve, _) in MAIN_SERIES.items():
        e = catalog(name)
        if check_rhs_conditions(e.surface, [e.curve(curve).branch(m)]).all_pass:
            bases.append(name)
    return StructureCount(m, len(bases), tuple(bases), m >= 12)

