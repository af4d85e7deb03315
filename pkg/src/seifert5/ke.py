"""Arithmetic certificates for orbifold Kahler-Einstein metrics on log Del Pezzo pairs.

The analytic criterion behind these certificates is sufficient only, so a
certificate is either ``positive`` or ``indeterminate``; nothing here ever
claims that a metric does not exist.  "For some epsilon > 0" is replaced by
strict inequality at epsilon = 0, which is equivalent by continuity.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import _qlinalg as ql
from .catalog import catalog
from .errors import PreconditionError

__all__ = [
    "Verdict",
    "Inequality",
    "KECertificate",
    "LEMMA75_ATTESTATIONS",
    "lemma75_certify",
    "certify_catalog_surface",
    "lemma77_certify",
    "certify_elliptic_anticanonical",
    "PointData",
    "KltData",
    "KltReport",
    "klt_point_predicates",
    "ThresholdEntry",
    "ke_threshold_catalog",
    "lemma75_threshold",
]

BOUND = Fraction(3, 2)

LEMMA75_ATTESTATIONS = (
    "anticanonical_multiple",   # -K = a H numerically
    "curve_multiple",           # D = b H numerically
    "local_group_order",        # every local group has order at most d
    "line_through_singular",    # a line L = H/d through every singular point
)


class Verdict(enum.Enum):
    POSITIVE = "positive"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class Inequality:
    expression: str
    value: Fraction
    bound: Fraction
    holds: bool


@dataclass(frozen=True)
class KECertificate:
    surface_name: str
    curve: str
    m: int
    rule: str
    parameters: tuple[tuple[str, Fraction], ...]
    inequalities: tuple[Inequality, ...]
    attestations: tuple[tuple[str, str | None], ...]
    verdict: Verdict
    notes: tuple[str, ...] = ()

    @property
    def positive(self) -> bool:
        return self.verdict is Verdict.POSITIVE

    def __bool__(self):
        return self.positive


def lemma75_certify(
    d: int,
    a: Fraction,
    b: Fraction,
    m: int,
    attestations: Mapping[str, str | None] | None = None,
    surface_name: str = "",
    curve: str = "",
    notes: Sequence[str] = (),
) -> KECertificate:
    """Check ``d(a - (1-1/m) b) < 3/2`` and ``b d (a - (1-1/m) b) < 3/2`` exactly.

    ``attestations`` maps each key of :data:`LEMMA75_ATTESTATIONS` to a
    provenance string; any missing one makes the verdict indeterminate.
    """
    if d < 1 or m < 1:
        raise ValueError("d and m must be positive")
    a, b = Fraction(a), Fraction(b)
    gap = a - (1 - Fraction(1, m)) * b
    v1 = d * gap
    v2 = b * d * gap
    ineqs = (
        Inequality("d(a-(1-1/m)b)", v1, BOUND, v1 < BOUND),
        Inequality("b d(a-(1-1/m)b)", v2, BOUND, v2 < BOUND),
        # -(K + (1-1/m)D) must be ample for the pair to be log Del Pezzo
        Inequality("-(a-(1-1/m)b)", -gap, Fraction(0), -gap < 0),
    )
    att = dict(attestations or {})
    att_t = tuple((k, att.get(k)) for k in LEMMA75_ATTESTATIONS)
    ok = all(i.holds for i in ineqs) and all(v for _, v in att_t)
    return KECertificate(
        surface_name, curve, m, "lemma75",
        (("d", Fraction(d)), ("a", a), ("b", b)),
        ineqs, att_t, Verdict.POSITIVE if ok else Verdict.INDETERMINATE, tuple(notes),
    )


def _ratio(u, v) -> Fraction | None:
    # u = t v for a rational t, or None
    if not ql.proportional(u, v):
        return None
    for x, y in zip(u, v):
        if y:
            return Fraction(x) / Fraction(y)
    return Fraction(0)


def certify_catalog_surface(name: str, curve: str, m: int, local_cover_degrees: Mapping[str, int] | None = None):
    """Hyperplane-section certificate for ``(S, (1-1/m) D)`` with ``d, a, b`` read off the catalog lattice.

    ``local_cover_degrees`` optionally gives the degree ``d'`` of the local
    uniformizing cover at each singular point; otherwise the local class group
    order stands in for it.
    """
    e = catalog(name)
    s = e.surface
    if e.hyperplane is None:
        raise PreconditionError(f"{s.name} has no embedding class in the catalog")
    h = e.hyperplane
    c = e.curve(curve)
    d = s.dot(h, h)
    notes = []
    att: dict[str, str | None] = {}
    a = _ratio(tuple(-k for k in s.canonical), h)
    b = _ratio(c.degree, h)
    if a is not None:
        att["anticanonical_multiple"] = f"-K = {a} H in Weil(S) (x) Q"
    if b is not None:
        att["curve_multiple"] = f"D = {b} H in Weil(S) (x) Q"
    if d.denominator != 1 or a is None or b is None:
        raise PreconditionError(f"{s.name}: hyperplane data not usable (d = {d}, a = {a}, b = {b})")
    d = int(d)
    orders = {p.id: p.local_order for p in s.singular_points}
    if local_cover_degrees:
        orders.update(local_cover_degrees)
        notes.append("local group orders taken from the supplied cover degrees")
    else:
        notes.append("local group order taken as the local class group order")
    if all(n <= d for n in orders.values()):
        att["local_group_order"] = f"local orders {sorted(orders.values())} are at most d = {d}"
    pts = {p.id for p in s.singular_points}
    for cand in e.curves.values():
        if ql.scale(d, ql.qvec(cand.degree)) == ql.qvec(h) and pts <= cand.through_points:
            att["line_through_singular"] = f"{cand.id} = H/{d} passes through {sorted(pts) or 'no singular points'}"
            break
    if c.through_points or not c.attestations or not dict(c.attestations).get("orbismooth"):
        notes.append(f"{curve} must be smooth and avoid the singular points")
        att = {k: v for k, v in att.items() if k != "curve_multiple"}
    return lemma75_certify(d, a, b, m, att, s.name, curve, notes)


def lemma75_threshold(d: int, a: Fraction, b: Fraction, m_range=range(2, 101)) -> int | None:
    """Smallest ``m`` in ``m_range`` from which the inequalities hold throughout the range."""
    good = [m for m in m_range if all(i.holds for i in lemma75_certify(d, a, b, m).inequalities)]
    if not good:
        return None
    t = good[0]
    if good != list(range(t, m_range[-1] + 1)):
        raise PreconditionError("certificate is not monotone in m on this range")
    return t


def lemma77_certify(m: int, attestation: str | None, surface_name: str = "", curve: str = "") -> KECertificate:
    """Du Val Del Pezzo surface with a smooth elliptic anticanonical curve: positive for ``m >= 9``."""
    ineq = Inequality("m", Fraction(m), Fraction(9), m >= 9)
    ok = ineq.holds and bool(attestation)
    return KECertificate(
        surface_name, curve, m, "lemma77", (("m", Fraction(m)),), (ineq,),
        (("du_val_del_pezzo_elliptic_anticanonical", attestation),),
        Verdict.POSITIVE if ok else Verdict.INDETERMINATE,
    )


# surfaces in the catalog known to be Del Pezzo with at worst Du Val singularities
DU_VAL_DEL_PEZZO = {
    "P2": "smooth Del Pezzo of degree 9",
    "Q": "quadric cone, one A1 point",
    "P123": "weighted plane with A1 and A2 points",
    "S5": "degree 5 Del Pezzo with one A4 point",
    "P1xP1": "smooth Del Pezzo of degree 8",
    "Hirz0": "smooth Del Pezzo of degree 8",
    "Hirz1": "smooth Del Pezzo of degree 8",
    "dP1": "smooth Del Pezzo of degree 1",
    "F1": "smooth Del Pezzo of degree 9",
    "F2": "quadric cone, one A1 point",
}


def certify_elliptic_anticanonical(name: str, curve: str, m: int) -> KECertificate:
    """Apply :func:`lemma77_certify`, attesting the hypothesis from catalog data when it holds."""
    e = catalog(name)
    s, c = e.surface, e.curve(curve)
    att = None
    if s.name in DU_VAL_DEL_PEZZO and c.genus == 1 and tuple(-k for k in s.canonical) == c.degree \
            and dict(c.attestations).get("orbismooth"):
        att = f"{DU_VAL_DEL_PEZZO[s.name]}; {curve} is a smooth member of |-K| of genus 1"
    return lemma77_certify(m, att, s.name, curve)


@dataclass(frozen=True)
class PointData:
    """Local data of an effective Q-divisor ``D`` at one point.

    For a smooth point give ``multiplicity`` and optionally a decomposition
    ``D = c C + D'`` through ``curve_coefficient`` and ``local_intersection``
    (the number ``(C . D')_P``).  For a singular point give either
    ``pullback_multiplicity`` or the pair ``cover_degree`` and ``line_intersection``,
    bounding the multiplicity of the pullback by ``d' (D . L)``.
    """
    label: str
    singular: bool = False
    multiplicity: Fraction | None = None
    curve_coefficient: Fraction | None = None
    local_intersection: Fraction | None = None
    pullback_multiplicity: Fraction | None = None
    cover_degree: int | None = None
    line_intersection: Fraction | None = None


@dataclass(frozen=True)
class KltData:
    components: tuple[tuple[str, Fraction], ...]
    points: tuple[PointData, ...] = ()


class KltVerdict(enum.Enum):
    KLT = "klt"
    NOT_KLT = "not klt"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class KltReport:
    verdict: KltVerdict
    reasons: tuple[str, ...]

    def __bool__(self):
        return self.verdict is KltVerdict.KLT


def _smooth_rule(mult, coeff, inter) -> tuple[bool | None, str]:
    if mult is not None and mult <= 1:
        return True, f"multiplicity {mult} <= 1"
    if coeff is not None and inter is not None:
        if coeff < 1 and inter < 1:
            return True, f"D = {coeff} C + D' with (C.D') = {inter} < 1"
        return False, f"decomposition fails: coefficient {coeff}, (C.D') = {inter}"
    if mult is None:
        return None, "no multiplicity data"
    return False, f"multiplicity {mult} > 1 and no decomposition given"


def klt_point_predicates(data: KltData) -> KltReport:
    """Sufficient klt test for a surface pair: component coefficients, then point rules."""
    reasons = []
    for label, c in data.components:
        if Fraction(c) >= 1:
            return KltReport(KltVerdict.NOT_KLT, (f"component {label} has coefficient {c} >= 1",))
    indeterminate = False
    for p in data.points:
        if p.singular:
            mult = p.pullback_multiplicity
            if mult is None and p.cover_degree is not None and p.line_intersection is not None:
                mult = p.cover_degree * Fraction(p.line_intersection)
                reasons.append(f"{p.label}: pullback multiplicity <= {p.cover_degree}*{p.line_intersection} = {mult}")
            ok, why = _smooth_rule(mult, p.curve_coefficient, p.local_intersection)
        else:
            ok, why = _smooth_rule(p.multiplicity, p.curve_coefficient, p.local_intersection)
        reasons.append(f"{p.label}: {why}")
        if not ok:
            indeterminate = True
    verdict = KltVerdict.INDETERMINATE if indeterminate else KltVerdict.KLT
    return KltReport(verdict, tuple(reasons))


@dataclass(frozen=True)
class ThresholdEntry:
    label: str
    surface: str
    curve: str
    claim: str
    m_values: tuple[int, ...]
    certificates: tuple[KECertificate, ...] = field(repr=False)

    @property
    def holds(self) -> bool:
        return all(c.positive for c in self.certificates)


def ke_threshold_catalog(m_max: int = 100) -> list[ThresholdEntry]:
    """Thresholds for the anticanonical main series and the cone examples, each re-derived."""
    out = []
    for name, curve in (("P2", "cubic"), ("Q", "quartic"), ("P123", "sextic"), ("S5", "anticanonical")):
        certs = tuple(certify_catalog_surface(name, curve, m) for m in range(2, m_max + 1))
        first = next(c.m for c in certs if c.positive)
        if any(c.positive != (c.m >= first) for c in certs):
            raise PreconditionError(f"{name}: certificates not monotone in m")
        positive = tuple(c for c in certs if c.positive)
        out.append(ThresholdEntry(f"({name}, (1-1/m) {curve})", name, curve, f"m > {first - 1}",
                                  tuple(c.m for c in positive), positive))
    for n, m in ((3, 5), (3, 4), (4, 3), (5, 3)):
        cert = certify_catalog_surface(f"F{n}", "quadric_section", m)
        out.append(ThresholdEntry(f"(F{n}, {m - 1}/{m} C)", f"F{n}", "quadric_section", f"m = {m}", (m,), (cert,)))
    return out
