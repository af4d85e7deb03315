"""Named base surfaces with their distinguished curves.

Rank-one surfaces use the generator ``l`` of ``Weil(S) = Z`` as basis, so a
curve of degree ``d`` is the vector ``(d,)``.  Hirzebruch surfaces use the
basis ``(E, F)`` of negative section and fibre.

Names understood by :func:`catalog`::

    P2, Q, P123, S5, P125, P1xP1, dP1,
    F<n>     cone P(1,1,n) over the rational normal curve (n >= 1)
    Hirz<n>  Hirzebruch surface with E^2 = -n (n >= 0)

Aliases such as ``P(1,2,3)`` or ``F_4`` are accepted.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .orbsurface import CurveClass, OrbSurface, SingularPoint

__all__ = ["CatalogEntry", "catalog", "catalog_names", "MAIN_SERIES"]

RATIONAL = "rational surface with quotient singularities"
WPS_PI1 = "C^3 minus the coordinate axes is simply connected and C* acts freely on it (pairwise coprime weights)"
DET_CHECKED = "determinant of the Pic pairing equals the product of local orders"
GENERAL = "general member of its linear system"
TRANSVERSAL = "branch curves chosen general, meeting transversally"

# name -> (anticanonical curve id, order of pi_1^orb of the complement of that curve)
MAIN_SERIES = {"P2": ("cubic", 3), "Q": ("quartic", 4), "P123": ("sextic", 6), "S5": ("anticanonical", 5)}


@dataclass(frozen=True)
class CatalogEntry:
    surface: OrbSurface
    curves: dict
    hyperplane: tuple[int, ...] | None = None  # embedding class used by KE certificates

    def curve(self, name: str) -> CurveClass:
        try:
            return self.curves[name]
        except KeyError:
            raise KeyError(f"{self.surface.name} has no distinguished curve {name!r}; "
                           f"known: {sorted(self.curves)}") from None


def _curve(cid, degree, genus, through=(), orbismooth=True):
    att = {"transversal": TRANSVERSAL}
    if orbismooth:
        att["orbismooth"] = GENERAL
    return CurveClass(cid, tuple(degree), genus, frozenset(through), att)


def _flags(pi1=WPS_PI1):
    f = {"h1_zero": RATIONAL, "smooth_locus_h1_zero": DET_CHECKED}
    if pi1:
        f["pi1_orb_trivial"] = pi1
    return f


def _rank_one(name, l2, k, points, pic, curves, hyperplane=None, pi1=WPS_PI1):
    s = OrbSurface(
        name=name,
        weil_rank=1,
        pairing=((Fraction(l2),),),
        canonical=(k,),
        pic_basis=((pic,),),
        singular_points=tuple(SingularPoint(pid, n, (1,)) for pid, n in points),
        ample_cone_tests=((Fraction(1),),),
        flags=_flags(pi1),
    )
    return CatalogEntry(s, {c.id: c for c in curves}, hyperplane)


def _cone(n: int) -> CatalogEntry:
    # P(1,1,n): Weil generated by a ruling L, L^2 = 1/n, K = -(n+2)L, Pic = nL
    if n == 1:
        return _rank_one(
            "F1", 1, -3, [], 1,
            [_curve("line", (1,), 0), _curve("hyperplane", (1,), 0), _curve("quadric_section", (2,), 0)],
            hyperplane=(1,),
        )
    return _rank_one(
        f"F{n}", Fraction(1, n), -(n + 2), [("vertex", n)], n,
        [
            _curve("line", (1,), 0, ["vertex"]),
            _curve("hyperplane", (n,), 0),
            _curve("quadric_section", (2 * n,), n - 1),
        ],
        hyperplane=(n,),
    )


def _hirzebruch(n: int) -> CatalogEntry:
    s = OrbSurface(
        name=f"Hirz{n}",
        weil_rank=2,
        pairing=((-n, 1), (1, 0)),
        canonical=(-2, -(n + 2)),
        pic_basis=((1, 0), (0, 1)),
        ample_cone_tests=((1, 0), (0, 1)),
        flags=_flags("smooth rational surface"),
    )
    curves = [
        _curve("E", (1, 0), 0),
        _curve("F", (0, 1), 0),
        _curve("C", (2, 2 * n + 3), n + 2),
        _curve("anticanonical", (2, n + 2), 1),
    ]
    if n == 1:
        curves.append(_curve("D", (2, 4), 2))
    return CatalogEntry(s, {c.id: c for c in curves})


@lru_cache(maxsize=None)
def _minus_one_curves_dp1() -> tuple[tuple[int, ...], ...]:
    # classes aH - sum c_i E_i with square -1 and K-degree -1 on P^2 blown up in 8 points
    patterns = {
        0: [(-1,) + (0,) * 7],
        1: [(1, 1) + (0,) * 6],
        2: [(1,) * 5 + (0,) * 3],
        3: [(2,) + (1,) * 6 + (0,)],
        4: [(2,) * 3 + (1,) * 5],
        5: [(2,) * 6 + (1,) * 2],
        6: [(3,) + (2,) * 7],
    }
    out = set()
    for a, pats in patterns.items():
        for pat in pats:
            for c in set(permutations(pat)):
                out.add((a,) + tuple(-x for x in c))
    return tuple(sorted(out))


def _dp1() -> CatalogEntry:
    n = 9
    pairing = tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n)) for i in range(n))
    s = OrbSurface(
        name="dP1",
        weil_rank=n,
        pairing=pairing,
        canonical=(-3,) + (1,) * 8,
        pic_basis=tuple(tuple(int(i == j) for j in range(n)) for i in range(n)),
        ample_cone_tests=_minus_one_curves_dp1(),
        flags=_flags("smooth rational surface"),
    )
    return CatalogEntry(s, {"anticanonical": _curve("anticanonical", (3,) + (-1,) * 8, 1)})


def _build(name: str) -> CatalogEntry:
    if name == "P2":
        e = _cone(1)
        return CatalogEntry(
            replace(e.surface, name="P2"),
            {c.id: c for c in [
                _curve("line", (1,), 0),
                _curve("conic", (2,), 0),
                _curve("cubic", (3,), 1),
                _curve("quartic", (4,), 3),
                _curve("sextic", (6,), 10),
            ]},
            hyperplane=(1,),
        )
    if name == "Q":
        return _rank_one(
            "Q", Fraction(1, 2), -4, [("vertex", 2)], 2,
            [
                _curve("ruling", (1,), 0, ["vertex"]),
                _curve("hyperplane", (2,), 0),
                _curve("quartic", (4,), 1),
                _curve("quintic", (5,), 2, ["vertex"]),
            ],
            hyperplane=(2,),
        )
    if name == "P123":
        return _rank_one(
            "P123", Fraction(1, 6), -6, [("A1", 2), ("A2", 3)], 6,
            [_curve("line", (1,), 0, ["A1", "A2"]), _curve("sextic", (6,), 1)],
            hyperplane=(6,),
        )
    if name == "S5":
        return _rank_one(
            "S5", Fraction(1, 5), -5, [("A4", 5)], 5,
            [
                # the line meets the middle of the A4 chain, so it is not orbismooth
                _curve("line", (1,), 0, ["A4"], orbismooth=False),
                _curve("anticanonical", (5,), 1),
            ],
            hyperplane=(5,),
            pi1="Du Val Del Pezzo surface with simply connected smooth locus (cyclic Du Val classification)",
        )
    if name == "P125":
        return _rank_one(
            "P125", Fraction(1, 10), -8, [("half", 2), ("fifth", 5)], 10,
            [_curve("line", (1,), 0, ["half", "fifth"]), _curve("decic", (10,), 2)],
        )
    if name == "P1xP1":
        s = OrbSurface(
            name="P1xP1",
            weil_rank=2,
            pairing=((0, 1), (1, 0)),
            canonical=(-2, -2),
            pic_basis=((1, 0), (0, 1)),
            ample_cone_tests=((1, 0), (0, 1)),
            flags=_flags("smooth rational surface"),
        )
        curves = [
            _curve("ruling1", (1, 0), 0),
            _curve("ruling2", (0, 1), 0),
            _curve("diagonal", (1, 1), 0),
            _curve("anticanonical", (2, 2), 1),
        ]
        return CatalogEntry(s, {c.id: c for c in curves})
    if name == "dP1":
        return _dp1()
    m = re.fullmatch(r"F(\d+)", name)
    if m and int(m.group(1)) >= 1:
        return _cone(int(m.group(1)))
    m = re.fullmatch(r"Hirz(\d+)", name)
    if m:
        return _hirzebruch(int(m.group(1)))
    raise KeyError(f"unknown catalog surface {name!r}")


_ALIASES = {
    "P^2": "P2", "PP2": "P2", "P(1,1,1)": "P2",
    "P(1,2,3)": "P123", "P(1,1,2)": "Q", "QUADRIC_CONE": "Q",
    "P(1,2,5)": "P125", "P1XP1": "P1xP1", "P1*P1": "P1xP1",
    "DP1": "dP1",
}


def _canonical_name(name: str) -> str:
    key = name.strip()
    if key.upper() in _ALIASES:
        return _ALIASES[key.upper()]
    key = key.replace("_", "")
    if re.fullmatch(r"[Ff]\d+", key):
        return "F" + key[1:]
    if re.fullmatch(r"(?i)hirz\d+", key):
        return "Hirz" + key[4:]
    return key


@lru_cache(maxsize=None)
def catalog(name: str) -> CatalogEntry:
    """Look up a named surface; raises ``KeyError`` for unknown names."""
    return _build(_canonical_name(name))


def catalog_names() -> list[str]:
    """The guaranteed catalog list (families truncated at the documented bounds)."""
    return (
        ["P2", "Q", "P123", "S5", "P125", "P1xP1", "dP1"]
        + [f"F{n}" for n in range(1, 9)]
        + [f"Hirz{n}" for n in range(0, 6)]
    )
