from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, strategies as st

from seifert5.abgroup import AbGroup, group_from_presentation, is_trivial
from seifert5.catalog import catalog
from seifert5.errors import PreconditionError
from seifert5.seifert import (
    SeifertData,
    anticanonical_bundle,
    bundles_with_chern_class,
    chern_class,
    cohomology,
    fiber_order_bound,
    flip_orientation,
    h1_presentation,
    h1_total_space,
    is_smooth,
    w2_report,
)

from oracles import cofactor_2x2


def bundle(name, curve, m, B, b):
    e = catalog(name)
    c = e.curve(curve).branch(m)
    return SeifertData(e.surface, (c,), B, {c.id: b})


def test_chern_class_examples():
    assert chern_class(bundle("P2", "cubic", 5, (-1,), 2)).c1 == (Fraction(1, 5),)
    assert chern_class(bundle("P123", "sextic", 7, (-5,), 6)).c1 == (Fraction(1, 7),)


def test_seifert_data_rules():
    with pytest.raises(ValueError):
        bundle("P2", "cubic", 5, (-1,), 5)
    with pytest.raises(ValueError):
        bundle("P2", "cubic", 6, (0,), 2)
    with pytest.raises(ValueError):
        bundle("P2", "cubic", 5, (-1, 0), 2)
    e = catalog("P2")
    with pytest.raises(ValueError):
        SeifertData(e.surface, (e.curve("cubic").branch(5),), (0,), {"other": 1})


def test_smoothness_p123():
    rep = is_smooth(bundle("P123", "sextic", 7, (-5,), 6))
    assert rep.smooth
    res = {p.point: (p.residue, p.local_order) for p in rep.points}
    assert res == {"A1": (1, 2), "A2": (1, 3)}


def test_singular_bundle_detected():
    # B = -6 l restricts to 0 at both points, so the fibre over them is not free
    sd = bundle("P123", "sextic", 7, (-6,), 6)
    rep = is_smooth(sd)
    assert not rep.smooth
    with pytest.raises(PreconditionError):
        cohomology(sd)


def test_h1_presentation_and_group():
    sd = bundle("P2", "cubic", 5, (-1,), 2)
    rows = h1_presentation(sd).to_lists()
    assert rows == [[2, 5], [-1, -3]]
    assert cofactor_2x2(2, 5, -1, -3) == -1
    assert is_trivial(h1_total_space(sd))
    sd = bundle("P2", "cubic", 3, (0,), 1)
    assert h1_presentation(sd).to_lists() == [[1, 3], [0, -3]]
    assert h1_total_space(sd) == AbGroup((3,))


def test_fiber_order_bound():
    assert fiber_order_bound(bundle("P2", "cubic", 5, (-1,), 2)) == 1
    with pytest.raises(PreconditionError):
        fiber_order_bound(_zero_c1())


def _zero_c1():
    # conic with m = 2, B = -1, b = 1: c1 = -1 + (1/2) 2 = 0
    e = catalog("P2")
    c = e.curve("conic").branch(2)
    return SeifertData(e.surface, (c,), (-1,), {c.id: 1})


def test_cohomology_tables():
    t = cohomology(bundle("P2", "cubic", 5, (-1,), 2))
    assert t.d == 1
    assert [str(g) for g in t.H] == ["Z", "0", "0", "(Z/5)^2", "0", "Z"]
    assert t.homology(2) == AbGroup((5, 5))
    e = catalog("F3")
    c = e.curve("quadric_section").branch(5)
    # c1 = B + b/5 * 6 with B = -1, b = 1 gives 1/5
    t = cohomology(SeifertData(e.surface, (c,), (-1,), {c.id: 1}))
    assert t[3] == AbGroup((5,) * 4)


def test_cohomology_without_branch_divisor():
    for name in ("P2", "Q", "P123", "S5"):
        e = catalog(name)
        t = cohomology(SeifertData(e.surface, (), (1,), {}))
        assert t[2] == AbGroup() and t[3] == AbGroup() and t.d == 1
    e = catalog("dP1")
    sd = anticanonical_bundle(e.surface, [])
    t = cohomology(sd)
    assert t[2] == AbGroup.free(8) and t[3] == AbGroup.free(8)


def test_cohomology_preconditions():
    with pytest.raises(PreconditionError):
        cohomology(bundle("P2", "cubic", 3, (0,), 1))
    with pytest.raises(PreconditionError):
        cohomology(_zero_c1())


def test_flip_examples():
    sd = bundle("P2", "cubic", 5, (-1,), 2)
    f = flip_orientation(sd)
    assert f.B == (-2,) and f.b_of("cubic") == 3
    assert chern_class(f).c1 == (Fraction(-1, 5),)
    assert flip_orientation(f) == sd
    assert cohomology(f) == cohomology(sd)


@given(st.sampled_from(["P2", "Q", "P123", "S5"]), st.integers(2, 25), st.integers(-4, 4), st.integers(1, 24))
def test_flip_negates_c1_and_preserves_invariants(name, m, B, b):
    from seifert5.catalog import MAIN_SERIES

    curve, _ = MAIN_SERIES[name]
    assume(b < m and gcd(b, m) == 1)
    sd = bundle(name, curve, m, (B,), b)
    f = flip_orientation(sd)
    assert chern_class(f).c1 == tuple(-x for x in chern_class(sd).c1)
    assert flip_orientation(f) == sd
    assert is_smooth(f).smooth == is_smooth(sd).smooth
    assert h1_total_space(f) == h1_total_space(sd)
    try:
        t = cohomology(sd)
    except PreconditionError:
        return
    assert cohomology(f) == t


@given(st.sampled_from(["P2", "Q", "P123", "S5"]), st.integers(2, 25), st.integers(-4, 4), st.integers(1, 24))
def test_divisibility_annihilates_fibre_and_weil_equals_pic(name, m, B, b):
    from seifert5.catalog import MAIN_SERIES

    curve, _ = MAIN_SERIES[name]
    assume(b < m and gcd(b, m) == 1)
    sd = bundle(name, curve, m, (B,), b)
    try:
        t = cohomology(sd)
    except PreconditionError:
        return
    ch = chern_class(sd)
    from seifert5._qlinalg import content

    assert content(ch.weil_multiple) == content(ch.pic_multiple) == t.d
    pres = h1_presentation(sd).to_lists()
    with_dk = pres + [[t.d] + [0] * (len(pres[0]) - 1)]
    assert group_from_presentation(len(pres[0]), with_dk) == h1_total_space(sd)


def test_w2_report():
    sd = bundle("P2", "cubic", 5, (-1,), 2)
    assert w2_report(sd)
    e = catalog("Hirz1")
    d, ee = e.curve("D").branch(3), e.curve("E").branch(2)
    # c1 = (7/6, 4/3) is not proportional to K + Delta = (-1/6, -1/3)
    sd = SeifertData(e.surface, (d, ee), (0, 0), {"D": 1, "E": 1})
    assert not w2_report(sd)


def test_bundles_with_chern_class_unique_for_rational_homology_spheres():
    for name, curve in (("P2", "cubic"), ("P123", "sextic"), ("S5", "anticanonical"), ("Q", "quartic")):
        e = catalog(name)
        for m in range(2, 30):
            delta = [e.curve(curve).branch(m)]
            found = bundles_with_chern_class(e.surface, delta, (Fraction(1, m),))
            assert len(found) == (1 if gcd(m, e.curve(curve).degree[0]) == 1 else 0), (name, m)


def test_anticanonical_bundle_hirz1():
    e = catalog("Hirz1")
    delta = [e.curve("D").branch(3), e.curve("E").branch(2)]
    sd = anticanonical_bundle(e.surface, delta)
    assert sd.B == (-1, -1) and dict(sd.b) == {"D": 1, "E": 1}
    t = cohomology(sd)
    assert t[3] == AbGroup((3,) * 4, 1)
    assert w2_report(sd)
