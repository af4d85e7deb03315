from dataclasses import replace
from math import gcd

import pytest
from hypothesis import given, strategies as st

from seifert5.abgroup import AbGroup
from seifert5.catalog import catalog, catalog_names
from seifert5.errors import PreconditionError, ValidationError
from seifert5.orbsurface import BranchCurve
from seifert5.topology import (
    cy_branch_check,
    h1_orb,
    h1_smooth_locus_trivial,
    integral_intersection,
    p_cover_obstruction,
    p_cover_witness,
    rho1_h1orb_zero,
)


@pytest.mark.parametrize("name", catalog_names())
def test_catalog_smooth_locus_simply_homologous(name):
    assert h1_smooth_locus_trivial(catalog(name).surface)


def test_smooth_locus_certificates():
    c = h1_smooth_locus_trivial(catalog("P123").surface)
    assert (c.pic_determinant, c.local_order_product) == (6, 6)
    c = h1_smooth_locus_trivial(catalog("Q").surface)
    assert (c.pic_determinant, c.local_order_product) == (2, 2)


def test_smooth_locus_needs_h1_attestation():
    s = catalog("P2").surface.with_flags(h1_zero=None)
    with pytest.raises(PreconditionError):
        h1_smooth_locus_trivial(s)


def test_smooth_locus_fails_with_extra_point():
    s = catalog("P2").surface
    from seifert5.orbsurface import SingularPoint

    bad = replace(s, singular_points=(SingularPoint("extra", 3, (1,)),), pic_basis=((3,),))
    cert = h1_smooth_locus_trivial(bad)
    assert not cert
    assert cert.pic_determinant == 9 and cert.local_order_product == 3


@given(st.integers(2, 60))
def test_p2_cubic_h1orb(m):
    e = catalog("P2")
    rep = h1_orb(e.surface, [e.curve("cubic").branch(m)])
    assert rep.group == AbGroup.cyclic(gcd(m, 3))
    assert rep.trivial == (m % 3 != 0)


def test_h1orb_examples():
    e = catalog("P2")
    assert h1_orb(e.surface, [e.curve("cubic").branch(3)]).group == AbGroup((3,))
    e = catalog("P123")
    for m in range(2, 40):
        assert h1_orb(e.surface, [e.curve("sextic").branch(m)]).trivial == (gcd(m, 6) == 1)


@given(st.integers(2, 60))
def test_rho1_matches_presentation(m):
    for name, curve in (("P2", "cubic"), ("Q", "quartic"), ("P123", "sextic"), ("S5", "anticanonical"),
                        ("Q", "quintic")):
        e = catalog(name)
        delta = [e.curve(curve).branch(m)]
        assert rho1_h1orb_zero(e.surface, delta) == h1_orb(e.surface, delta).trivial


def test_rho1_examples():
    e = catalog("Q")
    assert rho1_h1orb_zero(e.surface, [e.curve("quartic").branch(7)])
    assert not rho1_h1orb_zero(e.surface, [e.curve("quartic").branch(6)])
    with pytest.raises(PreconditionError):
        rho1_h1orb_zero(catalog("Hirz1").surface, [])


def test_p_cover_obstruction_f3():
    e = catalog("F3")
    delta = [e.curve("quadric_section").branch(4)]
    assert p_cover_obstruction(e.surface, delta, 2)
    assert p_cover_witness(e.surface, delta, 2) == {"quadric_section": 1}
    assert h1_orb(e.surface, delta).group == AbGroup((2,))
    delta = [e.curve("quadric_section").branch(5)]
    assert not p_cover_obstruction(e.surface, delta, 5)
    assert p_cover_witness(e.surface, delta, 5) is None


@given(st.integers(2, 30), st.sampled_from([2, 3, 5, 7]))
def test_obstruction_implies_nontrivial_p_part(m, p):
    for name in ("P2", "Q", "P123", "F3", "F4"):
        e = catalog(name)
        for cid in e.curves:
            delta = [e.curve(cid).branch(m)]
            if p_cover_obstruction(e.surface, delta, p):
                g = h1_orb(e.surface, delta).group
                assert g.count_killed_by(p) > 1, (name, cid, m, p)


def test_cy_branch_check():
    e = catalog("P2")
    v = cy_branch_check(e.surface, [e.curve("sextic").branch(2)])
    assert not v.consistent and v.prime == 2 and v.obstruction
    v = cy_branch_check(e.surface, [e.curve("quartic").branch(4)])
    assert not v.consistent and v.prime == 2 and v.obstruction
    # two cubics with coefficient 1/2: K + Delta = 0
    delta = [e.curve("cubic").branch(2, "a"), e.curve("cubic").branch(2, "b")]
    v = cy_branch_check(e.surface, delta)
    assert not v.consistent and v.obstruction
    assert "obstructed" in str(v)
    with pytest.raises(PreconditionError):
        cy_branch_check(e.surface, [e.curve("cubic").branch(5)])


def test_cy_empty_branch_consistent():
    e = catalog("P1xP1")
    s = replace(e.surface, canonical=(0, 0))
    assert cy_branch_check(s, []).consistent


def test_integral_intersection():
    s = catalog("P123").surface
    assert integral_intersection(s, (6,), (1,)) == 1
    with pytest.raises(ValidationError):
        integral_intersection(s, (1,), (1,))


def test_h1orb_single_line_is_trivial():
    s = catalog("P2").surface
    c = BranchCurve("x", (1,), 0, 2)
    assert h1_orb(s, [c]).trivial
