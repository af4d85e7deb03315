from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from seifert5.abgroup import AbGroup
from seifert5.classify import (
    BASES,
    EXCEPTIONAL,
    DeformationType,
    canonicalize,
    enumerate_del_pezzo,
    genus_bound,
    identify_manifold,
    nonrational_boundary_catalog,
    partitions,
    raw_blowup_types,
    torsion_allowed,
    verify_boundary_entry,
)
from seifert5.errors import PreconditionError

from oracles import integer_partitions


def multisets_below(total, min_part):
    """Multisets of parts >= min_part with sum < total, by brute force over itertools."""
    out = set()
    for k in range(total):
        for combo in combinations_with_replacement(range(min_part, total), k):
            if sum(combo) < total:
                out.add(tuple(sorted(combo)))
    return out


def test_partitions_match_oracle():
    for n in range(12):
        got = sorted(tuple(sorted(p)) for p in partitions(n))
        assert got == sorted(tuple(sorted(p)) for p in integer_partitions(n))
        assert len(list(partitions(n, 2))) == sum(1 for p in integer_partitions(n) if min(p, default=2) >= 2)


def test_enumeration_counts():
    types = enumerate_del_pezzo()
    assert len(types) == 93
    fam = {}
    for t in types:
        fam[t.family] = fam.get(t.family, 0) + 1
    assert sorted(fam.values()) == [4, 7, 15, 22, 45]
    assert fam["P123"] == 7 and fam["Q"] == 15 and fam["P2"] == 22 and fam["P1xP1"] == 45


def test_enumeration_matches_multiset_oracle():
    types = enumerate_del_pezzo()
    for base, min_part in (("P123", 2), ("Q", 2), ("P2", 2), ("P1xP1", 1)):
        got = {tuple(sorted(t.blowups)) for t in types if t.family == base}
        assert got == multisets_below(BASES[base].k_squared, min_part)


def test_distinguishing_statistic():
    expected = {"P123": 1, "Q": 0, "P2": -1}
    for t in enumerate_del_pezzo():
        if t.family in expected:
            assert t.singularity_minus_picard == expected[t.family], t.name
        elif t.family == "P1xP1":
            assert t.singularity_minus_picard <= -2, t.name


def test_exceptional_types():
    names = {(t.base, tuple(t.blowups)) for t in enumerate_del_pezzo() if t.family == "exceptional"}
    assert names == {(b, tuple(bl)) for b, bl in EXCEPTIONAL}


def test_types_are_distinct():
    keys = [(t.k_squared_remaining, tuple(sorted(t.singularity_profile)), t.picard_number, t.base,
             tuple(sorted(t.blowups))) for t in enumerate_del_pezzo()]
    assert len(set(keys)) == 93


def test_canonicalization_preserves_invariants():
    target = set(enumerate_del_pezzo())
    images = set()
    for t in raw_blowup_types():
        c = canonicalize(t)
        assert c.k_squared_remaining == t.k_squared_remaining
        assert sorted(c.singularity_profile) == sorted(t.singularity_profile)
        assert c.picard_number == t.picard_number
        assert c in target, (t.name, c.name)
        images.add(c)
    assert images == target


def test_isomorphism_examples():
    assert canonicalize(DeformationType.make("S5", (1,))) == DeformationType.make("P2", (5,))
    assert canonicalize(DeformationType.make("S5", (2,))) == DeformationType.make("Q", (5,))
    assert canonicalize(DeformationType.make("P123", (1,))) == DeformationType.make("Q", (3,))
    assert canonicalize(DeformationType.make("Q", (1,))) == DeformationType.make("P2", (2,))
    assert canonicalize(DeformationType.make("P2", (3, 1))) == DeformationType.make("P1xP1", (3,))


def test_type_names():
    assert DeformationType.make("P2", (3, 2)).name.startswith("B_{")
    assert DeformationType.make("P2", ()).k_squared_remaining == 9
    assert DeformationType.make("P2", (3, 2)).k_squared_remaining == 4


@pytest.mark.parametrize("factors,clause", [
    ((7, 7), 1), ((), 1), ((5,) * 4, 2), ((4,) * 4, 2), ((3,) * 4, 3), ((3,) * 6, 3), ((3,) * 8, 3),
    ((2,) * 10, 4),
])
def test_torsion_allowed_examples(factors, clause):
    v = torsion_allowed(AbGroup(factors))
    assert v and v.clause == clause


@pytest.mark.parametrize("factors", [(5,) * 6, (2, 2, 4, 4), (3, 3, 9, 9), (5, 5, 25, 25), (3,) * 10, (7,) * 4, (2, 4)])
def test_torsion_rejected(factors):
    assert not torsion_allowed(AbGroup(factors))


def test_torsion_needs_finite_group():
    with pytest.raises(PreconditionError):
        torsion_allowed(AbGroup.free(1))


def test_genus_bound():
    assert genus_bound(1 - Fraction(1, 12)) == 1
    assert genus_bound(Fraction(4, 5)) == 2
    assert genus_bound(Fraction(2, 3)) == 4
    assert genus_bound(Fraction(3, 5)) is None
    with pytest.raises(PreconditionError):
        genus_bound(Fraction(1, 3))


@given(st.integers(2, 500))
def test_genus_bound_monotone(m):
    a = 1 - Fraction(1, m)
    b = 1 - Fraction(1, m + 1)
    ga, gb = genus_bound(a), genus_bound(b)
    if ga is not None:
        assert gb is not None and gb <= ga


def test_identify_manifold():
    assert identify_manifold(AbGroup(), True, True).description == "S^5"
    m = identify_manifold(AbGroup.free(21), True, True)
    assert m.description == "#21 (S^2 x S^3)" and m.free_rank == 21
    m = identify_manifold(AbGroup((5, 5)), True, True)
    assert m.description == "M_5"
    m = identify_manifold(AbGroup((2, 2, 4, 4), 1), True, True)
    assert m.description == "S^2 x S^3 # M_2 # M_4"
    with pytest.raises(PreconditionError):
        identify_manifold(AbGroup((2, 4)), True, True)
    with pytest.raises(PreconditionError):
        identify_manifold(AbGroup(), True, False)
    with pytest.raises(PreconditionError):
        identify_manifold(AbGroup(), False, True)


@pytest.mark.parametrize("entry", nonrational_boundary_catalog(), ids=lambda e: e.label)
def test_boundary_catalog_entries_recompute(entry):
    chk = verify_boundary_entry(entry)
    assert chk.consistent, chk
    if entry.torsion is not None:
        assert torsion_allowed(entry.torsion)


def test_boundary_catalog_examples():
    by_label = {e.label: e for e in nonrational_boundary_catalog()}
    assert by_label["(F3, 4/5 C)"].torsion == AbGroup((5,) * 4)
    assert by_label["(F4, 2/3 C)"].torsion == AbGroup((3,) * 6)
    chk = verify_boundary_entry(by_label["(F3, 3/4 C)"])
    assert chk.obstruction and chk.h1_orb == AbGroup((2,))
    assert verify_boundary_entry(by_label["(F3, 4/5 C)"]).log_del_pezzo
