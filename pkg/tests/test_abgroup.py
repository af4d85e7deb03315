import pytest
from hypothesis import given, settings, strategies as st

from seifert5.abgroup import (
    AbGroup,
    IntMatrix,
    group_equal,
    group_from_presentation,
    is_trivial,
    smith_normal_form,
    torsion_order,
)

from oracles import (
    brute_force_torsion_counts,
    counts_from_factors,
    invariant_factors_by_minors,
    prime_power_divisors,
    _det,
)


def matrices(max_rows=4, max_cols=4, lo=-10, hi=10):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r).map(
                lambda rows: IntMatrix.from_rows(rows, c)
            )
        )
    )


def test_snf_small_examples():
    d, _, _ = smith_normal_form(IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert d == [2, 6, 12]
    d, _, _ = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert d == [1, 6]
    d, _, _ = smith_normal_form(IntMatrix.from_rows([[0, 0], [0, 0]]))
    assert d == [0, 0]


def test_group_from_presentation_examples():
    assert group_from_presentation(2, [[2, 0], [0, 3]]) == AbGroup((6,))
    assert group_from_presentation(2, [[2, 0]]) == AbGroup((2,), 1)
    assert group_from_presentation(3, []) == AbGroup.free(3)
    assert is_trivial(group_from_presentation(1, [[1]]))
    assert group_from_presentation(2, [[4, 6], [6, 4]]) == AbGroup((2, 10))


def test_presentation_shape_mismatch():
    with pytest.raises(ValueError):
        group_from_presentation(3, IntMatrix.from_rows([[1, 2]]))


def test_abgroup_normal_form_rules():
    with pytest.raises(ValueError):
        AbGroup((2, 3))
    with pytest.raises(ValueError):
        AbGroup((1,))
    with pytest.raises(ValueError):
        AbGroup((), -1)


def test_constructors_and_arithmetic():
    assert AbGroup.cyclic(0) == AbGroup.free(1)
    assert is_trivial(AbGroup.cyclic(1))
    assert AbGroup.from_cyclic_orders([2, 3, 4]) == AbGroup((2, 12))
    assert AbGroup.cyclic(5) ** 2 == AbGroup((5, 5))
    assert AbGroup.cyclic(3) + AbGroup.free(2) == AbGroup((3,), 2)
    assert AbGroup.cyclic(6) ** 0 == AbGroup.trivial()
    g = AbGroup((2, 4), 1)
    assert g.torsion == AbGroup((2, 4))
    assert not g.is_finite and g.order() is None
    assert AbGroup((2, 4)).order() == torsion_order(AbGroup((2, 4))) == 8
    assert AbGroup((2, 4)).exponent() == 4
    assert AbGroup((2, 4)).count_killed_by(2) == 4
    assert group_equal(AbGroup((3, 3)), AbGroup.cyclic(3) ** 2)


def test_half_and_str():
    assert AbGroup((5, 5, 5, 5)).half() == AbGroup((5, 5))
    assert AbGroup((2, 2, 4, 4)).half() == AbGroup((2, 4))
    assert AbGroup((2, 4)).half() is None
    assert AbGroup((3,)).half() is None
    assert AbGroup().half() == AbGroup()
    assert str(AbGroup()) == "0"
    assert str(AbGroup((5, 5), 2)) == "Z^2 + (Z/5)^2"
    assert str(AbGroup((2, 4), 1)) == "Z + Z/2 + Z/4"


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_snf_transforms_are_unimodular_and_diagonalize(m):
    d, u, v = smith_normal_form(m)
    assert abs(_det(u.to_lists())) == 1
    assert abs(_det(v.to_lists())) == 1
    prod_ = (u @ m @ v).to_lists()
    for i in range(m.rows):
        for j in range(m.cols):
            assert prod_[i][j] == (d[i] if i == j else 0)
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert d[: len(nz)] == nz  # zeros last
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_snf_matches_determinantal_divisors(m):
    rows = m.to_lists()
    factors, free = invariant_factors_by_minors(rows, m.cols)
    assert group_from_presentation(m.cols, m) == AbGroup(factors, free)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_snf_is_idempotent(m):
    d, _, _ = smith_normal_form(m)
    diag = IntMatrix.from_rows([[d[i] if i == j else 0 for j in range(m.cols)] for i in range(m.rows)], m.cols)
    d2, _, _ = smith_normal_form(diag)
    assert d2 == d


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=3, max_cols=3, lo=-6, hi=6))
def test_square_determinant_is_product_of_diagonal(m):
    if m.rows != m.cols:
        return
    d, _, _ = smith_normal_form(m)
    p = 1
    for x in d:
        p *= x
    assert p == abs(_det(m.to_lists()))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n + 1)
    .map(lambda rows: (n, rows))))
def test_presentation_against_brute_force_quotient(case):
    n, rows = case
    g = group_from_presentation(n, rows)
    if not g.is_finite or g.order() > 2000:
        return
    ks = prime_power_divisors(g.order()) + [g.order()]
    counts = brute_force_torsion_counts(rows, n, ks)
    assert counts is not None
    assert counts == counts_from_factors(g.invariant_factors, ks)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 30), max_size=5), st.integers(0, 3))
def test_from_cyclic_orders_preserves_order_and_rank(orders, free):
    g = AbGroup.from_cyclic_orders(orders, free)
    assert g.free_rank == free + orders.count(0)
    expected = 1
    for n in orders:
        if n:
            expected *= n
    assert torsion_order(g) == expected
