"""Finite-field counting oracle: field arithmetic, classification, enumeration."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hecke2d import (
    BasisIndex,
    EnumerationError,
    FieldElem2,
    LocalFieldMatrix,
    classify,
    enumerate_reps,
    product_counts,
    valuation,
)
from hecke2d.oracle import (
    INFINITE,
    eta_matrix,
    identity_matrix,
    in_iwahori,
    iwahori_sample,
    parse_field_elem,
    parse_matrix,
)


def _mono(e1, e2, c=1, q=2):
    return FieldElem2.monomial(q, e1, e2, c)


_exps = st.integers(-3, 3)
_field_elems = st.builds(
    lambda pairs: sum(
        (_mono(e1, e2, c, 3) for (e1, e2), c in pairs.items()),
        FieldElem2.zero(3),
    ),
    st.dictionaries(st.tuples(_exps, _exps), st.integers(1, 2), max_size=4),
)


@given(_field_elems, _field_elems, _field_elems)
def test_field_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) * z == x * z + y * z
    assert x - x == FieldElem2.zero(3)


@given(_field_elems, _field_elems)
def test_valuation_is_multiplicative(x, y):
    vx, vy = valuation(x), valuation(y)
    if vx == INFINITE or vy == INFINITE:
        assert valuation(x * y) == INFINITE
    else:
        assert valuation(x * y) == (vx[0] + vy[0], vx[1] + vy[1])


@given(_field_elems, _field_elems)
def test_valuation_of_sum(x, y):
    def key(v):
        return (float("inf"), float("inf")) if v == INFINITE else (v[1], v[0])

    assert key(valuation(x + y)) >= min(key(valuation(x)), key(valuation(y)))


def test_valuation_ordering_is_right_lexicographic():
    assert valuation(_mono(5, 0)) == (5, 0)
    assert valuation(_mono(5, 0) + _mono(-9, 1)) == (5, 0)
    assert valuation(_mono(0, -1) + _mono(1, 0)) == (0, -1)
    assert valuation(FieldElem2.zero(2)) == INFINITE


def test_coefficients_reduce_mod_q():
    assert _mono(0, 0, 2, 2) == FieldElem2.zero(2)
    assert _mono(1, 1, 5, 3) == _mono(1, 1, 2, 3)


def test_mixed_moduli_rejected():
    with pytest.raises(ValueError):
        _mono(0, 0, 1, 2) + _mono(0, 0, 1, 3)


def test_parse_field_elem():
    assert parse_field_elem("t1*t2", 2) == _mono(1, 1)
    assert parse_field_elem("1+t1", 2) == _mono(0, 0) + _mono(1, 0)
    assert parse_field_elem("t1^-2*t2 + 2", 3) == _mono(-2, 1, 1, 3) + _mono(0, 0, 2, 3)
    with pytest.raises(ValueError):
        parse_field_elem("t3", 2)


def test_parse_matrix_and_determinant():
    m = parse_matrix("[[t1*t2,0],[0,t1^-1*t2^-1]]", 2)
    assert m == eta_matrix(1, 1, 1, 2)
    with pytest.raises(ValueError):
        parse_matrix("[[1,1],[t1,1]]", 2)  # determinant t1 short of 1


def test_matrix_group_structure():
    q = 3
    e = identity_matrix(q)
    g = eta_matrix(2, 1, -1, q)
    assert g * g.inverse() == e
    assert (g * g).inverse() == g.inverse() * g.inverse()
    with pytest.raises(ValueError):
        LocalFieldMatrix(_mono(0, 0), _mono(0, 0), _mono(0, 0), _mono(0, 0))


def test_eta_matrices_have_their_own_labels():
    for q in (2, 3):
        for a in (1, 2):
            for i in (-2, 0, 1, 2):
                for j in (-1, 0, 1):
                    assert classify(eta_matrix(a, i, j, q)) == BasisIndex(a, i, j)


def test_classify_literal_example():
    assert classify(parse_matrix("[[1,1],[t1,1+t1]]", 2)) == BasisIndex(1, 0, 0)


def test_classify_rejects_singular_input():
    with pytest.raises(ValueError):
        parse_matrix("[[0,0],[0,0]]", 2)


def test_iwahori_membership():
    q = 2
    assert in_iwahori(identity_matrix(q))
    assert in_iwahori(parse_matrix("[[1,1],[t1,1+t1]]", q))
    assert not in_iwahori(eta_matrix(1, 1, 0, q))  # diagonal below the lattice
    assert not in_iwahori(parse_matrix("[[1,0],[1,1]]", q))  # unit lower-left corner


def test_rep_counts():
    for q in (2, 3):
        for i in range(0, 4):
            assert len(enumerate_reps(1, i, q)) == q ** (2 * i)
            assert len(enumerate_reps(2, i, q)) == q ** (2 * i + 1)
        for i in range(-3, 0):
            assert len(enumerate_reps(1, i, q)) == q ** (-2 * i)
            assert len(enumerate_reps(2, i, q)) == q ** (-2 * i - 1)


def test_reps_classify_home():
    for a in (1, 2):
        for i in (-2, -1, 0, 1, 2):
            for z in enumerate_reps(a, i, 2):
                assert classify(z) == BasisIndex(a, i, 0)


def test_reps_pairwise_inequivalent():
    # distinct representatives must not differ by a right Iwahori factor
    for a, i in [(1, 1), (1, -1), (2, 0), (2, 1), (2, -1)]:
        reps = enumerate_reps(a, i, 2)
        for n, z in enumerate(reps):
            for w in reps[n + 1 :]:
                assert not in_iwahori(w * z.inverse())
                assert not in_iwahori(z * w.inverse())


def test_enumeration_domain_errors():
    with pytest.raises(EnumerationError):
        enumerate_reps(3, 0, 2)
    with pytest.raises(EnumerationError):
        enumerate_reps(1, 9, 2)
    with pytest.raises(EnumerationError):
        enumerate_reps(1, 0, 4)  # not a supported residue size


def test_product_counts_frozen_example():
    x = BasisIndex(2, 0, 0)
    assert product_counts(x, x, 2) == {
        BasisIndex(1, 0, 0): Fraction(1),
        BasisIndex(2, 0, 0): Fraction(1, 2),
    }
    assert product_counts(x, x, 3) == {
        BasisIndex(1, 0, 0): Fraction(1),
        BasisIndex(2, 0, 0): Fraction(2, 3),
    }


def test_product_counts_requires_level_zero():
    with pytest.raises(EnumerationError):
        product_counts(BasisIndex(1, 0, 1), BasisIndex(1, 0, 0), 2)


def test_iwahori_sample_stays_in_iwahori():
    rng = random.Random(11)
    for q in (2, 3):
        for _ in range(25):
            g = iwahori_sample(rng, q)
            assert in_iwahori(g)


def test_classification_is_coset_invariant():
    rng = random.Random(5)
    for _ in range(40):
        q = rng.choice((2, 3))
        a, i, j = rng.choice((1, 2)), rng.randint(-2, 2), rng.randint(-1, 1)
        g, h = iwahori_sample(rng, q), iwahori_sample(rng, q)
        assert classify(g * eta_matrix(a, i, j, q) * h) == BasisIndex(a, i, j)
