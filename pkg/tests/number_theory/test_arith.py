from fractions import Fraction

import pytest

from quantum_seifert.errors import NotCoprime, NotUnimodular, ZeroDenominator
from quantum_seifert.number_theory.arith import (
    IDENTITY,
    THETA,
    XI,
    ContinuedFraction,
    SL2ZMatrix,
    cf_expand,
    cf_expand_pair,
    cf_for_matrix,
    decompose_sl2z,
    dedekind_sum,
    dedekind_sum_cotangent,
    mod_inverse,
    rademacher_phi,
    sign,
    theta_power,
    word_matrix,
)


def test_sign_of_zero():
    assert sign(0) == 0
    assert sign(-3) == -1
    assert sign(Fraction(1, 7)) == 1


def test_matrix_must_be_unimodular():
    with pytest.raises(NotUnimodular):
        SL2ZMatrix(2, 0, 0, 1)


def test_generator_relations():
    assert XI ** 2 == -IDENTITY
    assert XI ** 4 == IDENTITY
    assert (XI @ THETA) ** 3 == XI ** 2
    assert THETA ** -2 == theta_power(-2)


def test_word_matrix():
    assert word_matrix([("xi", 1), ("theta", 3)]) == XI @ theta_power(3)
    with pytest.raises(ValueError):
        word_matrix([("sigma", 1)])


@pytest.mark.parametrize("s, q, expected", [
    (1, 3, Fraction(1, 18)),
    (1, 5, Fraction(1, 5)),
    (2, 5, Fraction(0)),
    (-1, 5, Fraction(-1, 5)),
    (1, 1, Fraction(0)),
    (3, 7, Fraction(-1, 14)),
])
def test_dedekind_sum_values(s, q, expected):
    assert dedekind_sum(s, q) == expected


@pytest.mark.parametrize("s, q", [(1, 3), (2, 5), (3, 7), (5, 12), (7, 30), (-4, 9)])
def test_dedekind_sum_matches_cotangent_form(s, q):
    assert float(dedekind_sum(s, q)) == pytest.approx(dedekind_sum_cotangent(s, q), abs=1e-12)


def test_dedekind_reciprocity():
    for s, q in [(3, 7), (5, 13), (8, 21)]:
        lhs = dedekind_sum(s, q) + dedekind_sum(q, s)
        assert lhs == Fraction(s * s + q * q + 1, 12 * s * q) - Fraction(1, 4)


def test_dedekind_sum_errors():
    with pytest.raises(NotCoprime):
        dedekind_sum(2, 4)
    with pytest.raises(ZeroDenominator):
        dedekind_sum(1, 0)


def test_rademacher_phi():
    assert rademacher_phi(XI) == 0
    assert rademacher_phi(theta_power(5)) == 5
    assert rademacher_phi(SL2ZMatrix(1, 0, 1, 1)) == 2


def test_phi_cocycle_on_theta_powers():
    # Phi(U Theta^n) = Phi(U) + n
    U = SL2ZMatrix(2, 1, 5, 3)
    assert rademacher_phi(U @ theta_power(4)) == rademacher_phi(U) + 4


def test_mod_inverse():
    assert mod_inverse(3, 7) == 5
    assert mod_inverse(4, 1) == 0
    with pytest.raises(NotCoprime):
        mod_inverse(2, 6)


@pytest.mark.parametrize("target", [Fraction(5, 2), Fraction(-7, 3), Fraction(4), Fraction(13, 8), Fraction(0)])
def test_cf_expand_nested_value(target):
    C = cf_expand(target)
    assert C.nested_value() == target
    B = C.matrix()
    assert Fraction(B.a, B.c) == target


def test_cf_expand_terms_and_matrix():
    C = cf_expand(Fraction(5, 2))
    assert C.terms == (2, 3)
    assert C.matrix() == SL2ZMatrix(5, -3, 2, -1)


def test_cf_expand_pair_errors():
    with pytest.raises(ZeroDenominator):
        cf_expand_pair(3, 0)
    with pytest.raises(NotCoprime):
        cf_expand_pair(4, 2)


def test_empty_continued_fraction():
    with pytest.raises(ZeroDenominator):
        ContinuedFraction(()).nested_value()
    assert ContinuedFraction(()).matrix() == IDENTITY


def test_sign_changes():
    assert ContinuedFraction((2, 3)).sign_changes() == 2


@pytest.mark.parametrize("U", [
    SL2ZMatrix(2, 1, 5, 3),
    SL2ZMatrix(-3, 2, 4, -3),
    SL2ZMatrix(0, -1, 1, 4),
    SL2ZMatrix(-1, 3, 0, -1),
    SL2ZMatrix(1, 0, -7, 1),
])
def test_decompose_reconstructs(U):
    eps, C, n = decompose_sl2z(U)
    product = C.matrix() @ theta_power(n)
    assert product == (U if eps == 1 else -U)


@pytest.mark.parametrize("V", [IDENTITY, -IDENTITY, THETA, SL2ZMatrix(2, 1, 5, 3), SL2ZMatrix(-3, 2, 4, -3)])
def test_cf_for_matrix_is_exact(V):
    assert cf_for_matrix(V).matrix() == V
