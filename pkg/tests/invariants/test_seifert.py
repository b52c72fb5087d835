from fractions import Fraction

import pytest

from quantum_seifert.errors import ManifoldSpecError, NotCoprime, ZeroAlpha
from quantum_seifert.invariants.seifert import (
    BaseOrientability,
    SeifertPresentation,
    lens_space_presentation,
    parse_seifert,
)


def test_parse_normalized_poincare_sphere():
    M = parse_seifert("o;0|-1;(2,1),(3,1),(5,1)")
    assert M.epsilon is BaseOrientability.ORIENTABLE
    assert M.genus == 0
    assert M.b == -1
    assert M.fibers == ((2, 1), (3, 1), (5, 1))
    assert M.euler_number == Fraction(-1, 30)
    assert M.euler_sign == -1


def test_parse_without_fibers_and_without_b():
    assert parse_seifert("o;0|3").fibers == ()
    M = parse_seifert("n;2;(2,1),(3,-1)")
    assert M.b is None
    assert not M.has_b
    assert M.a_eps == 1
    assert M.euler_number == Fraction(-1, 6)


def test_parse_tolerates_spaces():
    assert parse_seifert(" o ; 1 | -2 ; ( 3 , 2 ) ").canonical() == "o;1|-2;(3,2)"


def test_canonical_round_trip():
    for text in ["o;0|-1", "n;2|0;(2,1),(3,1)", "o;3;(4,-1)"]:
        assert parse_seifert(text).canonical() == text
        assert str(parse_seifert(text)) == text


@pytest.mark.parametrize("text, fragment", [
    ("x;0|1", "base type"),
    ("o0|1", "expected ';'"),
    ("o;|1", "genus"),
    ("o;0|1;(2,1", "unclosed pair"),
    ("o;0|1;(2", "unclosed pair"),
    ("o;0|1;(2,1)x", "unexpected"),
    ("o;0|1;2,1", "to open a fiber pair"),
    ("o;0|1;(2;1)", "between alpha and beta"),
])
def test_parse_errors_carry_a_position(text, fragment):
    with pytest.raises(ManifoldSpecError) as exc:
        parse_seifert(text)
    assert fragment in str(exc.value)
    assert exc.value.position is not None
    assert exc.value.text == text


@pytest.mark.parametrize("text", ["o;0|1;(0,1)", "o;0|1;(4,2)", "n;0|1", "o;-1|0"])
def test_invalid_data_is_a_spec_error(text):
    with pytest.raises(ManifoldSpecError):
        parse_seifert(text)


def test_constructor_validation():
    with pytest.raises(ZeroAlpha):
        SeifertPresentation("o", 0, 0, ((-2, 1),))
    with pytest.raises(NotCoprime):
        SeifertPresentation("o", 0, 0, ((6, 4),))
    with pytest.raises(ValueError):
        SeifertPresentation("o", 0, 0, ((3, 4),), normalized=True)


def test_normalize():
    M = parse_seifert("o;0;(2,1),(3,-1),(1,4)")
    N = M.normalize()
    assert N.canonical() == "o;0|3;(2,1),(3,2)"
    assert N.normalized
    assert N.euler_number == M.euler_number


def test_lens_space_presentations():
    assert lens_space_presentation(5, 2).canonical() == "o;0|2;(2,1)"
    assert lens_space_presentation(7, 3).canonical() == "o;0|2;(3,1)"
    assert lens_space_presentation(3, 1).canonical() == "o;0|3"
    assert lens_space_presentation(1, 0).canonical() == "o;0|-1"
    assert lens_space_presentation(0, 1).canonical() == "o;0|0"
    assert lens_space_presentation(5, 2).euler_number == Fraction(-5, 2)
    with pytest.raises(NotCoprime):
        lens_space_presentation(4, 2)
