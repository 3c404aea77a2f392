from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fieldquant.scalars import CQ, I, as_cq, format_rational, parse_rational

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 10**6)
cqs = st.builds(CQ, fractions, fractions)


def test_i_squared():
    assert I * I == -1


def test_mixed_operands():
    assert CQ(1, 2) + 1 == CQ(2, 2)
    assert 2 * CQ(0, 1) == CQ(0, 2)
    assert Fraction(1, 2) - CQ(0, 1) == CQ(Fraction(1, 2), -1)


def test_floats_rejected():
    with pytest.raises(TypeError):
        CQ(0.5)
    assert CQ(1).__add__(0.5) is NotImplemented


@pytest.mark.parametrize("text, value", [("3/4", Fraction(3, 4)), ("-2", Fraction(-2)), ("0.25", Fraction(1, 4))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


def test_parse_rational_rejects_garbage():
    with pytest.raises(ValueError):
        parse_rational("one half")


def test_format_and_pair():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert CQ(Fraction(1, 3), -2).to_pair() == ["1/3", "-2"]
    assert as_cq(["1/3", "-2"]) == CQ(Fraction(1, 3), -2)


@given(cqs, cqs)
def test_field_axioms(x, y):
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y).conj() == x.conj() * y.conj()
    assert x.conj().conj() == x
    if y:
        assert (x / y) * y == x
    assert (x * x.conj()).im == 0


@given(cqs)
def test_hash_consistent_with_real(x):
    if not x.im:
        assert hash(x) == hash(x.re)
