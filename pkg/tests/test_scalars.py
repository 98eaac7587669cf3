from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlogic.errors import DescriptorMismatch, NonPositiveInput, ParseError
from qlogic.scalars import (QQ, automorphism, format_scalar, is_rational_square, parse_scalar,
                            quadratic)

from .oracles import is_square_by_factoring
from .strategies import quadratic_pairs, rationals

FIELDS = {d: quadratic(d) for d in (-1, 2, -3, 5)}


def scalar(t):
    d, a, b = t
    return FIELDS[d](a, b)


@st.composite
def same_field_triples(draw):
    d = draw(st.sampled_from(sorted(FIELDS)))
    K = FIELDS[d]
    return tuple(K(draw(rationals), draw(rationals)) for _ in range(3))


@given(same_field_triples())
def test_ring_axioms(xyz):
    x, y, z = xyz
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x


@given(quadratic_pairs())
def test_inverse(t):
    x = scalar(t)
    if x.is_zero():
        return
    assert x * x.inverse() == x.field.one
    assert x / x == x.field.one


@given(same_field_triples())
def test_conj_is_an_involutive_automorphism(xyz):
    x, y, _ = xyz
    assert x.conj().conj() == x
    assert (x + y).conj() == x.conj() + y.conj()
    assert (x * y).conj() == x.conj() * y.conj()


@given(rationals, st.sampled_from(sorted(FIELDS)))
def test_conj_fixes_rationals(q, d):
    assert FIELDS[d](q).conj() == FIELDS[d](q)


@given(quadratic_pairs())
def test_parse_format_roundtrip(t):
    x = scalar(t)
    assert parse_scalar(format_scalar(x), x.field) == x


def test_conj_of_gaussian():
    K = quadratic(-1)
    assert K(1, 2).conj() == K(1, -2)
    assert K(1, 2) * K(1, 2).conj() == K(5)


def test_mixing_fields_is_an_error():
    with pytest.raises(DescriptorMismatch):
        quadratic(-1)(1) + quadratic(2)(1)


@pytest.mark.parametrize("d", [0, 1, 4, -4, 12])
def test_bad_radicand(d):
    with pytest.raises(ValueError):
        quadratic(d)


@pytest.mark.parametrize("text", ["", "1 +", "2*rx", "1//2"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_scalar(text, quadratic(2))


def test_rt_in_rational_field_is_rejected():
    with pytest.raises(ParseError):
        parse_scalar("1 + rt", QQ)


@pytest.mark.parametrize("q,root", [(Fraction(25, 4), Fraction(5, 2)), (Fraction(49, 9), Fraction(7, 3)),
                                    (2, None), (1, Fraction(1)), (Fraction(8, 2), Fraction(2))])
def test_square_examples(q, root):
    assert is_rational_square(q) == root


@pytest.mark.parametrize("q", [0, -1, Fraction(-9, 4)])
def test_square_needs_positive_input(q):
    with pytest.raises(NonPositiveInput):
        is_rational_square(q)


@settings(max_examples=300)
@given(st.integers(1, 5000), st.integers(1, 5000))
def test_square_agrees_with_factoring(n, d):
    q = Fraction(n, d)
    r = is_rational_square(q)
    assert (r is not None) == is_square_by_factoring(q)
    if r is not None:
        assert r * r == q and r > 0


@given(quadratic_pairs())
def test_sqrt_of_a_square_is_found(t):
    x = scalar(t)
    r = x.field.sqrt(x * x)
    assert r is not None and r * r == x * x


def test_sqrt_absent():
    R = quadratic(2)
    assert R.sqrt(R(3)) is None
    assert R.sqrt(R(-1)) is None
    assert R.sqrt(R(3, 2)) == R(1, 1)
    assert R.sqrt(R(2)) == R(0, 1)
    assert QQ.sqrt(QQ(2)) is None


def test_automorphisms():
    K = quadratic(-1)
    g = automorphism(K, "conj")
    assert g(K(1, 1)) == K(1, -1)
    assert g.compose(g).name == "id"
    assert [a.name for a in QQ.automorphisms()] == ["id"]
    with pytest.raises(ValueError):
        automorphism(QQ, "conj")


def test_order_only_on_real_elements():
    R = quadratic(2)
    assert R(-1, 1) > 0 and R(1, -1) < 0
    with pytest.raises(ValueError):
        quadratic(-1)(1, 1).sign()
