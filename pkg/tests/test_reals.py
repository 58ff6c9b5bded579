"""Reals as (representative, context) pairs and the two infinities."""

from fractions import Fraction

import pytest

from hypergrid import (
    MINUS_INFINITY,
    PLUS_INFINITY,
    DomainError,
    ExtendedReal,
    ObservationContext,
    real_from_rational,
)

CTX = ObservationContext(H=1000, K=10**6)


def test_finite_values_keep_their_data():
    x = ExtendedReal(Fraction(1, 3), CTX)
    assert x.is_finite
    assert x.infinity_sign == 0
    assert x.representative == Fraction(1, 3)
    assert x.context is CTX


def test_construction_rejects_unbounded_representatives():
    with pytest.raises(DomainError):
        ExtendedReal(Fraction(10**6 + 1), CTX)


def test_equality_is_indiscernibility_of_representatives():
    x = ExtendedReal(Fraction(0), CTX)
    y = ExtendedReal(Fraction(1, 1000), CTX)
    z = ExtendedReal(Fraction(2, 1000), CTX)
    assert x == y
    assert y == z
    assert x != z  # tolerance relation, not transitive


def test_equality_requires_a_common_context():
    other = ObservationContext(H=10, K=10**6)
    assert ExtendedReal(Fraction(0), CTX) != ExtendedReal(Fraction(0), other)


def test_infinities_compare_by_sign_only():
    assert PLUS_INFINITY == PLUS_INFINITY
    assert MINUS_INFINITY == MINUS_INFINITY
    assert PLUS_INFINITY != MINUS_INFINITY
    assert PLUS_INFINITY != ExtendedReal(Fraction(0), CTX)
    assert not PLUS_INFINITY.is_finite
    assert PLUS_INFINITY.infinity_sign == 1
    assert MINUS_INFINITY.infinity_sign == -1


def test_reals_are_immutable_and_unhashable():
    x = ExtendedReal(Fraction(1, 2), CTX)
    with pytest.raises(AttributeError):
        x.representative = Fraction(1)
    with pytest.raises(TypeError):
        hash(x)


def test_from_rational_clamps_overflow_to_infinities():
    assert real_from_rational(Fraction(10**7), CTX) is PLUS_INFINITY
    assert real_from_rational(Fraction(-10**7), CTX) is MINUS_INFINITY
    finite = real_from_rational(Fraction(5), CTX)
    assert finite.is_finite and finite.representative == 5


def test_repr_is_informative():
    assert "+inf" in repr(PLUS_INFINITY)
    assert "-inf" in repr(MINUS_INFINITY)
    assert "1/2" in repr(ExtendedReal(Fraction(1, 2), CTX))
