import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import p_valuation
from padicforms.arith import (
    Padic,
    is_prime,
    padic_exp,
    padic_log,
    padic_sqrt,
    padic_valuation,
    quad_roots_padic,
    teichmuller,
)
from padicforms.errors import DomainError, NotInGroundFieldError, PrecisionError

PRIMES = st.sampled_from([2, 3, 5, 7, 11, 13])
nonzero_rationals = st.fractions(max_denominator=10**6).filter(lambda x: x != 0)


def test_valuation_basics():
    assert padic_valuation(48, 2) == 4
    assert padic_valuation(Fraction(3, 50), 5) == -2
    assert padic_valuation(0, 7) == math.inf
    assert padic_valuation(Padic(Fraction(9, 2), 3), 3) == 2


@given(st.integers(-10**12, 10**12), PRIMES)
def test_valuation_matches_oracle(n, p):
    assert padic_valuation(n, p) == p_valuation(n, p)


def test_construction_and_repr():
    x = Padic(12, 2, 5)
    assert x.valuation == 2 and x.unit == 3 and x.relprec == 5 and x.absprec == 7
    assert repr(Padic(0, 5, 4)) == "O(5^4)"
    assert Padic(Fraction(1, 3), 3, 4).valuation == -1
    with pytest.raises(DomainError):
        Padic(1, 4)
    with pytest.raises(DomainError):
        Padic(1, 5, 0)


def test_precision_propagates_through_addition():
    a = Padic(1, 5, 3)
    b = Padic(1, 5, 10)
    assert (a + b).absprec == 3
    assert (Padic.zero(5, 4) + 1).absprec == 4
    cancelled = Padic(26, 5, 3) - 1
    assert cancelled.valuation == 2 and cancelled.absprec == 3


def test_multiplication_precision_is_relative():
    x = Padic(25, 5, 3) * Padic(2, 5, 7)
    assert x.valuation == 2 and x.relprec == 3
    z = Padic.zero(5, 4) * Padic(5, 5, 10)
    assert z.is_zero() and z.absprec == 5


def test_inverse_of_fuzzy_zero_is_a_precision_error():
    with pytest.raises(PrecisionError):
        Padic.zero(3, 10).inverse()


@given(nonzero_rationals, nonzero_rationals, PRIMES)
def test_field_axioms_at_precision(a, b, p):
    x, y = Padic(a, p, 30), Padic(b, p, 30)
    assert x * y == Padic(a * b, p, 30)
    assert (x + y) - y == x
    assert (x / y) * y == x
    assert x * x.inverse() == 1


@given(nonzero_rationals, PRIMES)
def test_json_round_trip(a, p):
    x = Padic(a, p, 12)
    assert Padic.from_json(x.to_json()) == x
    z = Padic.zero(p, 6)
    assert Padic.from_json(z.to_json()).absprec == 6


def test_centered_lift_recovers_small_integers():
    assert Padic(-4, 5, 20).centered_lift() == -4
    assert Padic(-24, 2, 30).centered_lift() == -24


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_teichmuller_is_root_of_unity(p):
    for u in range(1, p):
        w = teichmuller(u, p, 15)
        assert w ** (p - 1) == 1
        assert w.residue(1) == u


def test_log_exp_inverse():
    z = Padic(1 + 5 * 7, 5, 20)
    assert padic_exp(padic_log(z)) == z
    y = Padic(3 * 25, 5, 20)
    assert padic_log(padic_exp(y)) == y
    with pytest.raises(DomainError):
        padic_log(Padic(2, 5, 10))
    with pytest.raises(DomainError):
        padic_exp(Padic(2, 5, 10))
    with pytest.raises(DomainError):
        padic_exp(Padic(2, 2, 10))


@given(st.integers(1, 10**6), st.integers(1, 10**6), st.sampled_from([3, 5, 7]))
def test_log_is_a_homomorphism(a, b, p):
    x, y = Padic(1 + p * a, p, 25), Padic(1 + p * b, p, 25)
    assert padic_log(x * y) == padic_log(x) + padic_log(y)


def test_log_known_value():
    # log_3(4) = 3 - 9/2 + 27/3 - ..., and 3 - 9/2 + 9 = 21 mod 27
    assert padic_log(Padic(4, 3, 3)).residue(3) == 21


@given(nonzero_rationals, PRIMES)
def test_sqrt_of_square(a, p):
    x = Padic(a * a, p, 20)
    r = padic_sqrt(x)
    assert r * r == x


def test_sqrt_rejects_non_squares():
    with pytest.raises(NotInGroundFieldError):
        padic_sqrt(Padic(2, 5, 10))
    with pytest.raises(NotInGroundFieldError):
        padic_sqrt(Padic(3, 2, 10))
    with pytest.raises(NotInGroundFieldError):
        padic_sqrt(Padic(5, 5, 10))


def test_quad_roots_for_delta_at_two():
    r1, r2 = quad_roots_padic(24, 2**11, 2, 30)
    assert r1.valuation == 3 and r2.valuation == 8
    assert r1 + r2 == -24
    assert r1 * r2 == 2**11


@given(st.integers(-50, 50), st.integers(-50, 50), PRIMES)
def test_quad_roots_from_known_roots(u, w, p):
    # roots u*p and w with distinct valuations whenever w is a unit
    if w % p == 0 or u == 0:
        return
    a, b = u * p, w
    r1, r2 = quad_roots_padic(-(a + b), a * b, p, 25)
    assert r1 == b and r2 == a


def test_quad_roots_equal_slopes():
    r1, r2 = quad_roots_padic(-5, 6, 7, 20)
    assert sorted([r1.centered_lift(), r2.centered_lift()]) == [2, 3]
    with pytest.raises(NotInGroundFieldError):
        quad_roots_padic(0, -5, 5, 20)


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
