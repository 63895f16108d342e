from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from dedekind.arith import (
    exact_isqrt,
    factorint,
    first_primes,
    is_prime,
    is_squarefree,
    legendre_valuation,
    parse_rational,
    primes_up_to,
    rational_str,
    round_half_to_zero,
    squarefree_decomposition,
    vp,
)
from dedekind.errors import InvalidArgument


def test_primes_up_to_matches_sympy():
    assert primes_up_to(1000) == list(sympy.primerange(2, 1001))
    assert first_primes(25)[-1] == 97


@given(st.integers(min_value=-10**6, max_value=10**12))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == (n > 1 and sympy.isprime(n))


@given(st.integers(min_value=1, max_value=10**15))
def test_factorint_matches_sympy(n):
    assert factorint(n) == dict(sorted(sympy.factorint(n).items()))


def test_vp_integers_and_fractions():
    assert vp(48, 2) == 4
    assert vp(Fraction(3, 8), 2) == -3
    with pytest.raises(InvalidArgument):
        vp(0, 2)


def test_legendre_examples():
    assert legendre_valuation(10, 2) == 8
    assert legendre_valuation(0, 5) == 0
    with pytest.raises(InvalidArgument):
        legendre_valuation(10, 4)


@given(st.integers(min_value=0, max_value=400), st.sampled_from([2, 3, 5, 7, 11, 97]))
def test_legendre_matches_factorial(n, p):
    f = math.factorial(n)
    assert legendre_valuation(n, p) == (vp(f, p) if f > 1 else 0)


@given(st.integers(min_value=1, max_value=10**9))
def test_squarefree_decomposition(n):
    s, d = squarefree_decomposition(n)
    assert s * s * d == n
    assert is_squarefree(d)


def test_exact_isqrt():
    assert exact_isqrt(144) == 12
    assert exact_isqrt(145) is None


@given(st.fractions())
def test_rational_round_trip(x):
    assert parse_rational(rational_str(x)) == x


def test_parse_rational_rejects_garbage():
    with pytest.raises(InvalidArgument):
        parse_rational("1/0")
    with pytest.raises(InvalidArgument):
        parse_rational("abc")


def test_round_half_to_zero():
    assert round_half_to_zero(Fraction(5, 2)) == 2
    assert round_half_to_zero(Fraction(-5, 2)) == -2
    assert round_half_to_zero(Fraction(7, 3)) == 2
    assert round_half_to_zero(Fraction(-8, 3)) == -3
