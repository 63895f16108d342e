from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dedekind.arith import legendre_valuation
from dedekind.closure import ClosureQuery, closure_member
from dedekind.errors import NotAWitnessCase, ResidueCapExceeded
from dedekind.galois import automorphisms
from dedekind.intpoly import (
    beta,
    build_witness,
    image_description,
    int_membership,
    min_g_valuation,
    poly_eval,
    product_valuation,
)
from dedekind.numberfield import RATIONALS, rational_embedding
from dedekind.primes import primes_above, valuation

Q = RATIONALS


def test_product_valuation_examples(gauss):
    P2 = primes_above(Q, 2)[0]
    assert product_valuation(Q(0), [Q(a) for a in range(1, 11)], P2) == 8 == legendre_valuation(10, 2)
    assert product_valuation(Q(0), [], P2) == 0
    G2 = primes_above(gauss, 2)[0]
    assert product_valuation(gauss.zero, [1 + gauss.gen, gauss(2)], G2) == 3


@given(st.integers(0, 3000), st.sampled_from([2, 3, 5, 7, 97]))
def test_legendre_against_product(n, p):
    P = primes_above(Q, p)[0]
    if n <= 300:
        assert product_valuation(Q(0), [Q(a) for a in range(1, n + 1)], P) == legendre_valuation(n, p)
    import math

    m = math.factorial(n)
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    assert legendre_valuation(n, p) == v


def test_beta():
    assert beta(7, 1) == 1
    assert beta(3, 2) == 4
    assert beta(2, 4) == 15


@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 2)])
def test_min_g_over_z(p, m):
    assert min_g_valuation(primes_above(Q, p)[0], m) == beta(p, m)


def test_min_g_gauss(gauss):
    for p in (2, 3, 5):
        for P in primes_above(gauss, p):
            if P.residue_size <= 5:
                for m in (1, 2):
                    assert min_g_valuation(P, m) == beta(P.residue_size, m)


def test_int_membership_examples(gauss):
    assert int_membership([0, Fraction(-1, 2), Fraction(1, 2)], Q)
    assert not int_membership([0, Fraction(1, 2)], Q)
    assert int_membership([Fraction(3)], Q)
    # binomial(x, 3) is integer-valued, x^3/6 is not
    assert int_membership([0, Fraction(1, 3), Fraction(-1, 2), Fraction(1, 6)], Q)
    assert not int_membership([0, 0, 0, Fraction(1, 6)], Q)
    # over Z[i], (x^2 - x)/2 is not integer-valued: f(i) = (-1 - i)/2
    K = gauss
    f = [K.zero, K(Fraction(-1, 2)), K(Fraction(1, 2))]
    assert not int_membership(f, K)
    assert poly_eval(f, K.gen).is_integral() is False
    with pytest.raises(ResidueCapExceeded):
        int_membership([0, Fraction(-1, 2), Fraction(1, 2)], Q, cap=1)


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4), st.integers(1, 12))
def test_int_membership_matches_sampling(coeffs, den):
    f = [Fraction(c, den) for c in coeffs]
    expected = all(
        sum(Fraction(c) * x**i for i, c in enumerate(f)).denominator == 1 for x in range(0, 2 * den * 6 + 1)
    )
    assert int_membership(f, Q) == expected


def test_witness_theta_over_3(gauss):
    base = rational_embedding(gauss)
    G = automorphisms(gauss, base)
    Q3 = primes_above(gauss, 3)[0]
    w = build_witness(gauss.gen, Q3, base, G)
    assert (w.m, w.e, w.beta, w.degree) == (1, 1, 1, 3)
    assert [Fraction(x.coords[0]) for x in w.coeffs] == [0, Fraction(2, 3), -1, Fraction(1, 3)]
    assert w.g_value_valuation == 0 and w.f_value_valuation == -1
    assert int_membership(w.coeffs, Q)


def test_witness_errors(gauss):
    base = rational_embedding(gauss)
    G = automorphisms(gauss, base)
    Q3 = primes_above(gauss, 3)[0]
    with pytest.raises(NotAWitnessCase):
        build_witness(gauss.gen / 3, Q3, base, G)
    with pytest.raises(NotAWitnessCase):
        build_witness(gauss(2), Q3, base, G)


def test_witness_invariants(biquad, zeta5):
    rng = random.Random(11)
    for K in (biquad, zeta5):
        base = rational_embedding(K)
        G = automorphisms(K, base)
        for p in (3, 5, 7):
            for Qp in primes_above(K, p):
                c = K.from_integral([rng.randint(-5, 5) for _ in range(K.degree)])
                if closure_member(ClosureQuery(base, Qp, c, G)):
                    continue
                w = build_witness(c, Qp, base, G, check_int=False)
                if w.degree > 50:
                    continue
                fc = poly_eval([base(a) for a in w.coeffs], c)
                assert valuation(Qp, fc) == w.f_value_valuation < 0
                assert w.g_value_valuation <= w.e * w.beta - 1
                assert w.degree == p**w.m
                assert int_membership(w.coeffs, Q)


def test_image_description(gauss, zeta5):
    base = rational_embedding(Q)
    assert image_description(Q(5), base, 10).kind == "equals-D"
    d = image_description(Q(Fraction(1, 2)), base, 10)
    assert d.kind == "strict-overring-of-D" and [P.p for P in d.excluded] == [2]
    gb = rational_embedding(gauss)
    d = image_description(gauss.gen, gb, 25)
    assert d.kind == "strict-overring-of-E" and not d.incomplete
    for Qp, ok in d.flags:
        assert ok == (Qp.p % 4 == 1)
    # flags are stable when the budget grows
    d2 = image_description(gauss.gen, gb, 30)
    assert d2.flags[: len(d.flags)] == d.flags
    z = zeta5.gen
    d = image_description(z + z**4, rational_embedding(zeta5), 12)
    assert d.F.degree == 2 and d.F.discriminant == 5
    for Qp, ok in d.flags:
        assert ok == (Qp.p % 5 in (1, 4))
