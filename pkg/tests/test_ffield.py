from __future__ import annotations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from dedekind import ffield as F
from dedekind.errors import InvalidArgument

x = sympy.symbols("x")
PRIMES = [2, 3, 5, 7, 13, 101, 7919]


def _sympy_factor(f, p):
    poly = sympy.Poly(list(reversed(f)), x, modulus=p)
    _, facs = poly.factor_list()
    out = []
    for g, k in facs:
        cs = [int(c) % p for c in reversed(g.all_coeffs())]
        inv = pow(cs[-1], -1, p)
        out.append((tuple(c * inv % p for c in cs), k))
    return sorted(out, key=lambda t: (len(t[0]), list(reversed(t[0])), t[1]))


def test_small_examples():
    assert F.factor_mod_p([1, 0, 1], 5) == [((2, 1), 1), ((3, 1), 1)]
    assert F.factor_mod_p([1, 0, 1], 3) == [((1, 0, 1), 1)]
    assert F.factor_mod_p([0, 0, 1], 2) == [((0, 1), 2)]


def test_zero_polynomial_rejected():
    with pytest.raises(InvalidArgument):
        F.factor_mod_p([0, 0], 5)
    with pytest.raises(InvalidArgument):
        F.factor_mod_p([1, 1], 4)


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=9), st.sampled_from(PRIMES))
def test_factorization_matches_sympy(coeffs, p):
    f = F.reduce(coeffs, p)
    if len(f) < 2:
        return
    assert F.factor_mod_p(f, p) == _sympy_factor(f, p)


@given(st.lists(st.integers(0, 100), min_size=2, max_size=8), st.sampled_from(PRIMES), st.integers(0, 10))
def test_factors_multiply_back(coeffs, p, seed):
    f = F.reduce(coeffs, p)
    if len(f) < 2:
        return
    prod = [1]
    for h, k in F.factor_mod_p(f, p, seed=seed):
        assert F.is_irreducible_mod_p(list(h), p)
        for _ in range(k):
            prod = F.mul(prod, list(h), p)
    assert prod == F.monic(f, p)


def test_seed_independence():
    f = [3, 1, 4, 1, 5, 9, 2, 6, 1]
    assert F.factor_mod_p(f, 10007, seed=1) == F.factor_mod_p(f, 10007, seed=99)


@given(st.lists(st.integers(0, 30), min_size=1, max_size=6),
       st.lists(st.integers(0, 30), min_size=1, max_size=6), st.sampled_from([3, 7, 31]))
def test_divmod_and_gcd(a, b, p):
    a, b = F.reduce(a, p), F.reduce(b, p)
    if not b:
        return
    q, r = F.divmod_(a, b, p)
    assert F.add(F.mul(q, b, p), r, p) == a
    assert len(r) < len(b)
    g, s, t = F.xgcd(a, b, p)
    assert F.add(F.mul(s, a, p), F.mul(t, b, p), p) == g
