"""Independent reference computations (sympy) used by the tests."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache

import sympy
from sympy.polys.numberfields.basis import round_two
from sympy.polys.numberfields.primes import prime_decomp

X = sympy.symbols("x")


def sym_poly(coeffs):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], X)


@lru_cache(maxsize=None)
def _round_two(coeffs):
    return round_two(sym_poly(coeffs))


def field_discriminant(K) -> int:
    return int(_round_two(tuple(K.poly))[1])


@lru_cache(maxsize=None)
def _decomp(coeffs, p):
    return tuple(sorted((P.e, P.f) for P in prime_decomp(p, sym_poly(coeffs))))


def splitting_pattern(K, p) -> tuple:
    return _decomp(tuple(K.poly), p)


def sylvester_resultant(f, g) -> Fraction:
    fr = [c for c in reversed(f)]
    gr = [c for c in reversed(g)]
    while gr and gr[0] == 0:
        gr = gr[1:]
    m, n = len(fr) - 1, len(gr) - 1
    if n < 0:
        return Fraction(0)
    if n == 0:
        return Fraction(gr[0]) ** m
    rows = [[0] * i + fr + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + gr + [0] * (m - 1 - i) for i in range(m)]
    return Fraction(str(sympy.Matrix(rows).det()))


def element_norm(x) -> Fraction:
    """N(g(theta)) = Res(f, g) for monic f."""
    return sylvester_resultant(x.field.poly, list(x.coords))


def charpoly(x) -> list[Fraction]:
    M = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in x.mult_matrix()])
    cp = M.charpoly(X)
    return [Fraction(str(c)) for c in reversed(cp.all_coeffs())]


def pattern(primes) -> tuple:
    return tuple(sorted(Counter((Q.e, Q.f) for Q in primes).elements()))
