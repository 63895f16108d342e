from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from dedekind import poly as P

x = sympy.symbols("x")


def _sym(f):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f)], x)


small = st.lists(st.integers(-9, 9), min_size=2, max_size=6)


def test_discriminants():
    assert P.discriminant(P.poly([1, 0, -10, 0, 1])) == 147456
    assert P.discriminant(P.poly([1, 1, 1, 1, 1])) == 125
    assert P.discriminant(P.poly([1, 0, 1])) == -4


@given(small)
def test_discriminant_matches_sympy(c):
    f = P.poly(c)
    if P.degree(f) < 1:
        return
    assert P.discriminant(f) == Fraction(str(sympy.discriminant(_sym(f))))


def _sylvester(f, g):
    m, n = P.degree(f), P.degree(g)
    fr, gr = list(reversed(f)), list(reversed(g))
    rows = [[0] * i + fr + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + gr + [0] * (m - 1 - i) for i in range(m)]
    return Fraction(str(sympy.Matrix(rows).det()))


def test_resultant_sign_convention():
    # Res(x + 2, x^3) = (-2)^3; note sympy.resultant returns +8 here
    assert P.resultant(P.poly([2, 1]), P.poly([0, 0, 0, 1])) == -8


@given(small, small)
def test_resultant_matches_sylvester(a, b):
    f, g = P.poly(a), P.poly(b)
    if P.degree(f) < 1 or P.degree(g) < 1:
        return
    assert P.resultant(f, g) == _sylvester(f, g)


@given(small, small)
def test_divmod_identity(a, b):
    f, g = P.poly(a), P.poly(b)
    if not g:
        return
    q, r = P.divmod_poly(f, g)
    assert P.add(P.mul(q, g), r) == f
    assert P.degree(r) < P.degree(g)


def test_factor_over_z_examples():
    f = P.mul(P.poly([-2, 0, 1]), P.poly([1, 0, -10, 0, 1]))
    facs = sorted(P.factor_over_z(f), key=lambda t: P.degree(t[0]))
    assert [t[0] for t in facs] == [P.poly([-2, 0, 1]), P.poly([1, 0, -10, 0, 1])]
    assert P.certify_irreducible(P.poly([1, 0, -10, 0, 1]))
    assert not P.certify_irreducible(P.poly([-4, 0, 1]))


@given(st.lists(st.lists(st.integers(-5, 5), min_size=1, max_size=3), min_size=1, max_size=3))
def test_factor_over_z_matches_sympy(parts):
    f = P.poly([1])
    for p in parts:
        f = P.mul(f, P.poly(p + [1]))
    if P.degree(f) < 1:
        return
    ours = sorted((tuple(g), k) for g, k in P.factor_over_z(f))
    _, facs = _sym(f).factor_list()
    theirs = []
    for g, k in facs:
        cs = [Fraction(str(c)) for c in reversed(g.all_coeffs())]
        if cs[-1] < 0:
            cs = [-c for c in cs]
        theirs.append((tuple(cs), k))
    assert ours == sorted(theirs)


def test_to_str():
    assert P.to_str(P.poly([-1, 0, 1])) == "x^2 - 1"
