from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from dedekind import lattice as lat

mat = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=1, max_size=6)
)


def _is_hnf(H):
    nz = [r for r in H if any(r)]
    last = -1
    for i, r in enumerate(nz):
        c = next(j for j, a in enumerate(r) if a)
        assert c > last and r[c] > 0
        for k in range(i):
            assert 0 <= nz[k][c] < r[c]
        last = c
    assert all(not any(r) for r in H[len(nz):])
    return True


def test_examples():
    assert lat.hnf([[2, 0], [1, 1]]) == [[1, 1], [0, 2]]
    assert lat.hnf([[0, 0], [0, 0]]) == [[0, 0], [0, 0]]
    assert lat.hnf([[1, 0], [0, 1]]) == [[1, 0], [0, 1]]


@given(mat)
def test_hnf_shape_and_form(M):
    H = lat.hnf(M)
    assert len(H) == len(M) and _is_hnf(H)


@given(mat)
def test_hnf_same_lattice(M):
    H = lat.hnf_basis(M)
    for r in M:
        assert lat.in_lattice(H, r)
    # every HNF row is an integer combination of the generators
    for r in H:
        assert lat.lattice_decompose(M, r) is not None


@given(mat)
def test_transform(M):
    H, U = lat.hnf_with_transform(M)
    assert lat.mat_mul(U, M) == H
    assert abs(sympy.Matrix(U).det()) == 1


@given(mat)
def test_rank_matches_sympy(M):
    assert len(lat.hnf_basis(M)) == sympy.Matrix(M).rank()


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_modular_hnf_agrees(M):
    d = abs(int(sympy.Matrix(M).det()))
    if d == 0:
        return
    assert lat.hnf(M, d) == lat.hnf(M)
    assert lat.determinant_hnf(lat.hnf(M)) == d
    assert lat.determinant(M) == sympy.Matrix(M).det()


def test_saturation():
    assert lat.saturation([[2, 4, 6]]) == [[1, 2, 3]]
    S = lat.saturation([[1, 1, 0], [0, 2, 2]])
    assert S == lat.hnf_basis([[1, 1, 0], [0, 1, 1]])


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse(M):
    if sympy.Matrix(M).det() == 0:
        return
    inv = lat.mat_inverse(M)
    assert lat.mat_mul(M, inv) == [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
