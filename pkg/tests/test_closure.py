from __future__ import annotations

import random

import pytest

from dedekind.closure import (
    ClosureQuery,
    approx_member,
    closure_intersection_probe,
    closure_member,
    is_dense,
    is_relatively_closed,
    least_failing_level,
    non_member_level,
)
from dedekind.errors import InvalidArgument, LevelCapExceeded, MethodUnavailable
from dedekind.galois import automorphisms, decomposition_group
from dedekind.numberfield import rational_embedding, subfield_from_element
from dedekind.primes import primes_above, valuation


def setup(K):
    base = rational_embedding(K)
    return base, automorphisms(K, base)


def q_for(K, p, c, i=0):
    base, G = setup(K)
    return ClosureQuery(base, primes_above(K, p)[i], c, G)


def test_gauss_examples(gauss):
    t = gauss.gen
    Q5 = next(Q for Q in primes_above(gauss, 5) if Q.contains(t - 2))
    base, G = setup(gauss)
    q = ClosureQuery(base, Q5, t, G)
    assert closure_member(q)
    w = approx_member(q, 3)
    assert w.member and valuation(Q5, t - base(w.approximant)) >= 3
    a = int(w.approximant.coords[0])
    assert (a * a + 1) % 125 == 0
    q3 = q_for(gauss, 3, t)
    assert not closure_member(q3)
    w3 = approx_member(q3, 1)
    assert not w3.member and w3.m == 1
    assert non_member_level(q_for(gauss, 2, t)).failing_level == 2


def test_base_elements_always_members(zeta5):
    base, G = setup(zeta5)
    for p in (2, 5, 11, 19):
        for Q in primes_above(zeta5, p):
            q = ClosureQuery(base, Q, zeta5(7), G)
            assert closure_member(q)
            w = approx_member(q, 5)
            assert w.member and w.approximant == base.source(7)


def test_negative_valuation(gauss):
    q = q_for(gauss, 3, gauss.gen / 3)
    assert not closure_member(q)
    w = approx_member(q, 2)
    assert not w.member and w.m == 0


def test_errors(gauss, sqrt2):
    base = rational_embedding(gauss)
    Q = primes_above(gauss, 3)[0]
    with pytest.raises(MethodUnavailable):
        closure_member(ClosureQuery(base, Q, gauss.gen))
    with pytest.raises(InvalidArgument):
        ClosureQuery(base, Q, sqrt2.gen)
    with pytest.raises(InvalidArgument):
        approx_member(ClosureQuery(base, Q, gauss.gen), 0)
    with pytest.raises(LevelCapExceeded):
        # rational integers never fail; ask for the failing level anyway
        non_member_level(ClosureQuery(base, Q, gauss(3)), cap=8)


def test_dense_and_closed(gauss):
    base, G = setup(gauss)
    Q5, Q2, Q3 = primes_above(gauss, 5)[0], primes_above(gauss, 2)[0], primes_above(gauss, 3)[0]
    assert is_dense(base, Q5) and not is_dense(base, Q2)
    assert is_relatively_closed(base, Q3) and not is_relatively_closed(base, Q5)
    # L = base
    from dedekind.numberfield import RATIONALS

    QQ = primes_above(RATIONALS, 7)[0]
    ident = rational_embedding(RATIONALS)
    assert is_dense(ident, QQ) and is_relatively_closed(ident, QQ)


def test_method_agreement_random(zeta5, biquad):
    rng = random.Random(7)
    for K in (zeta5, biquad):
        base, G = setup(K)
        for p in (3, 5, 7, 11, 19, 29):
            for Q in primes_above(K, p):
                for _ in range(8):
                    c = K.from_integral([rng.randint(-30, 30) for _ in range(K.degree)])
                    q = ClosureQuery(base, Q, c, G)
                    if closure_member(q):
                        assert all(approx_member(q, k).member for k in range(1, 13))
                    else:
                        j = least_failing_level(base, Q, c)
                        assert j is not None
                        assert approx_member(q, j).failing_level == j
                        if j > 1:
                            assert approx_member(q, j - 1).member


def test_relative_extension(biquad):
    """Q(sqrt2) inside Q(sqrt2, sqrt3): only the lattice method and the group over the base."""
    t = biquad.gen
    Z, emb = subfield_from_element(biquad, (t**3 - 9 * t) / 2)
    G = automorphisms(biquad, emb)
    assert G.order == 2
    s3 = (11 * t - t**3) / 2
    for p in (5, 7, 11, 13, 23):
        for Q in primes_above(biquad, p):
            q = ClosureQuery(emb, Q, s3, G)
            member = closure_member(q)
            assert member == (len(decomposition_group(G, Q)) == 1)
            assert member == (least_failing_level(emb, Q, s3, cap=16) is None)
            assert is_dense(emb, Q, G) == member


def test_probe(gauss, biquad):
    base, G = setup(gauss)
    r = closure_intersection_probe(base, gauss.gen, 25, G)
    assert r.status == "witness" and r.prime.p == 2
    assert closure_intersection_probe(base, gauss(4), 25, G).status == "member-of-base"
    bb, BG = setup(biquad)
    r = closure_intersection_probe(bb, biquad.gen, 25, BG)
    assert r.status == "witness" and r.prime.p <= 50 and 2 in r.skipped
    assert not closure_member(ClosureQuery(bb, r.prime, biquad.gen, BG))
    with pytest.raises(InvalidArgument):
        closure_intersection_probe(base, gauss.gen / 2, 25, G)
