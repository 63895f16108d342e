from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dedekind.errors import InvalidArgument, NotInRing, NotUnimodular, SearchCap, UnsupportedRing
from dedekind.ge2 import (
    ElementaryOp,
    ReductionTrace,
    apply_ops,
    bounded_search,
    integers_ring,
    is_unimodular,
    localization,
    parse_ring,
    quadratic_integers,
    raise_on_cap,
    reduce_euclidean,
    reduce_localized,
    reduce_residue_ring,
    scale_trace,
    unit_fixup,
    verify_reduction,
)

Z = integers_ring()
ZZ = Z.field


def test_is_unimodular_examples():
    assert is_unimodular((ZZ(5), ZZ(3)), Z)
    assert not is_unimodular((ZZ(2), ZZ(4)), Z)
    assert is_unimodular((ZZ(2), ZZ(4)), localization(Z, [2]))
    assert is_unimodular((ZZ(0), ZZ(1)), Z)
    with pytest.raises(NotInRing):
        is_unimodular((ZZ(Fraction(1, 3)), ZZ(1)), localization(Z, [2]))


def test_apply_ops_examples():
    p = (ZZ(5), ZZ(3))
    assert apply_ops(p, []) == p
    assert apply_ops((ZZ(1), ZZ(0)), [ElementaryOp(2, ZZ(7))]) == (ZZ(1), ZZ(7))
    with pytest.raises(InvalidArgument):
        ElementaryOp(3, ZZ(1))


def test_euclid_5_3():
    t = reduce_euclidean((ZZ(5), ZZ(3)), Z)
    assert verify_reduction(t) and t.end == (ZZ(1), ZZ(0))
    assert len(reduce_euclidean((ZZ(1), ZZ(0)), Z)) == 0
    R = quadratic_integers(-1)
    K = R.field
    t = reduce_euclidean((K.element([2, 1]), K.element([1, -1])), R)
    assert verify_reduction(t)
    with pytest.raises(NotUnimodular):
        reduce_euclidean((ZZ(4), ZZ(6)), Z)
    with pytest.raises(UnsupportedRing):
        reduce_euclidean((ZZ(1), ZZ(2)), quadratic_integers(-5))


def test_unit_fixup_golden():
    ops = unit_fixup((ZZ(-1), ZZ(0)), Z)
    assert [(o.side, o.multiplier) for o in ops] == [(2, ZZ(-1)), (1, ZZ(2)), (2, ZZ(-1))]
    assert apply_ops((ZZ(-1), ZZ(0)), ops) == (ZZ(1), ZZ(0))
    ops = unit_fixup((ZZ(0), ZZ(-1)), Z)
    assert [(o.side, o.multiplier) for o in ops] == [(1, ZZ(-1)), (2, ZZ(1))]
    assert apply_ops((ZZ(0), ZZ(-1)), ops) == (ZZ(1), ZZ(0))
    R = localization(Z, [2])
    ops = unit_fixup((ZZ(2), ZZ(0)), R)
    assert apply_ops((ZZ(2), ZZ(0)), ops) == (ZZ(1), ZZ(0))
    with pytest.raises(NotUnimodular):
        unit_fixup((ZZ(3), ZZ(0)), R)


def test_localized_examples():
    Z2, Z6 = localization(Z, [2]), localization(Z, [2, 3])
    for pair, R in [((Fraction(3, 2), 5), Z2), ((2, 0), Z2), ((2, 3), Z6), ((Fraction(5, 6), 7), Z6)]:
        t = reduce_localized(tuple(ZZ(x) for x in pair), R)
        assert verify_reduction(t)


def test_verifier_rejects_bad_traces():
    t = reduce_euclidean((ZZ(5), ZZ(3)), Z)
    bad_start = ReductionTrace(Z, (ZZ(4), ZZ(6)), t.ops, apply_ops((ZZ(4), ZZ(6)), t.ops))
    assert not verify_reduction(bad_start)
    wrong_end = ReductionTrace(Z, t.start, t.ops, (ZZ(1), ZZ(1)))
    assert not verify_reduction(wrong_end)
    truncated = ReductionTrace(Z, t.start, t.ops[:-1], t.end)
    assert not verify_reduction(truncated)


def mutate(trace, rng):
    ops = list(trace.ops)
    i = rng.randrange(len(ops))
    K = trace.ring.field
    delta = K.from_integral([rng.choice([-2, -1, 1, 2]) if j == 0 or rng.random() < 0.5 else 0 for j in range(K.degree)])
    ops[i] = ElementaryOp(ops[i].side, ops[i].multiplier + delta)
    return ReductionTrace(trace.ring, trace.start, ops, trace.end)


def random_pair(R, rng, bound=60):
    K = R.field
    while True:
        a = K.from_integral([rng.randint(-bound, bound) for _ in range(K.degree)])
        b = K.from_integral([rng.randint(-bound, bound) for _ in range(K.degree)])
        if is_unimodular((a, b), R):
            return a, b


DENOMS = {"Z[1/6]": [1, 2, 3, 4, 6, 9], "Z[i][1/5]": [1, 5, 25]}


@pytest.mark.parametrize("spec", ["Z", "Z[i]", "Z[sqrt(-2)]", "O(-3)", "O(-7)", "O(-11)", "O(2)", "O(3)", "O(5)",
                                  "O(6)", "O(7)", "O(13)", "Z[1/6]", "Z[i][1/5]"])
def test_fuzz_and_mutation(spec):
    R = parse_ring(spec)
    rng = random.Random(spec)
    for _ in range(40):
        a, b = random_pair(R, rng)
        if spec in DENOMS:
            a = a / rng.choice(DENOMS[spec])
        t = reduce_localized((a, b), R)
        assert verify_reduction(t)
        if len(t):
            assert not verify_reduction(mutate(t, rng))


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_integers_property(a, b):
    pair = (ZZ(a), ZZ(b))
    if not is_unimodular(pair, Z):
        with pytest.raises(NotUnimodular):
            reduce_euclidean(pair, Z)
        return
    t = reduce_euclidean(pair, Z)
    assert verify_reduction(t)
    # ops preserve the ideal (a, b)
    apply_ops(pair, t.ops, Z, check=True)
    for u in (ZZ(-1),):
        assert verify_reduction(scale_trace(t, u))


def test_scale_trace_gauss():
    R = quadratic_integers(-1)
    K = R.field
    t = reduce_euclidean((K.element([3, 0]), K.element([2, 1])), R)
    for u in (K.gen, -K.gen, -K.one):
        s = scale_trace(t, u)
        assert s.start == (u * t.start[0], u * t.start[1]) and verify_reduction(s)
    with pytest.raises(InvalidArgument):
        scale_trace(t, K(2))


def test_residue_ring_pipeline():
    t, desc = reduce_residue_ring([1, 0, 1], ([0, 1], 2))
    assert verify_reduction(t) and desc.kind == "strict-overring-of-E"
    t, desc = reduce_residue_ring([-1, 2], (3, 4))
    assert verify_reduction(t) and desc.kind == "strict-overring-of-D"
    t, desc = reduce_residue_ring([-3, 1], (7, 5))
    assert verify_reduction(t) and desc.kind == "equals-D"
    with pytest.raises(UnsupportedRing):
        reduce_residue_ring([1, 0, 0, 1], (1, 0))
    with pytest.raises(UnsupportedRing):
        reduce_residue_ring([5, 0, 1], (1, 0))  # Z[sqrt(-5)] overrings are outside the table


def test_bounded_search():
    r = bounded_search((ZZ(5), ZZ(3)), Z, 6, 2)
    assert r.status == "found" and verify_reduction(r.trace)
    r = bounded_search((ZZ(1), ZZ(0)), Z, 3, 1)
    assert r.status == "found" and len(r.trace) == 0
    R = quadratic_integers(-5)
    K = R.field
    pair = (K(-3), K.element([0, 2]))
    assert is_unimodular(pair, R)
    r = bounded_search(pair, R, 3, 1)
    assert r.status == "not-found-within-bounds"  # inconclusive, not a proof
    r = bounded_search(pair, R, 8, 3, cap=2000)
    assert r.status == "cap"
    with pytest.raises(SearchCap):
        raise_on_cap(r)
    with pytest.raises(NotUnimodular):
        bounded_search((K(2), K.element([1, 1])), R, 2, 1)


def test_parse_ring():
    assert parse_ring("Z").label == "Z"
    assert parse_ring("Z[i]").field.degree == 2
    assert parse_ring("Z[sqrt-2]").field.discriminant == -8
    assert parse_ring("O(5)").field.discriminant == 5
    R = parse_ring("Z[1/6]")
    assert R.is_unit(ZZ(6)) and not R.is_unit(ZZ(5))
    with pytest.raises(InvalidArgument):
        parse_ring("Q[x]")
