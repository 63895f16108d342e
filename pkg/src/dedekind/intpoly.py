"""Integer-valued polynomials: valuation counting, witness polynomials,
Int(D) membership and the image of an element under Int(D).

Polynomials over K are lists of K-elements, constant term first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from .arith import first_primes, lcm_all, vp
from .closure import ClosureQuery, closure_member, least_failing_level, relative_ramification
from .errors import (
    AutomorphismsRequired,
    IndexDivisorUnsupported,
    InvalidArgument,
    LevelCapExceeded,
    NotAWitnessCase,
    ResidueCapExceeded,
)
from .galois import GaloisGroup, automorphisms
from .numberfield import (
    FieldElement,
    NumberField,
    SubfieldEmbedding,
    rational_embedding,
    residue_system,
    subfield_from_element,
)
from .primes import INFINITY, PrimeIdeal, contract, factor_prime, valuation

RESIDUE_CAP = 2**20


# ---------------------------------------------------------------------------
# valuation counting


def product_valuation(c: FieldElement, a_list, Q: PrimeIdeal, e: int = 1):
    """e * sum_k #{j : a_j in c + Q^k}, cross-checked against sum_j v_Q(c - a_j)."""
    diffs = [c - a for a in a_list]
    direct = []
    for x in diffs:
        if not x.is_zero() and not _integral_at(x, Q):
            raise InvalidArgument("elements must be integral at Q")
        direct.append(valuation(Q, x))
    if any(v is INFINITY for v in direct):
        return INFINITY
    total = 0
    k = 1
    live = [_unit_cleared(x, Q) for x in diffs]
    while live:
        Qk = Q.power(k)
        live = [x for x in live if Qk.contains(x)]
        total += len(live)
        k += 1
    if total != sum(direct):
        raise AssertionError("valuation counting disagrees with the direct sum")
    return e * total


def _integral_at(x: FieldElement, Q: PrimeIdeal) -> bool:
    return valuation(Q, x) >= 0


def _unit_cleared(x: FieldElement, Q: PrimeIdeal) -> FieldElement:
    """x times the prime-to-p part of its denominator (a Q-unit)."""
    den = x.denominator()
    a = vp(den, Q.p) if den % Q.p == 0 else 0
    y = x * (den // Q.p**a)
    if a:
        # denominator divisible by p but v_Q(x) >= 0: multiply by a Q-unit
        # of the form (p * tau^e)^a which clears p without changing v_Q
        w = (Q.anti_uniformizer ** Q.e) * Q.p
        y = y * w**a
        if not y.is_integral():
            raise InvalidArgument("could not clear the denominator at Q")
    return y


def beta(q: int, m: int) -> int:
    """1 + q + ... + q^(m-1), i.e. (1 - q^m) / (1 - q)."""
    if q < 2 or m < 1:
        raise InvalidArgument("beta needs q >= 2 and m >= 1")
    return (q**m - 1) // (q - 1)


def min_g_valuation(P: PrimeIdeal, m: int, e: int = 1) -> int:
    """min over r in O_K of v_P(prod (r - a_j)), a_j running over O_K / P^m.

    The minimum is taken over a residue system of P^(m+1), which suffices:
    only the one a_j congruent to r mod P^m has v_P(r - a_j) >= m, and
    every other factor's valuation depends on r mod P^m alone.  Returned in
    v_Q-normalization (times e) and asserted equal to e * beta.
    """
    if m < 1:
        raise InvalidArgument("m must be positive")
    reps = residue_system(P, m)
    best = None
    for r in residue_system(P, m + 1):
        v = 0
        for a in reps:
            d = r - a
            v += valuation(P, d) if not d.is_zero() else INFINITY_GUARD
            if best is not None and v >= best:
                break
        best = v if best is None else min(best, v)
    b = beta(P.residue_size, m)
    if best != b:
        raise AssertionError(f"min v_P(g(r)) = {best}, expected beta = {b}")
    return e * best


INFINITY_GUARD = 10**9  # r equal to a representative: far above any minimum


# ---------------------------------------------------------------------------
# polynomials over K


def poly_mul_linear(g, a):
    """g * (x - a) for g a list of K-elements."""
    out = [None] * (len(g) + 1)
    out[0] = -(g[0] * a)
    for i in range(1, len(g)):
        out[i] = g[i - 1] - g[i] * a
    out[len(g)] = g[-1]
    return out


def poly_eval(g, x):
    acc = None
    for coef in reversed(g):
        acc = coef if acc is None else acc * x + coef
    return acc


def poly_map(g, emb: SubfieldEmbedding):
    return [emb(a) for a in g]


@dataclass
class WitnessPolynomial:
    base: SubfieldEmbedding
    Q: PrimeIdeal  # prime of F
    P: PrimeIdeal  # Q cap O_K
    c: FieldElement
    e: int
    m: int
    failing_level: int
    residue_size: int
    beta: int
    d: FieldElement  # in K
    residues: list  # a_j in K
    coeffs: list  # f = d * g, over K
    g_value_valuation: int = 0  # v_Q(g(c))
    f_value_valuation: int = 0  # v_Q(f(c))
    d_valuation: int = 0  # v_P(d)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def build_witness(c: FieldElement, Q: PrimeIdeal, base: SubfieldEmbedding,
                  group: GaloisGroup | None = None, check_int: bool = True) -> WitnessPolynomial:
    """f = d * prod (x - a_j) in Int(O_K) with v_Q(f(c)) < 0, for c outside
    the Q-adic closure of O_K in F."""
    F = base.target
    if c.field is not F or Q.field is not F:
        raise InvalidArgument("c and Q must belong to the extension field")
    v = valuation(Q, c)
    if v is not INFINITY and v < 0:
        raise NotAWitnessCase("v_Q(c) < 0: f(c) leaves E_Q trivially, no witness built")
    if group is not None and closure_member(ClosureQuery(base, Q, c, group)):
        raise NotAWitnessCase("c lies in the Q-adic closure of O_K")
    j0 = least_failing_level(base, Q, c)
    if j0 is None:
        raise NotAWitnessCase("c is approximable by O_K at every level up to the cap")
    e = relative_ramification(Q, base)
    m = -(-j0 // e)
    K = base.source
    P = contract(Q, base) if K.degree > 1 else _rational_prime(Q.p)
    q = P.residue_size
    b = beta(q, m)
    reps = residue_system(P, m)
    d = P.anti_uniformizer ** b
    g = [K.one]
    for a in reps:
        g = poly_mul_linear(g, a)
    f = [d * coef for coef in g]
    # verification, all through valuation()
    gc = poly_eval(poly_map(g, base), c)
    vg = valuation(Q, gc)
    vf = valuation(Q, base(d) * gc)
    vd = valuation(P, d)
    if vd != -b:
        raise AssertionError("v_P(d) != -beta")
    if vg is INFINITY or vg > e * b - 1:
        raise AssertionError("v_Q(g(c)) exceeds e*beta - 1")
    if vf is INFINITY or vf >= 0:
        raise AssertionError("f(c) is integral at Q")
    if check_int and not int_membership(f, K):
        raise AssertionError("witness is not integer-valued")
    return WitnessPolynomial(base, Q, P, c, e, m, j0, q, b, d, reps, f, vg, vf, vd)


def _rational_prime(p: int) -> PrimeIdeal:
    from .numberfield import RATIONALS

    return factor_prime(RATIONALS, p).primes[0][0]


# ---------------------------------------------------------------------------
# Int(D) membership


class _Residues:
    """O_K / p^M in integral coordinates; for K = Q plain integers."""

    def __init__(self, K: NumberField, P: PrimeIdeal, M: int, cap: int):
        self.K = K
        self.P = P
        self.mod = P.p**M
        self.cap = cap
        self.rational = K.degree == 1

    def lift(self, x: FieldElement):
        if self.rational:
            return int(x.coords[0]) % self.mod
        return tuple(int(a) % self.mod for a in x.integral_coords)

    def add(self, a, b):
        if self.rational:
            return (a + b) % self.mod
        return tuple((x + y) % self.mod for x, y in zip(a, b))

    def mul(self, a, b):
        if self.rational:
            return a * b % self.mod
        return tuple(self.K.mul_integral_mod(a, b, self.mod))

    def val(self, a) -> int:
        """v_P, capped at ``cap``."""
        if self.rational:
            return min(vp(a, self.P.p), self.cap) if a else self.cap
        if not any(a):
            return self.cap
        v = valuation(self.P, self.K.from_integral(list(a)))
        return min(v, self.cap)


def _taylor_shift(R: _Residues, coeffs, t):
    """Coefficients of g(x + t) given those of g(x)."""
    c = list(coeffs)
    n = len(c) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            c[j] = R.add(c[j], R.mul(t, c[j + 1]))
    return c


def _check_prime(g_int, P: PrimeIdeal, k: int, M: int, K: NumberField, cap: int):
    """True iff v_P(g(r)) >= k for every r in O_K, via a pruned residue tree."""
    R = _Residues(K, P, M, k)
    coeffs = [R.lift(a) for a in g_int]
    pi = P.uniformizer
    digit_reps = residue_system(P, 1)
    pis = [R.lift(K.one)]
    explored = 0
    stack = [(coeffs, 0)]
    while stack:
        cs, s = stack.pop()
        explored += 1
        if explored > cap:
            raise ResidueCapExceeded(
                f"residue tree for P over {P.p} at level {k} exceeds {cap} nodes", p=P.p, k=k, cap=cap
            )
        bound = min(R.val(a) + i * s for i, a in enumerate(cs))
        if bound >= k:
            continue
        if s >= k:
            return False
        while len(pis) <= s:
            pis.append(R.mul(pis[-1], R.lift(pi)))
        for a in digit_reps:
            t = R.mul(R.lift(a), pis[s])
            stack.append((_taylor_shift(R, cs, t), s + 1))
    return True


def int_membership(f, K: NumberField, cap: int = RESIDUE_CAP) -> bool:
    """f(O_K) subset of O_K for f a list of K-coefficients."""
    f = [K(a) for a in f]
    while len(f) > 1 and f[-1].is_zero():
        f.pop()
    D = lcm_all(a.denominator() for a in f)
    if D == 1:
        return True
    g = [a * D for a in f]
    for p in sorted(_prime_factors(D)):
        M = vp(D, p)
        for P, _ in factor_prime(K, p).primes:
            k = P.e * M
            if not _check_prime(g, P, k, M, K, cap):
                return False
    return True


def _prime_factors(n: int):
    from .arith import prime_divisors

    return prime_divisors(n)


# ---------------------------------------------------------------------------
# image of c under Int(D)


@dataclass
class OverringDescription:
    kind: str  # "equals-D", "strict-overring-of-D", "strict-overring-of-E"
    base: SubfieldEmbedding  # D = O_K into F
    F: NumberField
    c: FieldElement  # c as an element of F
    flags: list = field(default_factory=list)  # (PrimeIdeal of F, in P(c))
    excluded: list = field(default_factory=list)  # primes of K with v_P(c) < 0
    budget: int = 0
    skipped: list = field(default_factory=list)
    incomplete: bool = False
    method: str = "decomposition-group"

    def non_members(self):
        return [Q for Q, ok in self.flags if not ok]

    def contains_localization_at(self, Q) -> bool:
        return any(Q2 == Q and ok for Q2, ok in self.flags)


def _generates(base: SubfieldEmbedding, c: FieldElement) -> bool:
    from . import lattice as lat

    L = base.target
    rows = []
    pw = L.one
    powers = []
    for _ in range(L.degree):
        powers.append(pw)
        pw = pw * c
    for x in base.source.integral_basis_elements():
        y = base(x)
        rows += [list((y * t).coords) for t in powers]
    return len(lat.rational_row_space_kernel(lat.transpose(rows))) == 0


def image_description(c: FieldElement, base: SubfieldEmbedding, prime_budget: int,
                      group: GaloisGroup | None = None) -> OverringDescription:
    """Classify Int(O_K)[c] and list the Q with c in the Q-adic closure."""
    L = base.target
    K = base.source
    if base.contains(c):
        x = base.preimage(c)
        if x.is_integral():
            return OverringDescription("equals-D", base, K, c, budget=prime_budget)
        excluded = []
        for p in sorted(_prime_factors(x.denominator())):
            for P, _ in factor_prime(K, p).primes:
                if valuation(P, x) < 0:
                    excluded.append(P)
        return OverringDescription("strict-overring-of-D", base, K, c, excluded=excluded, budget=prime_budget)
    if K.degree == 1:
        F, _ = subfield_from_element(L, c)
        cF = F.gen
        fbase = base if F is L else rational_embedding(F)
    else:
        if not _generates(base, c):
            raise InvalidArgument("c must generate the extension field over the base")
        F, cF, fbase = L, c, base
    if group is None or group.field is not F:
        try:
            group = automorphisms(F, fbase)
        except AutomorphismsRequired:
            group = None
    desc = OverringDescription("strict-overring-of-E", fbase, F, cF, budget=prime_budget,
                               method="decomposition-group" if group else "lattice-approximation")
    for p in first_primes(prime_budget):
        try:
            above = factor_prime(F, p).primes
        except IndexDivisorUnsupported:
            desc.skipped.append(p)
            continue
        for Q, _ in above:
            if group is not None:
                ok = closure_member(ClosureQuery(fbase, Q, cF, group))
            else:
                try:
                    ok = least_failing_level(fbase, Q, cF) is None
                except LevelCapExceeded:
                    ok = True
            desc.flags.append((Q, ok))
    desc.incomplete = not desc.non_members()
    return desc
