"""Q-adic closure of O_K inside an extension L.

Two independent membership tests live here:

* ``closure_member`` -- the decomposition-field route: c is in the closure
  iff it is fixed by the decomposition group G_Q and v_Q(c) >= 0.
* ``approx_member`` -- the lattice route: (c + Q^k) meets O_K iff the residue
  of c lies in the lattice O_K + Q^k.  Works without any Galois data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import lattice as lat
from .arith import first_primes, vp
from .errors import (
    AutomorphismsRequired,
    IndexDivisorUnsupported,
    InvalidArgument,
    LevelCapExceeded,
    MethodUnavailable,
)
from .galois import GaloisGroup, automorphisms, decomposition_group
from .numberfield import FieldElement, FractionalIdeal, SubfieldEmbedding
from .primes import INFINITY, PrimeIdeal, contract, factor_prime, valuation

LEVEL_CAP = 64


@dataclass
class ClosureQuery:
    base: SubfieldEmbedding
    prime: PrimeIdeal
    element: FieldElement
    group: GaloisGroup | None = None

    def __post_init__(self):
        if self.prime.field is not self.base.target:
            raise InvalidArgument("prime must be a prime of the extension field")
        if self.element.field is not self.base.target:
            raise InvalidArgument("element must lie in the extension field")


@dataclass
class ClosureWitness:
    member: bool
    level: int  # the level k that was asked for
    approximant: FieldElement | None = None  # element of K
    approximant_valuation: object = None  # v_Q(c - a), re-verified
    failing_level: int | None = None  # least j with (c + Q^j) cap O_K empty
    m: int | None = None  # least m with (c + Q^(e m)) cap O_K empty
    e: int = 1
    extra: dict = field(default_factory=dict)


def relative_ramification(Q: PrimeIdeal, base: SubfieldEmbedding) -> int:
    if base.source.degree == 1:
        return Q.e
    return Q.e // contract(Q, base).e


def closure_member(q: ClosureQuery) -> bool:
    """Decomposition-field test: c in O_{Z, Q_Z}."""
    if q.group is None:
        raise MethodUnavailable("no Galois data; use approx_member")
    c = q.element
    v = valuation(q.prime, c)
    if v is not INFINITY and v < 0:
        return False
    G = q.group
    return all(G.elements[i](c) == c for i in decomposition_group(G, q.prime))


def _inverse_mod(w: FieldElement, I: FractionalIdeal) -> FieldElement:
    """z in O_L with z*w = 1 mod I (w integral and coprime to I)."""
    L = w.field
    gens = [L.to_integral_int(w * b) for b in L.integral_basis_elements()] + [list(r) for r in I.hnf]
    target = L.to_integral_int(L.one)
    coeffs = lat.lattice_decompose(gens, target)
    if coeffs is None:
        raise InvalidArgument("element is not invertible modulo the ideal")
    n = L.degree
    return L.from_integral(coeffs[:n])


def integral_representative(c: FieldElement, Q: PrimeIdeal, k: int) -> FieldElement:
    """c' in O_L with v_Q(c - c') >= k, for c with v_Q(c) >= 0."""
    if c.is_integral():
        return c
    p, e = Q.p, Q.e
    den = c.denominator()
    a = vp(den, p) if den % p == 0 else 0
    u = den // p**a
    y = c * den
    M = -(-k // e) + 1
    if a == 0:
        inv = pow(u, -1, p**M)
        return y * inv
    tau = Q.anti_uniformizer
    x = y * tau ** (e * a)
    w = (tau**e) * p
    if not x.is_integral():
        raise InvalidArgument("element is not integral at Q")
    z = _inverse_mod(w**a * u, Q.power(k))
    return x * z


@lru_cache(maxsize=4096)
def _sum_lattice(emb: SubfieldEmbedding, Q: PrimeIdeal, k: int):
    gens = [list(r) for r in emb.image_lattice] + [list(r) for r in Q.power(k).hnf]
    return gens, lat.hnf_basis(gens, Q.p ** (-(-k // Q.e)))


def level_passes(base: SubfieldEmbedding, Q: PrimeIdeal, c: FieldElement, k: int) -> bool:
    """True iff (c + Q^k) meets the image of O_K."""
    if k <= 0:
        return True
    v = valuation(Q, c)
    if v is not INFINITY and v < 0:
        return False
    cp = integral_representative(c, Q, k)
    _, H = _sum_lattice(base, Q, k)
    return lat.in_lattice(H, cp.integral_coords)


def _approximant(base: SubfieldEmbedding, Q: PrimeIdeal, c: FieldElement, k: int) -> FieldElement:
    cp = integral_representative(c, Q, k)
    gens, _ = _sum_lattice(base, Q, k)
    coeffs = lat.lattice_decompose(gens, [int(x) for x in cp.integral_coords])
    if coeffs is None:
        raise AssertionError("lattice membership and decomposition disagree")
    K = base.source
    d = K.degree
    return K.from_integral(coeffs[:d])


def least_failing_level(base, Q, c, cap: int = LEVEL_CAP) -> int | None:
    """Least j <= cap with (c + Q^j) cap O_K empty, by doubling then bisection."""
    if not level_passes(base, Q, c, 1):
        return 1
    lo, hi = 1, 2
    while hi <= cap and level_passes(base, Q, c, hi):
        lo, hi = hi, hi * 2
    if hi > cap:
        if level_passes(base, Q, c, cap):
            return None
        hi = cap
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if level_passes(base, Q, c, mid):
            lo = mid
        else:
            hi = mid
    return hi


def approx_member(q: ClosureQuery, k: int) -> ClosureWitness:
    """Decide whether c is approximable by O_K modulo Q^k."""
    if k < 1:
        raise InvalidArgument("k must be positive")
    Q, c, base = q.prime, q.element, q.base
    e = relative_ramification(Q, base)
    v = valuation(Q, c)
    if v is not INFINITY and v < 0:
        return ClosureWitness(member=False, level=k, failing_level=0, m=0, e=e)
    if level_passes(base, Q, c, k):
        a = _approximant(base, Q, c, k)
        va = valuation(Q, c - base(a))
        if va is not INFINITY and va < k:
            raise AssertionError("approximant does not reach the requested level")
        return ClosureWitness(member=True, level=k, approximant=a, approximant_valuation=va, e=e)
    j = least_failing_level(base, Q, c, cap=k)
    return ClosureWitness(member=False, level=k, failing_level=j, m=-(-j // e), e=e)


def non_member_level(q: ClosureQuery, cap: int = LEVEL_CAP) -> ClosureWitness:
    """Least failing level for an element outside the closure; errors past ``cap``."""
    Q, c, base = q.prime, q.element, q.base
    e = relative_ramification(Q, base)
    v = valuation(Q, c)
    if v is not INFINITY and v < 0:
        return ClosureWitness(member=False, level=0, failing_level=0, m=0, e=e)
    j = least_failing_level(base, Q, c, cap=cap)
    if j is None:
        raise LevelCapExceeded(f"no failing level up to {cap}", cap=cap)
    return ClosureWitness(member=False, level=j, failing_level=j, m=-(-j // e), e=e)


def _primes_over(L, base: SubfieldEmbedding, P):
    out = []
    for Qp in (Q for Q, _ in factor_prime(L, P.p).primes):
        if base.source.degree == 1 or contract(Qp, base) == P:
            out.append(Qp)
    return out


def _count_over(base, Q, group):
    L = base.target
    P = contract(Q, base)
    try:
        return len(_primes_over(L, base, P))
    except IndexDivisorUnsupported:
        if group is None:
            raise
        return group.order // len(decomposition_group(group, Q))


def is_dense(base: SubfieldEmbedding, Q: PrimeIdeal, group: GaloisGroup | None = None) -> bool:
    """O_K dense in O_L for the Q-adic topology: P splits completely."""
    return _count_over(base, Q, group) == base.degree


def is_relatively_closed(base: SubfieldEmbedding, Q: PrimeIdeal, group: GaloisGroup | None = None) -> bool:
    """O_K closed in O_L: Q is the only prime above P."""
    return _count_over(base, Q, group) == 1


@dataclass
class ProbeResult:
    status: str  # "witness", "member-of-base", "exhausted"
    prime: PrimeIdeal | None = None
    primes_scanned: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    failing_level: int | None = None


def _group_or_none(base):
    try:
        return automorphisms(base.target, base)
    except AutomorphismsRequired:
        return None


def closure_intersection_probe(base: SubfieldEmbedding, c: FieldElement, prime_budget: int,
                               group: GaloisGroup | None = None) -> ProbeResult:
    """Search the first ``prime_budget`` rational primes for a Q with c outside
    the Q-adic closure of O_K.  Primes are scanned in ascending order and the
    primes above each p in their factorization order."""
    if not c.is_integral():
        raise InvalidArgument("probe expects an algebraic integer")
    if base.contains(c) and base.preimage(c).is_integral():
        return ProbeResult(status="member-of-base")
    if group is None:
        group = _group_or_none(base)
    L = base.target
    scanned, skipped = [], []
    for p in first_primes(prime_budget):
        try:
            above = factor_prime(L, p).primes
        except IndexDivisorUnsupported:
            skipped.append(p)
            continue
        scanned.append(p)
        for Q, _ in above:
            q = ClosureQuery(base, Q, c, group)
            if group is not None:
                if closure_member(q):
                    continue
                w = non_member_level(q)
            else:
                j = least_failing_level(base, Q, c)
                if j is None:
                    continue
                w = ClosureWitness(member=False, level=j, failing_level=j)
            return ProbeResult("witness", Q, scanned, skipped, w.failing_level)
    return ProbeResult("exhausted", None, scanned, skipped)
