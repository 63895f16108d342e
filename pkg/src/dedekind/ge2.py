"""GE_2: reducing unimodular pairs to (1, 0) by elementary transformations.

A ring R is handled as O_K with a (possibly infinite) set of inverted primes
described by a predicate, which covers Z, Z[1/S], rings of integers of
quadratic fields and the overrings produced by ``intpoly.image_description``.

Elementary operations: side 1 replaces (a, b) by (a + r*b, b); side 2
replaces (a, b) by (a, b + r*a).
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .arith import factorint, is_squarefree, prime_divisors, round_half_to_zero
from .closure import ClosureQuery, closure_member
from .errors import (
    AutomorphismsRequired,
    InvalidArgument,
    NotInRing,
    NotUnimodular,
    SearchCap,
    UnsupportedRing,
)
from .galois import automorphisms
from .numberfield import RATIONALS, FieldElement, NumberField, make_field, rational_embedding
from .primes import INFINITY, PrimeIdeal, factor_prime, valuation

# discriminants of norm-Euclidean quadratic fields covered by the reducers
IMAGINARY_EUCLIDEAN = (-1, -2, -3, -7, -11)
REAL_EUCLIDEAN = (2, 3, 5, 6, 7, 13)


@dataclass(frozen=True)
class ElementaryOp:
    side: int  # 1: a += r*b, 2: b += r*a
    multiplier: FieldElement

    def __post_init__(self):
        if self.side not in (1, 2):
            raise InvalidArgument("side must be 1 or 2")


@dataclass
class ReductionTrace:
    ring: RingHandle
    start: tuple
    ops: list
    end: tuple

    def __len__(self):
        return len(self.ops)


class RingHandle:
    """O_K with the primes satisfying ``inverted`` made invertible."""

    def __init__(self, field: NumberField, label: str, inverted: Callable[[PrimeIdeal], bool] | None = None,
                 kind: str = "integers", provenance: dict | None = None):
        self.field = field
        self.label = label
        self._inverted = inverted
        self.kind = kind
        self.provenance = provenance or {}
        self._inv_cache: dict = {}

    def __repr__(self):
        return f"RingHandle({self.label})"

    @property
    def euclidean(self) -> bool:
        """Whether the underlying O_K is one of the supported norm-Euclidean rings."""
        K = self.field
        if K.degree == 1:
            return True
        if K.degree != 2:
            return False
        return _quadratic_d(K) in IMAGINARY_EUCLIDEAN + REAL_EUCLIDEAN

    def is_inverted(self, Q: PrimeIdeal) -> bool:
        if self._inverted is None:
            return False
        key = (Q.p, tuple(map(tuple, Q.hnf)))
        if key not in self._inv_cache:
            self._inv_cache[key] = bool(self._inverted(Q))
        return self._inv_cache[key]

    def __call__(self, x) -> FieldElement:
        return self.field(x)

    def _support(self, x: FieldElement) -> list[int]:
        """Rational primes under every prime Q with v_Q(x) != 0."""
        den = x.denominator()
        y = x * den
        n = abs(y.norm())
        return sorted(set(prime_divisors(den)) | set(prime_divisors(int(n))))

    def contains(self, x: FieldElement) -> bool:
        x = self.field(x)
        if x.is_integral():
            return True
        if self._inverted is None:
            return False
        for p in prime_divisors(x.denominator()):
            for Q, _ in factor_prime(self.field, p).primes:
                if valuation(Q, x) < 0 and not self.is_inverted(Q):
                    return False
        return True

    def check(self, x) -> FieldElement:
        x = self.field(x)
        if not self.contains(x):
            raise NotInRing(f"{x} is not in {self.label}")
        return x

    def is_unit(self, x: FieldElement) -> bool:
        x = self.field(x)
        if x.is_zero() or not self.contains(x):
            return False
        for p in self._support(x):
            for Q, _ in factor_prime(self.field, p).primes:
                if valuation(Q, x) != 0 and not self.is_inverted(Q):
                    return False
        return True

    def norm_size(self, x: FieldElement) -> Fraction:
        return abs(x.norm())


def _quadratic_d(K: NumberField) -> int:
    """Squarefree d with K = Q(sqrt d)."""
    from .arith import squarefree_decomposition

    c0, c1 = K.poly[0], K.poly[1]
    disc = c1 * c1 - 4 * c0
    num = disc.numerator * disc.denominator
    _, s = squarefree_decomposition(abs(num))
    return s if num > 0 else -s


_FIELDS: dict[int, NumberField] = {}


def quadratic_field(d: int) -> NumberField:
    """Q(sqrt d) with defining polynomial of index 1 (x^2 - x + (1-d)/4 when d = 1 mod 4)."""
    if d in (0, 1) or not is_squarefree(abs(d)):
        raise InvalidArgument("d must be a squarefree integer other than 0, 1")
    if d not in _FIELDS:
        f = [(1 - d) // 4, -1, 1] if d % 4 == 1 else [-d, 0, 1]
        _FIELDS[d] = make_field(f, label=f"Q(sqrt({d}))")
    return _FIELDS[d]


def integers_ring() -> RingHandle:
    return RingHandle(RATIONALS, "Z")


def quadratic_integers(d: int) -> RingHandle:
    K = quadratic_field(d)
    label = {-1: "Z[i]", -2: "Z[sqrt(-2)]"}.get(d, f"O({d})")
    return RingHandle(K, label)


def localization(R: RingHandle, primes) -> RingHandle:
    """S^-1 R where S is generated by the given primes (rational primes invert every prime above)."""
    ps = set()
    ideals = []
    for P in primes:
        if isinstance(P, PrimeIdeal):
            ideals.append(P)
        else:
            ps.add(int(P))
    keys = {(P.p, tuple(map(tuple, P.hnf))) for P in ideals}

    def inv(Q):
        return Q.p in ps or (Q.p, tuple(map(tuple, Q.hnf))) in keys

    names = sorted(ps) + [f"P{P.p}" for P in ideals]
    n = 1
    for p in ps:
        n *= p
    label = f"{R.label}[1/{n}]" if not ideals else f"{R.label}[1/{','.join(map(str, names))}]"
    return RingHandle(R.field, label, inv, kind="localization", provenance={"inverted": names})


def overring_from_description(desc) -> RingHandle:
    """Int(O_K)[c] as an overring of O_F: Q is inverted iff c is outside the Q-adic closure."""
    F = desc.F
    if desc.kind == "equals-D":
        return RingHandle(F, "Z" if F.degree == 1 else "O_F", kind="overring", provenance={"c": str(desc.c)})
    if desc.kind == "strict-overring-of-D":
        excluded = {(P.p, tuple(map(tuple, P.hnf))) for P in desc.excluded}
        return RingHandle(F, f"Z[1/{'*'.join(str(P.p) for P in desc.excluded)}]",
                          lambda Q: (Q.p, tuple(map(tuple, Q.hnf))) in excluded,
                          kind="overring", provenance={"c": str(desc.c)})
    try:
        group = automorphisms(F, desc.base)
    except AutomorphismsRequired as exc:
        raise UnsupportedRing("overring predicate needs the Galois group of F") from exc
    base, c = desc.base, desc.c

    def inv(Q):
        return not closure_member(ClosureQuery(base, Q, c, group))

    return RingHandle(F, "Int(Z)[c]", inv, kind="overring", provenance={"c": str(c), "budget": desc.budget})


# ---------------------------------------------------------------------------
# pairs and traces


def is_unimodular(pair, R: RingHandle) -> bool:
    """aR + bR = R."""
    a, b = (R.check(x) for x in pair)
    if a.is_zero() and b.is_zero():
        return False
    if a.is_zero() or b.is_zero():
        return R.is_unit(b if a.is_zero() else a)
    if R.is_unit(a) or R.is_unit(b):
        return True
    K = R.field
    na = abs((a * a.denominator()).norm())
    nb = abs((b * b.denominator()).norm())
    g = math.gcd(int(na), int(nb))
    for p in prime_divisors(g):
        for Q, _ in factor_prime(K, p).primes:
            if R.is_inverted(Q):
                continue
            if min(valuation(Q, a), valuation(Q, b)) != 0:
                return False
    return True


def _apply(pair, op: ElementaryOp):
    a, b = pair
    if op.side == 1:
        return (a + op.multiplier * b, b)
    return (a, b + op.multiplier * a)


def apply_ops(pair, ops, R: RingHandle | None = None, check: bool = False):
    """Replay ops; with ``check`` every multiplier is tested for membership in R
    and unimodularity is re-tested after each step."""
    K = R.field if R is not None else pair[0].field
    cur = (K(pair[0]), K(pair[1]))
    for op in ops:
        if R is not None:
            R.check(op.multiplier)
        cur = _apply(cur, op)
        if check and R is not None and not is_unimodular(cur, R):
            raise AssertionError("elementary operation broke unimodularity")
    return cur


def verify_reduction(trace: ReductionTrace) -> bool:
    """Replay matches the stored end, the end is (1, 0) and the start is unimodular."""
    R = trace.ring
    K = R.field
    try:
        if not is_unimodular(trace.start, R):
            return False
        end = apply_ops(trace.start, trace.ops, R)
    except (NotInRing, InvalidArgument):
        return False
    stored = (K(trace.end[0]), K(trace.end[1]))
    return end == stored and stored == (K.one, K.zero)


def unit_fixup(pair, R: RingHandle) -> list[ElementaryOp]:
    """Elementary ops taking (u, 0) or (0, u), u a unit of R, to (1, 0).

    (u, 0) -> (u, 1) -> (1, 1) -> (1, 0) with multipliers u^-1, 1 - u, -1;
    (0, u) -> (1, u) -> (1, 0) with multipliers u^-1, -u.
    """
    a, b = pair
    K = R.field
    if b.is_zero():
        u = a
        if u == K.one:
            return []
        if not R.is_unit(u):
            raise NotUnimodular("entry is not a unit")
        return [ElementaryOp(2, u.inverse()), ElementaryOp(1, K.one - u), ElementaryOp(2, -K.one)]
    if a.is_zero():
        u = b
        if not R.is_unit(u):
            raise NotUnimodular("entry is not a unit")
        return [ElementaryOp(1, u.inverse()), ElementaryOp(2, -u)]
    raise InvalidArgument("unit fix-up needs a zero entry")


def euclidean_quotient(x: FieldElement, y: FieldElement) -> FieldElement:
    """q in O_K with |N(x - q y)| < |N(y)|: coordinate-wise rounding of x / y in the
    integral basis (ties toward zero), then the nearest neighbours if needed."""
    K = x.field
    z = (x / y).integral_coords
    base = [round_half_to_zero(c) for c in z]
    ny = abs(y.norm())
    q = K.from_integral(base)
    if abs((x - q * y).norm()) < ny:
        return q
    best = None
    for delta in itertools.product((0, -1, 1, -2, 2), repeat=K.degree):
        cand = K.from_integral([b + d for b, d in zip(base, delta)])
        nr = abs((x - cand * y).norm())
        if nr < ny and (best is None or nr < best[0]):
            best = (nr, cand)
    if best is None:
        raise UnsupportedRing("no Euclidean quotient found near x / y")
    return best[1]


def _euclid_ops(a: FieldElement, b: FieldElement):
    ops = []
    while not a.is_zero() and not b.is_zero():
        if abs(a.norm()) >= abs(b.norm()):
            q = euclidean_quotient(a, b)
            op = ElementaryOp(1, -q)
        else:
            q = euclidean_quotient(b, a)
            op = ElementaryOp(2, -q)
        if q.is_zero():
            raise AssertionError("Euclidean step made no progress")
        ops.append(op)
        a, b = _apply((a, b), op)
    return ops, (a, b)


def reduce_euclidean(pair, R: RingHandle) -> ReductionTrace:
    if R.kind != "integers":
        raise UnsupportedRing(f"{R.label} is not a ring of integers; use reduce_localized")
    return _reduce(pair, R)


def reduce_localized(pair, R: RingHandle) -> ReductionTrace:
    """Clear denominators, run Euclid in O_K, then fix up the unit g/s of R."""
    return _reduce(pair, R)


def _reduce(pair, R: RingHandle) -> ReductionTrace:
    if not R.euclidean:
        raise UnsupportedRing(f"{R.label}: the underlying ring of integers is not in the Euclidean table")
    a, b = (R.check(x) for x in pair)
    if not is_unimodular((a, b), R):
        raise NotUnimodular(f"({a}, {b}) is not unimodular in {R.label}")
    s = a.denominator() * b.denominator()
    ops, _ = _euclid_ops(a * s, b * s)
    mid = apply_ops((a, b), ops)
    ops = ops + unit_fixup(mid, R)
    end = apply_ops((a, b), ops, R)
    trace = ReductionTrace(R, (a, b), ops, end)
    if not verify_reduction(trace):
        raise AssertionError("reduction trace failed verification")
    return trace


def scale_trace(trace: ReductionTrace, u: FieldElement) -> ReductionTrace:
    """Trace for (u a, u b): the same ops reach (u, 0), then the unit fix-up."""
    R = trace.ring
    if not R.is_unit(u):
        raise InvalidArgument("scaling factor must be a unit of the ring")
    start = (u * trace.start[0], u * trace.start[1])
    mid = apply_ops(start, trace.ops, R)
    ops = list(trace.ops) + unit_fixup(mid, R)
    return ReductionTrace(R, start, ops, apply_ops(start, ops, R))


# ---------------------------------------------------------------------------
# the residue rings Int(O_K) / P


def reduce_residue_ring(f, pair, budget: int = 25) -> tuple[ReductionTrace, object]:
    """Reduce a pair in Int(Z)/(Int(Z) cap f Q[x]) ~ Int(Z)[c], c a root of f.

    ``f`` is a list of rational coefficients (constant first) of an irreducible
    polynomial of degree 1 or a monic integral quadratic; pair entries are
    elements of F = Q[x]/(f) (coordinates in the power basis of c).
    Returns the trace and the overring description used.
    """
    from . import poly as P
    from .intpoly import image_description

    f = P.poly(f)
    deg = P.degree(f)
    if deg == 1:
        c = -f[0] / f[1]
        base = rational_embedding(RATIONALS)
        desc = image_description(RATIONALS(c), base, budget)
    elif deg == 2:
        g = P.monic(f)
        if not P.is_integral(g):
            raise UnsupportedRing("non-integral quadratic roots are outside the supported range")
        F = make_field(P.to_ints(g))
        desc = image_description(F.gen, rational_embedding(F), budget)
    else:
        raise UnsupportedRing("only degree 1 and 2 are in the constructive range")
    R = overring_from_description(desc)
    F = desc.F
    pr = tuple(F(x) if not isinstance(x, FieldElement) else F.element(x.coords) for x in pair)
    return reduce_localized(pr, R), desc


# ---------------------------------------------------------------------------
# bounded search


@dataclass
class SearchResult:
    status: str  # "found", "not-found-within-bounds", "cap"
    trace: ReductionTrace | None = None
    states: int = 0
    extra: dict = field(default_factory=dict)


def _units(R: RingHandle):
    K = R.field
    if K.degree == 1:
        return [K.one, -K.one]
    d = _quadratic_d(K)
    if d == -1:
        return [K.one, -K.one, K.gen, -K.gen]
    if d == -3:
        w = K.gen  # root of x^2 - x + 1, a primitive sixth root of unity
        return [w**k for k in range(6)]
    return [K.one, -K.one]


def _key(pair):
    return tuple(pair[0].coords) + tuple(pair[1].coords)


def _canonical(pair, units):
    best = None
    for u in units:
        k = _key((u * pair[0], u * pair[1]))
        if best is None or k < best[0]:
            best = (k, u)
    return best


def bounded_search(pair, R: RingHandle, depth: int, height: int, cap: int = 200_000) -> SearchResult:
    """Breadth-first search over ops with integral multipliers of coordinate height
    <= height, up to ``depth`` ops.  States are identified up to scaling by roots
    of unity; the final unit fix-up is not counted in the depth."""
    K = R.field
    a, b = (R.check(x) for x in pair)
    if not is_unimodular((a, b), R):
        raise NotUnimodular("search needs a unimodular pair")
    units = _units(R)
    mults = []
    for coords in itertools.product(range(-height, height + 1), repeat=K.degree):
        if any(coords):
            mults.append(K.from_integral(list(coords)))
    mults.sort(key=lambda m: (sum(abs(x) for x in m.integral_coords), tuple(m.integral_coords)))

    def done(p):
        return (p[1].is_zero() and R.is_unit(p[0])) or (p[0].is_zero() and R.is_unit(p[1]))

    start = (a, b)
    seen = {_canonical(start, units)[0]}
    frontier = deque([(start, [])])
    states = 1
    while frontier:
        cur, ops = frontier.popleft()
        if done(cur):
            full = ops + unit_fixup(cur, R)
            trace = ReductionTrace(R, start, full, apply_ops(start, full, R))
            if not verify_reduction(trace):
                raise AssertionError("search produced an invalid trace")
            return SearchResult("found", trace, states)
        if len(ops) >= depth:
            continue
        for side in (1, 2):
            other = cur[1] if side == 1 else cur[0]
            if other.is_zero():
                continue
            for r in mults:
                op = ElementaryOp(side, r)
                nxt = _apply(cur, op)
                k = _canonical(nxt, units)[0]
                if k in seen:
                    continue
                seen.add(k)
                states += 1
                if states > cap:
                    return SearchResult("cap", None, states, {"depth": depth, "height": height})
                frontier.append((nxt, ops + [op]))
    return SearchResult("not-found-within-bounds", None, states, {"depth": depth, "height": height})


def raise_on_cap(result: SearchResult) -> SearchResult:
    if result.status == "cap":
        raise SearchCap(f"search exceeded its state cap after {result.states} states", states=result.states)
    return result


# ---------------------------------------------------------------------------
# ring specs


def parse_ring(spec: str) -> RingHandle:
    """Z, Z[i], Z[sqrt(-2)], O(d), optionally followed by [1/n]."""
    s = spec.replace(" ", "")
    inv = None
    if s.endswith("]") and "[1/" in s:
        i = s.rindex("[1/")
        inv = int(s[i + 3 : -1])
        s = s[:i]
    if s in ("Z", "ZZ"):
        R = integers_ring()
    elif s in ("Z[i]", "O(-1)"):
        R = quadratic_integers(-1)
    elif s.startswith("Z[sqrt(") and s.endswith(")]"):
        R = quadratic_integers(int(s[7:-2]))
    elif s.startswith("Z[sqrt") and s.endswith("]"):
        R = quadratic_integers(int(s[6:-1]))
    elif s.startswith("O(") and s.endswith(")"):
        R = quadratic_integers(int(s[2:-1]))
    else:
        raise InvalidArgument(f"unknown ring spec {spec!r}")
    if inv is not None:
        if inv < 2:
            raise InvalidArgument("localization needs n >= 2")
        R = localization(R, list(factorint(inv)))
    return R
