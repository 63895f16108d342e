"""Prime ideals: Kummer-Dedekind splitting, valuations, contraction to subfields."""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import ffield
from . import lattice as lat
from . import poly as P
from .arith import factorint, is_prime, vp
from .errors import IndexDivisorUnsupported, InvalidArgument
from .numberfield import (
    FieldElement,
    FractionalIdeal,
    NumberField,
    SubfieldEmbedding,
    ideal_from_generators,
    lattice_intersection,
    principal_ideal,
)


@functools.total_ordering
class _Infinity:
    """Valuation of zero.  Deliberately not a number: arithmetic on it fails."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "+oo"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("INFINITY")


INFINITY = _Infinity()


def nullspace_mod_p(M, p):
    """Basis of the left kernel {x : x*M = 0 mod p}."""
    m = len(M)
    ncols = len(M[0]) if M else 0
    rows = [[x % p for x in M[i]] + [int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return [row[ncols:] for row in rows[r:]]


class PrimeIdeal(FractionalIdeal):
    """A maximal ideal of O_K over the rational prime p.

    ``gen`` is the second element of a two-element representation (p, gen)
    when one is known.  The anti-uniformizer (valuation -1 here, >= 0 at
    every other prime) is computed on construction.
    """

    def __init__(self, field: NumberField, hnf, p: int, e: int, f: int, gen: FieldElement | None = None):
        super().__init__(field, hnf, 1)
        self.p = p
        self.e = e
        self.f = f
        self.gen = gen
        self._powers = {1: self}
        self.anti_uniformizer = self._build_anti_uniformizer()
        n = field.degree
        self._anti_rows = [
            (w * self.anti_uniformizer).integral_coords for w in field.integral_basis_elements()
        ]
        assert len(self._anti_rows) == n

    def __repr__(self):
        g = P.to_str(P.poly(self.gen.coords), "t") if self.gen is not None else "?"
        return f"PrimeIdeal(p={self.p}, gen={g}, e={self.e}, f={self.f})"

    __hash__ = FractionalIdeal.__hash__

    @property
    def residue_size(self) -> int:
        return self.p**self.f

    def _build_anti_uniformizer(self) -> FieldElement:
        K = self.field
        n = K.degree
        p = self.p
        # x with x*Q in pO but x not in pO gives x/p: valuation -1 at Q only
        blocks = []
        for q in self.hnf:
            q_el = K.from_integral(q)
            cols = [K.to_integral_int(w * q_el) for w in K.integral_basis_elements()]
            blocks.append(cols)
        M = [sum((blocks[b][i] for b in range(len(blocks))), []) for i in range(n)]
        kernel = nullspace_mod_p(M, p)
        if not kernel:
            raise InvalidArgument("could not construct an anti-uniformizer")
        return K.from_integral([Fraction(x, p) for x in kernel[0]])

    def power(self, k: int) -> FractionalIdeal:
        if k in self._powers:
            return self._powers[k]
        if k == 0:
            return super().power(0)
        best = max(j for j in self._powers if j < k)
        out = self._powers[best]
        while best < k:
            step = min(best, k - best)
            while step not in self._powers:
                step -= 1
            out = out * self._powers[step]
            best += step
            self._powers[best] = out
        return out

    @functools.cached_property
    def uniformizer(self) -> FieldElement:
        """An element of valuation exactly 1, found among small lattice elements."""
        Q2 = self.power(2)
        cands = []
        if self.gen is not None:
            cands += [self.gen, self.gen + self.p]
        cands += [self.field(self.p)]
        cands += self.basis_elements()
        cands += [b + self.p for b in self.basis_elements()]
        for c in cands:
            if self.contains(c) and not Q2.contains(c):
                return c
        for combo in itertools.product(range(2), repeat=self.field.degree):
            c = self.field.from_integral([sum(a * r[j] for a, r in zip(combo, self.hnf)) for j in range(self.field.degree)])
            if self.contains(c) and not Q2.contains(c):
                return c
        raise InvalidArgument("no uniformizer found")

    def valuation(self, c) -> int | _Infinity:
        return valuation(self, c)


@dataclass(frozen=True)
class SplittingData:
    p: int
    primes: tuple  # tuple of (PrimeIdeal, exponent)

    def degree_sum(self) -> int:
        return sum(Q.e * Q.f for Q, _ in self.primes)

    def product(self) -> FractionalIdeal:
        out = None
        for Q, k in self.primes:
            term = Q.power(k)
            out = term if out is None else out * term
        return out

    def check(self) -> bool:
        K = self.primes[0][0].field
        return self.degree_sum() == K.degree and self.product() == principal_ideal(K, self.p)


def _ensure_cache(K):
    if not hasattr(K, "_prime_cache"):
        K._prime_cache = {}
    return K._prime_cache


def factor_prime(K: NumberField, p: int) -> SplittingData:
    """Kummer-Dedekind factorization of pO_K (p must not divide [O_K : Z[t]])."""
    if not is_prime(p):
        raise InvalidArgument(f"{p} is not prime")
    cache = _ensure_cache(K)
    if p in cache:
        return cache[p]
    if K.index % p == 0:
        raise IndexDivisorUnsupported(
            f"{p} divides the index [O_K : Z[t]] = {K.index}", index=K.index, p=p
        )
    fac = ffield.factor_mod_p(P.to_ints(K.poly), p)
    primes = []
    for g, k in fac:
        gen = K.from_poly([Fraction(c) for c in g]) if K.degree > 1 else K.zero
        ideal = ideal_from_generators(K, [K(p), gen])
        Q = PrimeIdeal(K, ideal.hnf, p, k, len(g) - 1, gen=gen if K.degree > 1 else None)
        primes.append((Q, k))
    data = SplittingData(p, tuple(primes))
    if not data.check():
        raise AssertionError(f"splitting check failed for p = {p}")
    cache[p] = data
    return data


def primes_above(K: NumberField, p: int) -> list[PrimeIdeal]:
    return [Q for Q, _ in factor_prime(K, p).primes]


def prime_from_lattice(K: NumberField, hnf, p: int) -> PrimeIdeal:
    """Wrap a lattice known to be a prime ideal over p; e and f are computed."""
    plain = FractionalIdeal(K, hnf, 1)
    N = lat.determinant_hnf(plain.hnf)
    f = vp(N, p)
    if p**f != N:
        raise InvalidArgument("lattice index is not a power of p")
    e = 0
    cur = plain
    while cur.contains(K(p)):
        e += 1
        cur = cur * plain
    gen = _two_element_generator(K, plain, p)
    return PrimeIdeal(K, plain.hnf, p, e, f, gen=gen)


def _two_element_generator(K, ideal, p):
    if K.degree == 1:
        return None
    basis = ideal.basis_elements()
    cands = list(basis)
    for a, b in itertools.combinations(basis, 2):
        cands += [a + b, a - b]
    for c in cands:
        if not c.is_zero() and ideal_from_generators(K, [K(p), c]) == ideal:
            return c
    return None


def valuation(Q: PrimeIdeal, c) -> int | _Infinity:
    """v_Q(c) with value group Z; INFINITY for c = 0."""
    K = Q.field
    if isinstance(c, FieldElement) and c.field is not K:
        raise InvalidArgument("element and prime belong to different fields")
    c = K(c)
    if c.is_zero():
        return INFINITY
    p, e = Q.p, Q.e
    if K.degree == 1:
        return vp(c.coords[0], p)
    den = c.denominator()
    v = -e * vp(den, p) if den % p == 0 else 0
    x = [int(a * den) for a in c.integral_coords]
    while all(a % p == 0 for a in x):
        x = [a // p for a in x]
        v += e
    rows = Q._anti_rows
    n = K.degree
    while True:
        y = [Fraction(0)] * n
        for a, row in zip(x, rows):
            if a:
                for j in range(n):
                    y[j] += a * row[j]
        if any(t.denominator != 1 for t in y):
            return v
        x = [int(t) for t in y]
        v += 1


def valuation_by_ideals(Q: PrimeIdeal, c, cap: int = 64) -> int | _Infinity:
    """v_Q(c) through ideal membership c in Q^k only (independent cross-check)."""
    K = Q.field
    c = K(c)
    if c.is_zero():
        return INFINITY
    den = c.denominator()
    shift = Q.e * vp(den, Q.p) if den % Q.p == 0 else 0
    x = c * den
    # den's prime-to-p part is a Q-unit
    k = 0
    while k < cap and Q.power(k + 1).contains(x):
        k += 1
    return k - shift


def contract(Q: PrimeIdeal, emb: SubfieldEmbedding) -> PrimeIdeal:
    """Q intersected with the image of O_K, as a prime ideal of K."""
    if Q.field is not emb.target:
        raise InvalidArgument("prime is not in the target field of the embedding")
    K = emb.source
    img = emb.image_lattice
    inter = lattice_intersection(img, Q.hnf)
    # back to K's integral coordinates
    Hk, Uk = lat.hnf_with_transform(img)
    rows = []
    for r in inter:
        xs = lat.solve_echelon(Hk, r)
        coeffs = [0] * len(img)
        for x, u in zip(xs, Uk):
            for j in range(len(img)):
                coeffs[j] += int(x) * u[j]
        rows.append(coeffs)
    H = lat.hnf_basis(rows, Q.p)
    cache = _ensure_cache(K)
    if Q.p in cache or K.index % Q.p != 0:
        for cand in primes_above(K, Q.p):
            if cand.hnf == H:
                return cand
    return prime_from_lattice(K, H, Q.p)


def restricted_value_group(Q: PrimeIdeal, emb: SubfieldEmbedding) -> int:
    """e(Q / Q cap K): the index of v_Q(K^*) in Z."""
    Pk = contract(Q, emb)
    e = valuation(Q, emb(Pk.uniformizer))
    if e * Pk.e != Q.e:
        raise AssertionError("ramification indices are not multiplicative")
    return e


def ramified_primes(K: NumberField) -> list[int]:
    return list(factorint(K.discriminant)) if abs(K.discriminant) > 1 else []
