"""Galois groups of supported fields, decomposition groups and fields, Frobenius.

Automorphisms are given by the image of the generator.  Supported families
get their images from closed forms (quadratic conjugation, zeta -> zeta^a,
sqrt(a)+sqrt(b) sign changes); anything else needs an explicit table, which
is validated before use.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import lattice as lat
from . import poly as P
from .arith import exact_isqrt, primes_up_to
from .errors import (
    AutomorphismsRequired,
    IndexDivisorUnsupported,
    InvalidArgument,
    InvalidAutomorphism,
    PrimitiveElementNotFound,
    RamifiedPrime,
)
from .numberfield import (
    FieldElement,
    FractionalIdeal,
    NumberField,
    SubfieldEmbedding,
    identity_embedding,
    rational_embedding,
    subfield_from_element,
)
from .primes import PrimeIdeal, contract, factor_prime

FIXED_FIELD_TRIALS = 32


class Automorphism:
    def __init__(self, field: NumberField, image: FieldElement):
        if image.field is not field:
            raise InvalidAutomorphism("image must lie in the field itself")
        self.field = field
        self.image = image
        rows = [field.one]
        for _ in range(field.degree - 1):
            rows.append(rows[-1] * image)
        self._rows = [list(r.coords) for r in rows]

    def __repr__(self):
        return f"Automorphism(t -> {P.to_str(P.poly(self.image.coords), 't')})"

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def __call__(self, x: FieldElement) -> FieldElement:
        x = self.field(x)
        return self.field.element(lat.vec_mat(list(x.coords), self._rows))

    def compose(self, other: Automorphism) -> Automorphism:
        """self o other."""
        return Automorphism(self.field, self(other.image))

    @cached_property
    def integral_matrix(self) -> list[list[int]]:
        """Rows: integral coordinates of the images of the integral basis."""
        out = []
        for w in self.field.integral_basis_elements():
            v = self(w).integral_coords
            if any(c.denominator != 1 for c in v):
                raise InvalidAutomorphism("automorphism does not preserve the ring of integers")
            out.append([int(c) for c in v])
        return out

    def apply_ideal(self, I: FractionalIdeal) -> FractionalIdeal:
        S = self.integral_matrix
        rows = [[sum(r[i] * S[i][j] for i in range(len(r))) for j in range(len(r))] for r in I.hnf]
        modulus = lat.determinant_hnf(I.hnf)
        return FractionalIdeal(I.field, lat.hnf_basis(rows, modulus), I.den)

    def validate(self) -> None:
        K = self.field
        if not self.image.evaluate_poly(K.poly).is_zero():
            raise InvalidAutomorphism(f"{self} does not send the generator to a root")
        basis = K.integral_basis_elements()
        for a in basis:
            for b in basis:
                if self(a * b) != self(a) * self(b):
                    raise InvalidAutomorphism(f"{self} is not multiplicative")
        self.integral_matrix


class GaloisGroup:
    """Gal(L / base) with a composition table; element 0 is the identity."""

    def __init__(self, field: NumberField, elements: list[Automorphism], base: SubfieldEmbedding | None = None):
        self.field = field
        self.base = base if base is not None else rational_embedding(field)
        ident = [i for i, s in enumerate(elements) if s.image == field.gen]
        if not ident:
            raise InvalidAutomorphism("automorphism list lacks the identity")
        i0 = ident[0]
        self.elements = [elements[i0]] + [s for i, s in enumerate(elements) if i != i0]
        if len(self.elements) != self.base.degree:
            raise InvalidAutomorphism(
                f"expected {self.base.degree} automorphisms, got {len(self.elements)}"
            )
        if len(set(self.elements)) != len(self.elements):
            raise InvalidAutomorphism("duplicate automorphisms")
        base_gen = self.base(self.base.source.gen)
        for s in self.elements:
            if s(base_gen) != base_gen:
                raise InvalidAutomorphism(f"{s} does not fix the base field")
        lookup = {s.image: i for i, s in enumerate(self.elements)}
        self.table = []
        for s in self.elements:
            row = []
            for t in self.elements:
                img = s(t.image)
                if img not in lookup:
                    raise InvalidAutomorphism("automorphisms are not closed under composition")
                row.append(lookup[img])
            self.table.append(row)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GaloisGroup(order={len(self)}, field={self.field!r})"

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    @cached_property
    def inverses(self) -> list[int]:
        return [next(j for j in range(self.order) if self.table[i][j] == 0) for i in range(self.order)]

    def is_abelian(self) -> bool:
        return all(self.table[i][j] == self.table[j][i] for i in range(self.order) for j in range(self.order))

    def conjugate(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.table[self.table[g][h]][self.inverses[g]]

    @cached_property
    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for h in range(self.order):
            if h in seen:
                continue
            cls = tuple(sorted({self.conjugate(g, h) for g in range(self.order)}))
            seen.update(cls)
            out.append(cls)
        return out

    def class_of(self, h: int) -> tuple[int, ...]:
        return next(c for c in self.conjugacy_classes if h in c)

    def cyclic_subgroup(self, g: int) -> tuple[int, ...]:
        out = [0]
        cur = g
        while cur != 0:
            out.append(cur)
            cur = self.table[cur][g]
        return tuple(sorted(out))

    def is_subgroup(self, H) -> bool:
        H = set(H)
        return 0 in H and all(self.table[a][b] in H for a in H for b in H)

    def check_group_axioms(self) -> bool:
        n = self.order
        for i in range(n):
            if self.table[0][i] != i or self.table[i][0] != i:
                return False
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                return False
        return True


# ---------------------------------------------------------------------------
# candidate images for supported families


def _biquadratic_images(L: NumberField):
    f = L.poly
    if P.degree(f) != 4 or f[1] != 0 or f[3] != 0:
        return None
    s = -f[2] / 2  # a + b
    r = exact_isqrt(int(f[0])) if f[0].denominator == 1 else None
    if s.denominator != 1 or r is None or r == 0:
        return None
    a, b = (s + r) / 2, (s - r) / 2
    if a.denominator != 1 or b.denominator != 1:
        return None
    t = L.gen
    sqrt_b = (t**3 - (a + 3 * b) * t) / (2 * (a - b))
    sqrt_a = t - sqrt_b
    return [e1 * sqrt_a + e2 * sqrt_b for e1 in (1, -1) for e2 in (1, -1)]


def _candidate_images(L: NumberField):
    n = L.degree
    t = L.gen
    if n == 1:
        return [t], "rational"
    if n == 2:
        return [t, L(-L.poly[1]) - t], "quadratic"
    if L.cyclotomic_order is not None:
        m = L.cyclotomic_order
        return [t**a for a in range(1, m) if math.gcd(a, m) == 1], "cyclotomic"
    imgs = _biquadratic_images(L)
    if imgs is not None:
        return imgs, "biquadratic"
    return None, None


def automorphisms(L: NumberField, base: SubfieldEmbedding | None = None, table=None) -> GaloisGroup:
    """Gal(L / base); images come from ``table`` (list of polynomial coefficient
    lists), the field's own table, or a supported family."""
    table = table if table is not None else L.automorphism_table
    if table is not None:
        images = [L.from_poly([Fraction(c) for c in coeffs]) for coeffs in table]
    else:
        images, family = _candidate_images(L)
        if images is None:
            raise AutomorphismsRequired(
                f"{L!r} is not in a supported family; supply an automorphism table"
            )
    auts = [Automorphism(L, img) for img in images]
    for s in auts:
        s.validate()
    if base is not None and base.source.degree > 1:
        base_gen = base(base.source.gen)
        auts = [s for s in auts if s(base_gen) == base_gen]
    elif len(auts) != L.degree:
        raise InvalidAutomorphism(f"expected {L.degree} automorphisms, got {len(auts)}")
    return GaloisGroup(L, auts, base)


# ---------------------------------------------------------------------------
# decomposition groups and fields


def decomposition_group(G: GaloisGroup, Q: PrimeIdeal) -> tuple[int, ...]:
    if Q.field is not G.field:
        raise InvalidArgument("prime is not in the Galois group's field")
    return tuple(i for i, s in enumerate(G.elements) if s.apply_ideal(Q) == Q)


def _trial_elements(L: NumberField):
    t = L.gen
    n = L.degree
    seen = []
    if n >= 2:
        seen += [t, t + 1]
    if n >= 3:
        seen += [t**2, t**2 + t]
    for bound in range(1, 4):
        for coeffs in itertools.product(range(-bound, bound + 1), repeat=n - 1):
            if max((abs(c) for c in coeffs), default=0) != bound:
                continue
            seen.append(L.element([0] + list(coeffs)))
            if len(seen) >= FIXED_FIELD_TRIALS:
                return seen[:FIXED_FIELD_TRIALS]
    return seen[:FIXED_FIELD_TRIALS]


def fixed_field(G: GaloisGroup, H) -> tuple[NumberField, SubfieldEmbedding]:
    """Fixed field of the subgroup H (indices into G), with its embedding into L."""
    H = tuple(sorted(set(H)))
    if not G.is_subgroup(H):
        raise InvalidArgument("H is not a subgroup")
    L = G.field
    if len(H) == 1:
        return L, identity_embedding(L)
    if len(H) == G.order:
        return G.base.source, G.base
    target = L.degree // len(H)
    for gamma in _trial_elements(L):
        alpha = L.zero
        for i in H:
            alpha = alpha + G.elements[i](gamma)
        if P.degree(alpha.minimal_polynomial()) == target:
            return subfield_from_element(L, alpha)
    raise PrimitiveElementNotFound(
        f"no primitive element among {FIXED_FIELD_TRIALS} trials", trials=FIXED_FIELD_TRIALS
    )


@dataclass
class DecompositionData:
    prime: PrimeIdeal
    subgroup: tuple
    field: NumberField
    embedding: SubfieldEmbedding
    contracted: PrimeIdeal
    base_prime: PrimeIdeal
    checks: dict = field(default_factory=dict)


def base_prime(G: GaloisGroup, Q: PrimeIdeal) -> PrimeIdeal:
    return contract(Q, G.base)


def decomposition_field(G: GaloisGroup, Q: PrimeIdeal) -> DecompositionData:
    GQ = decomposition_group(G, Q)
    Z, emb = fixed_field(G, GQ)
    QZ = contract(Q, emb)
    Pb = base_prime(G, Q)
    degree_ok = (Z.degree // G.base.source.degree) * len(GQ) == G.order
    local_ok = QZ.e == Pb.e and QZ.f == Pb.f
    data = DecompositionData(
        prime=Q,
        subgroup=GQ,
        field=Z,
        embedding=emb,
        contracted=QZ,
        base_prime=Pb,
        checks={"degree": degree_ok, "trivial_local_extension": local_ok},
    )
    if not (degree_ok and local_ok):
        raise AssertionError(f"decomposition field checks failed: {data.checks}")
    return data


def frobenius(G: GaloisGroup, Q: PrimeIdeal) -> int:
    """Index of the Frobenius automorphism of an unramified prime Q."""
    L = G.field
    Pb = base_prime(G, Q)
    if Q.e != Pb.e:
        raise RamifiedPrime(f"{Q!r} is ramified over the base")
    N = Pb.p**Pb.f
    p = Q.p
    powers = []
    for w in L.integral_basis_elements():
        powers.append(L.pow_integral_mod(L.to_integral_int(w), N, p))
    found = []
    for i in decomposition_group(G, Q):
        S = G.elements[i].integral_matrix
        if all(Q.contains(L.from_integral([a - b for a, b in zip(S[k], powers[k])])) for k in range(L.degree)):
            found.append(i)
    if len(found) != 1:
        raise AssertionError(f"expected exactly one Frobenius element, found {found}")
    return found[0]


@dataclass
class CensusRow:
    representative: int
    size: int
    count: int
    empirical: Fraction
    predicted: Fraction


@dataclass
class Census:
    bound: int
    rows: list
    total: int
    skipped: list
    witnesses: dict  # cyclic subgroup -> least prime realizing it as G_Q


def chebotarev_census(G: GaloisGroup, bound: int) -> Census:
    """Tally Frobenius classes of unramified primes p <= bound (base Q only).

    Primes are processed in ascending order, so the tallies and the least
    witness primes are deterministic.
    """
    if bound < 2:
        raise InvalidArgument("bound must be >= 2")
    if G.base.source.degree != 1:
        raise InvalidArgument("the census is implemented over Q only")
    L = G.field
    ramified = {p for p in primes_up_to(bound) if L.discriminant % p == 0}
    counts: Counter = Counter()
    skipped = []
    witnesses: dict = {}
    for p in primes_up_to(bound):
        if p in ramified:
            continue
        try:
            Q = factor_prime(L, p).primes[0][0]
        except IndexDivisorUnsupported:
            skipped.append(p)
            continue
        fr = frobenius(G, Q)
        counts[G.class_of(fr)] += 1
        sub = G.cyclic_subgroup(fr)
        for g in range(G.order):
            conj = tuple(sorted(G.conjugate(g, h) for h in sub))
            witnesses.setdefault(conj, p)
    total = sum(counts.values())
    rows = []
    for cls in G.conjugacy_classes:
        c = counts.get(cls, 0)
        rows.append(
            CensusRow(
                representative=cls[0],
                size=len(cls),
                count=c,
                empirical=Fraction(c, total) if total else Fraction(0),
                predicted=Fraction(len(cls), G.order),
            )
        )
    return Census(bound=bound, rows=rows, total=total, skipped=skipped, witnesses=witnesses)
