"""Number fields Q[x]/(f), their elements, and fractional ideals.

Elements are stored over the power basis 1, t, ..., t^(n-1) of the generator
t; integrality and all lattice work happen in integral-basis coordinates via
a cached change of basis.  Ideals are full-rank lattices in integral-basis
coordinates, kept as (HNF matrix, denominator) so equality is exact.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cached_property

from . import lattice as lat
from . import poly as P
from .arith import exact_isqrt, is_squarefree, lcm_all, squarefree_decomposition
from .errors import (
    BasisRequired,
    DivisionByZero,
    InvalidArgument,
    InvalidBasis,
    NotIrreducible,
)


def _totient(m: int) -> int:
    out = m
    k, q = m, 2
    while q * q <= k:
        if k % q == 0:
            while k % q == 0:
                k //= q
            out -= out // q
        q += 1
    if k > 1:
        out -= out // k
    return out


def cyclotomic_poly(m: int) -> P.Poly:
    f = P.poly([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            f = P.divmod_poly(f, cyclotomic_poly(d))[0]
    return f


def _cyclotomic_order(f: P.Poly) -> int | None:
    n = P.degree(f)
    for m in range(2, 2 * n * n + 3):
        if _totient(m) == n and cyclotomic_poly(m) == f:
            # Q(zeta_m) = Q(zeta_2m) for odd m; keep the index actually defining f
            return m
    return None


class NumberField:
    """K = Q[x]/(f) with a verified integral basis.

    ``basis`` rows are the integral-basis elements in power-basis coordinates.
    ``basis_source`` records where the basis came from; the value
    "squarefree-discriminant" is the warning flag for the power-basis default.
    """

    def __init__(self, f, basis, basis_source, label=None, cyclotomic_order=None, automorphism_table=None):
        self.poly: P.Poly = f
        self.degree = P.degree(f)
        self.basis = [[Fraction(x) for x in row] for row in basis]
        self.basis_source = basis_source
        self.label = label
        self.cyclotomic_order = cyclotomic_order
        self.automorphism_table = automorphism_table
        self.basis_inv = lat.mat_inverse(self.basis)
        self.poly_discriminant = int(P.discriminant(f))
        det = lat.determinant(self.basis)
        disc = self.poly_discriminant * det * det
        if disc.denominator != 1:
            raise InvalidBasis("discriminant of the integral basis is not an integer")
        self.discriminant = int(disc)
        index = 1 / abs(det)
        if index.denominator != 1:
            raise InvalidBasis("basis does not contain the equation order")
        self.index = int(index)

    def __repr__(self):
        name = self.label or P.to_str(self.poly)
        return f"NumberField({name})"

    # -- power-basis arithmetic -------------------------------------------------

    @cached_property
    def _power_table(self):
        """Coordinates of t^k for k < 2n - 1."""
        n = self.degree
        rows = []
        cur = [Fraction(0)] * n
        cur[0] = Fraction(1)
        for _ in range(2 * n - 1):
            rows.append(cur)
            nxt = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(n):
                    nxt[i] -= top * self.poly[i]
            cur = nxt
        return rows

    def mul_coords(self, a, b):
        n = self.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = list(prod[:n])
        table = self._power_table
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                row = table[k]
                for i in range(n):
                    out[i] += c * row[i]
        return out

    # -- constructors ------------------------------------------------------------

    def element(self, coords) -> FieldElement:
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            raise InvalidArgument(f"expected at most {self.degree} coordinates")
        coords += [Fraction(0)] * (self.degree - len(coords))
        return FieldElement(self, tuple(coords))

    def __call__(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise InvalidArgument("element belongs to another field")
            return x
        if isinstance(x, (int, Fraction)):
            return self.element([x])
        return self.element(x)

    def from_integral(self, coords) -> FieldElement:
        return self.element(lat.vec_mat([Fraction(c) for c in coords], self.basis))

    def from_poly(self, g) -> FieldElement:
        """Image of a rational polynomial g(t)."""
        r = P.rem(P.poly(g), self.poly)
        return self.element(list(r))

    @property
    def zero(self):
        return self.element([0])

    @property
    def one(self):
        return self.element([1])

    @property
    def gen(self):
        if self.degree == 1:
            return self.element([-self.poly[0]])
        return self.element([0, 1])

    def integral_basis_elements(self) -> list[FieldElement]:
        return [self.element(row) for row in self.basis]

    # -- integral structure ------------------------------------------------------

    def to_integral(self, coords) -> list[Fraction]:
        return lat.vec_mat(coords, self.basis_inv)

    @cached_property
    def mult_table(self) -> list[list[list[int]]]:
        """Structure constants: mult_table[i][j] = integral coordinates of w_i * w_j."""
        n = self.degree
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                v = self.to_integral(self.mul_coords(self.basis[i], self.basis[j]))
                if any(x.denominator != 1 for x in v):
                    raise InvalidBasis("integral basis is not closed under multiplication")
                row.append([int(x) for x in v])
            table.append(row)
        return table

    def mul_integral_mod(self, a, b, m: int) -> list[int]:
        """Product of two integral-coordinate vectors, reduced mod m."""
        n = self.degree
        out = [0] * n
        table = self.mult_table
        for i in range(n):
            ai = a[i]
            if not ai:
                continue
            for j in range(n):
                bj = b[j]
                if bj:
                    c = ai * bj
                    tij = table[i][j]
                    for k in range(n):
                        out[k] += c * tij[k]
        return [x % m for x in out]

    def pow_integral_mod(self, a, e: int, m: int) -> list[int]:
        result = self.to_integral_int(self.one)
        result = [x % m for x in result]
        base = [x % m for x in a]
        while e:
            if e & 1:
                result = self.mul_integral_mod(result, base, m)
            base = self.mul_integral_mod(base, base, m)
            e >>= 1
        return result

    def to_integral_int(self, x: FieldElement) -> list[int]:
        v = x.integral_coords
        if any(c.denominator != 1 for c in v):
            raise InvalidArgument("element is not integral")
        return [int(c) for c in v]

    def is_rationals(self) -> bool:
        return self.degree == 1


class FieldElement:
    __slots__ = ("field", "coords", "_icoords")

    def __init__(self, field: NumberField, coords: tuple):
        self.field = field
        self.coords = coords
        self._icoords = None

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise InvalidArgument("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(self.field.mul_coords(self.coords, other.coords)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return FieldElement(self.field, tuple(a / other for a in self.coords))
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.element([other])
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return f"FieldElement({', '.join(str(c) for c in self.coords)})"

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    @property
    def integral_coords(self) -> list[Fraction]:
        if self._icoords is None:
            self._icoords = self.field.to_integral(self.coords)
        return self._icoords

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.integral_coords)

    def denominator(self) -> int:
        """Least positive integer d with d * self integral."""
        return lcm_all(c.denominator for c in self.integral_coords)

    def mult_matrix(self):
        """Rows: power-basis coordinates of t^i * self."""
        n = self.field.degree
        rows = []
        for i in range(n):
            e = [Fraction(0)] * n
            e[i] = Fraction(1)
            rows.append(self.field.mul_coords(e, self.coords))
        return rows

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        inv = lat.mat_inverse(self.mult_matrix())
        return FieldElement(self.field, tuple(inv[0]))

    def norm(self) -> Fraction:
        return lat.determinant(self.mult_matrix())

    def trace(self) -> Fraction:
        M = self.mult_matrix()
        return sum((M[i][i] for i in range(len(M))), Fraction(0))

    def charpoly(self) -> P.Poly:
        """Characteristic polynomial (Faddeev-LeVerrier)."""
        A = self.mult_matrix()
        n = len(A)
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = Fraction(1)
        Mk = [[Fraction(0)] * n for _ in range(n)]
        for k in range(1, n + 1):
            AM = lat.mat_mul(A, Mk) if k > 1 else [[Fraction(0)] * n for _ in range(n)]
            Mk = [[AM[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
            AMk = lat.mat_mul(A, Mk)
            coeffs[n - k] = -sum(AMk[i][i] for i in range(n)) / k
        return P.poly(coeffs)

    def minimal_polynomial(self) -> P.Poly:
        return P.squarefree_part(self.charpoly())

    def evaluate_poly(self, g) -> FieldElement:
        acc = self.field.zero
        for c in reversed(P.poly(g)):
            acc = acc * self + c
        return acc


# ---------------------------------------------------------------------------
# field construction


def _quadratic_basis(f: P.Poly):
    b, c = f[1], f[0]
    disc = int(b * b - 4 * c)
    s, d = squarefree_decomposition(disc)
    # sqrt(d) = (2t + b) / s
    if d % 4 == 1:
        omega = [(s + b) / (2 * s), Fraction(1, s)]
    else:
        omega = [b / s, Fraction(2, s)]
    return [[Fraction(1), Fraction(0)], omega]


def _validate_basis(f: P.Poly, basis) -> None:
    n = P.degree(f)
    if len(basis) != n or any(len(r) != n for r in basis):
        raise InvalidBasis(f"integral basis must be {n}x{n}")
    if lat.determinant(basis) == 0:
        raise InvalidBasis("integral basis matrix is singular")


def make_field(f, integral_basis=None, label=None, automorphisms=None, check_irreducible=True) -> NumberField:
    """Build and validate K = Q[x]/(f) for a monic integer polynomial f."""
    f = P.poly(f)
    if not P.is_monic_integral(f):
        raise InvalidArgument("defining polynomial must be monic with integer coefficients")
    n = P.degree(f)
    if n < 1:
        raise InvalidArgument("defining polynomial must have degree >= 1")
    if check_irreducible and not P.certify_irreducible(f):
        raise NotIrreducible(f"{P.to_str(f)} is reducible over Q")
    cyc = _cyclotomic_order(f) if n >= 2 else None
    if integral_basis is not None:
        basis = [[Fraction(x) for x in row] for row in integral_basis]
        _validate_basis(f, basis)
        source = "supplied"
    elif n == 1:
        basis, source = [[Fraction(1)]], "rational"
    elif n == 2:
        basis, source = _quadratic_basis(f), "quadratic"
    elif cyc is not None:
        basis, source = lat.identity(n), "cyclotomic"
    elif is_squarefree(int(P.discriminant(f))):
        basis, source = lat.identity(n), "squarefree-discriminant"
    else:
        raise BasisRequired(
            f"no built-in integral basis for {P.to_str(f)}; supply one in the field spec"
        )
    K = NumberField(f, basis, source, label=label, cyclotomic_order=cyc, automorphism_table=automorphisms)
    if source == "supplied":
        try:
            K.mult_table
        except InvalidBasis:
            raise
        for i in range(n):
            e = [0] * n
            e[i] = 1
            if any(c.denominator != 1 for c in K.to_integral(e)):
                raise InvalidBasis("basis lattice does not contain the power basis")
        if exact_isqrt(abs(K.poly_discriminant // K.discriminant)) is None or K.poly_discriminant % K.discriminant:
            raise InvalidBasis("disc(f) / disc(K) is not a square")
    return K


RATIONALS = make_field([-1, 1], label="Q")


def rationals() -> NumberField:
    return RATIONALS


# ---------------------------------------------------------------------------
# embeddings


class SubfieldEmbedding:
    """Embedding of K into L sending K's generator to ``image``."""

    def __init__(self, source: NumberField, target: NumberField, image: FieldElement, check=True):
        if image.field is not target:
            raise InvalidArgument("image must lie in the target field")
        self.source = source
        self.target = target
        self.image = image
        if check and not image.evaluate_poly(source.poly).is_zero():
            raise InvalidArgument("image does not satisfy the source's defining polynomial")
        self._powers = [target.one]
        for _ in range(source.degree - 1):
            self._powers.append(self._powers[-1] * image)

    def __call__(self, x: FieldElement) -> FieldElement:
        if isinstance(x, (int, Fraction)):
            return self.target(Fraction(x))
        if x.field is not self.source:
            raise InvalidArgument("element is not in the source field")
        out = [Fraction(0)] * self.target.degree
        for c, pw in zip(x.coords, self._powers):
            if c:
                for i, y in enumerate(pw.coords):
                    out[i] += c * y
        return FieldElement(self.target, tuple(out))

    @property
    def degree(self) -> int:
        return self.target.degree // self.source.degree

    @cached_property
    def image_lattice(self) -> list[list[int]]:
        """Rows: target integral coordinates of the images of the source's integral basis."""
        rows = []
        for w in self.source.integral_basis_elements():
            v = self(w).integral_coords
            rows.append([int(c) for c in v])
        return rows

    @cached_property
    def _span_matrix(self):
        return [list(pw.coords) for pw in self._powers]

    def contains(self, y: FieldElement) -> bool:
        return self.preimage(y) is not None

    def preimage(self, y: FieldElement) -> FieldElement | None:
        """The x in K with emb(x) = y, or None when y is not in the image."""
        H = self._span_matrix
        # solve x * H = y by elimination on the transpose system
        d = len(H)
        n = self.target.degree
        rows = [[H[i][j] for i in range(d)] + [y.coords[j]] for j in range(n)]
        sol = _solve_rect(rows, d)
        if sol is None:
            return None
        return self.source.element(sol)


def _solve_rect(aug, nvars):
    M = [list(r) for r in aug]
    piv_cols = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [a * inv for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    if any(M[i][nvars] for i in range(r, len(M))):
        return None
    sol = [Fraction(0)] * nvars
    for i, c in enumerate(piv_cols):
        sol[c] = M[i][nvars]
    return sol


def rational_embedding(L: NumberField) -> SubfieldEmbedding:
    return SubfieldEmbedding(RATIONALS, L, L.one)


def identity_embedding(L: NumberField) -> SubfieldEmbedding:
    return SubfieldEmbedding(L, L, L.gen, check=False)


def subfield_from_element(L: NumberField, alpha: FieldElement, label=None):
    """The subfield Q(alpha) of L with its ring of integers O_L cap Q(alpha).

    Returns (field, embedding).  The integral basis is the saturation of the
    Q-span of powers of alpha inside O_L, so no separate maximal-order
    computation is needed.
    """
    mp = alpha.minimal_polynomial()
    d = P.degree(mp)
    if d == L.degree and alpha == L.gen:
        return L, identity_embedding(L)
    if not P.is_monic_integral(mp):
        raise InvalidArgument("generator of the subfield must be an algebraic integer")
    powers = [L.one]
    for _ in range(d - 1):
        powers.append(powers[-1] * alpha)
    span = [p.integral_coords for p in powers]
    sat = lat.saturation(span)
    # express each saturated vector over the power basis of alpha
    basis = []
    for row in sat:
        y = L.from_integral(row)
        aug = [[powers[i].coords[j] for i in range(d)] + [y.coords[j]] for j in range(L.degree)]
        sol = _solve_rect(aug, d)
        basis.append(sol)
    Z = make_field(mp, integral_basis=basis, label=label, check_irreducible=False)
    return Z, SubfieldEmbedding(Z, L, alpha)


# ---------------------------------------------------------------------------
# fractional ideals


class FractionalIdeal:
    """(1/den) * lattice(hnf) in integral-basis coordinates."""

    def __init__(self, field: NumberField, hnf, den: int = 1):
        g = den
        for row in hnf:
            for x in row:
                g = math.gcd(g, x)
        if g > 1:
            hnf = [[x // g for x in row] for row in hnf]
            den //= g
        self.field = field
        self.hnf = [list(r) for r in hnf]
        self.den = den

    def __eq__(self, other):
        if not isinstance(other, FractionalIdeal):
            return NotImplemented
        return self.field is other.field and self.den == other.den and self.hnf == other.hnf

    def __hash__(self):
        return hash((self.den, tuple(map(tuple, self.hnf))))

    def __repr__(self):
        return f"FractionalIdeal(hnf={self.hnf}, den={self.den})"

    def is_integral(self) -> bool:
        return self.den == 1

    def norm(self) -> Fraction:
        return Fraction(lat.determinant_hnf(self.hnf), self.den**self.field.degree)

    def basis_elements(self) -> list[FieldElement]:
        return [self.field.from_integral([Fraction(x, self.den) for x in row]) for row in self.hnf]

    def contains(self, c) -> bool:
        c = self.field(c)
        v = [x * self.den for x in c.integral_coords]
        return lat.in_lattice(self.hnf, v)

    def __mul__(self, other: FractionalIdeal) -> FractionalIdeal:
        return ideal_mul(self, other)

    def __add__(self, other: FractionalIdeal) -> FractionalIdeal:
        if other.field is not self.field:
            raise InvalidArgument("ideals of different fields")
        den = lcm_all([self.den, other.den])
        rows = [[x * (den // self.den) for x in r] for r in self.hnf]
        rows += [[x * (den // other.den) for x in r] for r in other.hnf]
        return FractionalIdeal(self.field, lat.hnf_basis(rows), den)

    def power(self, k: int) -> FractionalIdeal:
        if k < 0:
            raise InvalidArgument("negative ideal powers are not supported")
        out = unit_ideal(self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def minimum(self) -> int:
        """Least positive integer in an integral ideal."""
        if self.den != 1:
            raise InvalidArgument("minimum is defined for integral ideals")
        one = self.field.to_integral_int(self.field.one)
        N = lat.determinant_hnf(self.hnf)
        best = N
        for d in sorted(_divisors(N)):
            if lat.in_lattice(self.hnf, [d * x for x in one]):
                best = d
                break
        return best


def _divisors(n: int) -> list[int]:
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.extend({d, n // d})
    return out


def unit_ideal(K: NumberField) -> FractionalIdeal:
    return FractionalIdeal(K, lat.identity(K.degree), 1)


def ideal_from_generators(K: NumberField, gens) -> FractionalIdeal:
    gens = [K(g) for g in gens]
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        raise InvalidArgument("the zero ideal is not a fractional ideal")
    den = lcm_all(g.denominator() for g in nonzero)
    basis = K.integral_basis_elements()
    rows = []
    for g in nonzero:
        gi = g * den
        for w in basis:
            rows.append([int(x) for x in (gi * w).integral_coords])
    modulus = abs(int((nonzero[0] * den).norm()))
    return FractionalIdeal(K, lat.hnf_basis(rows, modulus), den)


def principal_ideal(K: NumberField, g) -> FractionalIdeal:
    return ideal_from_generators(K, [g])


def ideal_mul(A: FractionalIdeal, B: FractionalIdeal) -> FractionalIdeal:
    if A.field is not B.field:
        raise InvalidArgument("ideals of different fields")
    K = A.field
    n = K.degree
    table = K.mult_table
    rows = []
    for a in A.hnf:
        for b in B.hnf:
            out = [0] * n
            for i in range(n):
                if a[i]:
                    for j in range(n):
                        if b[j]:
                            c = a[i] * b[j]
                            t = table[i][j]
                            for k in range(n):
                                out[k] += c * t[k]
            rows.append(out)
    modulus = lat.determinant_hnf(A.hnf) * lat.determinant_hnf(B.hnf)
    return FractionalIdeal(K, lat.hnf_basis(rows, modulus), A.den * B.den)


def ideal_contains(A: FractionalIdeal, c) -> bool:
    return A.contains(c)


def residue_system(P_ideal: FractionalIdeal, m: int = 1) -> list[FieldElement]:
    """Complete residue system of O_K modulo P^m, lexicographic over the HNF box."""
    if m < 1:
        raise InvalidArgument("residue_system needs m >= 1")
    I = P_ideal.power(m) if m > 1 else P_ideal
    if not I.is_integral():
        raise InvalidArgument("residue systems need an integral ideal")
    K = I.field
    ranges = [range(I.hnf[i][i]) for i in range(K.degree)]
    return [K.from_integral(v) for v in itertools.product(*ranges)]


def lattice_intersection(A, B) -> list[list[int]]:
    """HNF basis of the intersection of two integer row lattices (any ranks)."""
    stacked = [list(r) for r in A] + [[-x for x in r] for r in B]
    kernel = lat.integer_left_kernel(stacked)
    rows = []
    for k in kernel:
        coeffs = k[: len(A)]
        rows.append([sum(c * A[i][j] for i, c in enumerate(coeffs)) for j in range(len(A[0]))])
    return lat.hnf_basis(rows) if rows else []
