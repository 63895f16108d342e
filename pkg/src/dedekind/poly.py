"""Univariate polynomials over the rationals.

A polynomial is a tuple of Fractions, constant term first; the zero
polynomial is the empty tuple and has degree -1.  Besides the usual ring
operations this module provides resultants and discriminants, and a complete
factorization of monic integer polynomials (Hensel lifting plus
recombination) used to certify irreducibility.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

from . import ffield
from .arith import lcm_all, primes_up_to
from .errors import InvalidArgument

Poly = tuple

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)
X: Poly = (Fraction(0), Fraction(1))


def poly(coeffs) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(f: Poly) -> int:
    return len(f) - 1


def lc(f: Poly) -> Fraction:
    return f[-1] if f else Fraction(0)


def add(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return poly((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n))


def neg(f: Poly) -> Poly:
    return tuple(-c for c in f)


def sub(f: Poly, g: Poly) -> Poly:
    return add(f, neg(g))


def scale(f: Poly, c) -> Poly:
    return poly(a * c for a in f)


def mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ZERO
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return poly(out)


def power(f: Poly, e: int) -> Poly:
    out = ONE
    for _ in range(e):
        out = mul(out, f)
    return out


def divmod_poly(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return ZERO, poly(r)
    q = [Fraction(0)] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i] / g[-1]
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                r[i - dg + j] -= c * g[j]
    return poly(q), poly(r[:dg])


def rem(f: Poly, g: Poly) -> Poly:
    return divmod_poly(f, g)[1]


def monic(f: Poly) -> Poly:
    return scale(f, 1 / lc(f)) if f else ZERO


def gcd(f: Poly, g: Poly) -> Poly:
    while g:
        f, g = g, rem(f, g)
    return monic(f)


def deriv(f: Poly) -> Poly:
    return poly(i * f[i] for i in range(1, len(f)))


def evaluate(f: Poly, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def compose(f: Poly, g: Poly) -> Poly:
    """f(g(x))."""
    out = ZERO
    for c in reversed(f):
        out = add(mul(out, g), (c,))
    return out


def resultant(f: Poly, g: Poly) -> Fraction:
    if not f or not g:
        return Fraction(0)
    df, dg = degree(f), degree(g)
    if dg == 0:
        return g[0] ** df
    if df == 0:
        return f[0] ** dg
    r = rem(f, g)
    if not r:
        return Fraction(0)
    sign = -1 if (df * dg) % 2 else 1
    return sign * lc(g) ** (df - degree(r)) * resultant(g, r)


def discriminant(f: Poly) -> Fraction:
    n = degree(f)
    if n < 1:
        raise InvalidArgument("discriminant needs degree >= 1")
    if n == 1:
        return Fraction(1)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, deriv(f)) / lc(f)


def is_integral(f: Poly) -> bool:
    return all(c.denominator == 1 for c in f)


def is_monic_integral(f: Poly) -> bool:
    return bool(f) and lc(f) == 1 and is_integral(f)


def to_ints(f: Poly) -> list[int]:
    if not is_integral(f):
        raise InvalidArgument("polynomial has non-integer coefficients")
    return [int(c) for c in f]


def primitive_integer(f: Poly) -> Poly:
    """Scale f to a primitive integer polynomial with positive leading coefficient."""
    if not f:
        return ZERO
    den = lcm_all(c.denominator for c in f)
    ints = [int(c * den) for c in f]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return poly(c // g for c in ints)


def squarefree_part(f: Poly) -> Poly:
    return monic(divmod_poly(f, gcd(f, deriv(f)))[0])


def to_str(f: Poly, var: str = "x") -> str:
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and abs(c) == 1:
            coeff = "-" if c < 0 else "+"
            terms.append(f"{coeff} {mono}")
        else:
            body = f"{abs(c)}" + (f"*{mono}" if mono else "")
            terms.append(("- " if c < 0 else "+ ") + body)
    s = " ".join(terms)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


# ---------------------------------------------------------------------------
# factorization of monic integer polynomials


def _sym(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _ipoly_mul(f, g, m):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return [c % m for c in out]


def _lift_pair(f, g, h, p, k):
    """Lift f = g*h mod p (g, h monic, coprime) to a factorization mod p^k."""
    _, s, t = ffield.xgcd(g, h, p)
    g, h = list(g), list(h)
    pj = p
    for _ in range(1, k):
        gh = _ipoly_mul(g, h, pj * p)
        e = [((f[i] if i < len(f) else 0) - (gh[i] if i < len(gh) else 0)) % (pj * p) for i in range(len(f))]
        e = ffield.trim([c // pj % p for c in e])
        q, r = ffield.divmod_(ffield.mul(t, e, p), g, p)
        dh = ffield.add(ffield.mul(s, e, p), ffield.mul(q, h, p), p)
        g = [(g[i] + pj * (r[i] if i < len(r) else 0)) for i in range(len(g))]
        h = [(h[i] + pj * (dh[i] if i < len(dh) else 0)) for i in range(len(h))]
        pj *= p
    return g, h


def _multi_lift(f, factors, p, k):
    if len(factors) == 1:
        return [[c % p**k for c in f]]
    half = len(factors) // 2
    g = [1]
    for fac in factors[:half]:
        g = ffield.mul(g, list(fac), p)
    h = [1]
    for fac in factors[half:]:
        h = ffield.mul(h, list(fac), p)
    G, H = _lift_pair(f, g, h, p, k)
    return _multi_lift(G, factors[:half], p, k) + _multi_lift(H, factors[half:], p, k)


def _exact_int_div(f: list[int], g: list[int]):
    """Quotient of integer polynomials if g divides f exactly over Z (g monic)."""
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return None
    q = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        q[i - dg] = c
        if c:
            for j in range(dg + 1):
                r[i - dg + j] -= c * g[j]
    if any(r[:dg]):
        return None
    return q


def _factor_squarefree_monic(f: list[int]) -> list[list[int]]:
    n = len(f) - 1
    if n <= 1:
        return [f]
    disc = discriminant(poly(f))
    best = None
    for p in primes_up_to(400):
        if disc % p == 0:
            continue
        fac = ffield.factor_mod_p(f, p)
        if best is None or len(fac) < len(best[1]):
            best = (p, fac)
        if len(fac) == 1 or (best is not None and p > 60):
            break
    p, fac = best
    if len(fac) == 1:
        return [f]
    bound = 2**n * sum(abs(c) for c in f)
    k = 1
    while p**k <= 2 * bound:
        k += 1
    mod = p**k
    lifted = _multi_lift(f, [list(h) for h, _ in fac], p, k)
    remaining = list(range(len(lifted)))
    found = []
    target = list(f)
    size = 1
    while 2 * size <= len(remaining):
        hit = False
        for combo in itertools.combinations(remaining, size):
            g = [1]
            for i in combo:
                g = _ipoly_mul(g, lifted[i], mod)
            g = [_sym(c, mod) for c in g]
            q = _exact_int_div(target, g)
            if q is not None:
                found.append(g)
                target = q
                remaining = [i for i in remaining if i not in combo]
                hit = True
                break
        if not hit:
            size += 1
    found.append(target)
    return found


def factor_over_z(f: Poly) -> list[tuple[Poly, int]]:
    """Irreducible factorization of a monic integer polynomial over Q."""
    if not is_monic_integral(f):
        raise InvalidArgument("factor_over_z expects a monic integer polynomial")
    out: list[tuple[Poly, int]] = []
    rest = f
    mult = 1
    # Yun's square-free decomposition over Q; all parts stay monic integral
    c = gcd(rest, deriv(rest))
    w = divmod_poly(rest, c)[0]
    while degree(w) > 0:
        y = gcd(w, c)
        z = divmod_poly(w, y)[0]
        if degree(z) > 0:
            for h in _factor_squarefree_monic(to_ints(z)):
                out.append((poly(h), mult))
        mult += 1
        w = y
        c = divmod_poly(c, y)[0]
    return sorted(out, key=lambda t: (degree(t[0]), t[0]))


def certify_irreducible(f: Poly, primes: int = 25) -> bool:
    """Irreducibility over Q of a monic integer polynomial.

    Degree patterns modulo small primes are tried first; when they cannot
    rule out a proper factor, a full factorization decides.
    """
    n = degree(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    if degree(gcd(f, deriv(f))) > 0:
        return False
    ints = to_ints(f)
    disc = discriminant(f)
    possible = set(range(n + 1))
    used = 0
    for p in primes_up_to(10_000):
        if used >= primes:
            break
        if disc % p == 0:
            continue
        used += 1
        pattern = ffield.degree_pattern(ints, p)
        if pattern == [n]:
            return True
        sums = {0}
        for d in pattern:
            sums |= {s + d for s in sums}
        possible &= sums
        if possible <= {0, n}:
            return True
    return len(factor_over_z(f)) == 1 and factor_over_z(f)[0][1] == 1
