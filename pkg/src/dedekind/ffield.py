"""Polynomials over a prime field F_p and their factorization.

A polynomial is a list of ints in [0, p), constant term first; the zero
polynomial is the empty list.  Factorization runs square-free decomposition,
then exhaustive root search for pieces of degree <= 3 and distinct-degree /
equal-degree (Cantor-Zassenhaus) splitting above that.
"""
from __future__ import annotations

import random

from .arith import is_prime
from .errors import InvalidArgument

# exhaustive root search is only worthwhile while p stays small
EXHAUSTIVE_P_LIMIT = 5000


def trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def reduce(f, p: int) -> list[int]:
    return trim([int(c) % p for c in f])


def deg(f) -> int:
    return len(f) - 1


def add(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def sub(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % p for c in out])


def scale(f, c, p):
    return trim([a * c % p for a in f])


def monic(f, p):
    if not f:
        return []
    inv = pow(f[-1], -1, p)
    return [a * inv % p for a in f]


def divmod_(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], trim(r)
    inv = pow(g[-1], -1, p)
    q = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i] * inv % p
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                r[i - dg + j] = (r[i - dg + j] - c * g[j]) % p
    return trim(q), trim(r[:dg])


def mod(f, g, p):
    return divmod_(f, g, p)[1]


def gcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p)


def xgcd(f, g, p):
    """Return (d, s, t) with s*f + t*g = d monic."""
    r0, r1 = list(f), list(g)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def powmod(f, e: int, modulus, p):
    result = [1]
    base = mod(f, modulus, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), modulus, p)
        base = mod(mul(base, base, p), modulus, p)
        e >>= 1
    return result


def deriv(f, p):
    return trim([i * f[i] % p for i in range(1, len(f))])


def evaluate(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _pth_root(f, p):
    return trim([f[i] for i in range(0, len(f), p)])


def squarefree_factorization(f, p):
    """Monic f -> list of (squarefree monic part, multiplicity)."""
    out = []
    if len(f) <= 1:
        return out
    d = deriv(f, p)
    if not d:
        return [(h, k * p) for h, k in squarefree_factorization(_pth_root(f, p), p)]
    c = gcd(f, d, p)
    w = divmod_(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if len(c) > 1:
        out.extend((h, k * p) for h, k in squarefree_factorization(_pth_root(c, p), p))
    return out


def _split_small(f, p):
    """Irreducible factors of a squarefree monic f with deg f <= 3 by root search."""
    if len(f) - 1 <= 1:
        return [f]
    for x in range(p):
        if evaluate(f, x, p) == 0:
            lin = [(-x) % p, 1]
            return [lin] + _split_small(divmod_(f, lin, p)[0], p)
    return [f]


def distinct_degree(f, p):
    """Squarefree monic f -> list of (product of all irreducible factors of degree d, d)."""
    out = []
    h = [0, 1]
    x = [0, 1]
    d = 0
    rest = list(f)
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, rest, p)
        g = gcd(rest, sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            rest = divmod_(rest, g, p)[0]
            h = mod(h, rest, p)
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def equal_degree(f, d: int, p: int, rng: random.Random):
    """Split a squarefree monic product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = trim(a)
        if len(a) <= 1:
            continue
        if p == 2:
            t = list(a)
            acc = list(a)
            for _ in range(d - 1):
                acc = mod(mul(acc, acc, p), f, p)
                t = add(t, acc, p)
            g = gcd(f, t, p)
        else:
            g = gcd(f, sub(powmod(a, (p**d - 1) // 2, f, p), [1], p), p)
        if 1 < len(g) < len(f):
            return equal_degree(g, d, p, rng) + equal_degree(divmod_(f, g, p)[0], d, p, rng)


DEFAULT_SEED = 0  # the cli overrides this from --seed / DEDEKIND_SEED


def _sort_key(item):
    h, k = item
    return (len(h), list(reversed(h)), k)


def factor_mod_p(f, p: int, seed: int | None = None):
    """Factor f over F_p into monic irreducibles with multiplicities.

    The result is sorted (by degree, then coefficients), so it does not depend
    on the random choices made during equal-degree splitting.
    """
    if not is_prime(p):
        raise InvalidArgument(f"{p} is not prime")
    f = reduce(f, p)
    if not f:
        raise InvalidArgument("cannot factor the zero polynomial")
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    out = []
    for part, k in squarefree_factorization(monic(f, p), p):
        if len(part) - 1 <= 3 and p <= EXHAUSTIVE_P_LIMIT:
            out.extend((h, k) for h in _split_small(part, p))
            continue
        for block, d in distinct_degree(part, p):
            out.extend((h, k) for h in equal_degree(block, d, p, rng))
    return sorted(((tuple(h), k) for h, k in out), key=_sort_key)


def degree_pattern(f, p: int) -> list[int]:
    """Degrees of the irreducible factors (with repetition) of f mod p."""
    pattern = []
    for h, k in factor_mod_p(f, p):
        pattern.extend([len(h) - 1] * k)
    return sorted(pattern)


def is_irreducible_mod_p(f, p: int) -> bool:
    fac = factor_mod_p(f, p)
    return len(fac) == 1 and fac[0][1] == 1
