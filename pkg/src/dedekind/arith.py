"""Integer and rational helpers.

Rationals are :class:`fractions.Fraction` throughout; they are always kept in
lowest terms with a positive denominator, which is exactly the invariant the
rest of the package relies on.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidArgument

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _sieve(bound: int) -> tuple[int, ...]:
    if bound < 2:
        return ()
    flags = bytearray([1]) * (bound + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i, f in enumerate(flags) if f)


def primes_up_to(bound: int) -> list[int]:
    return list(_sieve(bound))


def first_primes(count: int) -> list[int]:
    bound = 32
    while True:
        ps = _sieve(bound)
        if len(ps) >= count:
            return list(ps[:count])
        bound *= 2


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; {} for |n| <= 1."""
    n = abs(n)
    if n == 0:
        raise InvalidArgument("cannot factor zero")
    out: dict[int, int] = {}
    for p in _sieve(1000):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend((d, m // d))
    return dict(sorted(out.items()))


def prime_divisors(n: int) -> list[int]:
    return list(factorint(n)) if n else []


def vp(n, p: int) -> int:
    """p-adic valuation of a non-zero integer or rational."""
    if isinstance(n, Fraction):
        return vp(n.numerator, p) - vp(n.denominator, p)
    if n == 0:
        raise InvalidArgument("valuation of zero")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def legendre_valuation(n: int, p: int) -> int:
    """Exponent of the prime p in n!, i.e. sum of floor(n / p^k) over k >= 1."""
    if not is_prime(p):
        raise InvalidArgument(f"{p} is not prime")
    if n < 0:
        raise InvalidArgument("n must be non-negative")
    total, q = 0, p
    while q <= n:
        total += n // q
        q *= p
    return total


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s^2 * d and d squarefree (sign kept in d)."""
    if n == 0:
        raise InvalidArgument("zero has no squarefree part")
    sign = -1 if n < 0 else 1
    s, d = 1, sign
    for p, k in factorint(n).items():
        s *= p ** (k // 2)
        if k % 2:
            d *= p
    return s, d


def is_squarefree(n: int) -> bool:
    return n != 0 and all(k == 1 for k in factorint(n).values())


def exact_isqrt(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def lcm_all(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def parse_rational(text) -> Fraction:
    """Parse '3', '-1/2' or an int into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidArgument(f"not a rational number: {text!r}") from exc


def rational_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def round_half_to_zero(x: Fraction) -> int:
    """Nearest integer, ties broken toward zero."""
    fl = math.floor(x)
    diff = x - fl
    if diff > Fraction(1, 2):
        return fl + 1
    if diff < Fraction(1, 2):
        return fl
    return fl + 1 if fl < 0 else fl
