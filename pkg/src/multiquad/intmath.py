"""Elementary exact integer arithmetic: factoring, squarefree parts, symbols.

Everything in this module is deterministic and exact.  Inputs in this
package are products of small radicands (well below 10^12), so trial
division up to 10^6 followed by a primality argument on the cofactor is
complete: a cofactor below 10^12 with no prime factor below 10^6 is prime.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

import gmpy2

_TRIAL_BOUND = 10**6


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of |n| as a tuple of (prime, exponent) pairs."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    # wheel over 6k+-1
    p = 7
    step = 4
    while p * p <= n and p <= _TRIAL_BOUND:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        if not gmpy2.is_prime(n):
            raise ValueError(f"cofactor {n} beyond factoring range is composite")
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorize(n))


@lru_cache(maxsize=None)
def sf(x: int) -> int:
    """Squarefree part of x: the squarefree integer s with x/s a perfect square.

    Keeps the sign of x.  sf(20) == 5, sf(-12) == -3.
    """
    if x == 0:
        raise ValueError("squarefree part of 0 is undefined")
    s = 1
    for p, e in factorize(x):
        if e % 2:
            s *= p
    return s if x > 0 else -s


def is_squarefree(x: int) -> bool:
    if x == 0:
        return False
    return all(e == 1 for _, e in factorize(x))


def legendre(u: int, p: int) -> int:
    """Legendre symbol (u/p) for an odd prime p."""
    if p <= 2 or p % 2 == 0 or not gmpy2.is_prime(p):
        raise ValueError(f"modulus {p} is not an odd prime")
    u %= p
    if u == 0:
        return 0
    t = pow(u, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    return int(gmpy2.kronecker(a, n))


def squarefree_up_to(bound: int) -> list[int]:
    """All squarefree integers in [1, bound], ascending (sieve)."""
    flags = bytearray([1]) * (bound + 1)
    q = 2
    while q * q <= bound:
        step = q * q
        for m in range(step, bound + 1, step):
            flags[m] = 0
        q += 1
    return [i for i in range(1, bound + 1) if flags[i]]


def rational_sqrt(num: int, den: int) -> tuple[int, int] | None:
    """Exact square root of num/den in lowest terms, or None if not a square."""
    if den < 0:
        num, den = -num, -den
    if num < 0:
        return None
    g = gcd(num, den)
    num //= g
    den //= g
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return rn, rd
