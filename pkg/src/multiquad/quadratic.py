"""Quadratic fields Q(sqrt(a)): discriminants, class numbers, fundamental units.

Class numbers are computed exactly by counting reduced binary quadratic
forms (imaginary) or cycles of reduced indefinite forms (real).  An
independent analytic check evaluates the Dirichlet class number formula;
`class_number(..., check=True)` cross-validates the two.

Fundamental units come from the continued fraction expansion of
(P0 + sqrt(a)) / Q0 and are returned as integer triples (g, b, q) meaning
eps = (g + b*sqrt(a)) / q with q in {1, 2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import gcd, isqrt, log, pi, sin

import mpmath

from .errors import InconsistencyError
from .intmath import is_squarefree, kronecker, legendre


def discriminant(a: int) -> int:
    """Field discriminant of Q(sqrt(a)) for squarefree a != 0, 1."""
    if a in (0, 1) or not is_squarefree(a):
        raise ValueError(f"radicand must be squarefree and != 0, 1: {a}")
    return a if a % 4 == 1 else 4 * a


def chi(D: int, a: int) -> int:
    """Quadratic character mod |D| attached to discriminant D."""
    return kronecker(D, a)


# --- class numbers by form counting ---------------------------------------


def _h_imaginary(D: int) -> int:
    # count reduced positive definite forms (a,b,c): b^2-4ac=D,
    # |b| <= a <= c, and b >= 0 when |b| == a or a == c
    assert D < 0 and D % 4 in (0, 1)
    count = 0
    b = D % 2
    while 3 * b * b <= -D:
        q = (b * b - D) // 4
        a = max(b, 1)
        while a * a <= q:
            if q % a == 0:
                c = q // a
                if b == 0 or a == b or a == c:
                    count += 1
                else:
                    count += 2
            a += 1
        b += 2
    return count


def _h_plus_real(D: int) -> int:
    """Narrow class number of real discriminant D: cycles of reduced forms."""
    assert D > 0 and D % 4 in (0, 1)
    r = isqrt(D)
    # reduced: 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b
    forms = set()
    for b in range(D % 2, r + 1, 2):
        if b * b >= D:
            break
        num = D - b * b
        for a in range(1, (r + b) // 2 + 1):
            if 2 * a <= r - b:
                continue
            if num % (4 * a) == 0:
                c = -num // (4 * a)
                forms.add((a, b, c))
                forms.add((-a, b, -c))
    cycles = 0
    remaining = set(forms)
    while remaining:
        cycles += 1
        f = remaining.pop()
        g = f
        while True:
            a, b, c = g
            # rho step: (a,b,c) -> (c, -b + 2c*delta, ...) staying reduced
            ac = abs(c)
            delta = (b + r) // (2 * ac) if ac <= r else 1
            if c < 0:
                delta = -delta
            b2 = -b + 2 * c * delta
            c2 = (b2 * b2 - D) // (4 * c)
            g = (c, b2, c2)
            if g == f:
                break
            remaining.discard(g)
    return cycles


@dataclass(frozen=True)
class FundamentalUnit:
    """eps = (g + b*sqrt(a)) / q, the fundamental unit > 1 of Q(sqrt(a))."""

    a: int
    g: int
    b: int
    q: int

    @property
    def norm(self) -> int:
        return (self.g * self.g - self.a * self.b * self.b) // (self.q * self.q)

    def approx_log(self) -> float:
        return log(self.g + self.b * self.a**0.5) - log(self.q)


@lru_cache(maxsize=None)
def fundamental_unit(a: int) -> FundamentalUnit:
    """Fundamental unit of Q(sqrt(a)), a > 1 squarefree, via continued fractions.

    Expands omega = (P0 + sqrt(a))/Q0 with (P0, Q0) = (1, 2) if a = 1 mod 4
    else (0, 1); the convergent at the period end yields the unit.
    """
    if a <= 1 or not is_squarefree(a):
        raise ValueError(f"need squarefree a > 1, got {a}")
    if a % 4 == 1:
        p0, q0 = 1, 2
    else:
        p0, q0 = 0, 1
    r = isqrt(a)
    # omega_0 itself need not be reduced, but one step always lands on a
    # reduced complete quotient, whose expansion is purely periodic
    d0 = (p0 + r) // q0
    p1 = d0 * q0 - p0
    q1 = (a - p1 * p1) // q0
    P, Q = p1, q1
    pm1, pm2 = 1, 0
    qm1, qm2 = 0, 1
    while True:
        d = (P + r) // Q
        pm2, pm1 = pm1, d * pm1 + pm2
        qm2, qm1 = qm1, d * qm1 + qm2
        P = d * Q - P
        Q = (a - P * P) // Q
        if (P, Q) == (p1, q1):
            break
    p, q = pm1, qm1
    g, b, den = q1 * p - p1 * q, q, q1
    common = gcd(g, gcd(b, den))
    g, b, den = g // common, b // common, den // common
    if den not in (1, 2):
        raise InconsistencyError(f"continued fraction unit for {a} has denominator {den}")
    unit = FundamentalUnit(a=a, g=g, b=b, q=den)
    if g * g - a * b * b not in (den * den, -den * den):
        raise InconsistencyError(f"continued fraction unit for {a} fails Pell check")
    assert g > 0 and b > 0
    return unit


def unit_norm(a: int) -> int:
    return fundamental_unit(a).norm


def mouhib_trivial_2class(p1: int, p2: int, p3: int, p4: int) -> bool:
    """Whether Q(sqrt(p1),...,sqrt(p4)) has trivial 2-class group.

    Legendre-symbol criterion for four distinct positive primes.  Both
    clauses require one of the primes to be 2 and the remaining three to
    be 3 mod 4, so anything else returns False immediately.
    """
    primes = (p1, p2, p3, p4)
    if len(set(primes)) != 4:
        raise ValueError(f"primes must be distinct: {primes}")
    for p in primes:
        if p != 2:
            legendre(1, p)  # validates that p is an odd prime
    if 2 not in primes:
        return False
    rest = [p for p in primes if p != 2]
    if any(p % 4 != 3 for p in rest):
        return False
    for q2, q3, q4 in permutations(rest):
        l2, l3, l4 = legendre(2, q2), legendre(2, q3), legendre(2, q4)
        m3, m4 = legendre(q2, q3), legendre(q2, q4)
        if l2 == 1 and l3 == -1 and l4 == -1 and m3 * m4 == -1:
            return True
        if l2 == -1:
            if m3 == -1 and m4 == -1 and l3 * l4 == -1:
                return True
            if l3 == -1 and l4 == -1 and m3 * m4 == -1:
                return True
            if m3 * m4 == -1 and l3 * l4 == -1 and m3 != l3:
                return True
    return False


# --- analytic class number formula -----------------------------------------


def analytic_class_number(a: int, digits: int = 64) -> float:
    """Dirichlet class number formula for Q(sqrt(a)) at working precision.

    Exact finite sums over the character; returns a float that should sit
    within a wide margin of the true integer.
    """
    D = discriminant(a)
    if D < 0:
        w = 6 if D == -3 else 4 if D == -4 else 2
        total = sum(chi(D, k) * k for k in range(1, abs(D)))
        val = w * abs(total) / (2 * abs(D))
        return float(val)
    with mpmath.workdps(digits):
        u = fundamental_unit(a)
        eps = (u.g + u.b * mpmath.sqrt(a)) / u.q
        total = mpmath.mpf(0)
        for k in range(1, D):
            c = chi(D, k)
            if c:
                total += c * mpmath.log(mpmath.sin(mpmath.pi * k / D))
        h = -total / (2 * mpmath.log(eps))
        return float(h)


def _analytic_h_imag_fast(D: int) -> int:
    # exact integer arithmetic; used by bulk scans
    w = 6 if D == -3 else 4 if D == -4 else 2
    total = sum(chi(D, k) * k for k in range(1, abs(D)))
    num = w * abs(total)
    den = 2 * abs(D)
    if num % den:
        raise InconsistencyError(f"analytic class number of D={D} not integral")
    return num // den


def _analytic_h_real_fast(a: int) -> float:
    # float64 evaluation of the real class number formula; the class number
    # is a small integer so double precision leaves a comfortable margin
    D = discriminant(a)
    u = fundamental_unit(a)
    total = 0.0
    for k in range(1, D):
        c = chi(D, k)
        if c:
            total += c * log(sin(pi * k / D))
    return -total / (2 * u.approx_log())


@lru_cache(maxsize=None)
def class_number(a: int, check: bool = False) -> int:
    """Class number of Q(sqrt(a)) by exact form counting.

    With check=True the result is also validated against the analytic
    class number formula (margin 0.4).
    """
    D = discriminant(a)
    if D < 0:
        h = _h_imaginary(D)
    else:
        h_plus = _h_plus_real(D)
        if unit_norm(a) == -1:
            h = h_plus
        else:
            if h_plus % 2:
                raise InconsistencyError(f"narrow class number of {a} must be even")
            h = h_plus // 2
    if check:
        approx = analytic_class_number(a)
        if abs(approx - h) > 0.4:
            raise InconsistencyError(
                f"class number mismatch for a={a}: counted {h}, analytic {approx}"
            )
    return h


def scan_imaginary(bound: int):
    """Yield (a, h) for squarefree a in [-bound, -1], exact analytic formula."""
    for m in range(1, bound + 1):
        if not is_squarefree(-m):
            continue
        yield -m, _analytic_h_imag_fast(discriminant(-m))


def imaginary_with_class_number(h_target: int, bound: int) -> list[int]:
    """All squarefree a in [-bound, -1] with h(Q(sqrt(a))) == h_target."""
    out = []
    for m in range(1, bound + 1):
        if is_squarefree(-m) and class_number(-m) == h_target:
            out.append(-m)
    return out
