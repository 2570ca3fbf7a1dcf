"""Exact arithmetic in multiquadratic fields.

Elements of K = Q(sqrt(a_1), ..., sqrt(a_n)) are stored as integer
coordinate vectors over the basis {1} union {sqrt(m) : m in complete list},
with a single positive common denominator.  Basis slots are indexed by the
F2 exponent vector of the member over the generators, so the product of
two basis elements lands at the XOR of their indices times an integer
structure constant.

Square roots of negative members follow the convention sqrt(m) = i*sqrt(|m|)
with i the principal square root of -1; all embeddings are obtained from
this one by flipping generator signs.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, isqrt

import mpmath

from .radicands import complete_list, field_id, members_to_primitive
from .intmath import sf

_FIELDS: dict = {}


def get_field(entries) -> "Field":
    fid = field_id(entries)
    if fid not in _FIELDS:
        _FIELDS[fid] = Field(members_to_primitive(fid.members))
    return _FIELDS[fid]


class Field:
    """A multiquadratic field with fixed canonical generators."""

    def __init__(self, gens):
        self.gens = tuple(gens)
        self.n = len(self.gens)
        self.dim = 2**self.n
        self.id = field_id(self.gens)
        self.members = complete_list(self.gens)
        # basis slot <-> squarefree member (slot 0 is the rational part)
        self.member_of = [1] * self.dim
        for bits in range(1, self.dim):
            prod = 1
            for i in range(self.n):
                if bits >> i & 1:
                    prod *= self.gens[i]
            self.member_of[bits] = sf(prod)
        self.slot_of = {m: b for b, m in enumerate(self.member_of)}
        self._coeff_cache: dict[int, int] = {}
        self.zero = Element(self, (0,) * self.dim, 1)
        one = [0] * self.dim
        one[0] = 1
        self.one = Element(self, tuple(one), 1)
        self._base = None

    def __repr__(self):
        return f"Field({list(self.gens)})"

    def _coeff(self, b1: int, b2: int) -> int:
        """Structure constant: sqrt(m1)*sqrt(m2) = coeff * sqrt(m_{b1^b2})."""
        key = b1 * self.dim + b2
        c = self._coeff_cache.get(key)
        if c is None:
            m1, m2 = self.member_of[b1], self.member_of[b2]
            w = self.member_of[b1 ^ b2]
            g = isqrt(m1 * m2 // w)
            c = -g if (m1 < 0 and m2 < 0) else g
            self._coeff_cache[key] = c
        return c

    # --- constructors -----------------------------------------------------

    def rational(self, value) -> "Element":
        value = Fraction(value)
        nums = [0] * self.dim
        nums[0] = value.numerator
        return Element(self, tuple(nums), value.denominator)

    def sqrt_member(self, m: int) -> "Element":
        nums = [0] * self.dim
        nums[self.slot_of[m]] = 1
        return Element(self, tuple(nums), 1)

    def element(self, coords: dict) -> "Element":
        """Build an element from {member: rational coordinate} (member 1 = Q-part)."""
        fracs = {m: Fraction(c) for m, c in coords.items()}
        den = reduce(lambda x, y: x * y // gcd(x, y), (f.denominator for f in fracs.values()), 1)
        nums = [0] * self.dim
        for m, f in fracs.items():
            nums[self.slot_of[m]] = int(f * den)
        return Element(self, tuple(nums), den)

    def quadratic_unit(self, unit) -> "Element":
        """Lift a FundamentalUnit of a quadratic subfield into this field."""
        return self.element({1: Fraction(unit.g, unit.q), unit.a: Fraction(unit.b, unit.q)})

    # --- tower structure ---------------------------------------------------

    def base(self):
        """(k, d): this field as k(sqrt(d)) over its last canonical generator."""
        if self.n == 0:
            raise ValueError("Q has no proper base subfield")
        if self._base is None:
            self._base = get_field(self.gens[:-1]) if self.n > 1 else _RATIONALS
        return self._base, self.gens[-1]

    def split(self, x: "Element"):
        """Write x = u + v*sqrt(d) with u, v in the base field k."""
        k, d = self.base()
        top = 1 << (self.n - 1)
        u_nums = list(x.nums[:top])
        v_nums = [0] * top
        for b in range(top, self.dim):
            c = x.nums[b]
            if c == 0:
                continue
            lb = b ^ top
            # sqrt(member[b]) = sqrt(member[lb]) * sqrt(d) / coeff(lb, top)
            s = self._coeff(lb, top)
            g = isqrt(self.member_of[lb] * d // self.member_of[b])
            assert s in (g, -g)
            # coeff * sqrt(m_b) = sqrt(m_lb) sqrt(d) => v-coordinate c/s at slot lb
            v_nums[lb] = Fraction(c, s)
        # v_nums may hold Fractions; rebuild exactly
        u = Element(k, tuple(u_nums), x.den) if k is not _RATIONALS else Fraction(u_nums[0], x.den)
        if k is _RATIONALS:
            v = Fraction(v_nums[0], 1) / x.den if isinstance(v_nums[0], Fraction) else Fraction(v_nums[0], x.den)
            return u, v
        den = x.den
        extra = reduce(
            lambda a, b: a * b // gcd(a, b),
            (f.denominator for f in v_nums if isinstance(f, Fraction)),
            1,
        )
        vn = tuple(int(f * extra) if isinstance(f, Fraction) else f * extra for f in v_nums)
        v = Element(k, vn, den * extra)
        return u, v

    def lift(self, x) -> "Element":
        """Embed an element of the base field (or a rational) into this field."""
        if isinstance(x, (int, Fraction)):
            return self.rational(x)
        k, _ = self.base()
        assert x.field is k
        nums = list(x.nums) + [0] * (self.dim - k.dim)
        return Element(self, tuple(nums), x.den)

    # --- Galois action ------------------------------------------------------

    def conjugate(self, x: "Element", mask: int) -> "Element":
        """Apply the automorphism flipping sqrt(gens[i]) for each set bit i."""
        nums = tuple(
            -c if bin(b & mask).count("1") & 1 else c for b, c in enumerate(x.nums)
        )
        return Element(self, nums, x.den, _normalized=True)

    def conjugates(self, x: "Element"):
        return [self.conjugate(x, mask) for mask in range(self.dim)]

    def norm(self, x: "Element") -> Fraction:
        """Absolute norm: product of all conjugates, always rational."""
        prod = self.one
        for mask in range(self.dim):
            prod = prod * self.conjugate(x, mask)
        return prod.rational_value()

    def trace(self, x: "Element") -> Fraction:
        return Fraction(self.dim * x.nums[0], x.den)

    def relative_norm(self, x: "Element") -> "Element":
        """Norm to the base subfield: x * sigma(x) with sigma flipping sqrt(d)."""
        k, _ = self.base()
        y = x * self.conjugate(x, 1 << (self.n - 1))
        u, v = self.split(y)
        assert not v
        return u

    # --- numerics -----------------------------------------------------------

    def embed(self, x: "Element", mask: int = 0, prec: int = 128):
        """Complex value of x under the embedding flipping generators in mask."""
        with mpmath.workprec(prec):
            total = mpmath.mpc(0)
            for b, c in enumerate(x.nums):
                if c == 0:
                    continue
                m = self.member_of[b]
                val = mpmath.sqrt(abs(m))
                if m < 0:
                    val = val * 1j
                if bin(b & mask).count("1") & 1:
                    val = -val
                total += c * val
            return total / x.den


class _RationalField:
    """Sentinel base of the tower; carries just enough interface for sqrt."""

    n = 0
    dim = 1
    gens = ()

    def __repr__(self):
        return "Field(Q)"


_RATIONALS = _RationalField()


class Element:
    """Exact field element: integer coordinates over a common denominator."""

    __slots__ = ("field", "nums", "den")

    def __init__(self, field, nums, den, _normalized=False):
        if not _normalized:
            if den < 0:
                nums = tuple(-c for c in nums)
                den = -den
            g = den
            for c in nums:
                g = gcd(g, c)
                if g == 1:
                    break
            if g > 1:
                nums = tuple(c // g for c in nums)
                den //= g
        self.field = field
        self.nums = nums
        self.den = den

    # --- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        d1, d2 = self.den, other.den
        g = gcd(d1, d2)
        m1, m2 = d2 // g, d1 // g
        nums = tuple(a * m1 + b * m2 for a, b in zip(self.nums, other.nums))
        return Element(self.field, nums, d1 * m1)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return Element(self.field, tuple(-c for c in self.nums), self.den, _normalized=True)

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.field
        out = [0] * F.dim
        for b1, c1 in enumerate(self.nums):
            if c1 == 0:
                continue
            for b2, c2 in enumerate(other.nums):
                if c2 == 0:
                    continue
                out[b1 ^ b2] += c1 * c2 * F._coeff(b1, b2)
        return Element(F, tuple(out), self.den * other.den)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def inverse(self) -> "Element":
        if not any(self.nums):
            raise ZeroDivisionError("division by zero field element")
        F = self.field
        prod = F.one
        for mask in range(1, F.dim):
            prod = prod * F.conjugate(self, mask)
        n = (self * prod).rational_value()
        return prod * (1 / n)

    def __truediv__(self, other):
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
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, Element):
            assert other.field is self.field
            return other
        return self.field.rational(other)

    # --- predicates ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        return (
            isinstance(other, Element)
            and self.field is other.field
            and self.nums == other.nums
            and self.den == other.den
        )

    def __hash__(self):
        return hash((id(self.field), self.nums, self.den))

    def __bool__(self):
        return any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"element {self} is irrational")
        return Fraction(self.nums[0], self.den)

    def coords(self) -> dict:
        """{member: Fraction} over the basis, omitting zeros."""
        return {
            self.field.member_of[b]: Fraction(c, self.den)
            for b, c in enumerate(self.nums)
            if c
        }

    def __repr__(self):
        if not any(self.nums):
            return "0"
        parts = []
        for b, c in enumerate(self.nums):
            if c == 0:
                continue
            q = Fraction(c, self.den)
            m = self.field.member_of[b]
            term = str(q) if b == 0 else (f"{q}*sqrt({m})" if q != 1 else f"sqrt({m})")
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")


# --- integrality and minimal polynomials ------------------------------------


def min_poly(x: Element) -> list[Fraction]:
    """Monic minimal polynomial of x over Q, as coefficients [c_0, ..., c_{d-1}, 1]."""
    F = x.field
    powers = [F.one]
    while True:
        powers.append(powers[-1] * x)
        # solve: powers[-1] = sum lambda_i * powers[i] over Q
        rows = [
            [Fraction(p.nums[b], p.den) for p in powers[:-1]]
            + [Fraction(powers[-1].nums[b], powers[-1].den)]
            for b in range(F.dim)
        ]
        sol = _solve_exact(rows)
        if sol is not None:
            return [-c for c in sol] + [Fraction(1)]
        if len(powers) > F.dim:
            raise AssertionError("element has no minimal polynomial of field degree")


def _solve_exact(rows):
    """Solve an overdetermined exact linear system [A | b]; None if inconsistent."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) - 1
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1]:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    return sol


def is_integral(x: Element) -> bool:
    """True iff x is an algebraic integer (monic integral minimal polynomial)."""
    return all(c.denominator == 1 for c in min_poly(x))


# --- exact square roots ------------------------------------------------------


def sqrt_in_field(x, field=None):
    """Exact square root of x in its field, or None.

    Works by norm descent through the tower: for K = k(sqrt(d)) and
    x = u + v*sqrt(d), any root y has N(y) in k with N(y)^2 = N(x), and
    (x + N_{K/k}(y))^2 = x * (2u + 2*N(y)), which reduces the problem to
    square roots in k.
    """
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x < 0:
            return None
        from .intmath import rational_sqrt

        r = rational_sqrt(x.numerator, x.denominator)
        return None if r is None else Fraction(r[0], r[1])
    F = x.field
    if not any(x.nums):
        return F.zero
    k, d = F.base()
    u, v = F.split(x)
    if not v:
        # x lies in k: its root is in k or is a k-multiple of sqrt(d)
        r = sqrt_in_field(u)
        if r is not None:
            return F.lift(r)
        r = sqrt_in_field(u * d)
        if r is not None:
            # sqrt(u) = sqrt(u*d) / sqrt(d)
            return F.lift(r) * F.sqrt_member(d) / F.rational(d)
        return None
    nx = u * u - v * v * d
    s = sqrt_in_field(nx)
    if s is None:
        return None
    for sgn in (1, -1):
        c = sqrt_in_field(F.lift(2 * (u + sgn * s)))
        if c is None or not c:
            continue
        y = (x + F.lift(sgn * s)) / c
        if y * y == x:
            return y
    return None
