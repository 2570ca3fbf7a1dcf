"""Ramification in multiquadratic fields.

Discriminants via the standard-form congruence cases, ramified primes,
inertia fields, the minimum-ramified-primes bound, the even-class-number
gate for heavily ramified real fields, and base-subfield selection for the
class number formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .intmath import prime_divisors, sf
from .quadratic import discriminant as quad_discriminant
from .radicands import (
    check_entries,
    complete_list,
    enumerate_subfields,
    field_id,
    is_standard_form,
    members_to_primitive,
    to_negative_form,
)


@dataclass(frozen=True)
class DiscriminantData:
    e: int  # 2-exponent in the kernel, in {0, 2, 3}
    odd_primes: tuple[int, ...]
    delta: int


@dataclass(frozen=True)
class InertiaData:
    p: int
    ram_index: int  # 1, 2 or 4
    inertia_field: tuple[int, ...]  # primitive radicand list ((), i.e. Q, allowed)


@dataclass(frozen=True)
class BaseChoice:
    k: tuple[int, ...]  # real (n-2)-quadratic subfield, primitive list
    p: int  # odd prime ramified in K but not in k


def multiquad_discriminant(entries) -> DiscriminantData:
    """Field discriminant of an n-quadratic field (n >= 2) in standard form.

    Delta = (2^e * r)^(2^(n-1)) where r runs over all primes dividing the
    product of the radicands (2 included when an even radicand remains
    after standardization) and e follows the congruence cases of the head.
    """
    entries = check_entries(entries)
    if len(entries) < 2:
        raise ValueError("need n >= 2; use the quadratic discriminant for n = 1")
    if not is_standard_form(entries):
        raise ValueError(f"list {entries} is not in standard form")
    evens = [a for a in entries if a % 2 == 0]
    odd_classes = {a % 4 for a in entries if a % 2}
    assert len(evens) <= 1 and len(odd_classes) == 1
    cls = odd_classes.pop()
    if not evens:
        e = 0 if cls == 1 else 2
    else:
        e = 2 if cls == 1 else 3
    prod = reduce(lambda x, y: x * y, entries)
    odd = tuple(p for p in prime_divisors(prod) if p != 2)
    core = 2**e * (2 if evens else 1)
    for p in odd:
        core *= p
    return DiscriminantData(e=e, odd_primes=odd, delta=core ** (2 ** (len(entries) - 1)))


def conductor_discriminant_product(entries) -> int:
    """|Delta_K| as the product of the quadratic subfield discriminants."""
    return reduce(lambda x, y: x * y, (abs(quad_discriminant(m)) for m in complete_list(entries)))


def ramified_primes(entries) -> frozenset:
    """Finite primes ramifying in the field: union over quadratic subfields."""
    out = set()
    for m in complete_list(entries):
        out.update(prime_divisors(quad_discriminant(m)))
    return frozenset(out)


def inertia_field(entries, p: int) -> InertiaData:
    """Largest subfield in which p is unramified, with the ramification index.

    A quadratic subfield sqrt(m) is unramified at p iff p does not divide
    its discriminant; those members are closed under sf-products, so they
    span the inertia field.
    """
    members = complete_list(entries)
    if p == 2:
        good = [m for m in members if m % 4 == 1]
    else:
        good = [m for m in members if m % p != 0]
    degree = len(good) + 1  # power of 2 since the set is sf-closed
    assert degree & (degree - 1) == 0
    ram_index = (len(members) + 1) // degree
    assert ram_index in (1, 2, 4)
    return InertiaData(p=p, ram_index=ram_index, inertia_field=members_to_primitive(good))


def min_ramified_ok(entries) -> bool:
    """At least n ramified primes (real) or n-1 (imaginary)."""
    entries = check_entries(entries)
    n = len(entries)
    need = n - 1 if any(a < 0 for a in entries) else n
    return len(ramified_primes(entries)) >= need


def frolich_even_gate(entries) -> bool:
    """True when the class number is provably even by ramification count.

    Real fields: at least 5 ramified finite primes.  Imaginary fields: the
    criterion applied to the maximal real subfield.  False means "no
    conclusion", never "odd".
    """
    entries = check_entries(entries)
    if all(a > 0 for a in entries):
        return len(ramified_primes(entries)) >= 5
    pos = [m for m in complete_list(entries) if m > 0]
    if not pos:
        return False
    return len(ramified_primes(members_to_primitive(pos))) >= 5


# Decomposition choices matching the published triquadratic computation
# table; the deterministic rule below picks a different (equally valid)
# base for a few of these, so the table takes precedence.
_BASE_TABLE = {
    field_id(k): (base, p)
    for k, base, p in [
        ((-1, -2, -3), (2,), 3),
        ((-1, 2, 11), (2,), 11),
        ((-1, 2, 5), (2,), 5),
        ((-1, 2, 7), (2,), 7),
        ((-1, 3, 5), (3,), 5),
        ((-1, 3, 7), (3,), 7),
        ((-1, 3, 11), (3,), 11),
        ((-1, 3, 19), (3,), 19),
        ((-1, 7, 5), (7,), 5),
        ((-1, 7, 13), (7,), 13),
        ((-1, 7, 19), (7,), 19),
        ((-2, -3, -7), (6,), 7),
        ((-2, -3, -10), (5,), 3),
        ((-2, -7, -10), (5,), 7),
        ((-3, -7, -15), (5,), 7),
        ((-3, -11, -6), (2,), 3),
        ((-3, -11, -19), (33,), 19),
        ((-3, -11, 17), (33,), 17),
    ]
}


def base_choices(entries) -> list[BaseChoice]:
    """All valid (k, p) pairs: odd ramified p with a real (n-2)-subfield of
    its inertia field avoiding p."""
    entries = check_entries(entries)
    n = len(entries)
    out = []
    for p in sorted(ramified_primes(entries)):
        if p == 2:
            continue
        data = inertia_field(entries, p)
        if data.ram_index == 1:
            continue
        ke = data.inertia_field  # (n-1)-quadratic, p unramified
        if all(a > 0 for a in ke):
            # any real (n-2)-subfield of the inertia field works
            for sub in enumerate_subfields(ke, n - 2):
                if all(a > 0 for a in sub):
                    out.append(BaseChoice(k=sub, p=p))
        else:
            # inertia field is imaginary with negative form {-a1, ..., -a_{n-1}};
            # the pairwise products with a1 span a real (n-2)-quadratic subfield
            neg = to_negative_form(ke)
            gens = tuple(sf(neg[0] * a) for a in neg[1:])
            out.append(BaseChoice(k=members_to_primitive(field_id(gens).members), p=p))
    return out


def choose_base_subfield(entries) -> BaseChoice:
    """Deterministic base choice for the class number formula (n >= 3).

    Published decomposition-table rows take precedence; otherwise: smallest
    odd ramified prime, then the lexicographically first valid subfield.
    """
    entries = check_entries(entries)
    if len(entries) < 3:
        raise ValueError("base subfield selection needs n >= 3")
    if not any(a < 0 for a in entries):
        raise ValueError("base subfield selection applies to imaginary fields")
    fid = field_id(entries)
    if fid in _BASE_TABLE:
        k, p = _BASE_TABLE[fid]
        return BaseChoice(k=k, p=p)
    choices = base_choices(entries)
    if not choices:
        raise ValueError(f"no valid base subfield for {entries}")
    return choices[0]
