"""Radicand-list calculus for n-quadratic fields.

An n-quadratic field Q(sqrt(a_1), ..., sqrt(a_n)) is handled entirely
through its radicand lists.  A *primitive* list has exactly n entries,
none of which is the squarefree product of a subset of the others.  The
*complete* list collects the 2^n - 1 squarefree integers generating the
quadratic subfields; sorted canonically it serves as the field identity.

Lists are plain tuples of ints.  All functions are pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

from .intmath import is_squarefree, sf

# Public API accepts fields up to degree 2^6; internal machinery (the
# degree-16 unit computations) stays within this cap as well.
MAX_N = 6


def _canon_key(m: int) -> tuple[int, int]:
    # ascending |value|, negative before positive at equal magnitude
    return (abs(m), 0 if m < 0 else 1)


def canonical_sort(members) -> tuple[int, ...]:
    return tuple(sorted(members, key=_canon_key))


@dataclass(frozen=True)
class FieldId:
    """Canonical field handle: the sorted complete radicand list."""

    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", canonical_sort(self.members))

    @property
    def n(self) -> int:
        return (len(self.members) + 1).bit_length() - 1

    @property
    def degree(self) -> int:
        return len(self.members) + 1

    def is_imaginary(self) -> bool:
        return any(m < 0 for m in self.members)

    def contains(self, other: "FieldId") -> bool:
        return set(other.members) <= set(self.members)

    def __str__(self) -> str:
        return ",".join(str(m) for m in self.members)

    def __iter__(self):
        return iter(self.members)


def check_entries(entries) -> tuple[int, ...]:
    entries = tuple(int(a) for a in entries)
    if not entries:
        raise ValueError("empty radicand list")
    for a in entries:
        if a in (0, 1):
            raise ValueError(f"invalid radicand {a}")
        if not is_squarefree(a):
            raise ValueError(f"radicand {a} is not squarefree")
    return entries


def is_primitive(entries) -> bool:
    """True iff no entry is the sf-product of a nonempty subset of the others."""
    entries = check_entries(entries)
    if len(set(entries)) != len(entries):
        return False
    for j, a in enumerate(entries):
        others = entries[:j] + entries[j + 1 :]
        for r in range(1, len(others) + 1):
            for sub in itertools.combinations(others, r):
                if a == sf(reduce(lambda x, y: x * y, sub)):
                    return False
    return True


def _require_primitive(entries) -> tuple[int, ...]:
    entries = check_entries(entries)
    if len(entries) > MAX_N:
        raise ValueError(f"n = {len(entries)} exceeds the supported cap {MAX_N}")
    if not is_primitive(entries):
        raise ValueError(f"radicand list {entries} is not primitive")
    return entries


def complete_list(entries) -> tuple[int, ...]:
    """All sf-products over nonempty subsets: the 2^n - 1 quadratic subfields."""
    entries = _require_primitive(entries)
    out = set()
    for r in range(1, len(entries) + 1):
        for sub in itertools.combinations(entries, r):
            out.add(sf(reduce(lambda x, y: x * y, sub)))
    if len(out) != 2 ** len(entries) - 1:
        raise ValueError(f"list {entries} does not generate degree 2^{len(entries)}")
    return canonical_sort(out)


def field_id(entries) -> FieldId:
    return FieldId(complete_list(entries))


def fields_equal(a, b) -> bool:
    return field_id(a) == field_id(b)


def is_imaginary(entries) -> bool:
    return any(a < 0 for a in check_entries(entries))


def is_p_headed(entries, p: int) -> bool:
    entries = _require_primitive(entries)
    return all(a % p != 0 for a in entries[1:])


def to_p_headed(entries, p: int):
    """Equivalent primitive list with p dividing at most the first entry."""
    entries = _require_primitive(entries)
    divisible = [i for i, a in enumerate(entries) if a % p == 0]
    if not divisible or divisible == [0]:
        return entries
    # head = divisible entry of smallest magnitude (negative first at ties)
    i = min(divisible, key=lambda j: _canon_key(entries[j]))
    head = entries[i]
    out = [head]
    for j, a in enumerate(entries):
        if j == i:
            continue
        out.append(a if a % p != 0 else sf(head * a))
    result = tuple(out)
    assert is_p_headed(result, p) and fields_equal(entries, result)
    return result


def is_standard_form(entries) -> bool:
    entries = _require_primitive(entries)
    if not is_p_headed(entries, 2):
        return False
    odds = [a % 4 for a in entries if a % 2 != 0]
    return len(set(odds)) <= 1


def to_standard_form(entries):
    """Equivalent 2-headed list whose odd entries agree mod 4."""
    entries = to_p_headed(_require_primitive(entries), 2)
    odd3 = [a for a in entries if a % 2 and a % 4 == 3]
    odd1 = [a for a in entries if a % 2 and a % 4 == 1]
    if not odd3 or not odd1:
        return entries
    # pivot on the congruent-3 entry of smallest magnitude (negative first)
    pivot = min(odd3, key=_canon_key)
    out = tuple(a if (a % 2 == 0 or a % 4 == 3) else sf(pivot * a) for a in entries)
    assert is_standard_form(out) and fields_equal(entries, out)
    return out


def to_negative_form(entries):
    """Equivalent primitive list with every radicand negative."""
    entries = _require_primitive(entries)
    if not is_imaginary(entries):
        raise ValueError(f"list {entries} is totally real")
    first_neg = next(a for a in entries if a < 0)
    out = tuple(a if a < 0 else sf(first_neg * a) for a in entries)
    assert all(a < 0 for a in out) and fields_equal(entries, out)
    return out


def subfield_counts(entries) -> tuple[int, int]:
    """(imaginary, real) quadratic subfield counts for an imaginary field."""
    entries = _require_primitive(entries)
    n = len(entries)
    members = complete_list(entries)
    neg = sum(1 for m in members if m < 0)
    pos = len(members) - neg
    if not is_imaginary(entries):
        return (0, pos)
    if n < 2:
        return (1, 0)
    assert (neg, pos) == (2 ** (n - 1), 2 ** (n - 1) - 1)
    return (neg, pos)


# --- subgroup/subfield enumeration ---------------------------------------
#
# Complete-list members are the nonzero vectors of an F2-space of dimension
# n; a degree-2^m subfield corresponds to a rank-m subspace.


def _f2_vectors(entries):
    """Map each complete-list member to its F2 exponent vector over entries."""
    entries = _require_primitive(entries)
    n = len(entries)
    vec_of = {}
    for bits in range(1, 2**n):
        prod = 1
        for i in range(n):
            if bits >> i & 1:
                prod *= entries[i]
        vec_of[sf(prod)] = bits
    return vec_of


def _f2_span(vectors) -> set[int]:
    span = {0}
    for v in vectors:
        span |= {s ^ v for s in span}
    span.discard(0)
    return span


def _f2_rank(vectors) -> int:
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def members_to_primitive(members) -> tuple[int, ...]:
    """Greedy canonical primitive generators for a sf-closed member set."""
    members = canonical_sort(members)
    chosen: list[int] = []
    span = {1}
    for m in members:
        if m in span:
            continue
        chosen.append(m)
        span |= {sf(s * m) for s in span}
    result = tuple(chosen)
    assert len(span) - 1 == len(members)
    return result


def canonical_primitive(entries) -> tuple[int, ...]:
    return members_to_primitive(complete_list(entries))


def subspace_members(entries, generating_members) -> tuple[int, ...]:
    """Closure of the given members under sf-products (sorted)."""
    span = {1}
    for m in generating_members:
        span |= {sf(s * m) for s in span}
    span.discard(1)
    return canonical_sort(span)


def enumerate_subfields(entries, m: int) -> list[tuple[int, ...]]:
    """All degree-2^m subfields, each as a canonical primitive list."""
    entries = _require_primitive(entries)
    n = len(entries)
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= {n}, got {m}")
    vec_of = _f2_vectors(entries)
    member_of = {v: k for k, v in vec_of.items()}
    seen = set()
    out = []
    for combo in itertools.combinations(sorted(vec_of.values()), m):
        if _f2_rank(combo) != m:
            continue
        span = frozenset(_f2_span(combo))
        if span in seen:
            continue
        seen.add(span)
        members = canonical_sort(member_of[v] for v in span)
        out.append(members_to_primitive(members))
    out.sort(key=lambda lst: [(abs(a), a > 0) for a in lst])
    return out


def parse_radicands(text: str) -> tuple[int, ...]:
    """Parse a comma-separated radicand list like "-1,2,3"."""
    try:
        entries = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"cannot parse radicand list {text!r}") from exc
    return check_entries(entries)
