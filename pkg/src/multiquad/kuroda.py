"""Class numbers of multiquadratic fields via Kuroda's class number formula.

For a V4 extension K/k with intermediate fields k1, k2, k3:

    h_K = 2^(d - kappa - 2 - nu) * q(K/k) * h1 * h2 * h3 / hk^2

where d counts the infinite places of k ramified in K, kappa is the unit
rank of k, nu in {0, 1} records whether K is generated over k by square
roots of units, and q(K/k) = [E(K) : E(k1)E(k2)E(k3)].

Imaginary fields are evaluated recursively over a real (n-2)-quadratic
base chosen so that an odd ramified prime forces nu = 0; the result is
equivalent to the closed product form

    h_K = (1/2)^(2^(n-1) - 1) * Q * P * h3

with P the product of the class numbers of the imaginary quadratic
subfields, h3 the class number of the maximal real subfield, and Q an
accumulated product of unit indices (reported factored in the trace).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .elements import get_field, sqrt_in_field
from .errors import DatasetError, InconsistencyError
from .intmath import sf
from .quadratic import class_number
from .radicands import (
    canonical_primitive,
    canonical_sort,
    check_entries,
    complete_list,
    enumerate_subfields,
    field_id,
    members_to_primitive,
)
from .ramify import base_choices, choose_base_subfield, ramified_primes
from .units import (
    compute_unit_system,
    dataset_path,
    load_unit_dataset,
    unit_index,
)


@dataclass(frozen=True)
class KurodaDecomposition:
    """V4 layer K/k with its three intermediate fields and formula constants."""

    K: tuple[int, ...]
    k: tuple[int, ...]  # () means Q
    k1: tuple[int, ...]
    k2: tuple[int, ...]
    k3: tuple[int, ...]
    d: int  # ramified infinite places of k
    kappa: int  # unit rank of k
    nu: int  # in {0, 1}


@dataclass
class ClassNumberResult:
    h: int
    formula: str
    trace: dict  # JSON-serializable provenance

    def to_json(self) -> dict:
        return {
            "field": self.trace.get("field"),
            "h": self.h,
            "formula": self.formula,
            "inputs": self.trace.get("inputs", {}),
            "datasets": self.trace.get("datasets", []),
        }


def _base_str(k) -> str:
    return str(field_id(k)) if k else "Q"


def intermediate_fields(K, k):
    """The three fields strictly between k and K for a degree-4 step K/k.

    Returned as canonical primitive lists; imaginary ones first, so for an
    imaginary K over a real base the third entry is the maximal real
    intermediate field.
    """
    K = check_entries(K)
    k_members = complete_list(k) if k else ()
    K_members = complete_list(K)
    if len(K_members) + 1 != 4 * (len(k_members) + 1):
        raise ValueError(f"[{K}:{k or 'Q'}] != 4")
    if not set(k_members) <= set(K_members):
        raise ValueError(f"{k} is not a subfield of {K}")
    span_k = {1, *k_members}
    seen = set()
    out = []
    for m in K_members:
        if m in span_k:
            continue
        coset = frozenset(sf(m * s) for s in span_k)
        if coset in seen:
            continue
        seen.add(coset)
        out.append(members_to_primitive(canonical_sort(coset | set(k_members))))
    assert len(out) == 3
    out.sort(key=lambda e: (all(a > 0 for a in e), [(abs(a), a > 0) for a in e]))
    return tuple(out)


def nu(K, k) -> int:
    """nu = 1 iff K = k(sqrt(eps), sqrt(eta)) for units eps, eta of k.

    Fast path: an odd prime ramified in K but not in k rules this out
    (unit radicals ramify only at 2 and infinity), giving nu = 0.  The
    fallback tests each intermediate quadratic extension against the unit
    square classes of k with exact square-root extraction.
    """
    K = canonical_primitive(check_entries(K))
    if not k:
        # over Q the only unit radical is sqrt(-1): no V4 unit extension
        return 0
    k = canonical_primitive(check_entries(k))
    if len(K) != len(k) + 2:
        raise ValueError(f"[{K}:{k}] != 4")
    ram_k = ramified_primes(k)
    if any(p != 2 and p not in ram_k for p in ramified_primes(K)):
        return 0
    F = get_field(k)
    system = compute_unit_system(F)
    gens = [system.torsion.generator] + list(system.fundamental)
    k_members = set(complete_list(k))
    unit_generated = 0
    for ki in intermediate_fields(K, k):
        m = next(v for v in complete_list(ki) if v not in k_members)
        base = F.rational(m)
        found = False
        for bits in range(1, 2 ** len(gens)):
            u = base
            for i, g in enumerate(gens):
                if bits >> i & 1:
                    u = u * g
            if sqrt_in_field(u) is not None:
                found = True
                break
        unit_generated += found
    # two unit-generated intermediates force the third; 2 never occurs alone
    return 1 if unit_generated >= 2 else 0


def decompose(K, k, nu_value=None) -> KurodaDecomposition:
    K = canonical_primitive(check_entries(K))
    k = canonical_primitive(check_entries(k)) if k else ()
    k1, k2, k3 = intermediate_fields(K, k)
    k_members = complete_list(k) if k else ()
    k_real = all(m > 0 for m in k_members)
    d = 2 ** len(k) if (any(a < 0 for a in K) and k_real) else 0
    kappa = sum(1 for m in k_members if m > 0)
    if nu_value is None:
        nu_value = nu(K, k)
    return KurodaDecomposition(K=K, k=k, k1=k1, k2=k2, k3=k3, d=d, kappa=kappa, nu=nu_value)


def kuroda_general(dec: KurodaDecomposition, h1: int, h2: int, h3: int, hk: int, q: int,
                   formula: str = "kuroda") -> ClassNumberResult:
    """Evaluate h_K = 2^(d-kappa-2-nu) * q * h1*h2*h3 / hk^2 with integrality check."""
    for name, v in (("h1", h1), ("h2", h2), ("h3", h3), ("hk", hk), ("q", q)):
        if v < 1:
            raise ValueError(f"{name} = {v} must be a positive integer")
    val = Fraction(2) ** (dec.d - dec.kappa - 2 - dec.nu) * q * h1 * h2 * h3 / (hk * hk)
    if val.denominator != 1:
        raise InconsistencyError(
            f"Kuroda formula gives non-integral h = {val} for K = {dec.K} over "
            f"{dec.k or 'Q'}: d={dec.d} kappa={dec.kappa} nu={dec.nu} q={q} "
            f"h1={h1} h2={h2} h3={h3} hk={hk}"
        )
    trace = {
        "field": str(field_id(dec.K)),
        "base": _base_str(dec.k),
        "subfields": {
            "k1": str(field_id(dec.k1)),
            "k2": str(field_id(dec.k2)),
            "k3": str(field_id(dec.k3)),
        },
        "inputs": {
            "d": dec.d, "kappa": dec.kappa, "nu": dec.nu, "q": q,
            "h1": h1, "h2": h2, "h3": h3, "hk": hk,
        },
        "datasets": [],
    }
    return ClassNumberResult(h=int(val), formula=formula, trace=trace)


# --- unit system provisioning ----------------------------------------------


_UNIT_CACHE: dict = {}


def _unit_system(entries, data_dir=None, strict=False):
    """Unit system for a field: bundled dataset when available, else computed.

    Returns (system, dataset_path_or_None).  With strict=True a dataset is
    mandatory and its absence is a DatasetError.
    """
    fid = field_id(entries)
    path = dataset_path(data_dir, fid) if data_dir else None
    if path and os.path.exists(path):
        key = (fid, path)
        if key not in _UNIT_CACHE:
            _UNIT_CACHE[key] = load_unit_dataset(members_to_primitive(fid.members), path)
        return _UNIT_CACHE[key], path
    if strict:
        where = path if path else "(no data directory configured)"
        raise DatasetError(f"unit dataset required for field {{{fid}}}: {where}")
    key = (fid, "computed")
    if key not in _UNIT_CACHE:
        _UNIT_CACHE[key] = compute_unit_system(members_to_primitive(fid.members))
    return _UNIT_CACHE[key], None


def relative_unit_index(K, subfields, data_dir=None, strict=False):
    """(IndexResult, datasets used) for q(K/k) over the three given subfields."""
    big, path = _unit_system(K, data_dir, strict)
    subs = [_unit_system(s, data_dir, False)[0] for s in subfields]
    return unit_index(big, subs), ([path] if path else [])


# --- class number pipelines ---------------------------------------------------


_RESULTS: dict = {}


def clear_caches() -> None:
    _RESULTS.clear()
    _UNIT_CACHE.clear()


def class_number_field(entries, data_dir=None, strict=False) -> ClassNumberResult:
    """Class number of any supported multiquadratic field, with trace."""
    entries = check_entries(entries)
    fid = field_id(entries)
    key = (fid, data_dir)
    if key in _RESULTS:
        return _RESULTS[key]
    if fid.n == 1:
        a = fid.members[0]
        res = ClassNumberResult(
            h=class_number(a),
            formula="quadratic-forms",
            trace={"field": str(fid), "inputs": {"a": a}, "datasets": []},
        )
    elif fid.is_imaginary():
        res = big_kuroda(entries, data_dir=data_dir, strict=strict)
    else:
        res = _real_kuroda(entries, data_dir=data_dir)
    _RESULTS[key] = res
    return res


def _real_kuroda(K, data_dir=None) -> ClassNumberResult:
    K = canonical_primitive(check_entries(K))
    n = len(K)
    if n == 2:
        dec = decompose(K, (), nu_value=0)
        idx, used = relative_unit_index(K, (dec.k1, dec.k2, dec.k3), data_dir)
        hs = [class_number_field(ki, data_dir).h for ki in (dec.k1, dec.k2, dec.k3)]
        res = kuroda_general(dec, *hs, 1, idx.q, formula="real-biquadratic-kuroda")
        res.trace["datasets"] = used
        return res
    # pick a real (n-2)-quadratic base avoiding an odd ramified prime (nu = 0);
    # fall back to deciding nu by unit square classes if no prime is avoidable
    choices = [c for c in base_choices(K) if all(a > 0 for a in c.k)]
    if choices:
        k, nu_value = choices[0].k, 0
    else:
        k = next(s for s in enumerate_subfields(K, n - 2) if all(a > 0 for a in s))
        nu_value = None
    dec = decompose(K, k, nu_value)
    hs = [class_number_field(ki, data_dir).h for ki in (dec.k1, dec.k2, dec.k3)]
    hk = class_number_field(dec.k, data_dir).h
    idx, used = relative_unit_index(K, (dec.k1, dec.k2, dec.k3), data_dir)
    res = kuroda_general(dec, *hs, hk, idx.q, formula="real-kuroda")
    res.trace["datasets"] = used
    return res


def small_kuroda(K, k=None, data_dir=None, strict=False) -> ClassNumberResult:
    """Imaginary n-quadratic K over a real (n-2)-quadratic base, nu = 0.

    Specialization d = 2^(n-2), kappa = 2^(n-2) - 1:
        h_K = (1/2) q(K/k) h1 h2 h3 / hk^2.
    """
    K = canonical_primitive(check_entries(K))
    n = len(K)
    if n < 3 or not any(a < 0 for a in K):
        raise ValueError("expected an imaginary n-quadratic field with n >= 3")
    if k is None:
        k = choose_base_subfield(K).k
    k = canonical_primitive(check_entries(k))
    if any(a < 0 for a in k) or len(k) != n - 2:
        raise ValueError(f"base {k} is not a real {n - 2}-quadratic subfield")
    if not any(p != 2 and p not in ramified_primes(k) for p in ramified_primes(K)):
        raise ValueError(f"no odd prime ramifies in {K} outside {k}; nu = 0 not forced")
    dec = decompose(K, k, nu_value=0)
    assert dec.d == 2 ** (n - 2) and dec.kappa == 2 ** (n - 2) - 1
    hs = [class_number_field(ki, data_dir).h for ki in (dec.k1, dec.k2, dec.k3)]
    hk = class_number_field(dec.k, data_dir).h
    idx, used = relative_unit_index(K, (dec.k1, dec.k2, dec.k3), data_dir, strict)
    res = kuroda_general(dec, *hs, hk, idx.q, formula="small-kuroda")
    res.trace["datasets"] = used
    return res


def P_product(K) -> int:
    """Product of the class numbers of all imaginary quadratic subfields."""
    members = complete_list(K)
    if all(m > 0 for m in members):
        raise ValueError(f"{K} is totally real")
    out = 1
    for m in members:
        if m < 0:
            out *= class_number(m)
    return out


def big_kuroda(K, data_dir=None, strict=False) -> ClassNumberResult:
    """Imaginary n-quadratic class number in recursive product form.

    Evaluates layer by layer over bases chosen by choose_base_subfield and
    reports the accumulated Q = q(K/k) * q(k1/...) * ... factored in the
    trace; for n <= 3 the closed form (1/2)^(2^(n-1)-1) * Q * P * h3 is
    asserted against the recursive value.
    """
    K = canonical_primitive(check_entries(K))
    if not any(a < 0 for a in K):
        raise ValueError("big-Kuroda form applies to imaginary fields")
    n = len(K)
    if n < 2:
        raise ValueError("need n >= 2")
    P = P_product(K)
    datasets = []
    if n == 2:
        dec = decompose(K, (), nu_value=0)
        hs = [class_number_field(ki, data_dir).h for ki in (dec.k1, dec.k2, dec.k3)]
        idx, used = relative_unit_index(K, (dec.k1, dec.k2, dec.k3), data_dir)
        res = kuroda_general(dec, *hs, 1, idx.q, formula="imaginary-biquadratic-kuroda")
        datasets += used
        q_factors = [{"extension": f"{field_id(K)}/Q", "q": idx.q}]
    else:
        k = choose_base_subfield(K).k
        dec = decompose(K, k, nu_value=0)
        # k1, k2 imaginary (n-1)-quadratic, k3 the maximal real subfield
        r1 = class_number_field(dec.k1, data_dir)
        r2 = class_number_field(dec.k2, data_dir)
        r3 = class_number_field(dec.k3, data_dir)
        hk = class_number_field(dec.k, data_dir).h
        idx, used = relative_unit_index(K, (dec.k1, dec.k2, dec.k3), data_dir, strict)
        res = kuroda_general(dec, r1.h, r2.h, r3.h, hk, idx.q, formula="small-kuroda")
        datasets += used
        q_factors = [{"extension": f"{field_id(K)}/{_base_str(dec.k)}", "q": idx.q}]
        for sub in (r1, r2):
            q_factors += sub.trace.get("Q_factors", [])
            datasets += sub.trace.get("datasets", [])
    h3 = class_number_field(dec.k3, data_dir).h
    res.trace["P"] = P
    res.trace["h3"] = h3
    res.trace["Q_factors"] = q_factors
    res.trace["datasets"] = datasets
    if n <= 3:
        # closed product form; for n = 3 the imaginary subfield sets of k1 and
        # k2 are disjoint and the base class number cancels, so this is exact
        Q = 1
        for f in q_factors:
            Q *= f["q"]
        closed = Fraction(1, 2) ** (2 ** (n - 1) - 1) * Q * P * h3
        if closed != res.h:
            raise InconsistencyError(
                f"product form {closed} disagrees with recursive value {res.h} for {K}"
            )
        res.trace["Q"] = Q
        res.trace["product_form_checked"] = True
    else:
        res.trace["product_form_checked"] = False
    res.formula = "big-kuroda"
    return res


def h_lower_bound(K, known=None) -> Fraction:
    """Lower bound (1/2)^(2^(n-1)-1) * prod(h or 8) over imaginary subfields.

    `known` maps negative radicands to class numbers; members outside the
    map (or with h > 4) contribute a factor 8.  Valid since Q >= 1, h3 >= 1.
    """
    members = complete_list(K)
    neg = [m for m in members if m < 0]
    if not neg:
        raise ValueError(f"{K} is totally real")
    known = known or {}
    n = (len(members) + 1).bit_length() - 1
    bound = Fraction(1, 2 ** (2 ** (n - 1) - 1))
    for m in neg:
        h = known.get(m)
        bound *= h if (h is not None and h <= 4) else 8
    return bound
