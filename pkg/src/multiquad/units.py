"""Unit groups of multiquadratic fields: torsion, fundamental systems, indices.

The reference frame for exponents is the set of fundamental units of the
real quadratic subfields (one per positive complete-list member); the free
part of any unit group of the field has full rank against this frame, and
every unit is torsion times a product of frame units with dyadic rational
exponents.  Systems built here carry exact exponent vectors; systems loaded
from datasets get theirs reconstructed from high-precision logarithms and
then re-verified with exact arithmetic.

Construction methods: real fields start from the frame and 2-saturate
(Kubota's norm method for biquadratics, its Wada-style iteration beyond);
imaginary fields lift the unit group of the maximal real subfield and test
the Hasse index [E : W·E+] <= 2.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import reduce
from math import gcd

import mpmath

from .elements import Element, Field, get_field, is_integral, sqrt_in_field
from .errors import DatasetError, InconsistencyError, PrecisionError
from .quadratic import fundamental_unit
from .radicands import FieldId, members_to_primitive

PRECISIONS = (128, 256, 512, 1024)


@dataclass(frozen=True)
class TorsionGroup:
    order: int
    generator: Element


@dataclass
class UnitSystem:
    field: Field
    torsion: TorsionGroup
    fundamental: list  # Elements
    source: str = "computed"
    # dyadic exponent vectors over the frame, aligned with `fundamental`
    exponents: list = dataclass_field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(frame_members(self.field))


def unit_rank(field: Field) -> int:
    return len(frame_members(field))


def frame_members(field: Field) -> tuple[int, ...]:
    """Positive complete-list members; their quadratic units span rank."""
    return tuple(m for m in field.members if m > 0)


def frame_units(field: Field) -> list[Element]:
    return [field.quadratic_unit(fundamental_unit(m)) for m in frame_members(field)]


# --- torsion ------------------------------------------------------------------


def torsion_order(field: Field) -> int:
    s = set(field.members)
    w = 2
    if -1 in s:
        w = 4
    if -3 in s:
        w = w * 3  # 6 or 12
    if -1 in s and 2 in s:
        w = w // 4 * 8  # 8 or 24
    return w


def torsion_units(field: Field) -> TorsionGroup:
    """Roots of unity of the field, with an explicit generator of exact order."""
    w = torsion_order(field)
    if w == 2:
        gen = field.rational(-1)
    elif w == 4:
        gen = field.sqrt_member(-1)
    elif w == 6:
        gen = (field.one + field.sqrt_member(-3)) / 2
    elif w == 8:
        gen = (field.sqrt_member(2) + field.sqrt_member(-2)) / 2
    elif w == 12:
        gen = (field.sqrt_member(3) + field.sqrt_member(-1)) / 2
    else:  # 24
        zeta8 = (field.sqrt_member(2) + field.sqrt_member(-2)) / 2
        zeta3 = (field.rational(-1) + field.sqrt_member(-3)) / 2
        gen = zeta8 * zeta3  # order lcm(8,3) = 24
    assert gen**w == 1
    for p in (2, 3):
        if w % p == 0:
            assert gen ** (w // p) != 1
    return TorsionGroup(order=w, generator=gen)


def torsion_exponent(x: Element, torsion: TorsionGroup):
    """j with x = generator^j, or None if x is not in the torsion group."""
    z = torsion.generator
    cur = x.field.one
    for j in range(torsion.order):
        if x == cur:
            return j
        cur = cur * z
    return None


# --- verification --------------------------------------------------------------


def verify_unit(x: Element) -> bool:
    """Algebraic integer of absolute norm 1 whose inverse is also integral."""
    if not x:
        raise ValueError("zero is not a unit")
    if abs(x.field.norm(x)) != 1:
        return False
    return is_integral(x) and is_integral(x.inverse())


def _log_rows(units, field: Field, prec: int):
    """log|sigma(u)| for every embedding sigma (rows) and unit u (columns)."""
    with mpmath.workprec(prec):
        return [
            [mpmath.log(abs(field.embed(u, mask, prec))) for u in units]
            for mask in range(field.dim)
        ]


def _numeric_rank(matrix, prec: int) -> int:
    """Rank with pivots below 2^(-prec/2) treated as zero."""
    rows = [list(r) for r in matrix]
    eps = mpmath.mpf(2) ** (-(prec // 2))
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = max(range(rank, len(rows)), key=lambda i: abs(rows[i][c]), default=None)
        if piv is None or abs(rows[piv][c]) < eps:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(len(rows)):
            if i != rank:
                f = rows[i][c] / pr[c]
                rows[i] = [v - f * w for v, w in zip(rows[i], pr)]
        rank += 1
    return rank


def independence_rank(units) -> int:
    """Rank of the log-embedding matrix, certified by precision escalation."""
    if not units:
        return 0
    field = units[0].field
    last = None
    for prec in PRECISIONS:
        with mpmath.workprec(prec):
            rank = _numeric_rank(_log_rows(units, field, prec), prec)
        if rank == last:
            return rank
        last = rank
    raise PrecisionError("unit independence rank indeterminate at precision cap")


# --- construction by 2-saturation -----------------------------------------------


def _saturate(field: Field, gens, exps, zeta: Element):
    """Enlarge <torsion, gens> by square roots until 2-saturated.

    Tests every nontrivial product of generators, optionally twisted by the
    torsion generator (torsion mod squares is {1, zeta}); each found root
    replaces a generator occurring in its product, halving its exponents.
    """
    gens = list(gens)
    exps = [list(e) for e in exps]
    changed = True
    while changed:
        changed = False
        for bits in range(1, 2 ** len(gens)):
            idxs = [i for i in range(len(gens)) if bits >> i & 1]
            x = reduce(lambda a, b: a * b, (gens[i] for i in idxs))
            for twist in (None, zeta):
                cand = x if twist is None else x * twist
                y = sqrt_in_field(cand)
                if y is None:
                    continue
                j = idxs[0]
                gens[j] = y
                exps[j] = [
                    sum(Fraction(exps[i][c]) for i in idxs) / 2
                    for c in range(len(exps[j]))
                ]
                changed = True
                break
            if changed:
                break
    return gens, [tuple(e) for e in exps]


def compute_unit_system(entries_or_field) -> UnitSystem:
    """Fundamental units of a multiquadratic field (degree <= 16).

    Real fields: 2-saturate the quadratic frame units (Kubota's method for
    biquadratics and its iterated form beyond).  Imaginary fields: saturate
    the lifted unit group of the maximal real subfield against torsion
    twists (the Hasse index [E : W.E+] is 1 or 2).
    """
    field = entries_or_field if isinstance(entries_or_field, Field) else get_field(entries_or_field)
    torsion = torsion_units(field)
    frame = frame_members(field)
    if not field.id.is_imaginary():
        gens = frame_units(field)
        exps = [tuple(Fraction(int(i == j)) for j in range(len(frame))) for i in range(len(frame))]
        gens, exps = _saturate(field, gens, exps, torsion.generator)
        return UnitSystem(field, torsion, gens, "computed", list(exps))
    if field.n == 1:
        return UnitSystem(field, torsion, [], "computed", [])
    plus = compute_unit_system(members_to_primitive(frame))  # maximal real subfield
    lifted = [field.element(u.coords()) for u in plus.fundamental]
    gens, exps = _saturate(field, lifted, plus.exponents, torsion.generator)
    return UnitSystem(field, torsion, gens, "computed", list(exps))


def kubota_real_biquadratic_units(entries):
    """(UnitSystem, q(K/Q)) for a real biquadratic field by Kubota's method."""
    field = get_field(entries)
    if field.n != 2 or field.id.is_imaginary():
        raise ValueError("expected a totally real biquadratic field")
    system = compute_unit_system(field)
    q = _lattice_index(
        [tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3)],
        system.exponents,
    )
    assert q.denominator == 1
    return system, int(q)


# --- exponent reconstruction -----------------------------------------------------


def _dyadic_round(x, max_den_exp: int = 8):
    """Nearest dyadic rational m/2^s; None if no candidate is clearly nearest."""
    for s in range(max_den_exp + 1):
        m = mpmath.nint(x * 2**s)
        if abs(x * 2**s - m) < mpmath.mpf(2) ** -32:
            return Fraction(int(m), 2**s)
    return None


def reconstruct_exponents(system: UnitSystem) -> None:
    """Attach exact frame exponents to a system that lacks them.

    Solves for each unit's exponents in the log-lattice of the frame units,
    rounds to dyadic rationals, and re-verifies the claimed relation exactly
    up to a torsion factor.  Escalates precision on any failure.
    """
    if len(system.exponents) == len(system.fundamental):
        return
    field = system.field
    frame = frame_units(field)
    r = len(frame)
    if not system.fundamental:
        system.exponents = []
        return
    for prec in PRECISIONS:
        try:
            with mpmath.workprec(prec):
                rows = _log_rows(frame, field, prec)
                # pick r embeddings giving an invertible frame matrix
                chosen = _independent_rows(rows, r, prec)
                A = mpmath.matrix([rows[i] for i in chosen])
                exps = []
                for u in system.fundamental:
                    b = mpmath.matrix(
                        [mpmath.log(abs(field.embed(u, mask, prec))) for mask in chosen]
                    )
                    sol = mpmath.lu_solve(A, b) if r else mpmath.matrix(0, 1)
                    vec = []
                    for i in range(r):
                        q = _dyadic_round(sol[i])
                        if q is None:
                            raise PrecisionError("exponent rounding ambiguous")
                        vec.append(q)
                    _verify_exponents(u, vec, frame, system.torsion)
                    exps.append(tuple(vec))
            system.exponents = exps
            return
        except PrecisionError:
            continue
    raise PrecisionError("exponent reconstruction failed at precision cap")


def _independent_rows(rows, r, prec):
    chosen = []
    for i in range(len(rows)):
        if _numeric_rank([rows[j] for j in chosen + [i]], prec) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == r:
                return chosen
    raise PrecisionError("frame log matrix is rank deficient")


def _verify_exponents(u: Element, vec, frame, torsion: TorsionGroup) -> None:
    """Exact check: u^(2^s) * prod(frame^-m) must be a root of unity."""
    s = 0
    for q in vec:
        while q.denominator > 2**s:
            s += 1
    lhs = u ** (2**s)
    for eps, q in zip(frame, vec):
        m = int(q * 2**s)
        lhs = lhs * eps ** (-m)
    if torsion_exponent(lhs, torsion) is None:
        raise PrecisionError(f"exponent relation failed exact verification for {u}")


# --- lattice indices ---------------------------------------------------------------


def _hnf(rows):
    """Row Hermite normal form over Z; returns (hnf_rows, transform U)."""
    rows = [list(r) for r in rows]
    m = len(rows)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = None
        while True:
            nz = [i for i in range(r, m) if rows[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][c]))
            for i in nz:
                if i == piv:
                    continue
                f = rows[i][c] // rows[piv][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[piv])]
                U[i] = [a - f * b for a, b in zip(U[i], U[piv])]
            if len([i for i in range(r, m) if rows[i][c]]) == 1:
                break
        if piv is not None and rows[piv][c]:
            rows[r], rows[piv] = rows[piv], rows[r]
            U[r], U[piv] = U[piv], U[r]
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
                U[r] = [-a for a in U[r]]
            r += 1
    return rows, U


def _lattice_index(sub_rows, big_rows) -> Fraction:
    """Index [L_big : L_sub] of full-rank dyadic lattices given spanning rows."""
    scale = 1
    for row in itertools.chain(sub_rows, big_rows):
        for q in row:
            scale = scale * Fraction(q).denominator // gcd(scale, Fraction(q).denominator)
    def det_of(rows):
        ints = [[int(Fraction(q) * scale) for q in row] for row in rows]
        h, _ = _hnf(ints)
        ncols = len(ints[0])
        nonzero = [row for row in h if any(row)]
        if len(nonzero) != ncols:
            return 0
        d = 1
        for i in range(ncols):
            if nonzero[i][i] == 0:
                return 0
            d *= nonzero[i][i]
        return abs(d)

    d_sub, d_big = det_of(sub_rows), det_of(big_rows)
    if d_big == 0 or d_sub == 0:
        raise InconsistencyError("unit lattice is rank deficient")
    return Fraction(d_sub, d_big)


def _integer_kernel(rows):
    """Basis of the integer kernel lattice of the (dyadic) row matrix."""
    scale = 1
    for row in rows:
        for q in row:
            scale = scale * Fraction(q).denominator // gcd(scale, Fraction(q).denominator)
    ints = [[int(Fraction(q) * scale) for q in row] for row in rows]
    h, U = _hnf(ints)
    return [U[i] for i in range(len(h)) if not any(h[i])]


@dataclass(frozen=True)
class IndexResult:
    q: int
    torsion_quotient: int
    free_exponent: int  # q = torsion_quotient * 2^free_exponent
    witnesses: tuple = ()


def unit_index(big: UnitSystem, subs) -> IndexResult:
    """q = [E(L) : E(l1)E(l2)E(l3)] for a V4 tower, from exact exponent lattices."""
    field = big.field
    frame = frame_members(field)
    reconstruct_exponents(big)
    gen_elems = []
    gen_exps = []
    torsion_js = []
    for sub in subs:
        reconstruct_exponents(sub)
        sub_frame = frame_members(sub.field)
        pos = [frame.index(m) for m in sub_frame]
        for u, e in zip(sub.fundamental, sub.exponents):
            vec = [Fraction(0)] * len(frame)
            for p, q in zip(pos, e):
                vec[p] = q
            gen_elems.append(field.element(u.coords()))
            gen_exps.append(tuple(vec))
        zj = torsion_exponent(field.element(sub.torsion.generator.coords()), big.torsion)
        if zj is None:
            raise InconsistencyError("subfield torsion not inside the big torsion group")
        torsion_js.append(zj)
    if len(big.exponents) != len(frame):
        raise InconsistencyError("big unit system does not have full rank")
    free_index = _lattice_index(gen_exps, big.exponents)
    if free_index.denominator != 1 or free_index.numerator & (free_index.numerator - 1):
        raise InconsistencyError(f"free unit index {free_index} is not a power of 2")
    # torsion of the product group: subfield torsion generators plus any
    # torsion elements arising from relations among the free generators
    for v in _integer_kernel(gen_exps):
        t = field.one
        for u, c in zip(gen_elems, v):
            t = t * u**c
        j = torsion_exponent(t, big.torsion)
        if j is None:
            raise InconsistencyError("kernel relation did not produce a torsion element")
        torsion_js.append(j)
    w = big.torsion.order
    tq = reduce(gcd, torsion_js, w)
    q = tq * int(free_index)
    return IndexResult(
        q=q,
        torsion_quotient=tq,
        free_exponent=int(free_index).bit_length() - 1,
        witnesses=tuple(torsion_js),
    )


# --- datasets -----------------------------------------------------------------------


def dataset_path(data_dir, fid) -> str:
    import os

    return os.path.join(data_dir, f"{fid}.json")


def dump_unit_dataset(system: UnitSystem, path: str) -> None:
    payload = {
        "field": list(system.field.id.members),
        "torsion_order": system.torsion.order,
        "units": [
            {"coords": {str(m): str(c) for m, c in u.coords().items()}}
            for u in system.fundamental
        ],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def load_unit_dataset(entries, path: str) -> UnitSystem:
    """Load a unit dataset and fully re-verify it before acceptance."""
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except FileNotFoundError:
        raise DatasetError(f"unit dataset not found: {path}")
    except (OSError, json.JSONDecodeError) as exc:
        raise DatasetError(f"unit dataset unreadable: {path}: {exc}")
    field = get_field(entries)
    if FieldId(tuple(payload["field"])) != field.id:
        raise DatasetError(f"dataset {path} is for field {payload['field']}, not {field.id}")
    units = []
    for rec in payload["units"]:
        coords = {int(m): Fraction(c) for m, c in rec["coords"].items()}
        x = field.element(coords)
        if not verify_unit(x):
            raise DatasetError(f"dataset {path}: element {x} failed unit verification")
        units.append(x)
    torsion = torsion_units(field)
    if payload["torsion_order"] != torsion.order:
        raise DatasetError(
            f"dataset {path}: torsion order {payload['torsion_order']} != {torsion.order}"
        )
    if independence_rank(units) != unit_rank(field) or len(units) != unit_rank(field):
        raise DatasetError(f"dataset {path}: system is not of full unit rank")
    return UnitSystem(field, torsion, units, "dataset", [])
