import json
import os
from fractions import Fraction

import pytest

from multiquad import default_data_dir
from multiquad.elements import get_field
from multiquad.errors import DatasetError
from multiquad.radicands import field_id
from multiquad.units import (
    compute_unit_system,
    dataset_path,
    dump_unit_dataset,
    independence_rank,
    kubota_real_biquadratic_units,
    load_unit_dataset,
    torsion_units,
    unit_index,
    unit_rank,
    verify_unit,
)


def test_verify_unit_examples():
    F2, F5 = get_field((2,)), get_field((5,))
    assert verify_unit(1 + F2.sqrt_member(2))
    assert verify_unit(F5.element({1: Fraction(1, 2), 5: Fraction(1, 2)}))
    assert not verify_unit(3 + F2.sqrt_member(2))  # norm 7
    with pytest.raises(ValueError):
        verify_unit(F2.rational(0))


def test_verify_unit_closed_under_product():
    F = get_field((2, 3))
    u = 1 + F.sqrt_member(2)
    v = 2 + F.sqrt_member(3)
    assert verify_unit(u) and verify_unit(v) and verify_unit(u * v)


def test_independence_rank():
    F2 = get_field((2,))
    u = 1 + F2.sqrt_member(2)
    assert independence_rank([u]) == 1
    assert independence_rank([u, u**3]) == 1
    system, q = kubota_real_biquadratic_units((2, 3))
    assert independence_rank(system.fundamental) == 3


def test_torsion_groups():
    for gens, order in (((-1, 2), 8), ((-3, 2), 6), ((-1, -2, -3), 24),
                        ((2, 3), 2), ((-1,), 4), ((-3,), 6), ((-7,), 2)):
        F = get_field(gens)
        tg = torsion_units(F)
        assert tg.order == order
        assert tg.generator ** tg.order == F.rational(1)
        assert all(tg.generator ** k != F.rational(1) for k in range(1, tg.order))
    # eighth root of unity (sqrt2 + sqrt-2)/2 generates the order-8 group
    F = get_field((-1, 2))
    tg = torsion_units(F)
    assert tg.generator.coords() in (
        {2: Fraction(1, 2), -2: Fraction(1, 2)},
        {2: Fraction(1, 2), -2: Fraction(-1, 2)},
    ) or (tg.generator ** 2) ** 2 == F.rational(-1)


def test_kubota_examples():
    system, q = kubota_real_biquadratic_units((2, 3))
    assert q == 4
    F = system.field
    want = {
        frozenset({(1, Fraction(1)), (2, Fraction(1))}),          # 1 + sqrt2
        frozenset({(2, Fraction(1, 2)), (6, Fraction(1, 2))}),    # sqrt(2+sqrt3)
        frozenset({(2, Fraction(1)), (3, Fraction(1))}),          # sqrt(5+2sqrt6)
    }
    got = {frozenset(u.coords().items()) for u in system.fundamental}
    assert got == want
    # these square to the classical units
    sq = {frozenset((m, c) for m, c in (u * u).coords().items())
          for u in system.fundamental}
    assert frozenset({(1, Fraction(2)), (3, Fraction(1))}) in sq  # 2 + sqrt3
    _, q25 = kubota_real_biquadratic_units((2, 5))
    assert q25 == 2
    _, q3357 = kubota_real_biquadratic_units((33, 57))
    assert q3357 in (1, 2, 4, 8)
    with pytest.raises(ValueError):
        kubota_real_biquadratic_units((-1, 2))


def _index_q(big_gens, sub_gens_list):
    big = compute_unit_system(big_gens)
    subs = [compute_unit_system(g) for g in sub_gens_list]
    return unit_index(big, subs)


def test_unit_index_examples():
    res = _index_q((-1, 2), [(-1,), (2,), (-2,)])
    assert res.q == 2
    res = _index_q((-3, 2), [(-3,), (2,), (-6,)])
    assert res.q == 1
    assert res.q == res.torsion_quotient * 2**res.free_exponent


def test_unit_index_invariances():
    big = compute_unit_system((-1, 2))
    subs = [compute_unit_system(g) for g in ((-1,), (2,), (-2,))]
    q0 = unit_index(big, subs).q
    assert unit_index(big, subs[::-1]).q == q0
    # replacing a fundamental unit by its inverse changes nothing
    inv = compute_unit_system((2,))
    inv.fundamental = [u.inverse() for u in inv.fundamental]
    inv.exponents = []
    assert unit_index(big, [subs[0], inv, subs[2]]).q == q0


def test_octic_relative_index():
    # q(K/k) for K = Q(sqrt-1, sqrt-2, sqrt-3) over k = Q(sqrt2)
    from multiquad.kuroda import intermediate_fields, relative_unit_index

    subs = intermediate_fields((-1, -2, -3), (2,))
    res, used = relative_unit_index((-1, -2, -3), subs, default_data_dir())
    assert res.q == 2
    assert len(used) == 1 and os.path.exists(used[0])


def test_dataset_roundtrip(tmp_path):
    system = compute_unit_system((-1, 2))
    path = str(tmp_path / "roundtrip.json")
    dump_unit_dataset(system, path)
    loaded = load_unit_dataset((-1, 2), path)
    assert loaded.source == "dataset"
    assert len(loaded.fundamental) == unit_rank(loaded.field) == 1


def test_dataset_rejects_bad_data(tmp_path):
    system = compute_unit_system((-1, 2))
    path = str(tmp_path / "bad.json")
    dump_unit_dataset(system, path)
    with open(path) as fh:
        payload = json.load(fh)

    # norm-7 element
    payload_bad = dict(payload)
    payload_bad["units"] = [{"coords": {"1": "3", "2": "1"}}]
    with open(path, "w") as fh:
        json.dump(payload_bad, fh)
    with pytest.raises(DatasetError):
        load_unit_dataset((-1, 2), path)

    # wrong field
    with open(path, "w") as fh:
        json.dump(payload, fh)
    with pytest.raises(DatasetError):
        load_unit_dataset((-1, 3), path)

    # wrong torsion order
    payload_bad = dict(payload) | {"torsion_order": 2}
    with open(path, "w") as fh:
        json.dump(payload_bad, fh)
    with pytest.raises(DatasetError):
        load_unit_dataset((-1, 2), path)

    # unreadable / missing
    with open(path, "w") as fh:
        fh.write("{not json")
    with pytest.raises(DatasetError):
        load_unit_dataset((-1, 2), path)
    with pytest.raises(DatasetError):
        load_unit_dataset((-1, 2), str(tmp_path / "absent.json"))


def test_bundled_dataset_loads_and_verifies():
    fid = field_id((-1, -2, -3))
    path = dataset_path(default_data_dir(), fid)
    system = load_unit_dataset((-1, -2, -3), path)
    assert system.torsion.order == 24
    assert len(system.fundamental) == unit_rank(system.field) == 3
    assert all(verify_unit(u) for u in system.fundamental)
