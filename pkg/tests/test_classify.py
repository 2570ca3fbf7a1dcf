import pytest

from multiquad import default_data_dir, golden
from multiquad.classify import (
    _classify_n4_detailed,
    _n5_census,
    candidates_n3,
    classify_n1,
    classify_n2,
    classify_n3,
    classify_n4,
    classify_n5_and_up,
    full_report,
)
from multiquad.errors import DatasetError
from multiquad.kuroda import P_product
from multiquad.radicands import field_id, members_to_primitive

DATA = default_data_dir()


def test_classify_n1():
    assert classify_n1(200) == list(golden.GAUSS_H1)
    assert classify_n1(163) == list(golden.GAUSS_H1)
    assert classify_n1(100) == list(golden.GAUSS_H1[:-1])


def test_classify_n2_matches_table():
    fields = classify_n2()
    assert len(fields) == 47
    want = {field_id(pair) for pair in golden.N2_TABLE}
    assert set(fields) == want
    assert field_id((-1, 2)) in fields and field_id((-67, -163)) in fields
    # a pair evaluated but rejected by exact h
    assert field_id((-1, 17)) not in fields


def test_candidates_n3_cases():
    cs = candidates_n3()
    by_case = {}
    for cand in cs.candidates:
        by_case.setdefault(cand.case, []).append(cand)
    assert {field_id(f) for f in golden.P2_CANDIDATES} == {
        c.field for c in by_case["P=2"]}
    p4 = by_case["P=4(i)"] + by_case["P=4(ii)"]
    assert {field_id(f) for f in golden.P4_CANDIDATES} == {c.field for c in p4}
    assert len(by_case["P=4(i)"]) == len(golden.P4_CASE1_A4) == 7
    assert {c.field for c in by_case["P=8(i)"]} == {
        field_id(f) for f in golden.P8_CASE1}
    assert {c.field for c in by_case["P=8(ii)"]} == {
        field_id(f) for f in golden.P8_CASE2}
    assert {c.field for c in by_case["P=8(iii)"]} == {
        field_id(f) for f in golden.P8_CASE3}
    # extra P=8 candidates beyond the published case (ii) table; all are
    # genuine (P = 8) and all are eliminated downstream
    assert len(by_case["P=8(ii+)"]) == 18
    # P recomputed from scratch matches the stored value and the case label
    for cand in cs.candidates:
        P = P_product(members_to_primitive(cand.field.members))
        assert P == cand.P
        assert cand.case.startswith(f"P={P}")
    # no duplicates; 2 + 16 + (4 + 14 + 18 + 8) candidates in total
    fields = [c.field for c in cs.candidates]
    assert len(fields) == len(set(fields)) == 62


def test_classify_n3():
    fields = classify_n3(DATA)
    assert len(fields) == 17
    assert set(fields) == {field_id(f) for f in golden.N3_TABLE}
    assert set(fields) == {field_id(f) for f in golden.N3_TABLE_ALT}
    assert field_id((-1, 2, 7)) not in fields


def test_classify_n3_eliminations_have_witnesses():
    from multiquad.classify import _classify_n3_detailed

    detail = _classify_n3_detailed(DATA)
    assert len(detail["kept"]) == 17
    assert not detail["undecided"]
    elim = {rec["field"]: rec["reason"] for rec in detail["eliminated"]}
    assert elim[str(field_id((-1, 2, 7)))] == "h = 2"
    # every P=8 candidate was eliminated by an explicit factor or value
    p8 = [c.field for c in candidates_n3().candidates if c.case.startswith("P=8")]
    assert len(p8) == 44
    for fid in p8:
        assert str(fid) in elim
        assert any(tok in elim[str(fid)] for tok in ("h =", "> 1")), elim[str(fid)]
    # all four witness kinds actually occur
    reasons = " | ".join(elim.values())
    for tok in ("q(k1/Q)", "q(k2/Q)", "h3", "q(K/k)"):
        assert tok in reasons


def test_classify_n3_strict_requires_datasets(tmp_path):
    from multiquad.kuroda import clear_caches

    clear_caches()
    with pytest.raises(DatasetError):
        classify_n3(str(tmp_path))
    clear_caches()


def test_classify_n4():
    assert classify_n4(DATA) == []
    detail = _classify_n4_detailed(DATA)
    assert detail["S_size"] == 697
    assert detail["T_size"] == 40689
    got = detail["candidates"]
    assert got == {str(field_id(f)): h for f, h in golden.N4_CANDIDATES.items()}
    assert sorted(got.values()) == [2, 4, 4, 4]
    assert detail["kept"] == []
    # every class-number-1 triquadratic field satisfies the step-1 filter:
    # all of its imaginary quadratic subfields have h in {1, 2, 4}
    from multiquad.quadratic import class_number

    for f in classify_n3(DATA):
        assert all(class_number(m) in (1, 2, 4) for m in f.members if m < 0)


def test_classify_n5_and_up():
    census = _n5_census()
    assert census == {0: 1, 1: 4, 2: 6, 3: 4, 4: 1}
    audits = classify_n5_and_up(6)
    a5 = audits[5]
    assert a5["P_lower_bound"] == 2**16 > a5["P_budget"] == 2**15
    assert a5["shape"] == "-1,-2,-p1,-p2,-p3"
    assert a5["census"] == {"0": 1, "1": 4, "2": 6, "3": 4, "4": 1}
    assert a5["fields"] == [] and audits[6]["fields"] == []
    assert "5 primes ramify" in audits[6]["reason"]
    with pytest.raises(ValueError):
        classify_n5_and_up(4)


def test_full_report():
    report = full_report(data_dir=DATA)
    assert all(report.table_match.values())
    assert [len(report.final[n]) for n in (1, 2, 3, 4, 5, 6)] == [9, 47, 17, 0, 0, 0]
    assert len(report.discrepancies) == 3
    joined = " ".join(report.discrepancies)
    assert "42" in joined and "47" in joined
    js = report.to_json()
    import json

    json.dumps(js)


def test_classify_n3_order_invariance():
    # result is a set of FieldIds; comparing against equivalent radicand
    # lists from either printed table succeeds either way
    fields = set(classify_n3(DATA))
    assert field_id((-3, -11, 2)) in fields
    assert field_id((-3, -11, -6)) in fields  # same field
