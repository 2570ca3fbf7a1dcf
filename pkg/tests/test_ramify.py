import pytest
from hypothesis import given, settings

from multiquad.radicands import field_id, fields_equal, to_standard_form
from multiquad.ramify import (
    base_choices,
    choose_base_subfield,
    conductor_discriminant_product,
    frolich_even_gate,
    inertia_field,
    min_ramified_ok,
    multiquad_discriminant,
    ramified_primes,
)
from conftest import primitive_lists


def test_discriminant_examples():
    d = multiquad_discriminant(to_standard_form((-1, 5)))
    assert d.e == 2 and d.delta == 400
    d = multiquad_discriminant((2, 3, 7, 39))
    assert d.e == 3 and d.odd_primes == (3, 7, 13)
    d = multiquad_discriminant(to_standard_form((-17, 5, 7, -1)))
    assert set(d.odd_primes) == {5, 7, 17}
    with pytest.raises(ValueError):
        multiquad_discriminant((2, 6, 7, 13))  # not standard form


def test_discriminant_against_conductor_product():
    for entries in ((-1, 5), (2, 3), (-1, -2, -3), (2, 6, 7, 13),
                    (-17, 5, 7, -1), (-3, 5, -7, 17), (-2, -3, -10)):
        d = multiquad_discriminant(to_standard_form(entries))
        assert abs(d.delta) == abs(conductor_discriminant_product(entries))


@settings(max_examples=150, deadline=None)
@given(primitive_lists(min_n=2, max_n=4))
def test_discriminant_oracle_random(entries):
    d = multiquad_discriminant(to_standard_form(entries))
    assert abs(d.delta) == abs(conductor_discriminant_product(entries))
    # ramified primes are exactly the primes dividing the discriminant
    base = 2**d.e
    for p in d.odd_primes:
        base *= p
    assert ramified_primes(entries) == {p for p in range(2, base + 1)
                                        if base % p == 0 and _is_prime(p)}


def _is_prime(p):
    return p > 1 and all(p % q for q in range(2, int(p**0.5) + 1))


def test_ramified_primes_examples():
    assert ramified_primes((-1, 2, 3)) == {2, 3}
    assert ramified_primes((-1,)) == {2}
    assert ramified_primes((-1, 2, 3, 5, 7)) == {2, 3, 5, 7}


def test_inertia_field_examples():
    d = inertia_field((6, 3, 5), 3)
    assert d.ram_index == 2 and fields_equal(d.inertia_field, (2, 5))
    d = inertia_field((-3, 5, -7, 17), 2)
    assert d.ram_index == 1 and fields_equal(d.inertia_field, (-3, 5, -7, 17))
    d = inertia_field((2, 3, 7, 39), 2)
    assert d.ram_index == 4 and fields_equal(d.inertia_field, (21, 13))
    # unramified odd prime: inertia field is K itself
    d = inertia_field((6, 3, 5), 7)
    assert d.ram_index == 1 and fields_equal(d.inertia_field, (6, 3, 5))


def test_inertia_field_is_subfield():
    for entries, p in (((6, 3, 5), 3), ((2, 3, 7, 39), 2), ((-1, -2, -3), 3)):
        d = inertia_field(entries, p)
        assert field_id(entries).contains(field_id(d.inertia_field))
        if d.ram_index > 1:
            assert p not in ramified_primes(d.inertia_field)


def test_gates():
    assert frolich_even_gate((2, 3, 5, 7, 11))
    assert not frolich_even_gate((-1, 2, 3))
    assert min_ramified_ok((-1, 2, 3))
    # imaginary n = 6: always even class number
    assert frolich_even_gate((-1, 2, 3, 5, 7, 11))
    assert frolich_even_gate((-1, -2, -3, -5, -7, -11))


def test_choose_base_subfield_examples():
    c = choose_base_subfield((-1, -2, -3))
    assert c.k == (2,) and c.p == 3
    c = choose_base_subfield((-3, -11, -19))
    assert c.k == (33,) and c.p == 19
    c = choose_base_subfield((-2, -3, -10))
    assert c.k == (5,) and c.p == 3


def test_base_choice_invariants():
    for entries in ((-1, -2, -3), (-1, 2, 7), (-3, -11, -51), (-1, -2, -3, -5)):
        for c in base_choices(entries):
            # p ramifies in K but not in k; k is a real (n-2)-subfield
            assert c.p in ramified_primes(entries)
            assert c.p not in ramified_primes(c.k) if c.k else True
            assert all(a > 0 for a in c.k)
            assert len(c.k) == len(entries) - 2
            assert field_id(entries).contains(field_id(c.k))
        # deterministic
        assert choose_base_subfield(entries) == choose_base_subfield(entries)
