import pytest
from hypothesis import given, strategies as st

from multiquad.intmath import (
    is_perfect_square,
    is_squarefree,
    kronecker,
    legendre,
    rational_sqrt,
    sf,
    squarefree_up_to,
)

nonzero = st.integers(-10**6, 10**6).filter(lambda x: x != 0)


def test_sf_examples():
    assert sf(20) == 5
    assert sf(7) == 7
    assert sf(-12) == -3
    with pytest.raises(ValueError):
        sf(0)


@given(nonzero)
def test_sf_properties(x):
    s = sf(x)
    assert is_squarefree(s)
    assert (s > 0) == (x > 0)
    assert x % s == 0
    assert is_perfect_square(x // s)
    assert sf(s) == s  # idempotent


@given(nonzero, nonzero)
def test_sf_multiplicative_up_to_squares(x, y):
    # sf(xy) and sf(x)sf(y) differ by a square factor
    prod = sf(x) * sf(y)
    assert sf(prod) == sf(x * y)


def test_legendre_examples():
    assert legendre(2, 7) == 1
    assert legendre(2, 3) == -1
    assert legendre(5, 11) == 1
    assert legendre(22, 11) == 0
    for bad in (2, 9, 15, -3):
        with pytest.raises(ValueError):
            legendre(1, bad)


def test_legendre_brute_force():
    for p in (3, 5, 7, 11, 13, 17, 19):
        squares = {(x * x) % p for x in range(1, p)}
        for u in range(1, p):
            assert legendre(u, p) == (1 if u in squares else -1)


def test_kronecker_matches_legendre_on_odd_primes():
    for p in (3, 5, 7, 11, 13):
        for u in range(-20, 21):
            assert kronecker(u, p) == legendre(u, p)


def test_squarefree_sieve():
    listed = set(squarefree_up_to(500))
    for m in range(1, 501):
        assert (m in listed) == is_squarefree(m)


@given(st.integers(1, 10**4), st.integers(1, 10**3))
def test_rational_sqrt_roundtrip(num, den):
    got = rational_sqrt(num * num, den * den)
    assert got is not None
    p, q = got
    # (p/q)^2 == num^2/den^2 exactly
    assert p * p * den * den == num * num * q * q


def test_rational_sqrt_rejects_non_squares():
    assert rational_sqrt(2, 1) is None
    assert rational_sqrt(1, 2) is None
