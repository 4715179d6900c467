from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modcat.cyclotomic import (
    CycNumber,
    RootOfUnity,
    conjugate,
    embed,
    is_root_of_unity,
    sqrt_int,
)

from conftest import cyc_numbers


def zeta(n: int, k: int = 1) -> CycNumber:
    return CycNumber.from_powers(n, {k % n: 1})


def close(a: CycNumber, z: complex, tol: float = 1e-9) -> bool:
    return abs(complex(a) - z) < tol


# roots of unity -----------------------------------------------------------------


def test_root_of_unity_is_reduced_mod_one():
    r = RootOfUnity(Fraction(9, 8))
    assert r.exponent == Fraction(1, 8)
    assert RootOfUnity(Fraction(-1, 4)).exponent == Fraction(3, 4)
    assert str(RootOfUnity(0)) == "0"
    assert str(RootOfUnity("3/6")) == "1/2"


def test_root_of_unity_group_operations():
    a, b = RootOfUnity("1/8"), RootOfUnity("3/8")
    assert (a * b).exponent == Fraction(1, 2)
    assert (a / b).exponent == Fraction(3, 4)
    assert (a**8).is_one()
    assert a.inverse() == RootOfUnity("7/8")
    assert a.order == 8


def test_pretty_names_eighth_roots():
    assert RootOfUnity("1/8").pretty() == "(1+i)/√2"
    assert RootOfUnity("3/4").pretty() == "-i"
    assert RootOfUnity("1/3").pretty() == "exp(2πi·1/3)"


# embed ----------------------------------------------------------------------------


def test_embed_trivial_values():
    assert embed(RootOfUnity(0)) == CycNumber.one()
    assert embed(RootOfUnity("1/2")) == CycNumber.rational(-1)


def test_embed_eighth_root_fourth_power_is_minus_one():
    z = embed(RootOfUnity("1/8"))
    assert z**4 == CycNumber.rational(-1)
    assert z == zeta(8)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 24])
def test_primitive_roots_have_exact_order(d):
    for k in range(d):
        if math.gcd(k, d) != 1:
            continue
        z = embed(RootOfUnity(Fraction(k, d)))
        assert z**d == CycNumber.one()
        assert all(z**j != CycNumber.one() for j in range(1, d))


@pytest.mark.parametrize("r", ["1/3", "2/5", "5/12", "7/24", "1/7"])
def test_embed_matches_numeric_embedding(r):
    x = Fraction(r)
    assert close(embed(RootOfUnity(x)), cmath.exp(2j * math.pi * x))


# arithmetic -----------------------------------------------------------------------


def test_product_of_conjugate_pair_is_two_plus_sqrt2():
    a = CycNumber.one() + zeta(8)
    b = CycNumber.one() + zeta(8, -1)
    prod = a * b
    assert prod == CycNumber.rational(2) + zeta(8) + zeta(8, -1)
    assert close(prod, 2 + math.sqrt(2))


def test_division_and_zero_division():
    i = zeta(4)
    one_plus_i = CycNumber.one() + i
    assert one_plus_i / one_plus_i == CycNumber.one()
    with pytest.raises(ZeroDivisionError):
        one_plus_i / CycNumber.zero()


def test_canonical_form_across_conductors():
    # i lives in Q(zeta_4); computed through Q(zeta_8) it must come back identical
    i_from_8 = zeta(8) ** 2
    assert i_from_8 == zeta(4)
    assert i_from_8.conductor == 4
    # zeta_6 = -zeta_3^2, so conductor 6 never appears
    assert zeta(6).conductor == 3
    # zeta_3 + zeta_3^2 = -1
    assert (zeta(3) + zeta(3, 2)).is_rational()


def test_conjugate_examples():
    assert conjugate(zeta(4)) == -zeta(4)
    assert conjugate(CycNumber.rational(2)) == CycNumber.rational(2)
    assert conjugate(CycNumber.one() + zeta(8)) == CycNumber.one() + zeta(8, -1)


def test_json_round_trip():
    a = CycNumber.from_powers(12, {1: 2, 5: Fraction(-1, 3)})
    assert CycNumber.from_json(a.to_json()) == a


@given(cyc_numbers(), cyc_numbers(), cyc_numbers())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == CycNumber.zero()


@given(cyc_numbers())
def test_inverse_and_numeric_consistency(a):
    if a.is_zero():
        return
    assert a * a.inverse() == CycNumber.one()
    assert abs(complex(a.inverse()) - 1 / complex(a)) < 1e-6 * max(1.0, abs(1 / complex(a)))


@given(cyc_numbers(), cyc_numbers())
def test_numeric_oracle_for_products(a, b):
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-8 * max(1.0, abs(complex(a) * complex(b)))


@given(cyc_numbers())
def test_equal_values_have_equal_hashes(a):
    b = (a + CycNumber.one()) - CycNumber.one()
    assert a == b and hash(a) == hash(b)


@given(cyc_numbers(), st.integers(1, 30))
def test_galois_is_a_ring_map(a, k):
    n = 120
    if math.gcd(k, n) != 1:
        return
    b = a * a + CycNumber.one()
    assert b.galois(k) == a.galois(k) * a.galois(k) + CycNumber.one()


# roots of unity detection ------------------------------------------------------


def brute_force_root(a: CycNumber) -> Fraction | None:
    """Smallest k with a^k = 1, tried up to twice the conductor."""
    if a.is_zero():
        return None
    n = a.conductor
    bound = 2 * n if n % 2 else n
    p = CycNumber.one()
    for k in range(1, bound + 1):
        p = p * a
        if p == CycNumber.one():
            # find the exponent j/k by matching the numeric angle
            ang = cmath.phase(complex(a)) / (2 * math.pi) % 1
            return Fraction(round(ang * k), k) % 1
    return None


def test_is_root_of_unity_examples():
    assert is_root_of_unity(CycNumber.rational(-1)) == RootOfUnity("1/2")
    assert is_root_of_unity(CycNumber.rational(2)) is None
    one_plus_i = CycNumber.one() + zeta(4)
    assert is_root_of_unity(one_plus_i * sqrt_int(2).inverse()) == RootOfUnity("1/8")


@pytest.mark.parametrize("n", [3, 4, 5, 8, 12, 15])
def test_is_root_of_unity_against_power_test_on_roots(n):
    for k in range(2 * n):
        z = embed(RootOfUnity(Fraction(k, 2 * n)))
        for cand in (z, -z):
            r = is_root_of_unity(cand)
            assert r is not None
            assert r.exponent == brute_force_root(cand)


@given(cyc_numbers())
def test_is_root_of_unity_against_power_test_random(a):
    r = is_root_of_unity(a)
    expected = brute_force_root(a)
    if expected is None:
        assert r is None
    else:
        assert r is not None and r.exponent == expected


# square roots ---------------------------------------------------------------------


def test_sqrt_examples():
    assert sqrt_int(4) == CycNumber.rational(2)
    assert sqrt_int(2) == zeta(8) + zeta(8, -1)
    assert sqrt_int(18) == (zeta(8) + zeta(8, -1)) * 3


@pytest.mark.parametrize("n", range(1, 101))
def test_sqrt_squares_and_is_positive(n):
    s = sqrt_int(n)
    assert s * s == CycNumber.rational(n)
    assert abs(complex(s) - math.sqrt(n)) < 1e-9
