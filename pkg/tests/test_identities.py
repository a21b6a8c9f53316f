"""Tests for the quantum binomial identity suite."""
from __future__ import annotations

import pytest

from ihall.exactnum import LaurentPoly, RatFunc, qint
from ihall.exponents import (
    binom2,
    exponent_p,
    exponent_p_prime,
    exponent_T,
    exponent_w,
    exponent_z,
)
from ihall.identities import (
    admissible_a_region,
    admissible_t_region,
    check_A,
    check_A_prime,
    check_T,
    check_c_sum_product_form,
    check_coeff,
    check_dc_theorem,
    check_km_factorial,
    check_kmr_vanishing,
    check_partial_sum,
    check_std_binomial,
    common_closed_form,
    compute_dc,
)


def vp(e):
    return RatFunc.v_power(e)


def test_exponent_functions_reference_values():
    # spot values computed by hand from the defining expressions
    assert binom2(0) == 0 and binom2(1) == 0 and binom2(2) == 1 and binom2(-1) == 1
    assert exponent_p(1, 0, 0, 0, 0) == 1
    assert exponent_p(2, 1, 1, 1, 0) == -1 * (2 + 1) + 2 * 2 + 0 + 0 + 0 + 0 + 0 + 2 - 1 + 1
    assert exponent_p_prime(0, 0, 0, 0) == 0
    assert exponent_p_prime(1, 1, 1, 1) == 1
    assert exponent_z(1, 0, 1, 0, 0, 0, 1) == exponent_p(1, 0, 0, 1, 1)
    assert exponent_T(0, 0, 0, 0, 0, 0, 0, 0, 0) == 0
    assert exponent_w(0, 0, 0, 0, 0, 0, 0, 0, -1, -1) == 1


def test_std_binomial_trivial_cases():
    r0 = check_std_binomial(0)
    assert r0.holds and r0.lhs == RatFunc.const(1)
    r1 = check_std_binomial(1)
    assert r1.holds
    one_plus_z = RatFunc.from_poly(LaurentPoly({(0, 0): 1, (0, 1): 1}))
    assert r1.lhs == one_plus_z


@pytest.mark.parametrize("d", range(9))
def test_std_binomial_sweep(d):
    assert check_std_binomial(d).holds


def test_km_factorial_small():
    assert check_km_factorial(0).lhs == RatFunc.const(1)
    r1 = check_km_factorial(1)
    assert r1.holds and r1.rhs == vp(1)


@pytest.mark.parametrize("p", range(9))
def test_km_factorial_sweep(p):
    assert check_km_factorial(p).holds


@pytest.mark.parametrize("d", range(1, 9))
def test_kmr_vanishing_sweep(d):
    assert check_kmr_vanishing(d).holds


def test_dc_small_values():
    d0, d1, c0, c1 = compute_dc(1)
    assert d0 == d1 == c0 == c1 == vp(1)
    d0, d1, c0, c1 = compute_dc(2)
    assert d0 == d1 == c0 == c1 == vp(2)
    # closed form: v^2 (v+v^{-1}) / [2]! = v^2
    assert common_closed_form(2) == vp(2)


@pytest.mark.parametrize("d", range(1, 9))
def test_dc_theorem_sweep(d):
    assert check_dc_theorem(d).holds


@pytest.mark.parametrize("d", range(1, 9))
def test_c_sum_product_form(d):
    assert check_c_sum_product_form(d).holds


def test_partial_sum_base_and_special():
    assert check_partial_sum(1, 0).holds
    assert check_partial_sum(3, 3).holds
    assert check_partial_sum(4, 2).holds


@pytest.mark.parametrize("d", range(1, 7))
def test_partial_sum_sweep(d):
    for k in range(d + 1):
        assert check_partial_sum(d, k).holds, (d, k)


@pytest.mark.parametrize("d", range(1, 9))
def test_coeff_identity(d):
    assert check_coeff(d).holds


def test_A_examples():
    assert check_A(2, 0, 1).holds
    assert check_A(2, 1, 0).holds
    assert check_A(4, 2, 0).holds


def test_A_prime_examples():
    assert check_A_prime(2, 0, 1).holds
    assert check_A_prime(3, 1, 0).holds
    assert check_A_prime(4, 1, 2).holds


def test_A_constraint_rejection():
    with pytest.raises(ValueError):
        check_A(2, 0, 0)
    with pytest.raises(ValueError):
        check_A(2, 2, 0)
    with pytest.raises(ValueError):
        check_A(3, 1, 2)


@pytest.mark.parametrize("a", range(1, 7))
def test_A_family_sweep(a):
    for d, u in admissible_a_region(a):
        assert check_A(a, d, u).holds, (a, d, u)
        assert check_A_prime(a, d, u).holds, (a, d, u)


def test_T_examples():
    assert check_T(1, 1, 0, 0, 0, 0).holds
    assert check_T(1, 1, 1, 0, 0, 0).holds
    assert check_T(2, 2, 0, 0, 1, 1).holds


def test_T_unit_value():
    r = check_T(3, 2, 0, 0, 0, 0)
    assert r.holds and r.lhs == RatFunc.const(1)


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 5) for b in range(1, 5)])
def test_T_family_sweep(a, b):
    for f, g, t1, t3 in admissible_t_region(a, b):
        expected_one = (f, g, t1, t3) == (0, 0, 0, 0)
        rep = check_T(a, b, f, g, t1, t3)
        assert rep.holds, (a, b, f, g, t1, t3)
        if expected_one:
            assert rep.lhs == RatFunc.const(1)
