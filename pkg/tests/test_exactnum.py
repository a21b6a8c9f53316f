"""Tests for the exact arithmetic kernel."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ihall.exactnum import (
    LP_ONE,
    LaurentPoly,
    QSqrt,
    RatFunc,
    eval_ratfunc_sqrt_q,
    eval_sqrt_q,
    qbinom,
    qfactorial,
    qint,
    rat_ops,
    v_minus_vinv,
)


def lp(d):
    return LaurentPoly({(e, 0): c for e, c in d.items()})


def test_qint_small_values():
    assert qint(1) == LP_ONE
    assert qint(2) == lp({1: 1, -1: 1})
    assert qint(-2) == lp({1: -1, -1: -1})
    assert qint(0).is_zero()


def test_qint_antisymmetry():
    for m in range(-50, 51):
        assert qint(-m) == -qint(m)


def test_qint_defining_quotient():
    # [m] * (v - v^{-1}) == v^m - v^{-m}
    for m in range(-12, 13):
        assert qint(m) * v_minus_vinv() == lp({m: 1, -m: -1}) if m else qint(m).is_zero()


def test_qfactorial():
    assert qfactorial(0) == LP_ONE
    assert qfactorial(2) == lp({1: 1, -1: 1})
    # [2r]!! at r=2 is [2][4]
    assert qfactorial(2, "double") == qint(2) * qint(4)
    expected = lp({1: 1, -1: 1}) * lp({3: 1, 1: 1, -1: 1, -3: 1})
    assert qfactorial(2, "double") == expected


def test_qbinom_values():
    assert qbinom(2, 1) == RatFunc.from_poly(qint(2))
    assert qbinom(-1, 1) == RatFunc.const(-1)
    assert qbinom(3, 2) == RatFunc.from_poly(lp({2: 1, 0: 1, -2: 1}))
    assert qbinom(1, 2).is_zero()
    assert qbinom(5, 0) == RatFunc.const(1)
    assert qbinom(4, 5).is_zero()
    assert qbinom(3, -1).is_zero()


def test_qbinom_is_always_polynomial():
    for m in range(-8, 9):
        for r in range(0, 9):
            assert qbinom(m, r).is_polynomial()


def test_qbinom_pascal_recurrence():
    # [m; r] = v^r [m-1; r] + v^{r-m} [m-1; r-1]
    for m in range(-10, 11):
        for r in range(0, 11):
            lhs = qbinom(m, r)
            rhs = RatFunc.v_power(r) * qbinom(m - 1, r)
            if r >= 1:
                rhs = rhs + RatFunc.v_power(r - m) * qbinom(m - 1, r - 1)
            assert lhs == rhs, (m, r)


def test_ratfunc_ops():
    v = RatFunc.v_power(1)
    vinv = RatFunc.v_power(-1)
    assert rat_ops(v * vinv, RatFunc.const(1), "eq")
    two = RatFunc.from_poly(qint(2))
    assert rat_ops(RatFunc.from_poly(v_minus_vinv()), two, "mul") == RatFunc.from_poly(
        lp({2: 1, -2: -1})
    )
    inv = rat_ops(RatFunc.const(1), RatFunc.from_poly(v_minus_vinv()), "div")
    assert inv * RatFunc.from_poly(v_minus_vinv()) == RatFunc.const(1)


def test_ratfunc_canonical_idempotence():
    x = RatFunc(lp({3: 2, 1: -2}), lp({2: 4, 0: -4}))
    y = RatFunc(x.num, x.den)
    assert x.num == y.num and x.den == y.den
    # (2v^3-2v) / (4v^2-4) = v/2
    assert x == RatFunc.from_poly(lp({1: Fraction(1, 2)}))


def test_ratfunc_zero_den_rejected():
    with pytest.raises(ZeroDivisionError):
        RatFunc(LP_ONE, LaurentPoly())
    with pytest.raises(ZeroDivisionError):
        rat_ops(RatFunc.const(1), RatFunc.const(0), "div")


def test_eval_sqrt_q():
    assert eval_sqrt_q(lp({2: 1}), 3) == QSqrt(3, 0, 3)
    assert eval_sqrt_q(lp({1: 1}), 2) == QSqrt(0, 1, 2)
    assert eval_sqrt_q(lp({1: 1, -1: 1}), 2) == QSqrt(0, Fraction(3, 2), 2)


def test_eval_sqrt_q_multiplicative():
    rng = random.Random(7)
    for _ in range(100):
        p1 = lp({rng.randrange(-5, 6): rng.randrange(-4, 5) for _ in range(3)})
        p2 = lp({rng.randrange(-5, 6): rng.randrange(-4, 5) for _ in range(3)})
        q = rng.choice([2, 3, 5])
        assert eval_sqrt_q(p1 * p2, q) == eval_sqrt_q(p1, q) * eval_sqrt_q(p2, q)


def test_qsqrt_field_ops():
    x = QSqrt(1, 2, 2)
    assert x * x.inv() == QSqrt(1, 0, 2)
    y = QSqrt(Fraction(1, 3), Fraction(-1, 2), 5)
    assert (x := y * y.inv()) == QSqrt(1, 0, 5)
    with pytest.raises(ZeroDivisionError):
        QSqrt(0, 0, 3).inv()


def test_eval_ratfunc_sqrt_q():
    f = RatFunc(LP_ONE, v_minus_vinv())
    val = eval_ratfunc_sqrt_q(f, 2)
    assert val * eval_sqrt_q(v_minus_vinv(), 2) == QSqrt(1, 0, 2)


def test_laurent_triples_serialization():
    p = lp({-1: Fraction(1, 2), 3: -2})
    assert p.to_triples() == [(-1, 1, 2), (3, -2, 1)]


def test_bivariate_product():
    z = LaurentPoly.z_power(1)
    v = LaurentPoly.v_power(1)
    p = (LP_ONE + v * z) * (LP_ONE - v * z)
    assert p == LP_ONE - LaurentPoly({(2, 2): 1})
