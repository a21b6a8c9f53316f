"""Exact symbolic verification of the quantum binomial identities.

Every check evaluates its literal defining sum in exact rational-function
arithmetic and compares canonical forms; no identity is verified through a
simplified rearrangement.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exactnum import (
    LP_ONE,
    LaurentPoly,
    RatFunc,
    inv_qfact,
    qbinom,
    qint,
    v_minus_vinv,
)
from .exponents import binom2, exponent_T, exponent_z


@dataclass(frozen=True)
class IdentityReport:
    name: str
    params: tuple[int, ...]
    lhs: RatFunc
    rhs: RatFunc
    holds: bool

    @staticmethod
    def make(name: str, params: tuple[int, ...], lhs: RatFunc, rhs: RatFunc) -> "IdentityReport":
        return IdentityReport(name, params, lhs, rhs, lhs == rhs)


def _vp(e: int) -> RatFunc:
    return RatFunc.v_power(e)


def _vmv() -> RatFunc:
    return RatFunc.from_poly(v_minus_vinv())


def check_std_binomial(d: int) -> IdentityReport:
    """sum_n v^{n(d-1)} [d; n] z^n = prod_{j<d} (1 + v^{2j} z), as a bivariate
    polynomial identity in v and z."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    lhs = LaurentPoly()
    for n in range(d + 1):
        term = qbinom(d, n).as_poly().shift_v(n * (d - 1))
        lhs = lhs + term * LaurentPoly.z_power(n)
    rhs = LP_ONE
    for j in range(d):
        rhs = rhs * (LP_ONE + LaurentPoly({(2 * j, 1): 1}))
    return IdentityReport.make(
        "std-binomial", (d,), RatFunc.from_poly(lhs), RatFunc.from_poly(rhs)
    )


def check_km_factorial(p: int) -> IdentityReport:
    """[p]! * sum_{k+m=p} v^{-2km+2m} / ([2k]!! [2m]!!) = v^{p(3-p)/2}."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    total = RatFunc.const(0)
    for k in range(p + 1):
        m = p - k
        total = total + _vp(-2 * k * m + 2 * m) * inv_qfact(k, "double") * inv_qfact(m, "double")
    lhs = RatFunc.from_poly(qfact_plain(p)) * total
    rhs = _vp(p * (3 - p) // 2)
    return IdentityReport.make("km-factorial", (p,), lhs, rhs)


def qfact_plain(r: int) -> LaurentPoly:
    out = LP_ONE
    for i in range(1, r + 1):
        out = out * qint(i)
    return out


def check_kmr_vanishing(d: int) -> IdentityReport:
    """sum_{k+m+r=d} (-1)^r v^{binom(r+1,2) - 2(k-1)m} / ([r]! [2k]!! [2m]!!) = 0."""
    if d < 1:
        raise ValueError("d must be positive")
    total = RatFunc.const(0)
    for r in range(d + 1):
        for k in range(d - r + 1):
            m = d - r - k
            coeff = _vp(binom2(r + 1) - 2 * (k - 1) * m).scale((-1) ** r)
            total = total + coeff * inv_qfact(r) * inv_qfact(k, "double") * inv_qfact(m, "double")
    return IdentityReport.make("kmr-vanishing", (d,), total, RatFunc.const(0))


def _d_sum(d: int, parity: int) -> RatFunc:
    """The four-index sum D_parity over t+k+m+n = d with n of the given parity."""
    total = RatFunc.const(0)
    vmv = _vmv()
    for t in range(d + 1):
        for k in range(d - t + 1):
            for m in range(d - t - k + 1):
                n = d - t - k - m
                if n % 2 != parity:
                    continue
                e = t * t - 2 * d * t + t + 2 * n * t + binom2(n + 1) - 2 * k * m - 2 * m
                total = total + (
                    _vp(e)
                    * vmv.pow(t)
                    * inv_qfact(n)
                    * inv_qfact(k, "double")
                    * inv_qfact(m, "double")
                )
    return total


def _c_sum(d: int, parity: int) -> RatFunc:
    """The three-index sum over k+m+n = d with n of the given parity."""
    total = RatFunc.const(0)
    for k in range(d + 1):
        for m in range(d - k + 1):
            n = d - k - m
            if n % 2 != parity:
                continue
            e = binom2(n + 1) - 2 * k * m + 2 * k
            total = total + _vp(e) * inv_qfact(n) * inv_qfact(k, "double") * inv_qfact(m, "double")
    return total


def common_closed_form(d: int) -> RatFunc:
    """v^d (v+v^{-1})(v^2+v^{-2})...(v^{d-1}+v^{1-d}) / [d]!."""
    num = LaurentPoly.v_power(d)
    for j in range(1, d):
        num = num * LaurentPoly({(j, 0): 1, (-j, 0): 1})
    return RatFunc(num, qfact_plain(d))


def compute_dc(d: int) -> tuple[RatFunc, RatFunc, RatFunc, RatFunc]:
    """The literal sums (D0, D1, C0, C1); all four equal common_closed_form(d)."""
    if d < 1:
        raise ValueError("d must be positive")
    d0 = _d_sum(d, 0)
    d1 = _d_sum(d, 1)
    c0 = _c_sum(d, 1)  # C0 sums over odd n
    c1 = _c_sum(d, 0)  # C1 sums over even n
    return d0, d1, c0, c1


def check_dc_theorem(d: int) -> IdentityReport:
    """D0 = D1 = C0 = C1 = the closed form, all verified exactly."""
    d0, d1, c0, c1 = compute_dc(d)
    target = common_closed_form(d)
    holds = d0 == target and d1 == target and c0 == target and c1 == target
    return IdentityReport(name="dc-theorem", params=(d,), lhs=d0, rhs=target, holds=holds)


def check_c_sum_product_form(d: int) -> IdentityReport:
    """C0 + C1 also equals v^{d - binom(d,2)} prod_{j<d} (1 + v^{2j}) / [d]!,
    and this equals twice the common closed form."""
    _, _, c0, c1 = compute_dc(d)
    prod = LaurentPoly.v_power(d - binom2(d))
    for j in range(d):
        prod = prod * (LP_ONE + LaurentPoly.v_power(2 * j))
    lhs = c0 + c1
    rhs = RatFunc(prod, qfact_plain(d))
    holds = lhs == rhs and lhs == common_closed_form(d).scale(2)
    return IdentityReport("c-sum-product", (d,), lhs, rhs, holds)


def check_partial_sum(d: int, k: int) -> IdentityReport:
    """The telescoping partial-sum identity, for 0 <= k <= d:

    sum_{s<=k} v^{(1-d)(d-s)} (prod_{j=d-s+1}^{d} (v^j+v^{-j})) (v-v^{-1})^{d-s} / [s]!
      = v^{d(k+1-d)} (v-v^{-1})^{d-k} (prod_{j=d-k}^{d-1} (v^j+v^{-j})) / [k]!.

    At k = d this is the summed form used for the D-sum evaluation.
    """
    if not (0 <= k <= d) or d < 1:
        raise ValueError("need 0 <= k <= d, d >= 1")
    vmv = _vmv()
    lhs = RatFunc.const(0)
    for s in range(k + 1):
        prod = LP_ONE
        for j in range(d - s + 1, d + 1):
            prod = prod * LaurentPoly({(j, 0): 1, (-j, 0): 1})
        lhs = lhs + _vp((1 - d) * (d - s)) * RatFunc.from_poly(prod) * vmv.pow(d - s) * inv_qfact(s)
    prod = LP_ONE
    for j in range(d - k, d):
        prod = prod * (LaurentPoly.v_power(j) + LaurentPoly.v_power(-j))
    rhs = _vp(d * (k + 1 - d)) * vmv.pow(d - k) * RatFunc.from_poly(prod) * inv_qfact(k)
    return IdentityReport.make("partial-sum", (d, k), lhs, rhs)


def check_coeff(d: int) -> IdentityReport:
    """The two-parity coefficient identity: for each parity of w, the
    difference of the four-index sum (n with w+n even) and the three-index
    sum (n with w+n odd) vanishes; computed by literal summation."""
    if d < 1:
        raise ValueError("d must be positive")
    holds = True
    lhs_even = _d_sum(d, 0) - _c_sum(d, 1)
    lhs_odd = _d_sum(d, 1) - _c_sum(d, 0)
    holds = lhs_even.is_zero() and lhs_odd.is_zero()
    return IdentityReport("coeff", (d,), lhs_even + lhs_odd, RatFunc.const(0), holds)


# ---------------------------------------------------------------------------
# The vanishing family A(a, d, u), its odd-parity variant, and T(f, g, t1, t3)
# ---------------------------------------------------------------------------


def _a_side(a: int, d: int, u: int, r_parity: int, with_t: bool) -> RatFunc:
    """One side of the A-sums: r restricted to the given parity; the t-sum is
    present exactly on the side carrying the K-class corrections."""
    total = RatFunc.const(0)
    vmv = _vmv()
    t_range = range(d + 1) if with_t else (0,)
    for t in t_range:
        for r in range(a - 2 * t + 1):
            if r % 2 != r_parity:
                continue
            for k in range(r // 2 + 1):
                m_hi = (a - r) // 2 - t
                for m in range(m_hi + 1):
                    n = d - k - m - t
                    if n < 0 or n > r - 2 * k:
                        continue
                    s = a - 2 * t - r
                    z = exponent_z(a, r, s, k, m, n, u)
                    if with_t:
                        e = r + z - a + 2 * t
                    else:
                        e = r + z + 2 * k + 2 * m - a
                    binom_arg = s - 2 * m - n
                    term = (
                        _vp(e)
                        * vmv.pow(1 - k - m - n)
                        * inv_qfact(n)
                        * inv_qfact(k, "double")
                        * inv_qfact(m, "double")
                        * qbinom(u, binom_arg)
                    )
                    total = total + term
    return total


def _check_a_constraints(a: int, d: int, u: int) -> None:
    if not (0 <= 2 * d <= a and 0 <= u <= a - 2 * d):
        raise ValueError(f"(a,d,u)=({a},{d},{u}) outside the constraint region")
    if d == 0 and u == 0:
        raise ValueError("d and u must not both be zero")


def compute_A(a: int, d: int, u: int) -> RatFunc:
    """The even-parity vanishing sum; 0 on the whole constraint region."""
    _check_a_constraints(a, d, u)
    return _a_side(a, d, u, 0, True) - _a_side(a, d, u, 1, False)


def compute_A_prime(a: int, d: int, u: int) -> RatFunc:
    """The odd-parity variant, obtained by switching the parity of r between
    the two sides; 0 on the whole constraint region."""
    _check_a_constraints(a, d, u)
    return _a_side(a, d, u, 1, True) - _a_side(a, d, u, 0, False)


def compute_T(a: int, b: int, f: int, g: int, t1: int, t3: int) -> RatFunc:
    """The five-fold quasi-split sum; equals 1 at (0,0,0,0) and 0 elsewhere on
    the admissible region."""
    if not (0 <= f <= min(a, b) and 0 <= g <= min(a, b)):
        raise ValueError("f, g outside [0, min(a,b)]")
    if not (0 <= t1 <= a - f - g and 0 <= t3 <= b - f - g):
        raise ValueError("t1/t3 outside the admissible region")
    total = RatFunc.const(0)
    vmv = _vmv()
    for u in range(min(a, b) + 1):
        for r in range(a - u + 1):
            for s in range(b - u + 1):
                for y in range(min(a - u - r, b - u - s) + 1):
                    for x in range(min(r, s) + 1):
                        term = (
                            qbinom(t3, s - x - g + y)
                            * qbinom(t1, r - f + u)
                            * inv_qfact(g)
                            * inv_qfact(f - u)
                            * qbinom(g, y)
                            * qbinom(f - u, x)
                        )
                        if term.is_zero():
                            continue
                        e = exponent_T(u, r, s, x, y, f, g, t1, t3)
                        total = total + term * _vp(e) * vmv.pow(u) * RatFunc.const((-1) ** (r + s))
    return total


def check_A(a: int, d: int, u: int) -> IdentityReport:
    return IdentityReport.make("A-vanishing", (a, d, u), compute_A(a, d, u), RatFunc.const(0))


def check_A_prime(a: int, d: int, u: int) -> IdentityReport:
    return IdentityReport.make(
        "A-prime-vanishing", (a, d, u), compute_A_prime(a, d, u), RatFunc.const(0)
    )


def check_T(a: int, b: int, f: int, g: int, t1: int, t3: int) -> IdentityReport:
    expected = RatFunc.const(1) if (f, g, t1, t3) == (0, 0, 0, 0) else RatFunc.const(0)
    return IdentityReport.make(
        "T-vanishing", (a, b, f, g, t1, t3), compute_T(a, b, f, g, t1, t3), expected
    )


def admissible_a_region(a: int) -> list[tuple[int, int]]:
    """All (d, u) with 0 <= d <= a/2, 0 <= u <= a-2d, (d, u) != (0, 0)."""
    out = []
    for d in range(a // 2 + 1):
        for u in range(a - 2 * d + 1):
            if (d, u) != (0, 0):
                out.append((d, u))
    return out


def admissible_t_region(a: int, b: int) -> list[tuple[int, int, int, int]]:
    """All (f, g, t1, t3) in the constraint region, including the origin."""
    out = []
    for f in range(min(a, b) + 1):
        for g in range(min(a, b) + 1):
            for t1 in range(max(a - f - g, -1) + 1):
                for t3 in range(max(b - f - g, -1) + 1):
                    if t1 <= a - f - g and t3 <= b - f - g:
                        out.append((f, g, t1, t3))
    return out
