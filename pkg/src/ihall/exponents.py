"""Integer exponent bookkeeping for the closed product formulas and the
vanishing sums.  Sign errors here are the dominant failure mode, so each
function is a standalone pure map from integers to an integer and is unit
tested on its own.
"""
from __future__ import annotations


def binom2(x: int) -> int:
    """x*(x-1)/2, valid for any integer x."""
    return x * (x - 1) // 2


def exponent_p(a: int, r: int, s: int, t: int, u: int) -> int:
    """v-exponent attached to a basis module with u simple summands in the
    rank-2 split triple product [s S'_i] * [S'_j] * [t S'_i]; r is the
    K-class exponent of the term."""
    return (
        -s * (a + t)
        + 2 * r * a
        + (u - t + 2 * s - r) * (t - r)
        + (s - r) ** 2
        + binom2(s - r)
        + (t - r) ** 2
        + binom2(t - r)
        + r * (s + t)
        - binom2(r + 1)
        + 1
    )


def exponent_z(a: int, r: int, s: int, k: int, m: int, n: int, u: int) -> int:
    """v-exponent of the (k, m, n) term in the expansion of the split-case
    divided-power product with outer multiplicities r and s."""
    return (
        k * (k - 1)
        + m * (m - 1)
        - binom2(r - 2 * k)
        - binom2(s - 2 * m)
        + exponent_p(a, n, r - 2 * k, s - 2 * m, u)
    )


def exponent_p_prime(t: int, d: int, m: int, n: int) -> int:
    """v-exponent of the K-class factor in the quasi-split building block."""
    return (
        (m - d) ** 2
        + binom2(m - d)
        + (n - d) ** 2
        + binom2(n - d)
        + d * (m + n - d)
        + binom2(d)
        + (t - (n - d)) * (n - d)
    )


def exponent_w(
    m1: int,
    m2: int,
    n1: int,
    n2: int,
    d: int,
    e: int,
    t1: int,
    t3: int,
    cij: int,
    ctij: int,
) -> int:
    """v-exponent of the (d, e, M) term in the quasi-split product
    [(S'_i)^{m1} + (S'_ti)^{n1}] * [S'_j] * [(S'_i)^{m2} + (S'_ti)^{n2}];
    t1 and t3 are the simple-summand multiplicities of the basis module."""
    return (
        cij * (m1 - 2 * d)
        + ctij * (n1 - 2 * e)
        - m1 * m2
        - n1 * n2
        + 2 * (n1 - e) * (n2 - d)
        + (e - d) * (m1 + m2 - n1 - n2)
        + 2 * (m1 - d) * (m2 - e)
        + exponent_p_prime(t3, d, m1, n2)
        + exponent_p_prime(t1, e, n1, m2)
        + 1
    )


def exponent_T(
    u: int, r: int, s: int, x: int, y: int, f: int, g: int, t1: int, t3: int
) -> int:
    """v-exponent of the (u, r, s, y, x) term of the quasi-split vanishing sum."""
    return (
        2 * (f * r + g * s)
        - u * (u + 1) // 2
        + u * (f - x + t1)
        - x * (2 * g + f + t3)
        + y * (g + t3)
        + t3 * s
        - s
        + t1 * r
        - r
    )
