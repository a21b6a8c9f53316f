"""Exact arithmetic kernel: Laurent polynomials in v (optionally bivariate with
a second formal variable z), rational functions of v, quantum combinatorics,
and evaluation into Q(sqrt(q)).

Coefficients are arbitrary-precision rationals throughout; no floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]

# Exponent keys are (v-exponent, z-exponent); univariate values keep z-exp 0.


class LaurentPoly:
    """A Laurent polynomial sum_{(a,b)} c_{a,b} v^a z^b with Fraction coefficients.

    Stored sparsely as {(a, b): Fraction}; zero coefficients are never kept.
    Instances are immutable by convention.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], Scalar] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        if coeffs:
            for key, c in coeffs.items():
                fc = Fraction(c)
                if fc:
                    a, b = key
                    clean[(int(a), int(b))] = fc
        self.coeffs = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(c: Scalar) -> "LaurentPoly":
        return LaurentPoly({(0, 0): c})

    @staticmethod
    def v_power(a: int, c: Scalar = 1) -> "LaurentPoly":
        return LaurentPoly({(a, 0): c})

    @staticmethod
    def z_power(b: int, c: Scalar = 1) -> "LaurentPoly":
        return LaurentPoly({(0, b): c})

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_univariate(self) -> bool:
        return all(b == 0 for (_, b) in self.coeffs)

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def constant_value(self) -> Fraction:
        """The value if this is a constant; raises otherwise."""
        if not self.coeffs:
            return Fraction(0)
        if list(self.coeffs) == [(0, 0)]:
            return self.coeffs[(0, 0)]
        raise ValueError("not a constant polynomial")

    def min_v_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no valuation")
        return min(a for (a, _) in self.coeffs)

    def max_v_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(a for (a, _) in self.coeffs)

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        res = LaurentPoly()
        res.coeffs = out
        return res

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly()
        res.coeffs = {k: -c for k, c in self.coeffs.items()}
        return res

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                key = (a1 + a2, b1 + b2)
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        res = LaurentPoly()
        res.coeffs = out
        return res

    def scale(self, c: Scalar) -> "LaurentPoly":
        fc = Fraction(c)
        res = LaurentPoly()
        if fc:
            res.coeffs = {k: v * fc for k, v in self.coeffs.items()}
        return res

    def shift_v(self, a: int) -> "LaurentPoly":
        res = LaurentPoly()
        res.coeffs = {(e + a, b): c for (e, b), c in self.coeffs.items()}
        return res

    def bar(self) -> "LaurentPoly":
        """The substitution v -> v^{-1} (z untouched)."""
        res = LaurentPoly()
        res.coeffs = {(-a, b): c for (a, b), c in self.coeffs.items()}
        return res

    def pow(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial; use RatFunc")
        out = LP_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons / hashing ----------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def sorted_items(self) -> list[tuple[tuple[int, int], Fraction]]:
        return sorted(self.coeffs.items())

    def to_triples(self) -> list[tuple[int, int, int]]:
        """Serialize a univariate polynomial as sorted (exponent, num, den) triples."""
        if not self.is_univariate():
            raise ValueError("triple serialization is for univariate polynomials")
        return [(a, c.numerator, c.denominator) for (a, _), c in self.sorted_items()]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (a, b), c in self.sorted_items():
            term = str(c)
            if a:
                term += f"*v^{a}"
            if b:
                term += f"*z^{b}"
            parts.append(term)
        return " + ".join(parts)


LP_ZERO = LaurentPoly()
LP_ONE = LaurentPoly.const(1)
LP_V = LaurentPoly.v_power(1)


def _univariate_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two nonzero univariate Laurent polynomials (as polynomials
    in v after clearing valuations; the v^k units are ignored)."""

    def to_dense(lp: LaurentPoly) -> list[Fraction]:
        lo = lp.min_v_exp()
        hi = lp.max_v_exp()
        dense = [Fraction(0)] * (hi - lo + 1)
        for (a, _), c in lp.coeffs.items():
            dense[a - lo] = c
        return dense

    def trim(d: list[Fraction]) -> list[Fraction]:
        while d and not d[-1]:
            d.pop()
        return d

    def rem(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
        num = num[:]
        dn = len(den) - 1
        lead = den[-1]
        while len(num) - 1 >= dn and trim(num):
            shift = len(num) - 1 - dn
            factor = num[-1] / lead
            for i, dc in enumerate(den):
                num[shift + i] -= factor * dc
            num = trim(num)
            if not num:
                break
        return num

    a = trim(to_dense(p))
    b = trim(to_dense(q))
    while b:
        a, b = b, rem(a, b)
    lead = a[-1]
    return LaurentPoly({(i, 0): c / lead for i, c in enumerate(a) if c})


class RatFunc:
    """An exact rational function num/den in v, with num possibly involving z.

    Canonical form: den is a nonzero univariate polynomial in v with lowest
    exponent 0, positive leading coefficient, content 1, and gcd(num, den) = 1.
    Equality of canonical forms is structural equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LP_ONE
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not den.is_univariate():
            raise ValueError("denominators must be univariate in v")
        num, den = self._normalize(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        if num.is_zero():
            return LP_ZERO, LP_ONE
        # shift denominator to lowest exponent 0, compensating in num
        shift = den.min_v_exp()
        den = den.shift_v(-shift)
        num = num.shift_v(-shift)
        if not den == LP_ONE:
            g = _univariate_gcd(num if num.is_univariate() else _v_content(num), den)
            if g.max_v_exp() > g.min_v_exp() or g.coeffs.get((0, 0)) != 1:
                num = _exact_div(num, g)
                den = _exact_div(den, g)
                shift = den.min_v_exp()
                den = den.shift_v(-shift)
                num = num.shift_v(-shift)
        # scale so den has leading coefficient with positive numerator and
        # content 1 (make den's leading coeff equal 1 when den constant,
        # else make the highest-exponent coefficient equal 1)
        lead = den.coeffs[(den.max_v_exp(), 0)]
        num = num.scale(Fraction(1) / lead)
        den = den.scale(Fraction(1) / lead)
        return num, den

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(c: Scalar) -> "RatFunc":
        return RatFunc(LaurentPoly.const(c))

    @staticmethod
    def from_poly(p: LaurentPoly) -> "RatFunc":
        return RatFunc(p)

    @staticmethod
    def v_power(a: int) -> "RatFunc":
        return RatFunc(LaurentPoly.v_power(a))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        r = RatFunc.__new__(RatFunc)
        r.num = -self.num
        r.den = self.den
        return r

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        if not other.num.is_univariate():
            raise ValueError("cannot divide by a z-dependent function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inv(self) -> "RatFunc":
        return RatFunc.const(1) / self

    def pow(self, n: int) -> "RatFunc":
        if n >= 0:
            return RatFunc(self.num.pow(n), self.den.pow(n))
        return RatFunc.const(1) / self.pow(-n)

    def scale(self, c: Scalar) -> "RatFunc":
        r = RatFunc.__new__(RatFunc)
        r.num = self.num.scale(c)
        r.den = self.den if not r.num.is_zero() else LP_ONE
        if r.num.is_zero():
            r.num = LP_ZERO
        return r

    def bar(self) -> "RatFunc":
        """v -> v^{-1}."""
        return RatFunc(self.num.bar(), self.den.bar())

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == LP_ONE

    def as_poly(self) -> LaurentPoly:
        if not self.is_polynomial():
            raise ValueError(f"not a Laurent polynomial: {self!r}")
        return self.num

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.den == LP_ONE:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _v_content(p: LaurentPoly) -> LaurentPoly:
    """gcd over v of the z-coefficient slices of p (p nonzero)."""
    slices: dict[int, dict[tuple[int, int], Fraction]] = {}
    for (a, b), c in p.coeffs.items():
        slices.setdefault(b, {})[(a, 0)] = c
    polys = [LaurentPoly(s) for s in slices.values()]
    g = polys[0]
    for nxt in polys[1:]:
        g = _univariate_gcd(g, nxt)
        if g == LP_ONE:
            break
    return g


def _exact_div(p: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Divide p by the univariate g, which must divide each z-slice exactly."""
    if g == LP_ONE:
        return p
    slices: dict[int, dict[tuple[int, int], Fraction]] = {}
    for (a, b), c in p.coeffs.items():
        slices.setdefault(b, {})[(a, 0)] = c
    out: dict[tuple[int, int], Fraction] = {}
    for b, s in slices.items():
        quo = _poly_divmod_exact(LaurentPoly(s), g)
        for (a, _), c in quo.coeffs.items():
            out[(a, b)] = c
    return LaurentPoly(out)


def _poly_divmod_exact(p: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    shift = p.min_v_exp() - g.min_v_exp()
    num = p.shift_v(-p.min_v_exp())
    den = g.shift_v(-g.min_v_exp())
    out: dict[tuple[int, int], Fraction] = {}
    ghi = den.max_v_exp()
    glead = den.coeffs[(ghi, 0)]
    work = dict(num.coeffs)
    while work:
        hi = max(a for (a, _) in work)
        factor = work[(hi, 0)] / glead
        e = hi - ghi
        if e < 0:
            raise ValueError("division is not exact")
        out[(e + shift, 0)] = factor
        for (a, _), c in den.coeffs.items():
            key = (a + e, 0)
            s = work.get(key, Fraction(0)) - factor * c
            if s:
                work[key] = s
            else:
                work.pop(key, None)
    return LaurentPoly(out)


# ---------------------------------------------------------------------------
# quantum combinatorics
# ---------------------------------------------------------------------------


def qint(m: int) -> LaurentPoly:
    """The quantum integer [m] = (v^m - v^{-m})/(v - v^{-1})."""
    if m == 0:
        return LP_ZERO
    if m < 0:
        return -qint(-m)
    # [m] = v^{m-1} + v^{m-3} + ... + v^{1-m}
    return LaurentPoly({(m - 1 - 2 * i, 0): 1 for i in range(m)})


def qfactorial(r: int, kind: str = "plain") -> LaurentPoly:
    """[r]! = prod_{i<=r} [i], or the double factorial [2r]!! = prod_{i<=r} [2i]."""
    if r < 0:
        raise ValueError("factorial of a negative integer")
    out = LP_ONE
    for i in range(1, r + 1):
        out = out * (qint(2 * i) if kind == "double" else qint(i))
    return out


def qbinom(m: int, r: int) -> RatFunc:
    """The quantum binomial [m; r] = [m][m-1]...[m-r+1] / [r]!.

    Defined for any integer m and r >= 0 via the product formula, so negative
    m is allowed.  For r < 0 the value is 0.  The result is always a Laurent
    polynomial (denominator 1 in canonical form).
    """
    if r < 0:
        return RatFunc.const(0)
    num = LP_ONE
    for i in range(r):
        num = num * qint(m - i)
    res = RatFunc(num, qfactorial(r))
    return res


def inv_qfact(n: int, kind: str = "plain") -> RatFunc:
    """1/[n]! (or 1/[2n]!!), with the convention 1/[n]! = 0 for n < 0."""
    if n < 0:
        return RatFunc.const(0)
    return RatFunc(LP_ONE, qfactorial(n, kind))


def v_minus_vinv() -> LaurentPoly:
    return LaurentPoly({(1, 0): 1, (-1, 0): -1})


def pochhammer(base_exp: int, step_exp: int, n: int) -> LaurentPoly:
    """(v^base; v^step)_n = prod_{k=0}^{n-1} (1 - v^{base + k*step})."""
    if n < 0:
        raise ValueError("negative Pochhammer length")
    out = LP_ONE
    for k in range(n):
        out = out * (LP_ONE - LaurentPoly.v_power(base_exp + k * step_exp))
    return out


# ---------------------------------------------------------------------------
# Q(sqrt(q))
# ---------------------------------------------------------------------------


class QSqrt:
    """An element a + b*sqrt(q) of Q(sqrt(q)) with a, b rational and q a prime."""

    __slots__ = ("a", "b", "q")

    def __init__(self, a: Scalar, b: Scalar, q: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.q = q

    @staticmethod
    def const(c: Scalar, q: int) -> "QSqrt":
        return QSqrt(c, 0, q)

    @staticmethod
    def sqrt_q(q: int) -> "QSqrt":
        return QSqrt(0, 1, q)

    def _check(self, other: "QSqrt") -> None:
        if self.q != other.q:
            raise ValueError(f"mixing Q(sqrt {self.q}) with Q(sqrt {other.q})")

    def __add__(self, other: "QSqrt") -> "QSqrt":
        self._check(other)
        return QSqrt(self.a + other.a, self.b + other.b, self.q)

    def __neg__(self) -> "QSqrt":
        return QSqrt(-self.a, -self.b, self.q)

    def __sub__(self, other: "QSqrt") -> "QSqrt":
        return self + (-other)

    def __mul__(self, other: "QSqrt") -> "QSqrt":
        self._check(other)
        return QSqrt(
            self.a * other.a + self.b * other.b * self.q,
            self.a * other.b + self.b * other.a,
            self.q,
        )

    def inv(self) -> "QSqrt":
        norm = self.a * self.a - self.b * self.b * self.q
        if not norm:
            raise ZeroDivisionError("non-invertible element of Q(sqrt q)")
        return QSqrt(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other: "QSqrt") -> "QSqrt":
        return self * other.inv()

    def scale(self, c: Scalar) -> "QSqrt":
        fc = Fraction(c)
        return QSqrt(self.a * fc, self.b * fc, self.q)

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QSqrt.const(other, self.q)
        if not isinstance(other, QSqrt):
            return NotImplemented
        return self.q == other.q and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.q))

    def __repr__(self) -> str:
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt({self.q})"
        return f"{self.a} + {self.b}*sqrt({self.q})"


def eval_sqrt_q(p: LaurentPoly, q: int) -> QSqrt:
    """Evaluate a univariate Laurent polynomial at v = sqrt(q).

    Even powers v^{2k} contribute q^k to the rational part; odd powers
    v^{2k+1} contribute q^k to the sqrt(q) part.  Ring homomorphism.
    """
    if not p.is_univariate():
        raise ValueError("evaluation at sqrt(q) is for univariate polynomials")
    a = Fraction(0)
    b = Fraction(0)
    for (e, _), c in p.coeffs.items():
        k, rem = divmod(e, 2)
        if rem == 0:
            a += c * Fraction(q) ** k
        else:
            b += c * Fraction(q) ** k
    return QSqrt(a, b, q)


def eval_ratfunc_sqrt_q(f: RatFunc, q: int) -> QSqrt:
    """Evaluate a rational function at v = sqrt(q); the denominator must not vanish."""
    den = eval_sqrt_q(f.den, q)
    if den.is_zero():
        raise ZeroDivisionError(f"denominator vanishes at v = sqrt({q})")
    return eval_sqrt_q(f.num, q) / den


def rat_ops(x: RatFunc, y: RatFunc, op: str):
    """Field arithmetic dispatch: add/sub/mul/div return RatFunc, eq a bool."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "eq":
        return x == y
    raise ValueError(f"unknown operation {op!r}")
