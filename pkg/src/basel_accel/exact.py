"""Exact integer/rational primitives and a certified fixed-point decimal.

Python ``int`` is already arbitrary precision and ``fractions.Fraction`` is
always gcd-normalized with a positive denominator, so those serve as the
Integer and Rational types directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "DomainError",
    "FixedPointDecimal",
    "Rational",
    "binom",
    "factorial",
    "fxp_ceil",
    "fxp_from_rational",
    "fxp_to_string",
    "isqrt",
    "rat_make",
]

Rational = Fraction


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


def _check_int(name: str, value) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")


def rat_make(p: int, q: int) -> Fraction:
    """Return the normalized fraction p/q."""
    _check_int("p", p)
    _check_int("q", q)
    if q == 0:
        raise DomainError("zero denominator")
    return Fraction(p, q)


def factorial(n: int) -> int:
    _check_int("n", n)
    if n < 0:
        raise DomainError(f"factorial of negative number {n}")
    return math.factorial(n)


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) by the running-product formula.

    After step ``i`` the accumulator equals C(n - k + i, i), so every
    division is exact.
    """
    _check_int("n", n)
    _check_int("k", k)
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"binom({n}, {k}) requires 0 <= k <= n")
    k = min(k, n - k)
    acc = 1
    for i in range(1, k + 1):
        acc = acc * (n - k + i) // i
    return acc


def isqrt(x: int) -> int:
    """Floor square root by integer Newton iteration."""
    _check_int("x", x)
    if x < 0:
        raise DomainError(f"isqrt of negative number {x}")
    if x < 2:
        return x
    # start above the root; the iterates then decrease monotonically to it
    s = 1 << ((x.bit_length() + 1) // 2)
    while True:
        t = (s + x // s) // 2
        if t >= s:
            return s
        s = t


@dataclass(frozen=True)
class FixedPointDecimal:
    """The interval ``[mantissa - error_ulps, mantissa + error_ulps] * 10**-scale``."""

    mantissa: int
    scale: int
    error_ulps: int = 1

    def __post_init__(self):
        _check_int("mantissa", self.mantissa)
        _check_int("scale", self.scale)
        _check_int("error_ulps", self.error_ulps)
        if self.scale < 0:
            raise DomainError("scale must be nonnegative")
        if self.error_ulps < 0:
            raise DomainError("error_ulps must be nonnegative")

    @property
    def ulp(self) -> Fraction:
        return Fraction(1, 10**self.scale)

    @property
    def lower(self) -> Fraction:
        return Fraction(self.mantissa - self.error_ulps, 10**self.scale)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.mantissa + self.error_ulps, 10**self.scale)

    def contains(self, r) -> bool:
        return self.lower <= Fraction(r) <= self.upper

    def __str__(self) -> str:
        return fxp_to_string(self)


def fxp_from_rational(r, scale: int) -> FixedPointDecimal:
    """Floor ``r`` to ``scale`` decimal places, credited with a 1-ulp bound."""
    r = Fraction(r)
    _check_int("scale", scale)
    if scale < 0:
        raise DomainError("scale must be nonnegative")
    return FixedPointDecimal(r.numerator * 10**scale // r.denominator, scale, 1)


def fxp_ceil(r, scale: int) -> FixedPointDecimal:
    """Like ``fxp_from_rational`` but rounding up, for rendering upper bounds."""
    r = Fraction(r)
    return FixedPointDecimal(-(-r.numerator * 10**scale // r.denominator), scale, 1)


def _decimal_digits(n: int) -> str:
    # str(int) refuses very long values under the default conversion limit
    if n.bit_length() < 8192:
        return str(n)
    half = (n.bit_length() * 30103 // 100000) // 2
    hi, lo = divmod(n, 10**half)
    return _decimal_digits(hi) + _decimal_digits(lo).rjust(half, "0")


def fxp_to_string(d: FixedPointDecimal) -> str:
    """Plain positional text of the mantissa, e.g. ``-0.333``; never exponent form.

    The error bound is not rendered. At scale 0 no decimal point is written.
    """
    sign = "-" if d.mantissa < 0 else ""
    digits = _decimal_digits(abs(d.mantissa))
    if d.scale == 0:
        return sign + digits
    digits = digits.rjust(d.scale + 1, "0")
    return f"{sign}{digits[:-d.scale]}.{digits[-d.scale:]}"
