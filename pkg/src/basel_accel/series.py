"""Dense truncated power series over exact rationals.

A series of order ``k`` stores the coefficients of x**0 .. x**k; nothing is
assumed about higher powers. Every operation reports only coefficients that
are fully determined by its inputs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exact import DomainError, binom

__all__ = [
    "TruncatedSeries",
    "arcsin_series",
    "differentiate",
    "f_series",
    "integrate",
    "inv_sqrt_one_minus_x2",
    "multiply",
    "ode_residual",
]


class TruncatedSeries:
    """Immutable coefficient sequence; position k holds the coefficient of x**k."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable):
        coeffs = tuple(Fraction(c) for c in coefficients)
        if not coeffs:
            raise DomainError("a truncated series needs at least one coefficient")
        self._coeffs = coeffs

    @property
    def coefficients(self) -> tuple:
        return self._coeffs

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def valuation(self) -> int:
        """Index of the first nonzero coefficient; order + 1 if none is known."""
        for k, c in enumerate(self.coefficients):
            if c:
                return k
        return len(self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, k):
        return self.coefficients[k]

    def __iter__(self):
        return iter(self.coefficients)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.coefficients == other.coefficients
        if isinstance(other, (list, tuple)):
            return self.coefficients == tuple(Fraction(c) for c in other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"TruncatedSeries([{', '.join(str(c) for c in self.coefficients)}])"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise DomainError(f"cannot extend order {self.order} series to {order}")
        return TruncatedSeries(self.coefficients[: order + 1])

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order) + 1
        return TruncatedSeries(a + b for a, b in zip(self.coefficients[:n], other.coefficients[:n]))

    def __neg__(self):
        return TruncatedSeries(-c for c in self.coefficients)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(c * other for c in self.coefficients)
        return NotImplemented

    __rmul__ = __mul__


def inv_sqrt_one_minus_x2(order: int) -> TruncatedSeries:
    """(1 - x**2)**(-1/2): C(2n, n) / 4**n at x**(2n), zero at odd powers."""
    if order < 0:
        raise DomainError("order must be nonnegative")
    return TruncatedSeries(
        Fraction(binom(k, k // 2), 2**k) if k % 2 == 0 else 0 for k in range(order + 1)
    )


def integrate(s: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative with zero constant term; order grows by one."""
    return TruncatedSeries([0] + [c / (k + 1) for k, c in enumerate(s.coefficients)])


def differentiate(s: TruncatedSeries) -> TruncatedSeries:
    if s.order == 0:
        return TruncatedSeries([0])
    return TruncatedSeries(k * c for k, c in enumerate(s.coefficients) if k > 0)


def multiply(a: TruncatedSeries, b: TruncatedSeries, order: Optional[int] = None) -> TruncatedSeries:
    """Cauchy product up to ``order`` (default: the highest complete degree).

    Coefficient k needs a[i] for i <= k - val(b) and b[j] for j <= k - val(a),
    so degrees up to min(a.order + val(b), b.order + val(a)) are complete.
    """
    bound = min(a.order + b.valuation, b.order + a.valuation)
    if order is None:
        order = bound
    if order < 0:
        raise DomainError("order must be nonnegative")
    if order > bound:
        raise DomainError(f"product is only complete through degree {bound}, requested {order}")
    ac, bc = a.coefficients, b.coefficients
    out = []
    for k in range(order + 1):
        lo = max(0, k - b.order)
        hi = min(k, a.order)
        out.append(sum((ac[i] * bc[k - i] for i in range(lo, hi + 1)), Fraction(0)))
    return TruncatedSeries(out)


def arcsin_series(order: int) -> TruncatedSeries:
    if order < 1:
        raise DomainError("arcsin series needs order >= 1")
    return integrate(inv_sqrt_one_minus_x2(order - 1))


def f_series(order: int) -> TruncatedSeries:
    """arcsin(x)**2 through x**order."""
    if order < 2:
        raise DomainError("f series needs order >= 2")
    g = arcsin_series(order - 1)
    return multiply(g, g, order)


def _times_polynomial(s: TruncatedSeries, poly: Sequence) -> TruncatedSeries:
    # poly is exact, so every product coefficient up to s.order is complete
    out = []
    for k in range(s.order + 1):
        out.append(sum((Fraction(p) * s[k - i] for i, p in enumerate(poly) if i <= k), Fraction(0)))
    return TruncatedSeries(out)


def ode_residual(f: TruncatedSeries) -> TruncatedSeries:
    """(1 - x**2) f'' - x f' - 2, complete through degree f.order - 2."""
    if f.order < 2:
        raise DomainError("ode residual needs a series of order >= 2")
    d1 = differentiate(f)
    d2 = differentiate(d1)
    order = d2.order
    lhs = _times_polynomial(d2, [1, 0, -1])
    x_d1 = _times_polynomial(d1, [0, 1]).truncate(order)
    two = TruncatedSeries([2] + [0] * order)
    return lhs - x_d1 - two
