"""Taylor coefficients of arcsin and arcsin squared.

``u_coeff(n)`` is the coefficient of x**(2n+1) in arcsin(x) and ``v_*(n)`` the
coefficient of x**(2n) in arcsin(x)**2.  The v family is exposed for n >= 1
and computed by three routes that share nothing beyond ``u_coeff``:

* ``v_via_cauchy``     -- convolution of the u coefficients,
* ``v_via_recurrence`` -- iteration of (2k+2)(2k+1) v[k+1] = 4 k**2 v[k], v[1] = 1,
* ``v_closed_form``    -- 2**(2n-1) ((n-1)!)**2 / (2n)!.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple

from .exact import DomainError, binom, factorial

__all__ = [
    "CoeffTable",
    "IdentityCheck",
    "coeff_table",
    "u_coeff",
    "v_closed_form",
    "v_via_cauchy",
    "v_via_recurrence",
    "verify_identity",
    "w_factor",
]


def _require_index(name: str, n, least: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < least:
        raise DomainError(f"{name} must be >= {least}, got {n}")


def u_coeff(n: int) -> Fraction:
    _require_index("n", n, 0)
    return Fraction(binom(2 * n, n), 4**n * (2 * n + 1))


def v_via_cauchy(n: int) -> Fraction:
    _require_index("n", n, 1)
    m = n - 1
    u = [u_coeff(i) for i in range(m + 1)]
    return sum((u[i] * u[m - i] for i in range(m + 1)), Fraction(0))


_recurrence_lock = threading.Lock()
_recurrence_cache: List[Fraction] = [Fraction(1)]  # entry k holds v[k + 1]


def v_via_recurrence(n: int) -> Fraction:
    """v[n] from the two-term recurrence, memoized across calls."""
    _require_index("n", n, 1)
    with _recurrence_lock:
        cache = _recurrence_cache
        while len(cache) < n:
            k = len(cache)  # extend from v[k] to v[k + 1]
            cache.append(cache[-1] * Fraction(4 * k * k, (2 * k + 2) * (2 * k + 1)))
        return cache[n - 1]


def w_factor(i: int) -> Fraction:
    _require_index("i", i, 1)
    return Fraction(4 * i * i, (2 * i + 2) * (2 * i + 1))


def v_closed_form(n: int) -> Fraction:
    _require_index("n", n, 1)
    return Fraction(2 ** (2 * n - 1) * factorial(n - 1) ** 2, factorial(2 * n))


class IdentityCheck(NamedTuple):
    n: int
    left: Fraction
    right: Fraction
    holds: bool


def verify_identity(n: int) -> IdentityCheck:
    """Check (n+1)(2n+1) C(2n,n) * sum_i C(2i,i) C(2n-2i,n-i) / ((2i+1)(2n-2i+1)) == 16**n."""
    _require_index("n", n, 0)
    inner = sum(
        (
            Fraction(
                binom(2 * i, i) * binom(2 * n - 2 * i, n - i),
                (2 * i + 1) * (2 * n - 2 * i + 1),
            )
            for i in range(n + 1)
        ),
        Fraction(0),
    )
    left = (n + 1) * (2 * n + 1) * binom(2 * n, n) * inner
    right = Fraction(16**n)
    return IdentityCheck(n, left, right, left == right)


@dataclass(frozen=True)
class CoeffTable:
    kind: str
    values: tuple
    start_index: int

    def __len__(self):
        return len(self.values)

    def __getitem__(self, j):
        return self.values[j]

    def at(self, index: int) -> Fraction:
        """Value at the coefficient's own index (not the table position)."""
        return self.values[index - self.start_index]


def coeff_table(kind: str, count: int, route: str = "recurrence") -> CoeffTable:
    """First ``count`` coefficients of family ``kind`` ('u' or 'v')."""
    _require_index("count", count, 0)
    if kind == "u":
        return CoeffTable("u", tuple(u_coeff(n) for n in range(count)), 0)
    if kind == "v":
        routes = {
            "cauchy": v_via_cauchy,
            "recurrence": v_via_recurrence,
            "closed": v_closed_form,
        }
        if route not in routes:
            raise DomainError(f"unknown route {route!r}")
        fn = routes[route]
        return CoeffTable("v", tuple(fn(n) for n in range(1, count + 1)), 1)
    raise DomainError(f"unknown coefficient family {kind!r}")
