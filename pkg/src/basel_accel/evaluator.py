"""Certified evaluation of the two series for pi**2/6.

basel:    sum_{n>=1} 1 / n**2
stirling: sum_{n>=1} 3 / (n**2 C(2n, n))

Every result is an enclosure: a fixed-point interval for the partial sum plus
a one-sided rational tail bound. "D certified digits" means the enclosure is
narrower than 10**-D; digits are only rendered after checking that every
point of the enclosure truncates to the same text.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .exact import DomainError, FixedPointDecimal, binom, fxp_ceil, fxp_to_string, isqrt

__all__ = [
    "BudgetExceeded",
    "ConvergenceReport",
    "DEFAULT_BUDGET",
    "DEFAULT_SAMPLES",
    "EXACT_CAP",
    "EvalResult",
    "SeriesId",
    "certified_digits",
    "convergence_report",
    "eval_constant",
    "eval_pi",
    "iter_terms",
    "partial_sum_exact",
    "partial_sum_fixed",
    "tail_bound",
    "term",
    "terms_for_digits",
]

EXACT_CAP = 10**4
DEFAULT_BUDGET = 10**7
DEFAULT_SAMPLES = (1, 2, 5, 10, 20, 50, 100, 1000, 10000)


class SeriesId(str, enum.Enum):
    BASEL = "basel"
    STIRLING = "stirling"

    def __str__(self):
        return self.value


class BudgetExceeded(RuntimeError):
    """The request needs more summed terms than the configured budget."""

    def __init__(self, series, needed: int, budget: int):
        self.series = SeriesId(series)
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"{self.series} series needs {needed} terms, over the budget of {budget}"
        )


def _series(series) -> SeriesId:
    try:
        return SeriesId(series)
    except ValueError:
        raise DomainError(f"unknown series {series!r}") from None


def _require(name: str, value, least: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    if value < least:
        raise DomainError(f"{name} must be >= {least}, got {value}")


def _ceil_log10(n: int) -> int:
    return 0 if n <= 1 else len(str(n - 1))


def _stirling_denominators(start: int, stop: Optional[int]):
    """Yield (n, n**2 * C(2n, n)) for start <= n <= stop (unbounded if None)."""
    c = binom(2 * start, start)
    n = start
    while stop is None or n <= stop:
        yield n, n * n * c
        c = c * (2 * n + 1) * (2 * n + 2) // ((n + 1) * (n + 1))
        n += 1


def term(series, n: int) -> Fraction:
    series = _series(series)
    _require("n", n, 1)
    if series is SeriesId.BASEL:
        return Fraction(1, n * n)
    return Fraction(3, n * n * binom(2 * n, n))


def iter_terms(series, start: int = 1):
    """Exact terms from index ``start`` on, updating C(2n, n) incrementally."""
    series = _series(series)
    _require("start", start, 1)
    if series is SeriesId.BASEL:
        n = start
        while True:
            yield Fraction(1, n * n)
            n += 1
    for _, d in _stirling_denominators(start, None):
        yield Fraction(3, d)


def tail_bound(series, N: int) -> Fraction:
    """Upper bound on sum_{n > N} term(series, n).

    basel: 1/N by comparison with the integral of 1/x**2.
    stirling: consecutive terms shrink by n**2 / ((2n+1)(2n+2)) <= 1/4, so the
    tail is at most (4/3) term(N + 1).
    """
    series = _series(series)
    _require("N", N, 1)
    if series is SeriesId.BASEL:
        return Fraction(1, N)
    return Fraction(4, 3) * term(series, N + 1)


def partial_sum_exact(series, N: int, cap: int = EXACT_CAP) -> Fraction:
    series = _series(series)
    _require("N", N, 1)
    if N > cap:
        raise DomainError(
            f"N={N} exceeds the exact-backend cap of {cap}; use partial_sum_fixed"
        )
    if series is SeriesId.BASEL:
        # common denominator avoids a gcd per term
        den = 1
        num = 0
        for n in range(1, N + 1):
            sq = n * n
            num = num * sq + den
            den *= sq
        return Fraction(num, den)
    total = Fraction(0)
    for _, d in _stirling_denominators(1, N):
        total += Fraction(3, d)
    return total


def partial_sum_fixed(series, N: int, scale: int) -> FixedPointDecimal:
    """Sum of per-term floors at ``scale`` digits; one ulp of error per term."""
    series = _series(series)
    _require("N", N, 1)
    _require("scale", scale, 0)
    one = 10**scale
    acc = 0
    if series is SeriesId.BASEL:
        for n in range(1, N + 1):
            acc += one // (n * n)
    else:
        three = 3 * one
        for _, d in _stirling_denominators(1, N):
            acc += three // d
    return FixedPointDecimal(acc, scale, N)


def terms_for_digits(series, D: int) -> int:
    """Smallest N with tail_bound(series, N) < 10**-D."""
    series = _series(series)
    _require("D", D, 1)
    if series is SeriesId.BASEL:
        return 10**D + 1
    # tail_bound(N) = 4 / ((N+1)**2 C(2N+2, N+1))
    target = 4 * 10**D
    for n, d in _stirling_denominators(2, None):
        if d > target:
            return n - 1


def certified_digits(width: Fraction) -> int:
    """Largest D >= 0 with width < 10**-D (0 when width >= 1)."""
    width = Fraction(width)
    if width <= 0:
        raise DomainError("enclosure width must be positive")
    if width >= 1:
        return 0
    # log10(2) ~ 30103/100000 gives an estimate within a few places; then correct
    d = max(0, (width.denominator.bit_length() - width.numerator.bit_length()) * 30103 // 100000 - 1)
    while d > 0 and width * 10**d >= 1:
        d -= 1
    while width * 10 ** (d + 1) < 1:
        d += 1
    return d


def _truncate(lower: Fraction, upper: Fraction, digits: int) -> Optional[FixedPointDecimal]:
    """The common ``digits``-place truncation of every point in [lower, upper], if any."""
    scale = 10**digits
    lo = lower.numerator * scale // lower.denominator
    hi = upper.numerator * scale // upper.denominator
    if lo != hi:
        return None
    return FixedPointDecimal(lo, digits, 1)


@dataclass(frozen=True)
class EvalResult:
    """Enclosure of a limit: it lies in [value.lower, value.upper + tail_bound]."""

    series: SeriesId
    terms_used: int
    value: FixedPointDecimal
    tail_bound: Fraction
    certified_digits: int
    text: str = field(default="", compare=False)

    @property
    def lower(self) -> Fraction:
        return self.value.lower

    @property
    def upper(self) -> Fraction:
        return self.value.upper + self.tail_bound

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        return self.lower <= Fraction(x) <= self.upper

    def digits_text(self, digits: int) -> Optional[str]:
        """Truncated text with ``digits`` places, or None if not certified."""
        if digits > self.certified_digits:
            return None
        fx = _truncate(self.lower, self.upper, digits)
        return None if fx is None else fxp_to_string(fx)


def _enclose(series: SeriesId, N: int, scale: int, digits: int) -> EvalResult:
    value = partial_sum_fixed(series, N, scale)
    tail = tail_bound(series, N)
    result = EvalResult(series, N, value, tail, certified_digits(value.upper + tail - value.lower))
    text = result.digits_text(digits)
    return EvalResult(series, N, value, tail, result.certified_digits, text or "")


def eval_constant(D: int, series=SeriesId.STIRLING, budget: Optional[int] = None) -> EvalResult:
    """Certified pi**2/6 to ``D`` truncated digits.

    Uses N = terms_for_digits(series, D + guard) terms at
    D + ceil(log10 N) + 5 digits, widening the guard until the truncated
    text is unambiguous. ``budget`` caps N (basel only needs it in practice).
    """
    series = _series(series)
    _require("D", D, 1)
    guard = 2
    while True:
        N = terms_for_digits(series, D + guard)
        if budget is not None and N > budget:
            raise BudgetExceeded(series, N, budget)
        scale = D + _ceil_log10(N) + 5 + guard
        result = _enclose(series, N, scale, D)
        if result.text:
            return result
        guard += 5


def eval_pi(D: int) -> EvalResult:
    """Certified pi = sqrt(6 l) to ``D`` truncated digits, l from the stirling series.

    With b the certified lower end of 6 l and r = isqrt(b 10**2t) / 10**t <= sqrt(b):
    sqrt(6 l) - sqrt(b) <= (6 l - b) / (sqrt(6 l) + sqrt(b)) <= width(6 l) / (2 r),
    so pi lies in [r, r + 10**-t + width(6 l) / (2 r)].
    """
    _require("D", D, 1)
    guard = 3
    while True:
        l = eval_constant(D + guard)
        six_lo = 6 * l.lower
        six_width = 6 * l.width
        t = D + guard
        root = isqrt(six_lo.numerator * 10 ** (2 * t) // six_lo.denominator)
        r = Fraction(root, 10**t)
        extra = six_width / (2 * r)
        value = FixedPointDecimal(root, t, 1)
        # value.upper already covers the 1-ulp isqrt floor
        width = value.upper + extra - value.lower
        result = EvalResult(SeriesId.STIRLING, l.terms_used, value, extra, certified_digits(width))
        text = result.digits_text(D)
        if text:
            return EvalResult(result.series, result.terms_used, value, extra, result.certified_digits, text)
        guard += 5


@dataclass(frozen=True)
class ReportRow:
    series: SeriesId
    n: int
    sum: str
    tail_bound: str
    certified_digits: int

    def as_dict(self) -> dict:
        return {
            "series": str(self.series),
            "n": self.n,
            "sum": self.sum,
            "tail_bound": self.tail_bound,
            "certified_digits": self.certified_digits,
        }


@dataclass(frozen=True)
class SummaryEntry:
    series: SeriesId
    digits: int
    terms: int
    feasible: bool

    def as_dict(self) -> dict:
        return {
            "series": str(self.series),
            "digits": self.digits,
            "terms": self.terms,
            "feasible": self.feasible,
        }

    def csv_line(self) -> str:
        return f"{self.series},{self.digits},{self.terms},{str(self.feasible).lower()}"


CSV_COLUMNS = ("n", "series", "sum", "tail_bound", "certified_digits")
SUMMARY_COLUMNS = ("series", "digits", "terms", "feasible")


@dataclass(frozen=True)
class ConvergenceReport:
    series: Tuple[SeriesId, ...]
    rows: Tuple[ReportRow, ...]
    summary: Tuple[SummaryEntry, ...]

    def to_dict(self) -> dict:
        return {
            "series": [str(s) for s in self.series],
            "rows": [r.as_dict() for r in self.rows],
            "summary": [s.as_dict() for s in self.summary],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow([r.n, str(r.series), r.sum, r.tail_bound, r.certified_digits])
        return buf.getvalue()

    def summary_csv(self) -> str:
        lines = [",".join(SUMMARY_COLUMNS)]
        lines.extend(s.csv_line() for s in self.summary)
        return "\n".join(lines) + "\n"


def _partial_sum_text(series: SeriesId, N: int, digits: int, tail: Fraction) -> Tuple[str, Fraction, Fraction]:
    """Truncated text of the partial sum plus a rational enclosure [lo, hi] of it.

    The working scale is chosen so rounding stays well below the tail bound
    and never limits the certified digit count.
    """
    guard = max(digits, certified_digits(tail)) - digits + _ceil_log10(N) + 3
    while True:
        fx = partial_sum_fixed(series, N, digits + guard)
        # floors only undershoot: the exact sum lies in [mantissa, mantissa + N] ulps
        lo, hi = Fraction(fx.mantissa, 10**fx.scale), fx.upper
        t = _truncate(lo, hi, digits)
        if t is not None:
            return fxp_to_string(t), lo, hi
        guard += 5


def convergence_report(
    D_max: int,
    N_samples: Optional[Iterable[int]] = None,
    series: Sequence = (SeriesId.BASEL, SeriesId.STIRLING),
    budget: int = DEFAULT_BUDGET,
) -> ConvergenceReport:
    """Partial sums, tail bounds and certified digits per sampled N.

    Texts carry D_max + 3 places; tail bounds are rounded up. Basel summary
    entries whose term count exceeds ``budget`` are marked infeasible and
    sampled N over the budget are skipped.
    """
    _require("D_max", D_max, 1)
    samples = sorted(set(DEFAULT_SAMPLES if N_samples is None else N_samples))
    for n in samples:
        _require("N", n, 1)
    ids = tuple(_series(s) for s in series)
    digits = D_max + 3
    rows: List[ReportRow] = []
    for n in samples:
        for sid in ids:
            if n > budget:
                continue
            tail = tail_bound(sid, n)
            text, lo, hi = _partial_sum_text(sid, n, digits, tail)
            rows.append(
                ReportRow(sid, n, text, fxp_to_string(fxp_ceil(tail, digits)), certified_digits(hi + tail - lo))
            )
    summary = []
    for sid in ids:
        for d in range(1, D_max + 1):
            n = terms_for_digits(sid, d)
            summary.append(SummaryEntry(sid, d, n, n <= budget))
    return ConvergenceReport(ids, tuple(rows), tuple(summary))
