import itertools
from fractions import Fraction

import pytest

from basel_accel.coefficients import v_closed_form
from basel_accel.evaluator import (
    BudgetExceeded,
    SeriesId,
    certified_digits,
    convergence_report,
    eval_constant,
    eval_pi,
    iter_terms,
    partial_sum_exact,
    partial_sum_fixed,
    tail_bound,
    term,
    terms_for_digits,
)
from basel_accel.exact import DomainError
from oracles import binom_by_factorials, machin_pi, machin_zeta2, truncated_text

F = Fraction
BASEL, STIRLING = SeriesId.BASEL, SeriesId.STIRLING


def exact_prefix_sums(series, n_max):
    total = F(0)
    sums = []
    for n in range(1, n_max + 1):
        total += F(1, n * n) if series is BASEL else F(3, n * n * binom_by_factorials(2 * n, n))
        sums.append(total)
    return sums


@pytest.mark.parametrize(
    "series, n, expected",
    [(BASEL, 1, F(1)), (STIRLING, 1, F(3, 2)), (STIRLING, 3, F(1, 60)), ("basel", 4, F(1, 16))],
)
def test_term(series, n, expected):
    assert term(series, n) == expected


def test_term_domain():
    with pytest.raises(DomainError):
        term(BASEL, 0)
    with pytest.raises(DomainError):
        term("zeta3", 1)


def test_iter_terms_matches_term():
    for series in SeriesId:
        got = list(itertools.islice(iter_terms(series), 60))
        assert got == [term(series, n) for n in range(1, 61)]
        got = list(itertools.islice(iter_terms(series, start=37), 5))
        assert got == [term(series, n) for n in range(37, 42)]


@pytest.mark.parametrize(
    "series, N, expected",
    [(BASEL, 10, F(1, 10)), (STIRLING, 10, F(1, 21339318)), (STIRLING, 1, F(1, 6))],
)
def test_tail_bound_examples(series, N, expected):
    assert tail_bound(series, N) == expected


@pytest.mark.parametrize(
    "series, N, expected",
    [(BASEL, 1, F(1)), (BASEL, 3, F(49, 36)), (STIRLING, 2, F(13, 8))],
)
def test_partial_sum_exact_examples(series, N, expected):
    assert partial_sum_exact(series, N) == expected


def test_partial_sum_exact_cap():
    with pytest.raises(DomainError, match="partial_sum_fixed"):
        partial_sum_exact(BASEL, 10**4 + 1)
    assert partial_sum_exact(BASEL, 20, cap=20) == exact_prefix_sums(BASEL, 20)[-1]


def test_partial_sum_fixed_examples():
    d = partial_sum_fixed(BASEL, 1, 5)
    assert (d.mantissa, d.error_ulps) == (100000, 1)
    assert partial_sum_fixed(BASEL, 3, 5).contains(F(49, 36))
    assert partial_sum_fixed(STIRLING, 9, 12).contains(partial_sum_exact(STIRLING, 9))


def brute_force_terms_for_digits(series, D):
    N = 1
    while tail_bound(series, N) >= F(1, 10**D):
        N += 1
    return N


@pytest.mark.parametrize("D", range(1, 40))
def test_terms_for_digits_stirling_brute_force(D):
    assert terms_for_digits(STIRLING, D) == brute_force_terms_for_digits(STIRLING, D)


def test_terms_for_digits_examples():
    assert terms_for_digits(STIRLING, 6) == 9
    assert terms_for_digits(STIRLING, 1) == 2
    assert terms_for_digits(BASEL, 6) == 1000001
    for D in (1, 2, 3):
        assert terms_for_digits(BASEL, D) == brute_force_terms_for_digits(BASEL, D)
    N = terms_for_digits(BASEL, 6)
    assert tail_bound(BASEL, N) < F(1, 10**6) <= tail_bound(BASEL, N - 1)


def test_certified_digits():
    assert certified_digits(F(1)) == 0
    assert certified_digits(F(2)) == 0
    assert certified_digits(F(1, 10)) == 0
    assert certified_digits(F(99, 1000)) == 1
    assert certified_digits(F(1, 10**50) - F(1, 10**80)) == 50
    assert certified_digits(F(1, 10**5000 + 1)) == 5000


def test_monotone_bracketing_stirling():
    sums = exact_prefix_sums(STIRLING, 200)
    assert partial_sum_exact(STIRLING, 200) == sums[-1]
    for i, s in enumerate(sums):
        N = i + 1
        upper = s + tail_bound(STIRLING, N)
        for later in sums[i + 1:]:
            assert s < later <= upper


def test_monotone_bracketing_basel():
    sums = exact_prefix_sums(BASEL, 2000)
    assert partial_sum_exact(BASEL, 2000) == sums[-1]
    for i in range(len(sums) - 1):
        assert sums[i] < sums[i + 1]
    # sums increase, so the largest later partial sum is the last one
    for i, s in enumerate(sums[:-1]):
        assert s + tail_bound(BASEL, i + 1) >= sums[-1]


def test_fixed_backend_contains_exact():
    for series in SeriesId:
        sums = exact_prefix_sums(series, 1000)
        for scale in range(3, 31):
            for N in range(1, 1001):
                fx = partial_sum_fixed(series, N, scale)
                assert fx.error_ulps == N
                # fx.contains(exact), cross-multiplied to stay in integers
                exact = sums[N - 1]
                scaled = exact.numerator * 10**scale
                den = exact.denominator
                assert (fx.mantissa - N) * den <= scaled <= (fx.mantissa + N) * den


def test_term_link_to_closed_form():
    for n in range(1, 201):
        assert term(STIRLING, n) == 6 * v_closed_form(n) / F(4) ** n


def test_ratio_bound():
    terms = itertools.islice(iter_terms(STIRLING), 10**4 + 1)
    prev = next(terms)
    for n, cur in enumerate(terms, start=1):
        # cur / prev == n**2 / ((2n+1)(2n+2)), cross-multiplied
        lhs = cur.numerator * prev.denominator * (2 * n + 1) * (2 * n + 2)
        rhs = prev.numerator * cur.denominator * n * n
        assert lhs == rhs
        assert 4 * n * n <= (2 * n + 1) * (2 * n + 2)
        prev = cur


@pytest.mark.parametrize(
    "D, prefix", [(1, "1.6"), (2, "1.64"), (10, "1.6449340668"), (25, "1.6449340668482264364724151")]
)
def test_eval_constant_against_machin(D, prefix):
    r = eval_constant(D)
    assert r.text == prefix
    lo, hi = machin_zeta2(D + 20)
    assert r.text == truncated_text(lo, hi, D)
    assert r.contains(lo) and r.contains(hi)
    assert r.certified_digits >= D
    assert r.width < F(1, 10**D)


def test_eval_constant_intervals_overlap():
    results = [eval_constant(D) for D in (1, 3, 7, 20, 60)]
    lo = max(r.lower for r in results)
    hi = min(r.upper for r in results)
    assert lo <= hi


def test_eval_constant_basel_and_budget():
    r = eval_constant(2, BASEL)
    assert r.text == "1.64" and r.terms_used == 10**4 + 1
    with pytest.raises(BudgetExceeded):
        eval_constant(12, BASEL, budget=10**7)


def test_cross_series_agreement():
    for D in range(1, 7):
        s = eval_constant(D)
        N = terms_for_digits(BASEL, D)
        fx = partial_sum_fixed(BASEL, N, D + 8)
        b_lo, b_hi = fx.lower, fx.upper + tail_bound(BASEL, N)
        assert max(s.lower, b_lo) <= min(s.upper, b_hi)


@pytest.mark.parametrize(
    "D, expected", [(1, "3.1"), (4, "3.1415"), (10, "3.1415926535"), (30, "3.141592653589793238462643383279")]
)
def test_eval_pi(D, expected):
    r = eval_pi(D)
    assert r.text == expected
    lo, hi = machin_pi(D + 20)
    assert r.contains(lo) and r.contains(hi)
    assert r.width < F(1, 10**D)


def test_convergence_report_examples():
    rep = convergence_report(6)
    summary = {(str(s.series), s.digits): s.terms for s in rep.summary}
    assert summary[("stirling", 6)] == 9
    assert summary[("basel", 6)] == 1000001
    rows = {(str(r.series), r.n): r for r in rep.rows}
    assert F(rows[("stirling", 1)].sum) == F(3, 2)
    assert F(rows[("basel", 1)].sum) == 1
    ns = [r.n for r in rep.rows]
    assert ns == sorted(ns)


def test_convergence_report_rows_are_sound():
    rep = convergence_report(4, [1, 3, 10, 40])
    for row in rep.rows:
        exact = partial_sum_exact(row.series, row.n)
        text_value = F(row.sum)
        assert text_value <= exact < text_value + F(1, 10**7)
        assert F(row.tail_bound) >= tail_bound(row.series, row.n)


def test_convergence_report_budget_flags():
    rep = convergence_report(4, [1, 100, 1000], budget=500)
    feasible = {(str(s.series), s.digits): s.feasible for s in rep.summary}
    assert feasible[("basel", 2)] and not feasible[("basel", 3)]
    assert feasible[("stirling", 4)]
    assert all(r.n <= 500 for r in rep.rows)
