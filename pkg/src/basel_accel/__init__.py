"""Certified exact-arithmetic evaluation of pi**2/6 via the central binomial series."""

from .coefficients import (
    CoeffTable,
    IdentityCheck,
    coeff_table,
    u_coeff,
    v_closed_form,
    v_via_cauchy,
    v_via_recurrence,
    verify_identity,
    w_factor,
)
from .evaluator import (
    BudgetExceeded,
    ConvergenceReport,
    EvalResult,
    SeriesId,
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
from .exact import (
    DomainError,
    FixedPointDecimal,
    binom,
    factorial,
    fxp_from_rational,
    fxp_to_string,
    isqrt,
    rat_make,
)
from .series import (
    TruncatedSeries,
    arcsin_series,
    differentiate,
    f_series,
    integrate,
    inv_sqrt_one_minus_x2,
    multiply,
    ode_residual,
)

__version__ = "0.1.0"
