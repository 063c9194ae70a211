"""Robin-inequality verification on t-free integers via Dedekind psi ratios.

An integer is t-free when no t-th prime power divides it.  On such integers
sigma(n) <= psi_t(n), psi_t(n)/n is maximized by primorials, and explicit
bounds on the primorial ratio push the Robin threshold past every t-free
integer above a computable crossover.  This package carries out each of those
steps in verifiable, desk-scale form.
"""

from __future__ import annotations

from .bounds import (
    CRITERION_FLOOR,
    EULER_GAMMA,
    EXP_GAMMA,
    CriterionReport,
    SuiteResult,
    ZetaValue,
    admissible_t,
    correction_factor,
    criterion,
    find_crossover_index,
    log_substitution_check,
    log_substitution_suite,
    mertens_bound_suite,
    mertens_partial_product,
    primorial_magnitude,
    psi_ratio_bound_suite,
    psi_ratio_upper_bound,
    ratio_curve,
    zeta,
    zeta_excess_scaled,
    zeta_tail_bound_suite,
    zeta_tail_product,
)
from .errors import CoverageError, ResourceError
from .multiplicative import (
    BridgeReport,
    Factorization,
    factorize,
    factorize_with_spf,
    is_t_free,
    psi_over_n,
    psi_t,
    psi_t_parts,
    sigma,
    smallest_prime_factors,
    verify_sigma_le_psi,
)
from .primes import PrimeTable, build_table, nth_prime, theta
from .primorial import (
    PrimorialPoint,
    champion_scan,
    cursor_advance,
    primorials_up_to,
    reduction_check,
    robin_ratio,
    start_point,
)
from .robin import (
    RobinVerdict,
    TfreeTheoremReport,
    robin_scan,
    robin_verdict,
    verify_tfree_robin,
    violators_to_csv,
    violators_to_json,
)

__version__ = "0.1.0"
