"""Explicit zeta values, partial Euler products, the crossover criterion,
and the bound suites behind the verification CLI.

The constant 1.1253 couples two explicit bounds.  The partial Euler product
satisfies prod_{p <= x} (1 - 1/p)^-1 <= e^gamma (log x + 1/log x) for x >= 2,
and for n >= 2263 (p_n >= 20000) the log-shift bound
log p_n < log log N_n + 0.1253 / log p_n lets log p_n be replaced by
log log N_n, turning the 1/log p_n slack into (1 + 0.1253)/log p_n.  The
resulting crossover criterion reads exp(2/p_n) * f(n) < zeta(t) with
f(n) = 1 + 1.1253 / (log p_n * log log N_n).

Margins of strict float comparisons are always reported; any |margin| below
1e-9 is flagged precision-critical and rechecked at 60 significant digits
before it is trusted.
"""

from __future__ import annotations

import math
import random
import sys
import weakref
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from . import primorial
from .errors import CoverageError
from .primes import PrimeTable, nth_prime, theta

# Compiled-in constants, 18 significant digits.
EULER_GAMMA = 0.577215664901532861
EXP_GAMMA = 1.78107241799019799

CRITERION_FLOOR = 2263  # least n with p_n >= 20000 (p_2263 = 20011)
LOG_SHIFT = 0.1253
MERTENS_SHIFT = 1.1253  # 1 + LOG_SHIFT, see module docstring
PRECISION_BAND = 1e-9

_ZETA_TAIL_TARGET = 1e-15
_ZETA_CHUNK = 1 << 22


@dataclass(frozen=True)
class ZetaValue:
    """zeta(t) with a rigorous absolute error bound on the value field.

    excess holds zeta(t) - 1 summed directly, so it keeps full relative
    precision even when value rounds to 1.0 (t >= 53 in binary64); its own
    error is strictly smaller than abs_error_bound, which also covers the
    rounding of value = 1.0 + excess.
    """

    t: int
    value: float
    abs_error_bound: float
    excess: float


@lru_cache(maxsize=None)
def zeta(t: int) -> ZetaValue:
    """zeta(t) by direct series with an integral-bracketed tail.

    sum_{n > M} n^-t lies between the integrals of u^-t over [M+1, inf) and
    [M, inf); the bracket midpoint is added to the partial sum and half the
    bracket width, below 1e-15 by choice of M, goes into the error bound.
    """
    if t < 2:
        raise ValueError(f"zeta series cutoff needs integer t >= 2, got {t}")
    m = max(16, math.ceil((0.5 / _ZETA_TAIL_TARGET) ** (1.0 / t)))
    parts = []
    lo = 2
    while lo <= m:
        hi = min(lo + _ZETA_CHUNK, m + 1)
        block = np.arange(lo, hi, dtype=np.float64)
        parts.append(float(np.power(block, -float(t)).sum()))
        lo = hi
    partial = math.fsum(parts)
    tail_hi = float(m) ** (1 - t) / (t - 1)
    tail_lo = float(m + 1) ** (1 - t) / (t - 1)
    excess = partial + 0.5 * (tail_hi + tail_lo)
    # pairwise chunk sums err within ~log2(chunk) units of roundoff of the sum;
    # the 1.0 + excess rounding adds up to half an ulp of the value itself
    err = (
        0.5 * (tail_hi - tail_lo)
        + 16.0 * sys.float_info.epsilon * excess
        + 0.5 * sys.float_info.epsilon * (1.0 + excess)
    )
    return ZetaValue(t=t, value=1.0 + excess, abs_error_bound=err, excess=excess)


def correction_factor(n: int, table: PrimeTable) -> float:
    """f(n) = 1 + 1.1253 / (log p_n * log log N_n); decreases toward 1."""
    if n < 2:
        raise ValueError(f"need n >= 2 so that log log N_n > 0, got {n}")
    lp = math.log(nth_prime(table, n))
    lln = math.log(theta(table, n))
    return 1.0 + MERTENS_SHIFT / (lp * lln)


@dataclass(frozen=True)
class CriterionReport:
    t: int
    n: int
    p_n: int
    lhs: float
    rhs: float
    margin: float
    satisfied: bool
    precision_critical: bool


def criterion(t: int, n: int, table: PrimeTable) -> CriterionReport:
    """Crossover test exp(2/p_n) * f(n) < zeta(t), reported with its margin.

    Both sides are reduced by 1 before subtraction (expm1 on the left,
    the excess field on the right), so the margin keeps full significance
    even when the two sides agree to many digits.
    """
    z = zeta(t)
    if n < 2:
        raise ValueError(f"criterion needs n >= 2, got {n}")
    p = nth_prime(table, n)
    lp = math.log(p)
    lln = math.log(theta(table, n))
    c = MERTENS_SHIFT / (lp * lln)
    lhs_excess = math.expm1(2.0 / p) * (1.0 + c) + c
    margin = z.excess - lhs_excess
    return CriterionReport(
        t=t,
        n=n,
        p_n=p,
        lhs=1.0 + lhs_excess,
        rhs=z.value,
        margin=margin,
        satisfied=margin > 0.0,
        precision_critical=abs(margin) < PRECISION_BAND,
    )


def find_crossover_index(
    t: int, table: PrimeTable, floored: bool = False, confirm: int = 100
) -> int:
    """Least index n where the criterion holds (search floor 2263 if floored).

    Confirms the criterion stays satisfied for the next `confirm` indices;
    running off the table either way raises CoverageError.
    """
    zeta(t)  # validate t before any scanning
    start = CRITERION_FLOOR if floored else 2
    size = len(table.primes)
    hit = 0
    for n in range(start, size + 1):
        if criterion(t, n, table).satisfied:
            hit = n
            break
    if not hit:
        raise CoverageError(
            f"criterion for t={t} unsatisfied through index {size}; enlarge the sieve"
        )
    if hit + confirm > size:
        raise CoverageError(
            f"cannot confirm stability through index {hit + confirm} "
            f"(table ends at {size}); enlarge the sieve"
        )
    for k in range(hit + 1, hit + confirm + 1):
        if not criterion(t, k, table).satisfied:
            raise RuntimeError(
                f"criterion for t={t} holds at {hit} but fails again at {k}"
            )
    return hit


def primorial_magnitude(n: int, table: PrimeTable) -> tuple[float, int]:
    """N_n as (mantissa, exponent10) with mantissa in [1, 10), via theta."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    log10 = theta(table, n) / math.log(10.0)
    exp10 = math.floor(log10)
    mant = 10.0 ** (log10 - exp10)
    if mant >= 10.0:  # guard the floor/pow rounding edge
        mant /= 10.0
        exp10 += 1
    return mant, exp10


_mertens_prefix_cache: "weakref.WeakKeyDictionary[PrimeTable, list[float]]" = (
    weakref.WeakKeyDictionary()
)


def _mertens_prefix(table: PrimeTable) -> list[float]:
    pre = _mertens_prefix_cache.get(table)
    if pre is None:
        pre = [0.0]
        total = 0.0
        carry = 0.0
        for p in table.primes:
            x = -math.log1p(-1.0 / p)
            s = total + x
            if abs(total) >= abs(x):
                carry += (total - s) + x
            else:
                carry += (x - s) + total
            total = s
            pre.append(total + carry)
        _mertens_prefix_cache[table] = pre
    return pre


def mertens_partial_product(x: int, table: PrimeTable) -> float:
    """prod_{p <= x} (1 - 1/p)^-1, accumulated in log space."""
    if x < 2:
        raise ValueError(f"need x >= 2, got {x}")
    if x > table.limit:
        raise CoverageError(f"x = {x} beyond sieve limit {table.limit}; enlarge the sieve")
    k = bisect_right(table.primes, x)
    return math.exp(_mertens_prefix(table)[k])


def zeta_tail_product(t: int, n: int, table: PrimeTable) -> float:
    """prod_{p > p_n} (1 - p^-t)^-1 = zeta(t) * prod_{p <= p_n} (1 - p^-t)."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    z = zeta(t)
    nth_prime(table, n)  # range check
    acc = 0.0
    for p in table.primes[:n]:
        acc += math.log1p(-float(p) ** (-t))
    return z.value * math.exp(acc)


def log_substitution_check(n: int, table: PrimeTable) -> bool:
    """log p_n < log log N_n + 0.1253 / log p_n; hypothesis needs n >= 2263."""
    if n < CRITERION_FLOOR:
        raise ValueError(f"inequality is stated for n >= {CRITERION_FLOOR}, got {n}")
    lp = math.log(nth_prime(table, n))
    return lp < math.log(theta(table, n)) + LOG_SHIFT / lp


def psi_ratio_upper_bound(t: int, n: int, table: PrimeTable) -> float:
    """Certified bound psi_t(N_n)/N_n <= exp(gamma + 2/p_n) / zeta(t)
    * (log log N_n + 1.1253 / log p_n), valid for n >= 2263."""
    z = zeta(t)
    if n < CRITERION_FLOOR:
        raise ValueError(f"bound is stated for n >= {CRITERION_FLOOR}, got {n}")
    p = nth_prime(table, n)
    lp = math.log(p)
    lln = math.log(theta(table, n))
    return math.exp(EULER_GAMMA + 2.0 / p) / z.value * (lln + MERTENS_SHIFT / lp)


def admissible_t(n: int, table: PrimeTable) -> int | None:
    """Largest t >= 2 whose criterion holds at index n; None if even t = 2 fails.

    Satisfaction is downward closed in t because zeta decreases, so an
    ascending scan stopping at the first failure is exact.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    best: int | None = None
    t = 2
    while criterion(t, n, table).satisfied:
        best = t
        t += 1
    return best


def zeta_excess_scaled(t_max: int) -> list[tuple[int, float]]:
    """(t, (zeta(t) - 1) * 2^t) for t in [4, t_max]; decreases toward 1."""
    if t_max < 4:
        raise ValueError(f"need t_max >= 4, got {t_max}")
    return [(t, zeta(t).excess * 2.0**t) for t in range(4, t_max + 1)]


def ratio_curve(
    table: PrimeTable, t: int, n_max: int
) -> list[tuple[int, int, float, float, float]]:
    """Rows (n, p_n, R_t(N_n), e^gamma/zeta(t), deviation) for 2 <= n <= n_max.

    deviation = R_t(N_n) * zeta(t) / e^gamma - 1, the signed relative gap to
    the limit value.
    """
    if n_max < 2:
        raise ValueError(f"need n_max >= 2, got {n_max}")
    if n_max > len(table.primes):
        raise CoverageError(
            f"table holds {len(table.primes)} primes, need {n_max}; enlarge the sieve"
        )
    limit_value = EXP_GAMMA / zeta(t).value
    point = primorial.start_point((t,))
    rows = []
    for n in range(1, n_max + 1):
        point = primorial.cursor_advance(point, table)
        if n >= 2:
            r = primorial.robin_ratio(point, t)
            rows.append((n, point.p, r, limit_value, r / limit_value - 1.0))
    return rows


# ---------------------------------------------------------------------------
# Bound suites: exhaustive margin sweeps used by the CLI and the test gate.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteResult:
    name: str
    points: int
    worst_margin: float
    worst_at: str
    rechecked: int
    passed: bool
    skipped: bool = False
    note: str = ""


_SAMPLE_SEED = 20011


def mertens_bound_suite(table: PrimeTable, x_cap: int = 10**6, samples: int = 500) -> SuiteResult:
    """Margin sweep of e^gamma (log x + 1/log x) - prod_{p<=x} (1-1/p)^-1 > 0
    over a geometric grid plus seeded random x values up to x_cap."""
    cap = min(x_cap, table.limit)
    xs = set()
    x = 2
    while x <= cap:
        xs.add(x)
        x *= 2
    rng = random.Random(_SAMPLE_SEED)
    xs.update(rng.randint(2, cap) for _ in range(samples))
    prefix = _mertens_prefix(table)
    worst = math.inf
    worst_x = 0
    rechecked = 0
    for x in sorted(xs):
        lx = math.log(x)
        margin = EXP_GAMMA * (lx + 1.0 / lx) - math.exp(prefix[bisect_right(table.primes, x)])
        if abs(margin) < PRECISION_BAND:
            rechecked += 1
            margin = _mertens_margin_mp(x, table)
        if margin < worst:
            worst = margin
            worst_x = x
    return SuiteResult(
        name="mertens_product",
        points=len(xs),
        worst_margin=worst,
        worst_at=f"x={worst_x}",
        rechecked=rechecked,
        passed=worst > 0.0,
    )


def _mertens_margin_mp(x: int, table: PrimeTable) -> float:
    with mpmath.workdps(60):
        prod = mpmath.mpf(1)
        for p in table.primes:
            if p > x:
                break
            prod /= 1 - mpmath.mpf(1) / p
        lx = mpmath.log(x)
        return float(mpmath.exp(mpmath.euler) * (lx + 1 / lx) - prod)


def zeta_tail_bound_suite(
    table: PrimeTable, ts: range | tuple[int, ...] = range(2, 11), n_max: int = 10**4
) -> SuiteResult:
    """Margin sweep of exp(2/p_n) - prod_{p > p_n} (1 - p^-t)^-1 > 0
    for each t and every 2 <= n <= n_max."""
    if n_max > len(table.primes):
        raise CoverageError(
            f"table holds {len(table.primes)} primes, need {n_max}; enlarge the sieve"
        )
    worst = math.inf
    worst_at = ""
    points = 0
    rechecked = 0
    for t in ts:
        zv = zeta(t).value
        acc = 0.0
        for n, p in enumerate(table.primes[:n_max], start=1):
            acc += math.log1p(-float(p) ** (-t))
            if n < 2:
                continue
            points += 1
            margin = math.exp(2.0 / p) - zv * math.exp(acc)
            if abs(margin) < PRECISION_BAND:
                rechecked += 1
                margin = _zeta_tail_margin_mp(t, n, table)
            if margin < worst:
                worst = margin
                worst_at = f"t={t},n={n}"
    return SuiteResult(
        name="zeta_tail_product",
        points=points,
        worst_margin=worst,
        worst_at=worst_at,
        rechecked=rechecked,
        passed=worst > 0.0,
    )


def _zeta_tail_margin_mp(t: int, n: int, table: PrimeTable) -> float:
    with mpmath.workdps(60):
        acc = mpmath.mpf(0)
        for p in table.primes[:n]:
            acc += mpmath.log(1 - mpmath.mpf(p) ** (-t))
        p_n = table.primes[n - 1]
        return float(mpmath.exp(mpmath.mpf(2) / p_n) - mpmath.zeta(t) * mpmath.exp(acc))


def log_substitution_suite(
    table: PrimeTable, n_min: int = CRITERION_FLOOR, n_max: int = 10**5
) -> SuiteResult:
    """Margin sweep of log log N_n + 0.1253/log p_n - log p_n > 0 on [n_min, n_max]."""
    if n_min < CRITERION_FLOOR:
        raise ValueError(f"hypothesis needs n >= {CRITERION_FLOOR}, got {n_min}")
    if n_max > len(table.primes):
        raise CoverageError(
            f"table holds {len(table.primes)} primes, need {n_max}; enlarge the sieve"
        )
    if n_max < n_min:
        return SuiteResult(
            name="log_substitution",
            points=0,
            worst_margin=math.inf,
            worst_at="",
            rechecked=0,
            passed=True,
            skipped=True,
            note=f"range empty below n = {n_min}",
        )
    worst = math.inf
    worst_at = ""
    rechecked = 0
    for n in range(n_min, n_max + 1):
        lp = math.log(table.primes[n - 1])
        margin = math.log(table.theta_prefix[n]) + LOG_SHIFT / lp - lp
        if abs(margin) < PRECISION_BAND:
            rechecked += 1
            margin = _log_substitution_margin_mp(n, table)
        if margin < worst:
            worst = margin
            worst_at = f"n={n}"
    return SuiteResult(
        name="log_substitution",
        points=n_max - n_min + 1,
        worst_margin=worst,
        worst_at=worst_at,
        rechecked=rechecked,
        passed=worst > 0.0,
    )


def _log_substitution_margin_mp(n: int, table: PrimeTable) -> float:
    with mpmath.workdps(60):
        th = mpmath.fsum(mpmath.log(p) for p in table.primes[:n])
        lp = mpmath.log(table.primes[n - 1])
        return float(mpmath.log(th) + mpmath.mpf("0.1253") / lp - lp)


def psi_ratio_bound_suite(
    table: PrimeTable,
    ts: tuple[int, ...] = (3, 4, 5, 6, 7),
    n_min: int = CRITERION_FLOOR,
    n_max: int = 10**5,
) -> SuiteResult:
    """Margin sweep of the certified psi-ratio bound minus the exact ratio
    exp(log psi_t(N_n)/N_n), per t, over [n_min, n_max]."""
    if n_min < CRITERION_FLOOR:
        raise ValueError(f"bound needs n >= {CRITERION_FLOOR}, got {n_min}")
    if n_max > len(table.primes):
        raise CoverageError(
            f"table holds {len(table.primes)} primes, need {n_max}; enlarge the sieve"
        )
    worst = math.inf
    worst_at = ""
    points = 0
    rechecked = 0
    point = primorial.start_point(tuple(ts))
    for n in range(1, n_max + 1):
        point = primorial.cursor_advance(point, table)
        if n < n_min:
            continue
        p = point.p
        lp = math.log(p)
        lln = math.log(point.log_N)
        scale = math.exp(EULER_GAMMA + 2.0 / p) * (lln + MERTENS_SHIFT / lp)
        for t in ts:
            points += 1
            actual = math.exp(point.ratio_sums[t] + point.ratio_carries[t])
            margin = scale / zeta(t).value - actual
            if abs(margin) < PRECISION_BAND:
                rechecked += 1
                margin = _psi_ratio_margin_mp(t, n, table)
            if margin < worst:
                worst = margin
                worst_at = f"t={t},n={n}"
    return SuiteResult(
        name="psi_ratio_bound",
        points=points,
        worst_margin=worst,
        worst_at=worst_at,
        rechecked=rechecked,
        passed=worst > 0.0,
    )


def _psi_ratio_margin_mp(t: int, n: int, table: PrimeTable) -> float:
    with mpmath.workdps(60):
        ratio = mpmath.mpf(1)
        th = mpmath.mpf(0)
        for p in table.primes[:n]:
            q = mpmath.mpf(p) ** (t - 1)
            ratio *= 1 + (q - 1) / (q * (p - 1))
            th += mpmath.log(p)
        p_n = table.primes[n - 1]
        lp = mpmath.log(p_n)
        bound = (
            mpmath.exp(mpmath.euler + mpmath.mpf(2) / p_n)
            / mpmath.zeta(t)
            * (mpmath.log(th) + mpmath.mpf("1.1253") / lp)
        )
        return float(bound - ratio)
