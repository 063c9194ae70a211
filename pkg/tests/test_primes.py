"""Sieve and log-prime accumulator checks against independent oracles."""

import math
import random

import mpmath
import pytest

from robinpsi import CoverageError, build_table, nth_prime, theta
from robinpsi.primes import PrimeTable

FIRST_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]

# product of the first k primes, exact
PRIMORIALS = [2, 6, 30, 210, 2310, 30030, 510510, 9699690, 223092870,
              6469693230, 200560490130, 7420738134810, 304250263527210,
              13082761331670030, 614889782588491410]


def _trial_division_primes(limit):
    out = []
    for n in range(2, limit + 1):
        d = 2
        while d * d <= n:
            if n % d == 0:
                break
            d += 1
        else:
            out.append(n)
    return out


def test_small_table_matches_trial_division():
    table = build_table(2000)
    assert table.primes == _trial_division_primes(2000)


def test_prime_count_at_20011():
    # the 2263rd prime is 20011, so the count up to it is exactly 2263
    table = build_table(20011)
    assert len(table.primes) == 2263
    assert table.primes[-1] == 20011


def test_limit_below_two_rejected():
    with pytest.raises(ValueError):
        build_table(1)


def test_nth_prime_is_one_indexed(small_table):
    assert nth_prime(small_table, 1) == 2
    assert nth_prime(small_table, 15) == 47
    assert nth_prime(small_table, 2263) == 20011
    assert nth_prime(small_table, 10596) == 111751


def test_nth_prime_out_of_range(small_table):
    with pytest.raises(IndexError):
        nth_prime(small_table, len(small_table.primes) + 1)
    with pytest.raises(IndexError):
        nth_prime(small_table, 0)


def test_theta_zero_is_zero(small_table):
    assert theta(small_table, 0) == 0.0


def test_theta_equals_log_primorial(small_table):
    # the prefix sum of log p over the first k primes is exactly log of
    # the k-th primorial; exact integers give the reference values
    for k, value in enumerate(PRIMORIALS, start=1):
        assert theta(small_table, k) == pytest.approx(math.log(value), rel=1e-12)


def test_theta_increments_are_log_p(small_table):
    rng = random.Random(4021)
    for _ in range(200):
        k = rng.randrange(1, len(small_table.primes))
        step = theta(small_table, k + 1) - theta(small_table, k)
        p = small_table.primes[k]
        assert step == pytest.approx(math.log(p), rel=1e-9)


def test_theta_against_high_precision(small_table):
    # compensated summation should stay within a few ulp of a 50-digit sum
    with mpmath.workdps(50):
        for k in (100, 2263, 10000):
            exact = mpmath.fsum(mpmath.log(p) for p in small_table.primes[:k])
            err = abs(theta(small_table, k) - float(exact))
            assert err < 1e-10 * float(exact)


def test_theta_tracks_prime_size(small_table):
    # Chebyshev's function stays close to its argument at this scale
    for k in (1000, 10000):
        p = nth_prime(small_table, k)
        assert abs(theta(small_table, k) / p - 1.0) < 0.02


def test_prefix_stable_across_limits():
    a = build_table(10_000)
    b = build_table(40_000)
    assert b.primes[: len(a.primes)] == a.primes
    for k in (10, 100, len(a.primes)):
        assert theta(a, k) == theta(b, k)


def test_table_reports_length(small_table):
    assert len(small_table) == len(small_table.primes)
    assert isinstance(small_table, PrimeTable)


def test_segmented_agrees_with_simple():
    # the segment size is 1 << 17 odds; straddle several boundaries
    table = build_table(600_000)
    reference = build_table(2000)
    assert table.primes[: len(reference.primes)] == reference.primes
    assert len(table.primes) == 49098  # count of primes below 600000
