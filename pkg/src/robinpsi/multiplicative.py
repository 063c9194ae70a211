"""Exact arithmetic for sigma, the generalized Dedekind psi, and t-free tests.

psi_t(n) = n * prod_{p | n} (1 + 1/p + ... + 1/p^(t-1)).  On prime powers
psi_t(p^a) = p^a + ... + p + 1 + 1/p + ... + 1/p^(t-1-a), which is not an
integer for a < t - 1, so everything here stays in exact integer or Fraction
arithmetic.  Floats only appear downstream in the log-space modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import CoverageError
from .primes import PrimeTable


@dataclass(frozen=True)
class Factorization:
    """n together with its prime-power decomposition, primes increasing."""

    value: int
    factors: tuple[tuple[int, int], ...]


def factorize(n: int, table: PrimeTable) -> Factorization:
    """Trial division over the table; certifies a large cofactor prime only
    when it is below table.limit^2."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    m = n
    out: list[tuple[int, int]] = []
    for p in table.primes:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    if m > 1:
        if m > table.limit * table.limit:
            raise CoverageError(
                f"cofactor {m} exceeds {table.limit}^2 and cannot be certified prime; "
                f"rebuild the table with limit >= {math.isqrt(m) + 1}"
            )
        out.append((m, 1))
    return Factorization(value=n, factors=tuple(out))


def factorize_with_spf(m: int, spf: list[int]) -> Factorization:
    """Decompose m by walking a smallest-prime-factor array (m <= len(spf) - 1)."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    x = m
    out: list[tuple[int, int]] = []
    while x > 1:
        p = spf[x]
        e = 0
        while x > 1 and spf[x] == p:
            x //= p
            e += 1
        out.append((p, e))
    return Factorization(value=m, factors=tuple(out))


@lru_cache(maxsize=4)
def smallest_prime_factors(limit: int) -> np.ndarray:
    """spf[m] = smallest prime factor of m for 2 <= m <= limit (spf[1] = 1).

    Cached; callers must not mutate the returned array.
    """
    if limit < 1:
        raise ValueError(f"need limit >= 1, got {limit}")
    spf = np.zeros(limit + 1, dtype=np.int32)
    spf[1] = 1
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == 0:
            block = spf[i * i :: i]
            block[block == 0] = i
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest  # untouched entries are primes (index 0 stays 0)
    return spf


def sigma(f: Factorization) -> int:
    """Sum of divisors, exact: prod (p^(e+1) - 1) / (p - 1)."""
    out = 1
    for p, e in f.factors:
        out *= (p ** (e + 1) - 1) // (p - 1)
    return out


def psi_t_parts(f: Factorization, t: int) -> tuple[int, int]:
    """Unreduced (numerator, denominator) of psi_t(n) as exact integers.

    numerator = prod p^e (p^t - 1), denominator = prod p^(t-1) (p - 1).
    """
    if t < 2:
        raise ValueError(f"psi_t needs t >= 2, got {t}")
    num = 1
    den = 1
    for p, e in f.factors:
        num *= p**e * (p**t - 1)
        den *= p ** (t - 1) * (p - 1)
    return num, den


def psi_t(f: Factorization, t: int) -> Fraction:
    """psi_t(n) as an exact rational."""
    return Fraction(*psi_t_parts(f, t))


def psi_over_n(f: Factorization, t: int) -> Fraction:
    """psi_t(n) / n; depends only on the radical of n."""
    if t < 2:
        raise ValueError(f"psi_t needs t >= 2, got {t}")
    num = 1
    den = 1
    for p, _ in f.factors:
        num *= p**t - 1
        den *= p ** (t - 1) * (p - 1)
    return Fraction(num, den)


def is_t_free(f: Factorization, t: int) -> bool:
    """True iff no p^t divides n, i.e. every exponent is <= t - 1."""
    if t < 2:
        raise ValueError(f"t-free test needs t >= 2, got {t}")
    return all(e <= t - 1 for _, e in f.factors)


@dataclass(frozen=True)
class BridgeReport:
    """Outcome of an exact sigma(n) <= psi_t(n) sweep over t-free n <= limit."""

    t: int
    limit: int
    checked: int
    equalities: int
    violation: int | None
    equality_mismatch: int | None

    @property
    def passed(self) -> bool:
        return self.violation is None and self.equality_mismatch is None


def verify_sigma_le_psi(limit: int, t: int) -> BridgeReport:
    """Exact-integer sweep of sigma(n) <= psi_t(n) over every t-free n <= limit.

    Cross-multiplied comparison, no rationals reduced, no floats.  Also
    confirms equality occurs exactly when every exponent equals t - 1.
    """
    if t < 2:
        raise ValueError(f"need t >= 2, got {t}")
    if limit < 1:
        raise ValueError(f"need limit >= 1, got {limit}")
    spf = smallest_prime_factors(limit).tolist()
    local: dict[int, tuple[int, int]] = {}
    top = t - 1
    checked = 0
    equalities = 0
    violation: int | None = None
    mismatch: int | None = None
    for n in range(1, limit + 1):
        m = n
        num = 1
        den = 1
        sig = 1
        all_top = True
        tfree = True
        while m > 1:
            p = spf[m]
            e = 1
            m //= p
            while m > 1 and spf[m] == p:
                e += 1
                m //= p
            if e > top:
                tfree = False
                break
            if e != top:
                all_top = False
            loc = local.get(p)
            if loc is None:
                loc = (p**t - 1, p ** (t - 1) * (p - 1))
                local[p] = loc
            pe1 = p ** (e + 1)
            sig *= (pe1 - 1) // (p - 1)
            num *= (pe1 // p) * loc[0]
            den *= loc[1]
        if not tfree:
            continue
        checked += 1
        lhs = sig * den
        if lhs > num:
            violation = n
            break
        if (lhs == num) != all_top:
            mismatch = n
            break
        if lhs == num:
            equalities += 1
    return BridgeReport(
        t=t,
        limit=limit,
        checked=checked,
        equalities=equalities,
        violation=violation,
        equality_mismatch=mismatch,
    )
