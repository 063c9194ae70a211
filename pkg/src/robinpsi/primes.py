"""Prime generation, nth-prime lookup, and Chebyshev theta prefix sums.

theta(x) = sum of log p over primes p <= x, so theta(p_n) = log(N_n) for the
n-th primorial N_n.  Prefix sums are accumulated with Neumaier compensated
summation: the absolute error stays within a few ulps instead of growing
linearly, which keeps log log N_n good to ~1e-12 near n = 10^4 where the
crossover margins downstream are only ~1e-6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_SEGMENT_ODDS = 1 << 17  # odd candidates per sieve segment


@dataclass(eq=False)
class PrimeTable:
    """Sieve output: every prime <= limit plus theta prefix sums.

    theta_prefix[k] = log(p_1) + ... + log(p_k); theta_prefix[0] = 0.
    Treat instances as immutable; rebuilding with a larger limit never
    changes earlier entries.
    """

    limit: int
    primes: list[int]
    theta_prefix: list[float]

    def __len__(self) -> int:
        return len(self.primes)


def _simple_sieve(limit: int) -> list[int]:
    """Plain sieve of Eratosthenes, used for the base primes up to sqrt(limit)."""
    if limit < 2:
        return []
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            step = i
            start = i * i
            flags[start :: step] = b"\x00" * ((limit - start) // step + 1)
    return [i for i in range(2, limit + 1) if flags[i]]


def _segmented_primes(limit: int) -> list[int]:
    """Segmented odd-only sieve; memory stays O(sqrt(limit) + segment)."""
    if limit < 2:
        return []
    base = _simple_sieve(math.isqrt(limit))
    odd_base = [p for p in base if p > 2]
    primes = [2]
    last = limit if limit % 2 else limit - 1
    lo = 3
    while lo <= last:
        count = min(_SEGMENT_ODDS, (last - lo) // 2 + 1)
        seg = bytearray(b"\x01") * count
        top = lo + 2 * count  # exclusive bound of this segment's odds
        for p in odd_base:
            if p * p >= top:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            i0 = (start - lo) // 2
            if i0 < count:
                seg[i0::p] = b"\x00" * ((count - i0 + p - 1) // p)
        primes.extend(lo + 2 * i for i in range(count) if seg[i])
        lo += 2 * count
    return primes


def build_table(limit: int) -> PrimeTable:
    """Sieve all primes <= limit and accumulate compensated theta prefix sums."""
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    primes = _segmented_primes(limit)
    prefix = [0.0]
    total = 0.0
    carry = 0.0
    for p in primes:
        x = math.log(p)
        s = total + x
        # Neumaier update: the branch keeps the low-order bits of the larger addend
        if abs(total) >= abs(x):
            carry += (total - s) + x
        else:
            carry += (x - s) + total
        total = s
        prefix.append(total + carry)
    return PrimeTable(limit=limit, primes=primes, theta_prefix=prefix)


def nth_prime(table: PrimeTable, n: int) -> int:
    """p_n with 1-based indexing, p_1 = 2."""
    if n < 1 or n > len(table.primes):
        raise IndexError(
            f"prime index {n} outside table of {len(table.primes)} primes; enlarge the sieve"
        )
    return table.primes[n - 1]


def theta(table: PrimeTable, n: int) -> float:
    """theta(p_n) = log(N_n); n = 0 gives 0.0 for the empty product."""
    if n < 0 or n > len(table.primes):
        raise IndexError(
            f"theta index {n} outside table of {len(table.primes)} primes; enlarge the sieve"
        )
    return table.theta_prefix[n]
