"""Primorial cursor in log space, exact champion scans, and the reduction step.

N_n = p_1 p_2 ... p_n.  The cursor carries log N_n and log(psi_t(N_n)/N_n)
for a fixed set of exponents t, each with its own Neumaier compensation term
so a 10^4-step march keeps ~1e-12 absolute accuracy.  Champion scans stay in
exact integer arithmetic throughout.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field

from .errors import CoverageError
from .multiplicative import smallest_prime_factors
from .primes import PrimeTable


@dataclass(frozen=True)
class PrimorialPoint:
    """State at primorial index n: p_n, log N_n, per-t log psi ratios.

    p is 1 at n = 0 (empty product).  The *_sum / *_carry pairs are the
    compensated-summation state; read log_N and log_psi_ratio instead.
    """

    n: int
    p: int
    log_N_sum: float = field(repr=False, default=0.0)
    log_N_carry: float = field(repr=False, default=0.0)
    ratio_sums: dict[int, float] = field(repr=False, default_factory=dict)
    ratio_carries: dict[int, float] = field(repr=False, default_factory=dict)

    @property
    def log_N(self) -> float:
        return self.log_N_sum + self.log_N_carry

    @property
    def log_psi_ratio(self) -> dict[int, float]:
        return {t: s + self.ratio_carries[t] for t, s in self.ratio_sums.items()}


def start_point(ts: tuple[int, ...] | set[int] = ()) -> PrimorialPoint:
    """Cursor at n = 0 tracking log(psi_t/N) for each t in ts."""
    for t in ts:
        if t < 2:
            raise ValueError(f"tracked exponents must be >= 2, got {t}")
    zeros = {t: 0.0 for t in ts}
    return PrimorialPoint(n=0, p=1, ratio_sums=dict(zeros), ratio_carries=dict(zeros))


def _neumaier(total: float, carry: float, x: float) -> tuple[float, float]:
    s = total + x
    if abs(total) >= abs(x):
        carry += (total - s) + x
    else:
        carry += (x - s) + total
    return s, carry


def cursor_advance(
    point: PrimorialPoint, table: PrimeTable, ts: tuple[int, ...] | set[int] = ()
) -> PrimorialPoint:
    """Advance to index n + 1, extending every tracked accumulator.

    New exponents in ts can only be added at n = 0; afterwards the tracked
    set is fixed (a late addition would silently miss earlier factors).
    """
    tracked = set(point.ratio_sums)
    extra = set(ts) - tracked
    if extra:
        if point.n > 0:
            raise ValueError(f"cannot start tracking {sorted(extra)} at index {point.n}")
        for t in extra:
            if t < 2:
                raise ValueError(f"tracked exponents must be >= 2, got {t}")
        tracked |= extra
    k = point.n + 1
    if k > len(table.primes):
        raise CoverageError(
            f"table holds {len(table.primes)} primes, cannot advance to index {k}; enlarge the sieve"
        )
    p = table.primes[k - 1]
    log_n_sum, log_n_carry = _neumaier(point.log_N_sum, point.log_N_carry, math.log(p))
    sums: dict[int, float] = {}
    carries: dict[int, float] = {}
    for t in tracked:
        s0 = point.ratio_sums.get(t, 0.0)
        c0 = point.ratio_carries.get(t, 0.0)
        # log(1 + 1/p + ... + 1/p^(t-1)) = log1p((p^(t-1) - 1) / (p^(t-1) (p - 1)))
        q = p ** (t - 1)
        x = math.log1p((q - 1) / (q * (p - 1)))
        sums[t], carries[t] = _neumaier(s0, c0, x)
    return PrimorialPoint(
        n=k,
        p=p,
        log_N_sum=log_n_sum,
        log_N_carry=log_n_carry,
        ratio_sums=sums,
        ratio_carries=carries,
    )


def robin_ratio(point: PrimorialPoint, t: int) -> float:
    """R_t(N_n) = psi_t(N_n) / (N_n log log N_n); needs n >= 2 so the log is positive."""
    if point.n < 2:
        raise ValueError(f"normalized ratio needs n >= 2, got n = {point.n}")
    if t not in point.ratio_sums:
        raise KeyError(f"exponent {t} is not tracked by this cursor")
    ratio = point.ratio_sums[t] + point.ratio_carries[t]
    return math.exp(ratio) / math.log(point.log_N)


def champion_scan(limit: int, t: int, mode: str = "strict") -> list[int]:
    """Left-to-right maxima of m -> psi_t(m)/m on [1, limit], exact rationals.

    strict: a champion must exceed every earlier value; weak: ties count too.
    Comparisons cross-multiply unreduced integer pairs, so no precision is
    lost and no Fraction normalization cost is paid.
    """
    if limit < 1:
        raise ValueError(f"scan needs limit >= 1, got {limit}")
    if t < 2:
        raise ValueError(f"scan needs t >= 2, got {t}")
    if mode not in ("strict", "weak"):
        raise ValueError(f"mode must be 'strict' or 'weak', got {mode!r}")
    strict = mode == "strict"
    out = [1]
    if limit == 1:
        return out
    spf = smallest_prime_factors(limit).tolist()
    local: dict[int, tuple[int, int]] = {}
    best_num = 1
    best_den = 1
    for m in range(2, limit + 1):
        x = m
        num = 1
        den = 1
        while x > 1:
            p = spf[x]
            loc = local.get(p)
            if loc is None:
                loc = (p**t - 1, p ** (t - 1) * (p - 1))
                local[p] = loc
            num *= loc[0]
            den *= loc[1]
            x //= p
            while x > 1 and spf[x] == p:
                x //= p
        d = num * best_den - best_num * den
        if d > 0:
            out.append(m)
            best_num = num
            best_den = den
        elif d == 0 and not strict:
            out.append(m)
    return out


def _next_prime(p: int) -> int:
    q = p + 1
    while True:
        for d in range(2, math.isqrt(q) + 1):
            if q % d == 0:
                break
        else:
            return q
        q += 1


def primorials_up_to(limit: int) -> list[int]:
    """[1, 2, 6, 30, ...] up to limit."""
    if limit < 1:
        raise ValueError(f"need limit >= 1, got {limit}")
    out = [1]
    val = 1
    p = 2
    while val * p <= limit:
        val *= p
        out.append(val)
        p = _next_prime(p)
    return out


def reduction_check(limit: int, t: int) -> bool:
    """True iff R_t(m) < R_t(N_k) for every non-primorial m in [6, limit],
    where N_k is the largest primorial <= m.

    Ratios psi_t(m)/m are formed as exact integer pairs and rounded once;
    only log log enters in floating point.
    """
    if limit < 6:
        raise ValueError(f"reduction check needs limit >= 6, got {limit}")
    if t < 2:
        raise ValueError(f"need t >= 2, got {t}")
    spf = smallest_prime_factors(limit).tolist()
    local: dict[int, tuple[int, int]] = {}

    def ratio_parts(m: int) -> tuple[int, int]:
        x = m
        num = 1
        den = 1
        while x > 1:
            p = spf[x]
            loc = local.get(p)
            if loc is None:
                loc = (p**t - 1, p ** (t - 1) * (p - 1))
                local[p] = loc
            num *= loc[0]
            den *= loc[1]
            x //= p
            while x > 1 and spf[x] == p:
                x //= p
        return num, den

    prims = primorials_up_to(limit)
    prim_r = []
    for v in prims:
        if v < 6:
            prim_r.append(math.nan)  # never compared: m >= 6 lands at index >= 2
            continue
        num, den = ratio_parts(v)
        prim_r.append((num / den) / math.log(math.log(v)))
    for m in range(6, limit + 1):
        i = bisect_right(prims, m) - 1
        if prims[i] == m:
            continue
        num, den = ratio_parts(m)
        r_m = (num / den) / math.log(math.log(m))
        if r_m >= prim_r[i]:
            return False
    return True
