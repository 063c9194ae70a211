"""Command-line front end emitting deterministic CSV or JSON tables.

Exit codes: 0 success, 1 mathematical falsification, 2 sieve or budget
exhausted, 64 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field

from . import bounds, primorial, robin
from .errors import CoverageError, ResourceError
from .multiplicative import factorize_with_spf, psi_over_n, smallest_prime_factors
from .primes import PrimeTable, build_table, nth_prime
from .tabular import rows_to_csv, rows_to_json

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_RESOURCE = 2
EXIT_USAGE = 64

_TABLE1_START_LIMIT = 1 << 17
_TABLE1_DEFAULT_CAP = 1 << 25


@dataclass
class RunConfig:
    """Parsed invocation; one instance per CLI run."""

    command: str
    t_min: int = 2
    t_max: int = 2
    limit: int = 1
    output_format: str = "csv"
    output_path: str | None = None
    sieve_limit: int | None = None
    floor_mode: bool = False
    scan_start: int = 3
    scan_stop: int = 5041
    n_max: int = 2
    weak: bool = False
    n_values: list[int] = field(default_factory=list)

    def validate(self) -> None:
        if not 2 <= self.t_min <= self.t_max <= 64:
            raise ValueError(f"need 2 <= t_min <= t_max <= 64, got [{self.t_min}, {self.t_max}]")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")


class _Parser(argparse.ArgumentParser):
    """argparse front end that reports usage problems with exit code 64."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _t_value(text: str) -> int:
    v = int(text)
    if not 2 <= v <= 64:
        raise argparse.ArgumentTypeError(f"t must be in [2, 64], got {v}")
    return v


def _scan_point(text: str) -> int:
    v = int(text)
    if v < 3:
        raise argparse.ArgumentTypeError(f"scan domain starts at 3, got {v}")
    return v


def _index_value(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"primorial index must be >= 2, got {v}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"need a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="robinpsi", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", metavar="PATH", default=None)

    p = sub.add_parser("table1", help="crossover indices and primorial magnitudes per t")
    p.add_argument("--t-min", type=_t_value, default=3)
    p.add_argument("--t-max", type=_t_value, default=7)
    p.add_argument("--floor-n0", action="store_true", help="search only from index 2263 up")
    p.add_argument("--sieve-limit", type=_positive, default=None, help="starting sieve size")
    p.add_argument(
        "--sieve-cap", type=_positive, default=_TABLE1_DEFAULT_CAP,
        help="auto-grow limit for the sieve",
    )
    common(p)

    p = sub.add_parser("champions", help="left-to-right maxima of psi_t(m)/m")
    p.add_argument("--limit", type=_positive, required=True)
    p.add_argument("--t", type=_t_value, required=True)
    p.add_argument("--weak", action="store_true", help="count ties as champions")
    common(p)

    p = sub.add_parser("robin-scan", help="scan a range for Robin violators")
    p.add_argument("--from", dest="scan_start", type=_scan_point, required=True)
    p.add_argument("--to", dest="scan_stop", type=_scan_point, required=True)
    common(p)

    p = sub.add_parser("ratio", help="normalized primorial ratio curve for one t")
    p.add_argument("--t", type=_t_value, required=True)
    p.add_argument("--n-max", type=_index_value, required=True)
    common(p)

    p = sub.add_parser("verify-bounds", help="margin sweeps of every explicit bound")
    p.add_argument("--n-max", type=_index_value, default=10**5)
    p.add_argument("--t-max", type=_t_value, default=10)
    common(p)

    p = sub.add_parser("admissible-t", help="largest t whose criterion holds at given indices")
    p.add_argument("--n", dest="n_values", type=_index_value, nargs="+", required=True)
    common(p)

    return parser


def _prime_reach(n: int) -> int:
    """Sieve bound guaranteed to cover p_n: n (log n + log log n) for n >= 6."""
    if n < 6:
        return 16
    x = float(n)
    return int(x * (math.log(x) + math.log(math.log(x)))) + 16


def cmd_table1(cfg: RunConfig) -> tuple[list[dict], tuple[str, ...], int]:
    limit = cfg.sieve_limit or _TABLE1_START_LIMIT
    cap = max(cfg.limit, _TABLE1_DEFAULT_CAP) if cfg.sieve_limit is None else cfg.limit
    while True:
        table = build_table(limit)
        try:
            rows = []
            for t in range(cfg.t_min, cfg.t_max + 1):
                n1 = bounds.find_crossover_index(t, table, floored=cfg.floor_mode)
                mant, exp10 = bounds.primorial_magnitude(n1, table)
                report = bounds.criterion(t, n1, table)
                rows.append(
                    {
                        "t": t,
                        "n1": n1,
                        "p_n1": report.p_n,
                        "mantissa": mant,
                        "exponent10": exp10,
                        "margin": report.margin,
                    }
                )
            return rows, ("t", "n1", "p_n1", "mantissa", "exponent10", "margin"), EXIT_OK
        except CoverageError:
            if limit >= cap:
                raise
            limit = min(limit * 4, cap)


def cmd_champions(cfg: RunConfig) -> tuple[list[dict], tuple[str, ...], int]:
    mode = "weak" if cfg.weak else "strict"
    champs = primorial.champion_scan(cfg.limit, cfg.t_min, mode)
    spf = smallest_prime_factors(max(cfg.limit, 1)).tolist()
    rows = []
    for m in champs:
        ratio = psi_over_n(factorize_with_spf(m, spf), cfg.t_min)
        rows.append({"m": m, "ratio": f"{ratio.numerator}/{ratio.denominator}"})
    return rows, ("m", "ratio"), EXIT_OK


def cmd_robin_scan(cfg: RunConfig) -> tuple[list[dict], tuple[str, ...], int]:
    table = build_table(max(math.isqrt(cfg.scan_stop) + 1, 2))
    violators = robin.robin_scan(cfg.scan_start, cfg.scan_stop, table)
    rows = robin.violators_to_rows(violators)
    code = EXIT_FALSIFIED if any(v.n > 5040 for v in violators) else EXIT_OK
    return rows, robin.VERDICT_FIELDS, code


def cmd_ratio(cfg: RunConfig) -> tuple[list[dict], tuple[str, ...], int]:
    table = build_table(cfg.sieve_limit or _prime_reach(cfg.n_max))
    rows = [
        {"n": n, "p_n": p, "ratio": r, "limit_value": lim, "deviation": dev}
        for n, p, r, lim, dev in bounds.ratio_curve(table, cfg.t_min, cfg.n_max)
    ]
    return rows, ("n", "p_n", "ratio", "limit_value", "deviation"), EXIT_OK


def cmd_verify_bounds(cfg: RunConfig) -> tuple[list[dict], tuple[str, ...], int]:
    n_max = cfg.n_max
    table = build_table(max(_prime_reach(n_max), 2 * 10**6))
    results = [
        bounds.mertens_bound_suite(table),
        bounds.zeta_tail_bound_suite(table, range(2, cfg.t_max + 1), min(n_max, 10**4)),
    ]
    if n_max >= bounds.CRITERION_FLOOR:
        results.append(bounds.log_substitution_suite(table, n_max=n_max))
        results.append(bounds.psi_ratio_bound_suite(table, n_max=n_max))
    else:
        for name in ("log_substitution", "psi_ratio_bound"):
            results.append(
                bounds.SuiteResult(
                    name=name, points=0, worst_margin=math.inf, worst_at="",
                    rechecked=0, passed=True, skipped=True,
                    note=f"hypothesis needs n >= {bounds.CRITERION_FLOOR}",
                )
            )
    rows = []
    failed = False
    for r in results:
        status = "SKIPPED" if r.skipped else ("PASS" if r.passed else "FAIL")
        failed = failed or (not r.passed and not r.skipped)
        rows.append(
            {
                "suite": r.name,
                "points": r.points,
                "worst_margin": None if r.skipped else r.worst_margin,
                "worst_at": r.worst_at,
                "rechecked": r.rechecked,
                "status": status,
            }
        )
    fields = ("suite", "points", "worst_margin", "worst_at", "rechecked", "status")
    return rows, fields, EXIT_FALSIFIED if failed else EXIT_OK


def cmd_admissible_t(cfg: RunConfig) -> tuple[list[dict], tuple[str, ...], int]:
    table = build_table(cfg.sieve_limit or _prime_reach(max(cfg.n_values)))
    rows = []
    for n in sorted(cfg.n_values):
        t = bounds.admissible_t(n, table)
        rows.append({"n": n, "p_n": nth_prime(table, n), "t_max": t})
    return rows, ("n", "p_n", "t_max"), EXIT_OK


_DISPATCH = {
    "table1": cmd_table1,
    "champions": cmd_champions,
    "robin-scan": cmd_robin_scan,
    "ratio": cmd_ratio,
    "verify-bounds": cmd_verify_bounds,
    "admissible-t": cmd_admissible_t,
}


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    cfg.output_format = args.format
    cfg.output_path = args.output
    if args.command == "table1":
        cfg.t_min, cfg.t_max = args.t_min, args.t_max
        cfg.floor_mode = args.floor_n0
        cfg.sieve_limit = args.sieve_limit
        cfg.limit = args.sieve_cap
    elif args.command == "champions":
        cfg.t_min = cfg.t_max = args.t
        cfg.limit = args.limit
        cfg.weak = args.weak
    elif args.command == "robin-scan":
        cfg.scan_start, cfg.scan_stop = args.scan_start, args.scan_stop
        if cfg.scan_stop < cfg.scan_start:
            raise ValueError(f"empty scan range [{cfg.scan_start}, {cfg.scan_stop}]")
    elif args.command == "ratio":
        cfg.t_min = cfg.t_max = args.t
        cfg.n_max = args.n_max
    elif args.command == "verify-bounds":
        cfg.n_max = args.n_max
        cfg.t_max = args.t_max
    elif args.command == "admissible-t":
        cfg.n_values = list(args.n_values)
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except ValueError as exc:
        print(f"robinpsi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        rows, fields, code = _DISPATCH[cfg.command](cfg)
    except (CoverageError, ResourceError) as exc:
        print(f"robinpsi: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    text = (
        rows_to_csv(rows, fields)
        if cfg.output_format == "csv"
        else rows_to_json(rows, fields)
    )
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def run() -> None:
    raise SystemExit(main())
