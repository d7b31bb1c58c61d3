"""Command-line experiment harness.

Subcommands: run (one experiment), sweep (grid of experiments), validate
(factorized vs brute-force cross-check), report (pretty-print a saved JSON
report), bench (kernel backend comparison).

Exit codes: 0 success, 2 domain error, 3 resource cap exceeded,
4 validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import chain, combinations
from pathlib import Path

from . import backends
from .bench import format_table, run_bench
from .bruteforce import ValidationCase, cross_validate
from .ensemble import ExperimentPlan, recommended_eta
from .errors import DomainError, ResourceCapError, ValidationFailure
from .harness import place_marked, run_experiment, sweep, to_csv, to_json

VALIDATE_TOL = 1e-10


def _int_list(raw: str) -> list[int]:
    raw = raw.strip()
    if not raw:
        return []
    try:
        return [int(part) for part in raw.split(",")]
    except ValueError as exc:
        raise DomainError(f"expected comma-separated integers, got {raw!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paritysearch",
        description="Single-query ensemble database search: simulate, validate, benchmark.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one seeded experiment")
    run_p.add_argument("--n", type=int, required=True, help="item count (power of two)")
    marking = run_p.add_mutually_exclusive_group(required=True)
    marking.add_argument("--marked", type=str, help="explicit marked indices, e.g. 2,5")
    marking.add_argument("--k", type=int, help="marked count with seeded random placement")
    run_p.add_argument("--eta", type=int, help="subsystem count (default: ceil(eta-mult*N*ln N))")
    run_p.add_argument("--eta-mult", type=float, default=4.0)
    run_p.add_argument("--trials", type=int, default=1)
    run_p.add_argument("--seed", type=int, default=0)
    run_p.add_argument("--workers", type=int, default=1)
    run_p.add_argument("--format", choices=("csv", "json"), default="csv")
    run_p.add_argument("--out", type=str, help="write the report here instead of stdout")
    run_p.add_argument(
        "--timing",
        action="store_true",
        help="record measured wall time (breaks byte-reproducibility of artifacts)",
    )

    sweep_p = sub.add_parser("sweep", help="run a grid of (N, k) experiments")
    sweep_p.add_argument("--n", type=str, required=True, help="comma list of item counts")
    sweep_p.add_argument("--k", type=str, default="1", help="comma list of marked counts")
    sweep_p.add_argument("--eta", type=int)
    sweep_p.add_argument("--eta-mult", type=float, default=4.0)
    sweep_p.add_argument("--trials", type=int, default=100)
    sweep_p.add_argument("--seed", type=int, default=0)
    sweep_p.add_argument("--workers", type=int, default=1)
    sweep_p.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep_p.add_argument("--out", type=str)
    sweep_p.add_argument("--timing", action="store_true")

    val_p = sub.add_parser("validate", help="cross-check the factorized pipeline brute-force")
    val_p.add_argument("--n", type=str, default="2,4", help="comma list of item counts")
    val_p.add_argument("--eta", type=str, default="1,2,3", help="comma list of subsystem counts")
    val_p.add_argument("--cap", type=int, help="amplitude cap override")
    val_p.add_argument("--tol", type=float, default=VALIDATE_TOL)

    rep_p = sub.add_parser("report", help="pretty-print a saved JSON report")
    rep_p.add_argument("path", type=str)

    bench_p = sub.add_parser("bench", help="compare numba and numpy kernel backends")
    bench_p.add_argument("--dim", type=int, default=4)
    bench_p.add_argument("--eta", type=int, default=10)
    bench_p.add_argument("--draws", type=int, default=1_000_000)
    bench_p.add_argument("--repeats", type=int, default=3)

    return parser


def _emit(reports, fmt: str, out: str | None, timing: bool) -> None:
    text = to_csv(reports, include_timing=timing) if fmt == "csv" else to_json(
        reports, include_timing=timing
    )
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    for report in reports:
        for message in report.warnings:
            print(f"warning: N={report.n_items} k={report.k}: {message}", file=sys.stderr)


def _cmd_run(args) -> int:
    if args.marked is not None:
        marked = frozenset(_int_list(args.marked))
        if not marked:
            raise DomainError("--marked must list at least one index")
    else:
        marked = place_marked(args.n, args.k, args.seed)
    plan = ExperimentPlan(
        n_items=args.n,
        marked=marked,
        eta=args.eta if args.eta is not None else recommended_eta(args.n, args.eta_mult),
        seed=args.seed,
        trials=args.trials,
    )
    _emit([run_experiment(plan, workers=args.workers)], args.format, args.out, args.timing)
    return 0


def _cmd_sweep(args) -> int:
    reports = sweep(
        _int_list(args.n),
        _int_list(args.k),
        trials=args.trials,
        seed=args.seed,
        eta=args.eta,
        eta_mult=args.eta_mult,
        workers=args.workers,
    )
    _emit(reports, args.format, args.out, args.timing)
    return 0


def _all_marked_sets(n_items: int):
    items = range(n_items)
    return chain.from_iterable(combinations(items, r) for r in range(1, n_items))


def _cmd_validate(args) -> int:
    n_values = _int_list(args.n)
    eta_values = _int_list(args.eta)
    if not n_values or not eta_values:
        raise DomainError("validate needs at least one N and one eta")
    worst = 0.0
    for n_items in n_values:
        for eta in eta_values:
            for marked in _all_marked_sets(n_items):
                case = ValidationCase(
                    n_items=n_items, eta=eta, marked=frozenset(marked), cap=args.cap
                )
                result = cross_validate(case)
                worst = max(worst, result.max_discrepancy)
                print(
                    f"N={n_items} eta={eta} marked={sorted(case.marked)}: "
                    f"max discrepancy {result.max_discrepancy:.3e}"
                )
    if worst >= args.tol:
        raise ValidationFailure(
            f"worst marginal discrepancy {worst:.3e} exceeds tolerance {args.tol:.3e}"
        )
    print(f"all cases within {args.tol:.1e} (worst {worst:.3e})")
    return 0


def _cmd_report(args) -> int:
    rows = json.loads(Path(args.path).read_text())
    if not isinstance(rows, list):
        raise DomainError("report file must hold a JSON array of rows")
    if not rows:
        print("(empty report)")
        return 0
    columns = [key for key in rows[0] if key != "warnings"]
    widths = {
        key: max(len(key), *(len(str(row.get(key, ""))) for row in rows)) for key in columns
    }
    print("  ".join(key.rjust(widths[key]) for key in columns))
    for row in rows:
        print("  ".join(str(row.get(key, "")).rjust(widths[key]) for key in columns))
        for message in row.get("warnings", ()):
            print(f"warning: {message}", file=sys.stderr)
    return 0


def _cmd_bench(args) -> int:
    rows = run_bench(dim=args.dim, eta=args.eta, draws=args.draws, repeats=args.repeats)
    print(f"active backend: {backends.active_backend()}")
    print(format_table(rows))
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
    "report": _cmd_report,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValidationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
