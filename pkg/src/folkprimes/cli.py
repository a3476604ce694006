"""Command-line entry point: color | search | verify | extract | info.

Every command can emit a JSON report (``--json``) with sorted keys and no
floats, so a report re-serialises to identical bytes.  Exit codes:

    0 success / found      1 not found (or not monochromatic)
    2 usage or domain error 3 64-bit overflow
    4 node budget exhausted 5 thinning left too few elements
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .arith import first_primes
from .claims import claim_report, extract
from .colorings import ColorTable, Scheme, color_count, color_key, required_size
from .errors import DomainError, IntOverflowError, InvariantError, ShortfallError, UsageError
from .finite_sums import MAX_ELEMENTS
from .search import Outcome, SearchConfig, enumerate_search, find_monochromatic, find_offender

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_USAGE = 2
EXIT_OVERFLOW = 3
EXIT_BUDGET = 4
EXIT_SHORTFALL = 5

_OUTCOME_EXIT = {
    Outcome.FOUND: EXIT_OK,
    Outcome.NOT_FOUND: EXIT_NOT_FOUND,
    Outcome.BUDGET_EXHAUSTED: EXIT_BUDGET,
}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def _base(args) -> dict:
    return {
        "command": args.command,
        "scheme": args.scheme,
        "primes": args.primes,
        "config": None,
        "outcome": None,
        "witness": None,
        "claims": None,
        "extraction": None,
        "nodes_explored": None,
        "elapsed_ms": None,
        "error": None,
    }


def _witness_dict(xs, key) -> dict:
    return {
        "elements": list(xs),
        "color_tuple": None if key is None else list(key.components),
        "color_index": None if key is None else key.canonical,
    }


def _parse_set(text: str) -> list[int]:
    try:
        xs = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--set expects comma-separated integers, got {text!r}") from None
    if not xs:
        raise UsageError("--set is empty")
    if any(x <= 0 for x in xs):
        raise UsageError("--set elements must be positive")
    if len(set(xs)) != len(xs):
        raise UsageError("--set elements must be distinct")
    if len(xs) > MAX_ELEMENTS:
        raise UsageError(f"--set holds at most {MAX_ELEMENTS} elements")
    return sorted(xs)


def _table(args):
    scheme = Scheme.parse(args.scheme)
    if scheme is Scheme.CUSTOM:
        if not getattr(args, "table", None):
            raise UsageError("--scheme custom requires --table FILE")
        try:
            return ColorTable.load(args.table)
        except OSError as exc:
            raise UsageError(f"cannot read table: {exc}") from None
    return None


def cmd_color(args, report):
    basis = first_primes(args.primes)
    table = _table(args)
    rows = []
    for n in args.numbers:
        key = color_key(n, args.scheme, basis, table)
        if key is None:
            raise DomainError(f"{n} is outside the colour table")
        rows.append({"n": n, "color_tuple": list(key.components), "color_index": key.canonical})
    report["colors"] = rows
    report["outcome"] = "found"
    lines = [f"{r['n']}: {tuple(r['color_tuple'])} index {r['color_index']}" for r in rows]
    return EXIT_OK, lines


def cmd_search(args, report):
    basis = first_primes(args.primes)
    cfg = SearchConfig(
        scheme=args.scheme, basis=basis, target_size=args.size, bound=args.bound,
        deterministic=args.deterministic, node_budget=args.budget, workers=args.workers,
        valuation_pruning=args.prune_valuations, table=_table(args),
    )
    report["config"] = {
        "size": args.size, "bound": args.bound, "deterministic": args.deterministic,
        "budget": args.budget, "workers": args.workers, "limit": args.limit,
        "prune_valuations": args.prune_valuations,
    }
    result = enumerate_search(cfg, args.limit) if args.limit else find_monochromatic(cfg)
    report["outcome"] = result.outcome.value
    report["nodes_explored"] = result.nodes_explored
    report["witnesses"] = [_witness_dict(w.elements, w.color) for w in result.witnesses]
    lines = []
    if result.witness is not None:
        w = result.witness
        report["witness"] = _witness_dict(w.elements, w.color)
        report["claims"] = claim_report(w.elements, cfg.scheme, basis).to_dict()
    for w in result.witnesses:
        lines.append(f"witness {list(w.elements)} colour {w.color.components} "
                     f"index {w.color.canonical}")
    lines.append(f"outcome {result.outcome.value} after {result.nodes_explored} nodes")
    return _OUTCOME_EXIT[result.outcome], lines


def cmd_verify(args, report):
    basis = first_primes(args.primes)
    table = _table(args)
    xs = _parse_set(args.set)
    offender = find_offender(xs, args.scheme, basis, table)
    claims = claim_report(xs, args.scheme, basis)
    report["claims"] = claims.to_dict()
    report["monochromatic"] = offender is None
    lines = []
    if offender is None:
        key = color_key(xs[0], args.scheme, basis, table)
        report["witness"] = _witness_dict(xs, key)
        report["offender"] = None
        report["outcome"] = "found"
        lines.append(f"{xs} is monochromatic, colour {key.components} index {key.canonical}")
        code = EXIT_OK
    else:
        s, key = offender
        report["offender"] = {
            "sum": s,
            "color_tuple": None if key is None else list(key.components),
            "color_index": None if key is None else key.canonical,
        }
        report["outcome"] = "not_found"
        shown = "no colour" if key is None else f"colour {key.components}"
        lines.append(f"{xs} is NOT monochromatic: sum {s} has {shown}")
        code = EXIT_NOT_FOUND
    for p, ok in claims.distinct.injective.items():
        lines.append(f"p={p}: orders {'distinct' if ok else 'collide'}; "
                     f"multiplicity {claims.multiplicity.counts[p]} "
                     f"(limit {claims.multiplicity.limits[p]})")
    lines.append("claims " + ("pass" if claims.ok else f"FAIL {claims.violations}"))
    return code, lines


def cmd_extract(args, report):
    basis = first_primes(args.primes)
    table = _table(args)
    xs = _parse_set(args.set)
    offender = find_offender(xs, args.scheme, basis, table)
    if offender is not None:
        raise UsageError(f"{xs} is not a witness: sum {offender[0]} breaks monochromaticity")
    key = color_key(xs[0], args.scheme, basis, table)
    report["witness"] = _witness_dict(xs, key)
    report["claims"] = claim_report(xs, args.scheme, basis).to_dict()
    res = extract(xs, args.scheme, basis, table)
    report["extraction"] = res.to_dict()
    report["outcome"] = "found"
    lines = [
        f"reduced set {list(res.reduced)}",
        f"selected {list(res.selected)} (t={res.t}), partial sum {res.partial_sum}",
        f"extra {res.extra}, total {res.total} = {res.smooth} * {res.cofactor}",
        f"new prime outside {list(basis.primes)}: {res.new_prime}",
    ]
    return EXIT_OK, lines


def cmd_info(args, report):
    basis = first_primes(args.primes)
    info = {"basis": list(basis.primes), "colors": None, "required_size": None,
            "feasible": False}
    report["info"] = info
    info["colors"] = color_count(args.scheme, basis)
    try:
        m = required_size(args.scheme, basis)
    except IntOverflowError:
        info["required_size"] = "astronomical"
        raise
    info["required_size"] = m
    info["feasible"] = m <= MAX_ELEMENTS
    report["outcome"] = "found"
    lines = [
        f"basis {info['basis']}",
        f"colours {info['colors']}",
        f"required size M {m} ({'feasible' if info['feasible'] else 'infeasible'}"
        f" at full M; desk limit {MAX_ELEMENTS})",
    ]
    return EXIT_OK, lines


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _non_negative(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="folkprimes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, schemes=("proof1", "proof2", "custom")):
        p.add_argument("--scheme", required=True, choices=schemes)
        p.add_argument("--primes", required=True, type=int, help="basis size N (first N primes)")
        p.add_argument("--json", action="store_true", help="emit the JSON report")
        if "custom" in schemes:
            p.add_argument("--table", help="colour table file for --scheme custom")

    p = sub.add_parser("color", help="colour integers")
    common(p)
    p.add_argument("numbers", nargs="+", type=_positive)

    p = sub.add_parser("search", help="search for a monochromatic finite-sums set")
    common(p)
    p.add_argument("--size", required=True, type=int)
    p.add_argument("--bound", required=True, type=int)
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--budget", type=_non_negative)
    p.add_argument("--workers", type=_positive)
    p.add_argument("--limit", type=_positive)
    p.add_argument("--prune-valuations", action="store_true",
                   help="skip candidates repeating a p-adic order (proof1 only)")

    p = sub.add_parser("verify", help="check a set and report the claims")
    common(p)
    p.add_argument("--set", required=True)

    p = sub.add_parser("extract", help="extract a prime outside the basis from a witness")
    common(p)
    p.add_argument("--set", required=True)

    p = sub.add_parser("info", help="colour count and required set size")
    common(p, schemes=("proof1", "proof2"))
    return parser


COMMANDS = {
    "color": cmd_color,
    "search": cmd_search,
    "verify": cmd_verify,
    "extract": cmd_extract,
    "info": cmd_info,
}


def execute(args) -> tuple[int, dict, list[str]]:
    """Run a parsed command; returns (exit code, report, human-readable lines)."""
    report = _base(args)
    deterministic = getattr(args, "deterministic", False)
    start = time.perf_counter()
    try:
        code, lines = COMMANDS[args.command](args, report)
    except (UsageError, DomainError, InvariantError) as exc:
        code, lines = EXIT_USAGE, [f"error: {exc}"]
        report["outcome"], report["error"] = "error", str(exc)
    except IntOverflowError as exc:
        code, lines = EXIT_OVERFLOW, [f"error: overflow ({exc})"]
        report["outcome"], report["error"] = "error", f"overflow: {exc}"
    except ShortfallError as exc:
        code, lines = EXIT_SHORTFALL, [f"error: {exc}"]
        report["outcome"], report["error"] = "error", str(exc)
    # wall-clock time would break byte-identical deterministic reports
    if not deterministic:
        report["elapsed_ms"] = int((time.perf_counter() - start) * 1000)
    return code, report, lines


def run(argv=None) -> tuple[int, dict, list[str]]:
    return execute(build_parser().parse_args(argv))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code, report, lines = execute(args)
    if args.json:
        print(dumps(report))
    else:
        out = sys.stdout if code in (EXIT_OK, EXIT_NOT_FOUND) else sys.stderr
        for line in lines:
            print(line, file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
