"""Command-line front end.

Exit codes: 0 success, 1 a stated expectation failed (or a rejection fixture
confirmed its rejection), 2 bad input (unreadable file, parse error, bad
flag values). All output is deterministic; ``--json`` switches from the
human table to the machine schema.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .catalog import (
    CatalogError,
    CheckRecord,
    EntryChecker,
    load_catalog,
    load_entry,
    records_to_json,
    records_to_table,
    verify_catalog,
)
from .contract import ContractionError, CurveFiber, classify, complete_definiteness
from .discrepancy import DiscrepancyError, codiscrepancies
from .graph import GraphError
from .linalg import format_rational, rational
from .wps import (
    CICurve,
    WeightedProjectiveSpace,
    pair,
    subadjunction_genus,
    wblowup_discrepancy,
)

EXIT_OK = 0
EXIT_EXPECT = 1
EXIT_INPUT = 2


class _Report:
    """Collects command output for either rendering mode."""

    def __init__(self, command: list[str]):
        self.command = command
        self.lines: list[str] = []
        self.checks: list[CheckRecord] = []

    def say(self, line: str) -> None:
        self.lines.append(line)

    def extend(self, records: list[CheckRecord]) -> None:
        self.checks.extend(records)

    @property
    def failed(self) -> bool:
        return any(not r.passed for r in self.checks)

    def emit(self, as_json: bool, status: int) -> None:
        if as_json:
            payload = {
                "command": self.command,
                "output": self.lines,
                "checks": [r.as_dict() for r in self.checks],
                "status": status,
            }
            print(json.dumps(payload, indent=2, sort_keys=False))
        else:
            for line in self.lines:
                print(line)
            for r in self.checks:
                mark = "pass" if r.passed else "FAIL"
                print(f"{mark}  {r.check}: expected {r.expected}, got {r.actual}")


def _load(path: str):
    p = Path(path)
    try:
        return load_entry(p, p.stem)
    except FileNotFoundError:
        raise SystemExit(_input_error(f"no such file: {path}"))
    except GraphError as exc:
        raise SystemExit(_input_error(f"parse error in {path}: {exc}"))


def _input_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT


def _run_expects(checker: EntryChecker, keys: tuple[str, ...]) -> list[CheckRecord]:
    records = []
    for key, value in checker.entry.expects:
        if key.split()[0] in keys:
            try:
                record = checker.run(key, value)
            except Exception as exc:
                record = CheckRecord(checker.entry.name, key, value, f"error: {exc}")
            if record is not None:
                records.append(record)
    return records


def cmd_classify(args) -> int:
    entry = _load(args.file)
    report = _Report(["classify", args.file])
    try:
        outcome = classify(entry.graph)
    except ContractionError as exc:
        return _input_error(str(exc))
    report.say(f"outcome: {outcome.render()}")
    report.say(f"definiteness: {complete_definiteness(entry.graph).render()}")
    if isinstance(outcome, CurveFiber):
        report.say(f"fiber cycle: {outcome.fiber.render()}")
    checker = EntryChecker(entry)
    report.extend(
        _run_expects(
            checker,
            ("outcome", "definiteness", "fiber_cycle", "contracts_to_zero_curve"),
        )
    )
    status = EXIT_EXPECT if report.failed else EXIT_OK
    report.emit(args.json, status)
    return status


def cmd_codisc(args) -> int:
    entry = _load(args.file)
    report = _Report(["codisc", args.file])
    try:
        result = codiscrepancies(entry.graph, include_central=args.include_central)
    except DiscrepancyError as exc:
        return _input_error(str(exc))
    for vid in sorted(result.values):
        report.say(f"{vid} = {format_rational(result.values[vid])}")
    report.say(f"all_nonnegative: {str(result.all_nonnegative).lower()}")
    report.say(f"max_denominator: {result.max_denominator}")

    checker = EntryChecker(entry)
    report.extend(
        _run_expects(
            checker,
            (
                "codisc",
                "codisc_nonneg",
                "denominators_divide",
                "blowup_disc",
                "blowup_mult",
                "pinned_consistent",
                "implied_tail_start",
            ),
        )
    )
    status = EXIT_EXPECT if report.failed else EXIT_OK
    rejected = [v for k, v in entry.expects if k == "rejected"]
    if status == EXIT_OK and rejected and rejected[0] == "true":
        try:
            confirmed = checker.implied_start() < 0
        except Exception:
            confirmed = False
        if confirmed:
            report.say(
                f"rejection confirmed: implied tail start "
                f"{format_rational(checker.implied_start())} < 0"
            )
            status = EXIT_EXPECT
    report.emit(args.json, status)
    return status


def cmd_pullback(args) -> int:
    entry = _load(args.file)
    report = _Report(["pullback", args.file])
    if args.attached not in entry.cycles:
        return _input_error(f"no cycle named {args.attached!r} in {args.file}")
    subset = None
    if args.subset:
        subset = [s for s in args.subset.split(",") if s]
    from .discrepancy import mumford_pullback

    try:
        result = mumford_pullback(entry.graph, entry.cycles[args.attached], subset)
    except (DiscrepancyError, GraphError) as exc:
        return _input_error(str(exc))
    report.say(f"pullback multiplicities: {result.render()}")
    if subset is None:
        checker = EntryChecker(entry)
        for key, value in entry.expects:
            parts = key.split()
            if parts[0] == "pullback" and parts[1] == args.attached:
                report.extend([checker.run(key, value)])
    status = EXIT_EXPECT if report.failed else EXIT_OK
    report.emit(args.json, status)
    return status


def cmd_triviality(args) -> int:
    entry = _load(args.file)
    report = _Report(["triviality", args.file])
    if args.cycle not in entry.cycles:
        return _input_error(f"no cycle named {args.cycle!r} in {args.file}")
    from .discrepancy import numerically_trivial
    from .graph import cycle_dot

    z = entry.cycles[args.cycle]
    trivial = numerically_trivial(entry.graph, z)
    report.say(f"numerically trivial: {str(trivial).lower()}")
    if not trivial:
        for vid in entry.graph.complete_ids():
            value = cycle_dot(entry.graph, z, vid)
            if value != 0:
                report.say(f"  pairs with {vid}: {format_rational(value)}")
    checker = EntryChecker(entry)
    for key, value in entry.expects:
        parts = key.split()
        if parts[0] == "trivial" and parts[1] == args.cycle:
            report.extend([checker.run(key, value)])
    status = EXIT_EXPECT if report.failed else EXIT_OK
    report.emit(args.json, status)
    return status


def _parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise SystemExit(_input_error(f"bad {what}: {text!r}"))


def _parse_rational(text: str, what: str) -> Fraction:
    try:
        return rational(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise SystemExit(_input_error(f"bad {what}: {text!r}"))


def cmd_pair(args) -> int:
    report = _Report(["pair"])
    weights = _parse_ints(args.weights, "weights")
    degrees = _parse_ints(args.degrees, "degrees")
    try:
        curve = CICurve(WeightedProjectiveSpace(tuple(weights)), tuple(degrees))
    except ValueError as exc:
        return _input_error(str(exc))
    value = pair(curve, args.k)
    report.say(f"pairing: {format_rational(value)}")
    report.emit(args.json, EXIT_OK)
    return EXIT_OK


def cmd_wdisc(args) -> int:
    report = _Report(["wdisc"])
    weights = _parse_ints(args.weights, "weights")
    try:
        value = wblowup_discrepancy(args.index, weights)
    except ValueError as exc:
        return _input_error(str(exc))
    report.say(f"discrepancy: {format_rational(value)}")
    report.emit(args.json, EXIT_OK)
    return EXIT_OK


def cmd_genus(args) -> int:
    report = _Report(["genus"])
    weights = _parse_ints(args.weights, "weights")
    correction = _parse_rational(args.correction, "correction")
    try:
        value = subadjunction_genus(weights, args.degree, correction)
    except ValueError as exc:
        return _input_error(str(exc))
    report.say(f"arithmetic genus: {format_rational(value)}")
    report.emit(args.json, EXIT_OK)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action != "verify":
        return _input_error(f"unknown catalog action {args.action!r}")
    root = Path(args.root) if args.root else None
    try:
        entries = load_catalog(root)
    except CatalogError as exc:
        return _input_error(str(exc))
    records = verify_catalog(entries, args.filter)
    if args.filter is not None and not records:
        print(f"warning: filter {args.filter!r} matched no entries", file=sys.stderr)
        return EXIT_OK
    if args.json:
        sys.stdout.write(records_to_json(records))
    else:
        print(records_to_table(records))
    return EXIT_EXPECT if any(not r.passed for r in records) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resgraph",
        description="Exact calculus on weighted dual graphs of surface-singularity resolutions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("classify", help="contract a configuration and name the target")
    p.add_argument("file")
    add_json(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("codisc", help="solve the codiscrepancy system")
    p.add_argument("file")
    p.add_argument("--include-central", action="store_true")
    add_json(p)
    p.set_defaults(func=cmd_codisc)

    p = sub.add_parser("pullback", help="numerical pullback multiplicities")
    p.add_argument("file")
    p.add_argument("--attached", required=True, help="name of the attached cycle")
    p.add_argument("--subset", help="comma-separated vertex ids (default: all complete)")
    add_json(p)
    p.set_defaults(func=cmd_pullback)

    p = sub.add_parser("triviality", help="test a cycle for numerical triviality")
    p.add_argument("file")
    p.add_argument("--cycle", required=True)
    add_json(p)
    p.set_defaults(func=cmd_triviality)

    p = sub.add_parser("pair", help="degree pairing in a weighted projective space")
    p.add_argument("--weights", required=True, help="comma-separated positive integers")
    p.add_argument("--degrees", required=True, help="comma-separated positive integers")
    p.add_argument("--k", type=int, required=True)
    add_json(p)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("wdisc", help="weighted blowup discrepancy")
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--weights", required=True)
    add_json(p)
    p.set_defaults(func=cmd_wdisc)

    p = sub.add_parser("genus", help="subadjunction genus of a weighted-space curve")
    p.add_argument("--weights", required=True, help="exactly three comma-separated weights")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--correction", required=True, help="orbifold correction, p/q")
    add_json(p)
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("catalog", help="catalog operations")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--filter", help="glob over entry names, e.g. 'rejected/*'")
    p.add_argument("--root", help="alternate catalog directory")
    add_json(p)
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
