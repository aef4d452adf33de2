"""Command-line front end.

Exit codes: 0 success, 1 verification failure or internal error, 2 usage or
input error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import verification
from .bounds import SCHEMA, compare_bounds, threshold_from_epsilon
from .caps import cap, load_caps
from .constructions import FAMILIES, FamilySpec
from .errors import CapacityError, IndepboundError, InputError
from .hypergraph import Hypergraph, exact_alpha, format_hg, is_independent, load_hg
from .permutation import run_trials

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", type=Path, help="hypergraph in .hg format")
    p.add_argument("--family", choices=FAMILIES, help="generate a construction instead")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--w", type=int, default=1)
    p.add_argument("--max-n", type=int, default=None, help="cap for exact alpha")


def _add_output(p: argparse.ArgumentParser, default: str = "json") -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default=default)
    p.add_argument("--out", type=Path, help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="indepbound",
        description="Independence-number bounds for k-uniform hypergraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="evaluate every applicable bound")
    _add_input(p)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--c", type=float, default=1.0, help="constant for shape-only bounds")
    _add_output(p)

    p = sub.add_parser("report", help="bounds plus the random-order pipeline")
    _add_input(p)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--A", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    _add_output(p)

    p = sub.add_parser("greedy", help="best independent set over seeded trials")
    _add_input(p)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--A", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    _add_output(p)

    p = sub.add_parser("alpha", help="exact independence number")
    _add_input(p)
    _add_output(p)

    p = sub.add_parser("construct", help="write a construction in .hg format")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--w", type=int, default=1)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("verify", help="run the exact identity and probability grids")
    p.add_argument("--suite", choices=verification.SUITES, default="all")
    p.add_argument("--max-td", type=int, default=None)
    p.add_argument("--random", type=int, default=1000, help="random set systems for mpie")
    p.add_argument("--seed", type=int, default=7)
    _add_output(p)
    return parser


def _family_spec(args: argparse.Namespace) -> FamilySpec:
    params = {}
    for name in ("n", "k", "i"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    if args.family == "family-H":
        params["w"] = args.w
    return FamilySpec(args.family, params)


def load_input(args: argparse.Namespace) -> tuple[Hypergraph, str]:
    if (args.input is None) == (args.family is None):
        raise InputError("give exactly one of --input or --family")
    if args.input is not None:
        try:
            return load_hg(args.input), str(args.input)
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    spec = _family_spec(args)
    return spec.build(), spec.label()


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _as_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _rows_csv(rows: list[tuple]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _flatten(payload: dict, prefix: str = "") -> list[tuple[str, object]]:
    rows: list[tuple[str, object]] = []
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_flatten(value, name + "."))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for idx, item in enumerate(value):
                rows.extend(_flatten(item, f"{name}[{idx}]."))
        else:
            rows.append((name, value))
    return rows


def _render(payload: dict, fmt: str, csv_rows: list[tuple] | None = None) -> str:
    if fmt == "json":
        return _as_json(payload)
    if fmt == "csv":
        return _rows_csv(csv_rows if csv_rows is not None else [("key", "value"), *_flatten(payload)])
    return "".join(f"{k}: {v}\n" for k, v in _flatten(payload))


def cmd_bounds(args: argparse.Namespace, trials: int = 0) -> int:
    H, source = load_input(args)
    report = compare_bounds(
        H,
        args.epsilon,
        seed=getattr(args, "seed", 0),
        trials=trials,
        c=args.c,
        A=getattr(args, "A", None),
        max_n=args.max_n,
    )
    if getattr(args, "A", None) is not None:
        report.notes.append("--A given; epsilon not used for the threshold")
    payload = {"command": args.command, "source": source, **report.to_dict()}
    csv_rows = None
    if args.format == "csv":
        csv_rows = list(csv.reader(io.StringIO(report.to_csv())))
    _emit(_render(payload, args.format, csv_rows), args.out)
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    if args.trials < 1:
        raise InputError("--trials must be >= 1")
    return cmd_bounds(args, trials=args.trials)


def cmd_greedy(args: argparse.Namespace) -> int:
    H, source = load_input(args)
    notes = []
    if args.A is not None:
        A = args.A
        if args.epsilon is not None:
            notes.append("both --A and --epsilon given; --A wins")
    elif args.epsilon is not None:
        A = threshold_from_epsilon(H.average_degree(), args.epsilon)
    else:
        A = 1
    if A < 1:
        raise InputError("A must be >= 1")
    batch = run_trials(H, A, args.trials, args.seed)
    if not is_independent(H, batch.best_set):
        raise RuntimeError("internal error: best set is not independent")
    summary = batch.summary()
    payload = {
        "schema": SCHEMA,
        "command": "greedy",
        "source": source,
        "n": H.n,
        "m": H.m,
        "k": H.k,
        "epsilon": args.epsilon,
        "notes": notes,
        **summary,
    }
    _emit(_render(payload, args.format), args.out)
    return EXIT_OK


def cmd_alpha(args: argparse.Namespace) -> int:
    H, source = load_input(args)
    limit = cap("max_n") if args.max_n is None else args.max_n
    try:
        alpha = exact_alpha(H, limit)
    except CapacityError as exc:
        raise CapacityError(f"{exc}. Try --max-n {H.n} (slow) or `greedy` for a heuristic.") from None
    report = compare_bounds(H, 0.5, max_n=limit)
    payload = {
        "schema": SCHEMA,
        "command": "alpha",
        "source": source,
        "n": H.n,
        "m": H.m,
        "k": H.k,
        "alpha": alpha,
        "bounds": [r.to_dict() for r in report.records],
    }
    _emit(_render(payload, args.format), args.out)
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    spec = _family_spec(args)
    H = spec.build()
    _emit(format_hg(H, spec.label()), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    max_td = cap("max_td") if args.max_td is None else args.max_td
    checks = verification.run_suite(args.suite, max_td=max_td, count=args.random, seed=args.seed)
    report = verification.build_report(
        args.suite, checks, max_td=max_td, random=args.random, seed=args.seed
    )
    if args.format == "csv":
        rows = [("check", "params", "pass")]
        rows += [
            (c["check"], ";".join(f"{k}={v}" for k, v in c["params"].items()), c["pass"])
            for c in checks
        ]
        text = _rows_csv(rows)
    elif args.format == "text":
        lines = [f"{c['check']} {c['params']}: {'PASS' if c['pass'] else 'FAIL'}" for c in checks]
        lines.append(f"{report['passed']}/{report['total']} passed")
        text = "\n".join(lines) + "\n"
    else:
        text = _as_json(report)
    _emit(text, args.out)
    return EXIT_OK if report["all_pass"] else EXIT_FAIL


COMMANDS = {
    "bounds": cmd_bounds,
    "report": cmd_report,
    "greedy": cmd_greedy,
    "alpha": cmd_alpha,
    "construct": cmd_construct,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        load_caps()
        return COMMANDS[args.command](args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, IndepboundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
