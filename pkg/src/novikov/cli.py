"""Command-line interface: ``novikov compute | validate | example | harness | snf``.

Exit codes: 0 on success, 1 on invalid input, 2 when an internal consistency
check fails (IdentityFailure, OracleMismatch, or a violated inequality).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from .errors import InternalDefect, NovikovError, SchemaError, UnknownExample, ValidationError
from .invariants import snf_novikov, verify_snf
from .localization import DEFAULT_PRECISION
from .matrix import Matrix
from .ring_core import RR, RationalR
from .workbench.data import load_fundamental_domain
from .workbench.examples import NAMED, generate_example
from .workbench.harness import property_harness
from .workbench.pipeline import run_pipeline

EXIT_OK, EXIT_INVALID, EXIT_DEFECT = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _seed(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("NOVIKOV_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise SchemaError(f"NOVIKOV_SEED must be an integer, got {env!r}") from None


def cmd_compute(args) -> int:
    fd = load_fundamental_domain(args.input)
    report = run_pipeline(fd, precision=args.precision)
    _write(_dump(report.to_json()), args.out)
    if args.table:
        print(report.table())
    return EXIT_OK if report.passed else EXIT_DEFECT


def cmd_validate(args) -> int:
    fd = load_fundamental_domain(args.input)
    report = fd.validate()
    if report.passed:
        print(f"valid: N_ranks = {fd.N_ranks}, handle_ranks = {fd.handle_ranks}")
        return EXIT_OK
    print(str(report))
    return EXIT_INVALID


def cmd_example(args) -> int:
    if args.random:
        spec = {"seed": _seed(args.seed), "max_rank": args.max_rank, "max_degree": args.degree,
                "coefficient_bound": args.bound, "k": args.k}
        if args.alpha:
            spec["alpha"] = json.loads(args.alpha)
        fd = generate_example(random_spec=spec)
    elif args.name:
        fd = generate_example(args.name)
    else:
        print("known examples: " + ", ".join(sorted(NAMED)))
        return EXIT_OK
    _write(fd.dumps() + "\n", args.out)
    return EXIT_OK


def cmd_harness(args) -> int:
    alpha = json.loads(args.alpha) if args.alpha else None
    sizes = {"max_rank": args.max_rank} if args.max_rank is not None else None
    summary = property_harness(args.trials, _seed(args.seed), sizes, k=args.k, alpha=alpha,
                               precision=args.precision)
    if args.json:
        sys.stdout.write(_dump(summary.to_json()))
    else:
        print("\n".join(summary.lines()))
    return EXIT_OK if summary.ok else EXIT_DEFECT


def _load_matrix(path: str) -> Matrix:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("matrix")
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise SchemaError("expected a nested array of entries (or {\"matrix\": [...]})")
    ncols = len(data[0]) if data else 0
    if any(len(r) != ncols for r in data):
        raise SchemaError("rows have different lengths")
    rows = [[RationalR.from_json(x) for x in r] for r in data]
    return Matrix(RR, rows, len(rows), ncols)


def cmd_snf(args) -> int:
    m = _load_matrix(args.matrix)
    res = snf_novikov(m)
    problems = verify_snf(m, res)
    out = res.to_json()
    out["certificate"] = {"verified": not problems, "problems": problems}
    sys.stdout.write(_dump(out))
    return EXIT_OK if not problems else EXIT_DEFECT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="novikov", description="Novikov complexes and Novikov numbers from chain data")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="run the full pipeline on a fundamental-domain file")
    c.add_argument("--input", required=True)
    c.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                   help="truncation order T for k > 0 (ignored when k = 0)")
    c.add_argument("--out", help="write the JSON report here instead of stdout")
    c.add_argument("--table", action="store_true", help="also print the Novikov table")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("validate", help="check the chain-level identities of an input file")
    v.add_argument("--input", required=True)
    v.set_defaults(func=cmd_validate)

    e = sub.add_parser("example", help="emit a named or random fundamental-domain file")
    g = e.add_mutually_exclusive_group()
    g.add_argument("--name", choices=sorted(NAMED))
    g.add_argument("--random", action="store_true")
    e.add_argument("--seed", type=int)
    e.add_argument("--max-rank", type=int, default=3)
    e.add_argument("--degree", type=int, default=2, help="top degree")
    e.add_argument("--k", type=int, default=0)
    e.add_argument("--alpha", help="monodromy matrix as JSON, e.g. [[-1]]")
    e.add_argument("--bound", type=int, default=3, help="coefficient bound")
    e.add_argument("--out")
    e.set_defaults(func=cmd_example)

    h = sub.add_parser("harness", help="run the randomized property suites")
    h.add_argument("--trials", type=int, default=100)
    h.add_argument("--seed", type=int)
    h.add_argument("--k", type=int, default=0)
    h.add_argument("--alpha")
    h.add_argument("--max-rank", type=int)
    h.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    h.add_argument("--json", action="store_true")
    h.set_defaults(func=cmd_harness)

    s = sub.add_parser("snf", help="Smith normal form over Z((z)) of a matrix over R")
    s.add_argument("--matrix", required=True)
    s.set_defaults(func=cmd_snf)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalDefect as exc:
        print(f"internal defect: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    except (SchemaError, ValidationError, UnknownExample) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NovikovError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
