"""Command line interface: ``arrow3 solve | bench | diff``.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 internal solver fault.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .assembly import SolverConfig, solve
from .core import SolverFault, SymMat3
from .deflation import DEFAULT_C_DEFLATE
from .harness import (Dist, RunConfig, difference_paths, read_records, run_comparison,
                      sorted_differences, write_differences)
from .secular import DEFAULT_C_TERM, Method

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_FAULT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="arrow3", description="3x3 symmetric eigensolver via ordered arrow reduction")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve matrices read from a file (six upper-triangle entries per line)")
    s.add_argument("--in", dest="infile", required=True, help="input file, or - for stdin")
    s.add_argument("--method", choices=[m.value for m in Method], default="bg")
    s.add_argument("--c-deflate", type=float, default=DEFAULT_C_DEFLATE)
    s.add_argument("--c-term", type=float, default=DEFAULT_C_TERM)

    b = sub.add_parser("bench", help="run the accuracy comparison and write per-trial CSV")
    b.add_argument("--dist", choices=[d.value for d in Dist], required=True)
    b.add_argument("--n", type=int, default=100_000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--method", choices=[m.value for m in Method], default="bg")
    b.add_argument("--out", required=True)
    b.add_argument("--c-deflate", type=float, default=DEFAULT_C_DEFLATE)
    b.add_argument("--c-term", type=float, default=DEFAULT_C_TERM)
    b.add_argument("--jobs", type=int, default=1, help="worker processes (output is identical for any value)")

    d = sub.add_parser("diff", help="sorted baseline-minus-main error differences from a bench CSV")
    d.add_argument("--in", dest="infile", required=True)
    d.add_argument("--out", required=True, help="writes OUT_orth.csv and OUT_resid.csv")
    return p


def _parse_matrix_line(line: str, lineno: int) -> SymMat3:
    parts = line.split()
    if len(parts) != 6:
        raise UsageError(f"line {lineno}: expected 6 numbers, got {len(parts)}")
    try:
        return SymMat3(*(float(x) for x in parts))
    except ValueError as exc:
        raise UsageError(f"line {lineno}: {exc}") from None


def _fmt(x: float) -> str:
    return f"{x: .17e}"


def cmd_solve(args) -> int:
    cfg = SolverConfig(args.method, args.c_deflate, args.c_term)
    fh = sys.stdin if args.infile == "-" else open(args.infile)
    with fh:
        lines = fh.readlines()
    first = True
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        S = _parse_matrix_line(line, lineno)
        E = solve(S, cfg)
        if not first:
            print()
        first = False
        print("lambda", *(_fmt(x) for x in E.lam))
        for row in E.V.tolist():
            print("V     ", *(_fmt(x) for x in row))
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.n < 1 or args.seed < 0 or args.jobs < 1:
        raise UsageError("--n and --jobs must be positive and --seed non-negative")
    cfg = RunConfig(n_matrices=args.n, dist=args.dist, seed=args.seed, method=args.method,
                    c_deflate=args.c_deflate, c_term=args.c_term, output_path=args.out,
                    jobs=args.jobs)
    result = run_comparison(cfg)
    print(f"{cfg.n_matrices} matrices, dist={cfg.dist.value}, method={cfg.method.value}, "
          f"{result.seconds:.2f}s")
    for name, stats in result.summary.items():
        print(f"  {name:<11} max={stats['max']:.3e} median={stats['median']:.3e}")
    return EXIT_OK


def cmd_diff(args) -> int:
    records = read_records(args.infile)
    orth, resid = sorted_differences(records)
    p_orth, p_resid = difference_paths(args.out)
    write_differences(orth, p_orth)
    write_differences(resid, p_resid)
    for label, d in (("orth", orth), ("resid", resid)):
        n_neg = int((d < 0).sum())
        print(f"{label}: {len(d)} trials, main worse on {n_neg}, main better on {int((d > 0).sum())}")
    print(f"wrote {p_orth} and {p_resid}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"solve": cmd_solve, "bench": cmd_bench, "diff": cmd_diff}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"arrow3: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"arrow3: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError, IndexError) as exc:
        if args.command == "diff":
            print(f"arrow3: malformed input: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"arrow3: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverFault as exc:
        print(f"arrow3: internal solver fault: {exc}", file=sys.stderr)
        return EXIT_FAULT


if __name__ == "__main__":
    sys.exit(main())
