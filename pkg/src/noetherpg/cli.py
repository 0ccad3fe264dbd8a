"""Command line entry point: run the case scripts and write a report."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .certpipe import RunConfig, RunConfigError, run_all
from .certpipe.common import DEFAULT_ORACLE_DEPTH


def _int_list(text: str) -> tuple[int, ...]:
    """``"3,5"`` or ``"4-6"`` or a mix such as ``"3,5-6"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = (int(x) for x in part.split("-", 1))
                out.extend(range(lo, hi + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list or range: {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return tuple(sorted(set(out)))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="noetherpg",
        description="Verify the rationality constructions for p-groups with a cyclic subgroup of index p^2 "
                    "and emit per-instance certificates.")
    ap.add_argument("--p", type=_int_list, help="primes, e.g. 3,5 (default 2,3,5)")
    ap.add_argument("--n", type=_int_list, help="n values, e.g. 4-6 (default: the desk-scale grid per prime)")
    ap.add_argument("--theorem", choices=["3.1", "3.2"], help="restrict to the odd (3.1) or p = 2 (3.2) families")
    ap.add_argument("--family", type=_int_list, help="family indices, e.g. 1,5")
    ap.add_argument("--all", action="store_true", help="the full default grid (the default when no filter is given)")
    ap.add_argument("--report", choices=["json", "md"], default="json")
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--oracle-depth", type=int, default=DEFAULT_ORACLE_DEPTH,
                    help="exponent bound for the brute-force fixed-lattice oracle")
    ap.add_argument("--jobs", type=int, default=1)
    return ap


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.all:
        return RunConfig(report_format=args.report, oracle_depth=args.oracle_depth, jobs=args.jobs)
    primes = args.p or (2, 3, 5)
    if args.theorem == "3.2" and args.p is None:
        primes = (2,)
    elif args.theorem == "3.1" and args.p is None:
        primes = (3, 5)
    return RunConfig(primes=primes, n_values=args.n, theorem=args.theorem, families=args.family,
                     report_format=args.report, oracle_depth=args.oracle_depth, jobs=args.jobs)


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except RunConfigError as e:
        ap.error(str(e))
    report = run_all(cfg)
    text = report.render()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    s = report.summary()
    print(f"{s['certificates']} certificates, {s['pass']} pass, {s['fail']} fail", file=sys.stderr)
    return 1 if report.failed else 0


if __name__ == "__main__":
    sys.exit(main())
