"""Command-line front end: eval, blocks, pim and verify."""

from __future__ import annotations

import argparse
import json
import sys

from .arith import check_prime
from .blocks import CapExceeded, DEFAULT_DIM_CAP, block_decomposition, check_cap, dot_graph, parse_bits, pim_report
from .expr import ParseError, parse_element
from .idempotents import parse_tuple
from .verify import GRID, CHECK_NAMES, RunSettings, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def cmd_eval(args) -> tuple[int, str]:
    e = parse_element(args.expr, args.p)
    r = args.r if args.r is not None else max(1, e.level)
    flags = {"in_U_r": e.in_u(r), "in_A_r": e.in_a(r), "in_U0_r": e.in_u0(r)}
    if args.format == "json":
        return EXIT_OK, _dump({"p": args.p, "r": r, "element": str(e), **flags})
    if args.format == "dot":
        raise UsageError("eval has no dot format")
    names = {"in_U_r": "U_r", "in_A_r": "A_r", "in_U0_r": "U_r^0"}
    members = " ".join(f"{names[k]}={'yes' if v else 'no'}" for k, v in flags.items())
    print(f"# r={r} {members}", file=sys.stderr)
    return EXIT_OK, str(e)


def cmd_blocks(args) -> tuple[int, str]:
    check_cap(args.p, args.r, args.dim_cap)
    if args.format == "dot":
        # one graph per block: the regular module A_r E, i.e. the PIM of eps = 0
        from .idempotents import tuples

        graphs = [dot_graph((0,) * args.r, t) for t in tuples(args.p, args.r)]
        return EXIT_OK, "\n\n".join(graphs)
    reports = block_decomposition(args.p, args.r, args.dim_cap, oracle=args.level == "full")
    status = EXIT_OK if all(rep.ok for rep in reports) else EXIT_FAIL
    if args.format == "json":
        return status, _dump([rep.to_json() for rep in reports])
    total = sum(rep.dim for rep in reports)
    lines = [rep.to_text() for rep in reports]
    lines.append(f"{len(reports)} blocks, total dimension {total} = p^(2r) = {args.p ** (2 * args.r)}")
    return status, "\n".join(lines)


def cmd_pim(args) -> tuple[int, str]:
    check_cap(args.p, args.r, args.dim_cap)
    if args.pairs is None or args.eps is None:
        raise UsageError("pim needs --pairs and --eps")
    tup = parse_tuple(args.pairs, args.p)
    if tup.r != args.r:
        raise UsageError(f"--pairs has {tup.r} pairs but --r is {args.r}")
    eps = parse_bits(args.eps)
    if args.format == "dot":
        return EXIT_OK, dot_graph(eps, tup)
    rep = pim_report(tup, eps, oracle=args.level == "full")
    status = EXIT_OK if rep.ok else EXIT_FAIL
    return status, _dump(rep.to_json()) if args.format == "json" else rep.to_text()


def cmd_verify(args) -> tuple[int, str]:
    if args.format == "dot":
        raise UsageError("verify has no dot format")
    grid = [(args.p, args.r)] if args.p is not None else list(GRID)
    for p, r in grid:
        check_cap(p, r, args.dim_cap)
    only = args.check or None
    results = []
    for p, r in grid:
        cfg = RunSettings(p, r, seed=args.seed, oracle_degree=args.oracle_degree)
        results += run_checks(cfg, args.level, only)
    passed = all(res.passed for res in results)
    status = EXIT_OK if passed else EXIT_FAIL
    if args.format == "json":
        summary = {
            "level": args.level,
            "seed": args.seed,
            "passed": passed,
            "checks": [res.to_json() for res in results],
        }
        return status, _dump(summary)
    lines = []
    for res in results:
        mark = "PASS" if res.passed else "FAIL"
        lines.append(f"{mark} {res.name} p={res.p} r={res.r} {res.seconds:.2f}s  {res.detail}")
        if not res.passed:
            lines.append(f"     reproduce: {res.reproduce}")
    n_ok = sum(res.passed for res in results)
    lines.append(f"{n_ok}/{len(results)} checks passed")
    return status, "\n".join(lines)


def _prime(text: str) -> int:
    try:
        return check_prime(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} is not a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sl2hyper", description="Idempotents and blocks of sl2 hyperalgebras mod p.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--dim-cap", type=_positive, default=DEFAULT_DIM_CAP)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--oracle-degree", type=int, default=None, help="degree bound D (default 2p^r)")
    common.add_argument("--level", choices=("quick", "full"), default="full")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate an element expression")
    p_eval.add_argument("expr")
    p_eval.add_argument("--p", type=_prime, required=True)
    p_eval.add_argument("--r", type=_positive, default=None)

    for name, text in (("blocks", "report every block of A_r"), ("pim", "report one projective indecomposable")):
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.add_argument("--p", type=_prime, required=True)
        sp.add_argument("--r", type=_positive, default=1)
        if name == "pim":
            sp.add_argument("--pairs", required=True, help="comma-joined a:2j pairs")
            sp.add_argument("--eps", required=True, help="bit string eps_0 ... eps_(r-1)")

    p_ver = sub.add_parser("verify", parents=[common], help="run the named verification checks")
    p_ver.add_argument("--p", type=_prime, default=None, help="omit to run the whole default grid")
    p_ver.add_argument("--r", type=_positive, default=1)
    p_ver.add_argument("--check", action="append", choices=CHECK_NAMES, help="run only this check (repeatable)")
    return parser


COMMANDS = {"eval": cmd_eval, "blocks": cmd_blocks, "pim": cmd_pim, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status, text = COMMANDS[args.command](args)
    except CapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
