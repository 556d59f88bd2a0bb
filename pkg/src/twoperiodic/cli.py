"""Command line interface: ``twoperiodic <command> [flags]``.

Exit codes: 0 all checks as expected (verified by default), 1 only
hypothesis_not_met/verified differences from expectations, 2 inconclusive,
3 refuted, 4 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from . import fpmodule as fp
from .casefile import CaseError, parse_case
from .invariants import (
    HypothesisError, NoNZDFound, classify_torsionless_reflexive, rank_report, theta,
    torsion_submodule,
)
from .resolution import depth, ext, is_two_periodic, resolve, resolve_over_S, tor
from .verifier import CHECKERS, INCONCLUSIVE, REFUTED, VERIFIED, run_checker

SCHEMA_VERSION = 1
EXIT_OK, EXIT_MISMATCH, EXIT_INCONCLUSIVE, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--case", help="case file")
    common.add_argument("--length", type=int, default=6, help="resolution truncation (default 6)")
    common.add_argument("--trials", type=int, default=32, help="isomorphism trials (default 32)")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--report", help="write a JSON report to this path")
    common.add_argument("--max-degree", type=int, default=12,
                        help="degree cutoff of the linear-algebra oracle (default 12)")

    parser = _Parser(prog="twoperiodic", description="Graded modules over quotient rings and "
                     "machine checks for two-periodic modules.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("resolve", parents=[common], help="minimal free resolution and Betti numbers")
    p.add_argument("--module", required=True)

    p = sub.add_parser("invariants", parents=[common], help="depth, rank, torsion, periodicity")
    p.add_argument("--module", required=True)

    for name in ("tor", "ext"):
        p = sub.add_parser(name, parents=[common], help=f"{name.capitalize()} lengths")
        p.add_argument("--left", required=True)
        p.add_argument("--right", required=True)
        p.add_argument("--index", type=int, help="single index (default 0..length-1)")
        p.add_argument("--oracle", action="store_true",
                       help="cross-check against the degreewise linear-algebra oracle")

    p = sub.add_parser("theta", parents=[common], help="theta pairing")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = sub.add_parser("verify", parents=[common], help="run checkers of one case file")
    p.add_argument("--checker", help="checker id (default: the case file's [check.*] sections)")
    p.add_argument("--module")
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--q", type=int, default=2)

    p = sub.add_parser("corpus", parents=[common], help="run every case file of a directory")
    p.add_argument("--dir", required=True)
    p.add_argument("--jobs", type=int, default=1)
    return parser


# -- helpers ---------------------------------------------------------------------------

def _case_seed(seed: int, case: str, check: str) -> int:
    return (zlib.crc32(f"{case}/{check}".encode()) ^ seed) & 0x7FFFFFFF


def _need_case(args):
    if not args.case:
        raise UsageError("--case is required")
    return parse_case(args.case)


def _exit_code(results) -> int:
    """results: list of (status, expected)."""
    statuses = [s for s, _ in results]
    if REFUTED in statuses:
        return EXIT_REFUTED
    if INCONCLUSIVE in statuses:
        return EXIT_INCONCLUSIVE
    if any(s != (e or VERIFIED) for s, e in results):
        return EXIT_MISMATCH
    return EXIT_OK


def _write_report(path, payload):
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _envelope(command, seed, body, elapsed):
    return {"schema_version": SCHEMA_VERSION, "tool": "twoperiodic", "version": __version__,
            "command": command, "seed": seed, **body, "timing": {"seconds": round(elapsed, 3)}}


def run_case_checks(path: str, seed: int, trials: int, only=None):
    """Run the [check.*] sections of one case file; returns a JSON-able record."""
    case = parse_case(path)
    reports = []
    for name, sec in case.checks.items():
        if only and name not in only:
            continue
        checker = sec.get("checker")
        if sec.get("module"):
            names = [sec.get("module")]
        else:
            names = [sec.get("left"), sec.get("right")]
        mods = [case.module(n) for n in names]
        q = int(sec.get("q") or 2)
        rep = run_checker(checker, mods, q=q, declared_period=case.declared_period(names[0]),
                          case=f"{case.name}/{name}", trials=trials,
                          seed=_case_seed(seed, case.name, name))
        entry = rep.to_json()
        entry["check"] = name
        entry["modules"] = names
        entry["expect"] = sec.get("expect")
        entry["as_expected"] = rep.status == (sec.get("expect") or VERIFIED)
        reports.append(entry)
    reports.sort(key=lambda r: (r["checker"], r["check"]))
    return {"case": case.name, "file": Path(path).name, "reports": reports}


def _summary(cases):
    counts = {}
    for c in cases:
        for r in c["reports"]:
            counts[r["status"]] = counts.get(r["status"], 0) + 1
    counts["total"] = sum(counts.values())
    counts["unexpected"] = sum(1 for c in cases for r in c["reports"] if not r["as_expected"])
    return counts


# -- commands ---------------------------------------------------------------------------

def cmd_resolve(args, out):
    case = _need_case(args)
    M = case.module(args.module)
    res = resolve(M, args.length)
    body = {"module": args.module, "resolution": res.to_json(args.length),
            "resolution_over_S": resolve_over_S(M).to_json(M.ring.nvars)}
    print(f"Betti numbers of {args.module} (length {args.length}): "
          f"{res.betti_numbers(args.length)}", file=out)
    for i in range(1, min(args.length, res.length) + 1):
        print(f"  d{i} = {res.format_matrix(i)}", file=out)
    print(f"Betti numbers over S: {resolve_over_S(M).betti_numbers(M.ring.nvars)}", file=out)
    return EXIT_OK, body


def cmd_invariants(args, out):
    case = _need_case(args)
    M = case.module(args.module)
    body = {"module": args.module, "hilbert": M.hilbert.to_json(), "depth": depth(M)}
    if not M.is_zero:
        body["two_periodic"] = is_two_periodic(M, trials=args.trials, seed=args.seed).to_json()
    try:
        body["rank"] = rank_report(M).to_json()
    except HypothesisError as e:
        body["rank"] = {"error": str(e)}
    try:
        T = torsion_submodule(M)
        body["torsion_length"] = T.length
    except NoNZDFound as e:
        body["torsion_length"] = {"error": str(e)}
    body["reflexivity"] = classify_torsionless_reflexive(M).to_json()
    for k, v in body.items():
        print(f"{k}: {json.dumps(v, sort_keys=True)}", file=out)
    return EXIT_OK, body


def _homology_cmd(args, out, kind):
    case = _need_case(args)
    M, N = case.module(args.left), case.module(args.right)
    fn = tor if kind == "tor" else ext
    indices = [args.index] if args.index is not None else list(range(args.length))
    rows = []
    mismatch = False
    oracle = None
    if args.oracle:
        from .degreewise import Oracle
        oracle = Oracle(M.ring, args.max_degree)
    for i in indices:
        H = fn(M, N, i)
        row = {"index": i, "length": H.length, "hilbert": H.hilbert.to_json()}
        if oracle is not None:
            lo = -2 * args.max_degree
            dims = (oracle.tor_dims if kind == "tor" else oracle.ext_dims)(M, N, i, lo, args.max_degree)
            row["oracle_agrees"] = dims == H.hilbert.coefficients(lo, args.max_degree)
            mismatch |= not row["oracle_agrees"]
        rows.append(row)
        extra = "" if oracle is None else f"  oracle {'ok' if row['oracle_agrees'] else 'MISMATCH'}"
        length = "infinite" if H.length is None else H.length
        print(f"{kind.capitalize()}_{i}({args.left}, {args.right}): length {length}{extra}", file=out)
    return (EXIT_REFUTED if mismatch else EXIT_OK), {"kind": kind, "left": args.left,
                                                     "right": args.right, "values": rows}


def cmd_theta(args, out):
    case = _need_case(args)
    M, N = case.module(args.left), case.module(args.right)
    try:
        th = theta(M, N, trials=args.trials, seed=args.seed)
    except HypothesisError as e:
        print(f"theta undefined: {e}", file=out)
        return EXIT_MISMATCH, {"left": args.left, "right": args.right, "error": str(e),
                               "hypothesis": e.hypothesis}
    print(f"Theta({args.left}, {args.right}) = {th.value:+d}", file=out)
    return EXIT_OK, {"left": args.left, "right": args.right, "theta": th.to_json()}


def _print_reports(cases, out):
    for c in cases:
        for r in c["reports"]:
            flag = "" if r["as_expected"] else f"  (expected {r['expect'] or VERIFIED})"
            print(f"{c['case']:>14} {r['check']:<22} {r['checker']:<6} {r['status']}{flag}", file=out)


def cmd_verify(args, out):
    case = _need_case(args)
    if args.checker:
        names = [args.module] if args.module else [args.left, args.right]
        if any(n is None for n in names):
            raise UsageError("give --module or both --left and --right")
        mods = [case.module(n) for n in names]
        try:
            rep = run_checker(args.checker, mods, q=args.q,
                              declared_period=case.declared_period(names[0]),
                              case=case.name, trials=args.trials, seed=args.seed)
        except (KeyError, ValueError) as e:
            raise UsageError(str(e)) from None
        entry = rep.to_json()
        entry.update(check="cli", modules=names, expect=None, as_expected=rep.status == VERIFIED)
        cases = [{"case": case.name, "file": Path(args.case).name, "reports": [entry]}]
        print(json.dumps(entry["witnesses"], sort_keys=True), file=out)
    else:
        cases = [run_case_checks(args.case, args.seed, args.trials)]
    _print_reports(cases, out)
    results = [(r["status"], r["expect"]) for c in cases for r in c["reports"]]
    return _exit_code(results), {"cases": cases, "summary": _summary(cases)}


def cmd_corpus(args, out):
    files = sorted(Path(args.dir).glob("*.case"))
    if not files:
        raise UsageError(f"no .case files in {args.dir}")
    for f in files:
        parse_case(f)          # fail fast on parse errors
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            cases = list(pool.map(run_case_checks, [str(f) for f in files],
                                  [args.seed] * len(files), [args.trials] * len(files)))
    else:
        cases = [run_case_checks(str(f), args.seed, args.trials) for f in files]
    _print_reports(cases, out)
    summary = _summary(cases)
    print("summary: " + ", ".join(f"{k}={v}" for k, v in sorted(summary.items())), file=out)
    results = [(r["status"], r["expect"]) for c in cases for r in c["reports"]]
    return _exit_code(results), {"cases": cases, "summary": summary}


COMMANDS = {"resolve": cmd_resolve, "invariants": cmd_invariants,
            "tor": lambda a, o: _homology_cmd(a, o, "tor"),
            "ext": lambda a, o: _homology_cmd(a, o, "ext"),
            "theta": cmd_theta, "verify": cmd_verify, "corpus": cmd_corpus}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.trials < 1 or args.length < 1:
            raise UsageError("--trials and --length must be positive")
        code, body = COMMANDS[args.command](args, out)
    except UsageError as e:
        print(f"usage error: {e}", file=err)
        return EXIT_USAGE
    except CaseError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    if args.report:
        _write_report(args.report, _envelope(args.command, args.seed, body,
                                             time.perf_counter() - start))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
