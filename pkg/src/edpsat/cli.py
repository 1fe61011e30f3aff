"""Command line interface.

Exit codes: 0 affirmative, 1 definitive negative, 2 usage or configuration
error, 3 undecided (budget, timeout, unparseable solver output).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import oracle
from .cnf import Sat, Unknown, Unsat, VarMap, parse_model, read_dimacs, write_dimacs
from .core import discrepancy, format_sequence, parse_sequence
from .decoder import audit_model, decode_model
from .encoder import ENCODINGS, EncodeParams, encode
from .solver import (
    DEFAULT_CONFLICT_BUDGET,
    SOLVER_ENV,
    RupProof,
    SolverConfigError,
    check_rup,
    solve_external,
    solve_with_proof,
)
from .solver.external import default_command

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


def _err(*args) -> None:
    print(*args, file=sys.stderr)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _params(args) -> EncodeParams:
    return EncodeParams(args.length, args.disc, args.max_d, args.encoding)


def cmd_encode(args) -> int:
    f, vm = encode(_params(args))
    write_dimacs(f, args.out)
    print(f"variables {f.num_vars}")
    print(f"clauses {f.num_clauses}")
    return EXIT_OK


def cmd_solve(args) -> int:
    params = _params(args)
    _err(
        f"c l={params.l} C={params.C} encoding={params.encoding_kind} max_d={params.max_d} "
        f"solver={args.solver} budget={args.budget} timeout={args.timeout}"
    )
    f, vm = encode(params)
    _err(f"c variables={f.num_vars} clauses={f.num_clauses}")
    if args.solver == "internal":
        outcome, proof = solve_with_proof(f, budget=args.budget, seed=args.seed)
        if args.proof and isinstance(outcome, Unsat):
            with open(args.proof, "w") as fh:
                fh.write(proof.to_text())
    elif args.solver.startswith("exec:"):
        command = args.solver[len("exec:") :] or default_command()
        if not command:
            _err(f"error: no solver command given and {SOLVER_ENV} is not set")
            return EXIT_USAGE
        try:
            outcome, _ = solve_external(command, f, timeout=args.timeout, required=params.l)
        except SolverConfigError as exc:
            _err(f"error: {exc}")
            return EXIT_USAGE
    else:
        _err(f"error: unknown solver {args.solver!r} (use 'internal' or 'exec:CMD')")
        return EXIT_USAGE

    if isinstance(outcome, Unsat):
        print("UNSAT")
        return EXIT_NEGATIVE
    if isinstance(outcome, Unknown):
        print(f"UNKNOWN {outcome.reason}")
        return EXIT_UNKNOWN
    seq = decode_model(vm, outcome.assignment)
    report = discrepancy(seq)
    if report.value > params.C:
        raise RuntimeError(f"decoded sequence has discrepancy {report.value} > {params.C}")
    text = format_sequence(seq)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    _err(f"c discrepancy {report.value} (d={report.witness_d}, k={report.witness_k})")
    return EXIT_OK


def cmd_verify(args) -> int:
    seq = parse_sequence(_read(args.seq))
    report = discrepancy(seq)
    print(f"length {len(seq)}")
    print(f"discrepancy {report.value}")
    if report.witness_d is not None:
        print(f"witness d={report.witness_d} k={report.witness_k}")
    return EXIT_OK if report.value <= args.disc else EXIT_NEGATIVE


def cmd_decode(args) -> int:
    f = read_dimacs(args.cnf)
    vm = VarMap.from_comments(f.comments)
    outcome = parse_model(_read(args.model), num_vars=vm.num_vars, required=vm.l)
    if isinstance(outcome, Unsat):
        print("UNSAT")
        return EXIT_NEGATIVE
    if isinstance(outcome, Unknown):
        print(f"UNKNOWN {outcome.reason}")
        return EXIT_UNKNOWN
    if args.audit:
        report = audit_model(vm, outcome.assignment)
        for v in report.violations:
            _err(f"c audit: {v}")
        _err("c audit: pass" if report.passed else f"c audit: {len(report.violations)} violations")
    sys.stdout.write(format_sequence(decode_model(vm, outcome.assignment)))
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        if args.length is not None:
            res = oracle.exists_sequence(args.length, args.disc, budget=args.budget)
            print(f"exists {'true' if res.exists else 'false'}")
            if res.exists:
                sys.stdout.write(format_sequence(res.witness))
            return EXIT_OK if res.exists else EXIT_NEGATIVE
        res = oracle.max_length(args.disc, args.max_length, budget=args.budget)
        suffix = " (cap reached)" if res.reached_cap else ""
        print(f"max-length {res.length}{suffix}")
        sys.stdout.write(format_sequence(res.witness))
        return EXIT_OK
    except oracle.OracleBudgetExceeded as exc:
        print(f"UNKNOWN budget: {exc}")
        return EXIT_UNKNOWN


def cmd_check_rup(args) -> int:
    f = read_dimacs(args.cnf)
    proof = RupProof.from_text(_read(args.proof))
    result = check_rup(f, proof, honor_deletions=not args.ignore_deletions)
    if result.accepted:
        print("accepted")
        return EXIT_OK
    print(f"rejected step {result.failed_step}" if result.failed_step else f"rejected: {result.reason}")
    return EXIT_NEGATIVE


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edpsat", description="SAT encodings for low-discrepancy ±1 sequences"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def instance(p):
        p.add_argument("--length", "-l", type=_positive, required=True)
        p.add_argument("--disc", "-C", type=_positive, required=True)
        p.add_argument("--encoding", choices=ENCODINGS, default="binary")
        p.add_argument("--max-d", type=_positive, default=None)

    p = sub.add_parser("encode", help="write the CNF encoding as DIMACS")
    instance(p)
    p.add_argument("--out", "-o", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("solve", help="encode, solve and decode")
    instance(p)
    p.add_argument("--solver", default="internal", help="'internal' or 'exec:CMD'")
    p.add_argument("--budget", type=_positive, default=DEFAULT_CONFLICT_BUDGET,
                   help="conflict limit for the internal solver")
    p.add_argument("--timeout", type=float, default=None, help="seconds, external solver only")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--proof", help="write a RUP proof here when the internal solver finds UNSAT")
    p.add_argument("--out", "-o", help="also write the sequence to this file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="compute the discrepancy of a sequence file")
    p.add_argument("--seq", required=True, help="sequence text file, '-' for stdin")
    p.add_argument("--disc", "-C", type=_positive, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decode", help="turn a model of an encoded CNF into a sequence")
    p.add_argument("--cnf", required=True)
    p.add_argument("--model", required=True, help="solver output or bare literal list")
    p.add_argument("--audit", action="store_true", help="cross-check state variables")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("oracle", help="exhaustive search for small instances")
    p.add_argument("--disc", "-C", type=_positive, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--length", "-l", type=int)
    g.add_argument("--max-length", type=int, metavar="CAP")
    p.add_argument("--budget", type=_positive, default=oracle.DEFAULT_BUDGET, help="node limit")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("check-rup", help="check a RUP/DRUP refutation of a CNF")
    p.add_argument("--cnf", required=True)
    p.add_argument("--proof", required=True)
    p.add_argument("--ignore-deletions", action="store_true")
    p.set_defaults(func=cmd_check_rup)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
