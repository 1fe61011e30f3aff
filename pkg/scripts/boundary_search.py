"""Find the longest discrepancy-C sequence by solving for increasing lengths.

    python3 scripts/boundary_search.py --disc 1
    python3 scripts/boundary_search.py --disc 2 --start 1100 --solver "exec:python3 scripts/pysat_solver.py"

Stops at the first UNSAT length and prints the last SAT sequence. With the
internal solver this is practical for C = 1 and for short C = 2 ranges.
"""

import argparse
import sys
import time

from edpsat.core import discrepancy, format_sequence
from edpsat.decoder import decode_model
from edpsat.encoder import EncodeParams, encode
from edpsat.solver import Sat, Unsat, solve_external, solve_internal


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--disc", type=int, required=True)
    ap.add_argument("--start", type=int, default=1)
    ap.add_argument("--stop", type=int, default=2000)
    ap.add_argument("--encoding", default="binary", choices=["unary", "binary"])
    ap.add_argument("--solver", default="internal")
    ap.add_argument("--budget", type=int, default=200_000)
    args = ap.parse_args()

    last = None
    for l in range(args.start, args.stop + 1):
        f, vm = encode(EncodeParams(l, args.disc, encoding_kind=args.encoding))
        t = time.perf_counter()
        if args.solver == "internal":
            out = solve_internal(f, budget=args.budget)
        else:
            out, _ = solve_external(args.solver.removeprefix("exec:"), f, required=l)
        dt = time.perf_counter() - t
        print(f"l={l:5d} vars={f.num_vars:7d} clauses={f.num_clauses:8d} {out.status:7s} {dt:8.2f}s",
              file=sys.stderr)
        if isinstance(out, Sat):
            last = decode_model(vm, out.assignment)
            assert discrepancy(last).value <= args.disc
        elif isinstance(out, Unsat):
            print(f"longest discrepancy-{args.disc} sequence: {l - 1}")
            if last is not None:
                sys.stdout.write(format_sequence(last))
            return 0
        else:
            print(f"undecided at l={l}: {out.reason}")
            return 3
    print(f"no UNSAT length up to {args.stop}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
