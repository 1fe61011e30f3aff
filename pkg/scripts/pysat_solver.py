"""Competition-format front end for the solvers bundled with python-sat.

    EDPSAT_SOLVER="python3 scripts/pysat_solver.py --name cadical153" edpsat solve -l 1160 -C 2 --solver exec:

Prints an s-line and v-lines on stdout and exits 10/20 like a competition solver.
"""

import argparse
import sys

from pysat.formula import CNF
from pysat.solvers import Solver


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--name", default="cadical153")
    parser.add_argument("cnf")
    args = parser.parse_args()
    cnf = CNF(from_file=args.cnf)
    with Solver(name=args.name, bootstrap_with=cnf.clauses) as s:
        if s.solve():
            print("s SATISFIABLE")
            print("v " + " ".join(map(str, s.get_model())) + " 0")
            sys.stdout.flush()
            sys.exit(10)
        print("s UNSATISFIABLE")
        sys.exit(20)


if __name__ == "__main__":
    main()
