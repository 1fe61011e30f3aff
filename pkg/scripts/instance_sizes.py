"""Tabulate encoding sizes (variables, clauses) for a few (l, C) pairs and both encodings."""

import argparse

from edpsat.encoder import EncodeParams, streamed_stats

DEFAULT = [(11, 1), (12, 1), (100, 2), (1160, 2), (1161, 2), (13000, 3)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pair", nargs=2, type=int, action="append", metavar=("L", "C"))
    args = ap.parse_args()
    print(f"{'l':>6} {'C':>2} {'max_d':>6} {'encoding':>8} {'vars':>9} {'clauses':>10}")
    for l, C in args.pair or DEFAULT:
        for kind in ("unary", "binary"):
            p = EncodeParams(l, C, encoding_kind=kind)
            v, c = streamed_stats(p)
            print(f"{l:>6} {C:>2} {p.max_d:>6} {kind:>8} {v:>9} {c:>10}")


if __name__ == "__main__":
    main()
