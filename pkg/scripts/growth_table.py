"""Table of level counts for the jump ladder, with enumeration where feasible."""

import argparse

from scottkit.combinators import Cap, CountOverflow, count_level, enumerate_level


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-level", type=int, default=4)
    ap.add_argument("--bases", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--caps", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--enum-limit", type=int, default=200_000)
    args = ap.parse_args()
    print(f"{'base':>4} {'cap':>3} {'k':>2}  {'count':>22}  enumerated")
    for b in args.bases:
        for cap in args.caps:
            for k in range(args.max_level + 1):
                try:
                    n = count_level(k, b, Cap(cap))
                except CountOverflow:
                    print(f"{b:>4} {cap:>3} {k:>2}  {'> 2^63-1':>22}  -")
                    break
                try:
                    e = len(enumerate_level(k, b, Cap(cap), args.enum_limit))
                except CountOverflow:
                    e = "-"
                print(f"{b:>4} {cap:>3} {k:>2}  {n:>22}  {e}")


if __name__ == "__main__":
    main()
