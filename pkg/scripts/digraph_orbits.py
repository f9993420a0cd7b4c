"""Count isomorphism types of small binary relations via canonical Scott sentences.

Prints one line per size: labeled count, distinct sentences, brute-force orbit
count (when small enough), and the time spent on sentences.
"""

import argparse
import itertools
import time

from scottkit.core import FiniteStructure, Signature, brute_force_iso, scott_sentence

SIG = Signature.of(("E", 2))


def relations(n: int, loops: bool):
    pairs = [p for p in itertools.product(range(n), repeat=2) if loops or p[0] != p[1]]
    for bits in range(2 ** len(pairs)):
        yield FiniteStructure.build(SIG, n, {"E": [p for i, p in enumerate(pairs) if bits >> i & 1]})


def orbit_count(structs) -> int:
    reps = []
    for m in structs:
        if not any(brute_force_iso(m, r) for r in reps):
            reps.append(m)
    return len(reps)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--no-loops", action="store_true", help="digraphs without self-loops")
    ap.add_argument("--oracle-limit", type=int, default=600, help="skip brute force above this many structures")
    args = ap.parse_args()
    for n in range(1, args.max_size + 1):
        structs = list(relations(n, not args.no_loops))
        t0 = time.perf_counter()
        sentences = len({scott_sentence(m) for m in structs})
        dt = time.perf_counter() - t0
        oracle = orbit_count(structs) if len(structs) <= args.oracle_limit else "-"
        print(f"n={n} labeled={len(structs)} sentences={sentences} oracle={oracle} time={dt:.2f}s")


if __name__ == "__main__":
    main()
