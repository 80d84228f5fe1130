#!/usr/bin/env python3
"""Census of the mutation graph of a quiver's cluster seed.

Reports how many distinct seeds (up to relabeling) and distinct cluster
variables appear at each breadth-first depth, then — with --principal —
the F-polynomial/g-vector table of the principal-coefficient seed along
every short mutation path.

Usage:
    python3 scripts/cluster_census.py [quivers/a3_frozen.json] [--max-depth 6]
    python3 scripts/cluster_census.py quivers/a2.json --principal --max-depth 4
"""

import argparse
import itertools
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from quiverqh.polycore import poly_to_text
from quiverqh.quiver import exchange_matrices, load_quiver
from quiverqh.cluster import (
    f_polynomial_and_g_vector,
    mutate,
    principal_seed,
    seed_from_quiver,
    separation_check,
)


def census(seed0, max_depth: int) -> None:
    seen = {seed0.unlabeled_key()}
    texts = set(seed0.variable_texts())
    frontier = [seed0]
    print(f"depth 0: seeds 1, variables {len(texts)}")
    for depth in range(1, max_depth + 1):
        nxt = []
        for s in frontier:
            for k in range(1, s.n + 1):
                s2 = mutate(s, k)
                key = s2.unlabeled_key()
                if key in seen:
                    continue
                seen.add(key)
                texts.update(s2.variable_texts())
                nxt.append(s2)
        frontier = nxt
        print(f"depth {depth}: seeds {len(seen)}, variables {len(texts)}"
              + ("  (stable)" if not nxt else ""))
        if not nxt:
            break
    print("\ndistinct cluster variables:")
    for t in sorted(texts):
        print("  ", t)


def principal_table(b, max_depth: int) -> None:
    s0 = principal_seed(b)
    n = s0.n
    print("path".ljust(14), "k", "g-vector".ljust(12), "separated", "F-polynomial")
    for length in range(0, max_depth + 1):
        for path in itertools.product(range(1, n + 1), repeat=length):
            if any(path[i] == path[i + 1] for i in range(len(path) - 1)):
                continue  # immediate backtracking repeats the previous seed
            for k in range(1, n + 1):
                f, g = f_polynomial_and_g_vector(s0, path, k)
                sep = separation_check(s0, path, k)
                print(str(list(path)).ljust(14), k,
                      str(list(g)).ljust(12),
                      ("yes" if sep else "NO").ljust(9),
                      poly_to_text(f))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("quiver", nargs="?", default="quivers/a3_frozen.json")
    ap.add_argument("--max-depth", type=int, default=6)
    ap.add_argument("--principal", action="store_true",
                    help="tabulate F-polynomials of the principal seed")
    args = ap.parse_args()

    q = load_quiver(args.quiver)
    if args.principal:
        b, _, _ = exchange_matrices(q)
        principal_table(b, args.max_depth)
    else:
        seed0, node_order = seed_from_quiver(q)
        print(f"== {args.quiver}: variable slots follow nodes {node_order} ==")
        census(seed0, args.max_depth)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
