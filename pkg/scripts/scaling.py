"""Diagram size and build time as n grows at fixed rank, lrw family.

    python3 scripts/scaling.py --k 5 --n 20 40 80 160
"""

import argparse
import time

from feynmandd.families import gen_lrw_family
from feynmandd.mtbdd import build_level_by_level, count_solutions
from feynmandd.ordering import greedy_ordering, variable_graph
from feynmandd.sop import extract_sop, substitute_externals


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--n", type=int, nargs="+", default=[20, 40, 80, 160])
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)
    print(f"{'n':>5} {'width':>5} {'nodes':>8} {'nodes/n':>8} {'build s':>8} {'count s':>8}")
    for n in a.n:
        p = substitute_externals(extract_sop(gen_lrw_family(n, a.k, a.seed))).polynomial
        o = greedy_ordering(variable_graph(p))
        t0 = time.perf_counter()
        d = build_level_by_level(p, o)
        t1 = time.perf_counter()
        count_solutions(d)
        t2 = time.perf_counter()
        print(f"{n:5d} {o.width:5d} {len(d):8d} {len(d) / n:8.1f} {t1 - t0:8.3f} {t2 - t1:8.3f}")


if __name__ == "__main__":
    main()
