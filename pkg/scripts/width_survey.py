"""Compare natural, greedy and exhaustive ordering widths on random graphs.

    python3 scripts/width_survey.py --n 6 8 10 --density 0.2 0.5 --samples 20
"""

from __future__ import annotations

import argparse
import itertools
import random
import statistics
from dataclasses import dataclass, field

from feynmandd.ordering import VariableGraph, exhaustive_lrw, greedy_ordering, natural_ordering


@dataclass
class SurveyConfig:
    ns: list[int] = field(default_factory=lambda: [6, 8, 10])
    densities: list[float] = field(default_factory=lambda: [0.2, 0.5, 0.8])
    samples: int = 20
    seed: int = 0


def random_graph(rng: random.Random, n: int, p: float) -> VariableGraph:
    return VariableGraph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def survey(cfg: SurveyConfig):
    rng = random.Random(cfg.seed)
    for n in cfg.ns:
        for p in cfg.densities:
            gaps, nat, opt = [], [], []
            for _ in range(cfg.samples):
                g = random_graph(rng, n, p)
                best = exhaustive_lrw(g).width
                gaps.append(greedy_ordering(g).width - best)
                nat.append(natural_ordering(g).width)
                opt.append(best)
            yield n, p, statistics.mean(nat), statistics.mean(opt), statistics.mean(gaps), max(gaps)


def main(argv=None):
    ap = argparse.ArgumentParser(description="ordering width survey")
    ap.add_argument("--n", type=int, nargs="+", default=[6, 8, 10])
    ap.add_argument("--density", type=float, nargs="+", default=[0.2, 0.5, 0.8])
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)
    cfg = SurveyConfig(a.n, a.density, a.samples, a.seed)
    print(f"{'n':>3} {'p':>5} {'natural':>8} {'optimal':>8} {'greedy gap':>11} {'worst gap':>10}")
    for n, p, nat, opt, gap, worst in survey(cfg):
        print(f"{n:3d} {p:5.2f} {nat:8.2f} {opt:8.2f} {gap:11.2f} {worst:10d}")


if __name__ == "__main__":
    main()
