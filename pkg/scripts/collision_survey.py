"""Measure Pr[c(u) = c(v)] over nonadjacent pairs of every k-critical graph in a corpus.

Reports, per critical graph, the largest collision probability and whether it
stays below 1/(k-1). Output is JSON lines; the last line is a summary.

    python scripts/collision_survey.py data/connected7.g6 data/connected8.g6
"""

import argparse
import json
from dataclasses import dataclass
from fractions import Fraction

from chroma.chromatic import chromatic_number
from chroma.criticality import collision_probability, is_k_critical
from chroma.graph import parse_graph6


@dataclass
class SurveyConfig:
    corpora: list
    min_k: int = 3


def survey(cfg: SurveyConfig):
    above = total = 0
    for path in cfg.corpora:
        for line in open(path).read().split():
            G = parse_graph6(line)
            k = chromatic_number(G)
            if k < cfg.min_k or G.min_degree() < k - 1 or not is_k_critical(G, k).is_critical:
                continue
            pairs = [(u, v) for v in range(G.n) for u in range(v) if not G.has_edge(u, v)]
            probs = {p: collision_probability(G, k, *p) for p in pairs}
            worst = max(probs.values(), default=Fraction(0))
            total += 1
            above += worst >= Fraction(1, k - 1)
            print(json.dumps({"id": line, "n": G.n, "k": k, "max_collision": str(worst),
                              "threshold": str(Fraction(1, k - 1)), "below": worst < Fraction(1, k - 1)}))
    print(json.dumps({"critical_graphs": total, "at_or_above_threshold": above}))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpora", nargs="+")
    ap.add_argument("--min-k", type=int, default=3)
    args = ap.parse_args()
    survey(SurveyConfig(args.corpora, args.min_k))


if __name__ == "__main__":
    main()
