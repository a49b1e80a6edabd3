#!/usr/bin/env python3
"""Generate graph6 corpora of all connected graphs on n vertices, up to isomorphism.

Every connected graph on n vertices has a non-cut vertex, so extending each
connected graph on n-1 vertices by one vertex (joined to a nonempty subset)
reaches every isomorphism class; pynauty certificates remove duplicates.

    python scripts/make_corpus.py --max-n 8 --out data
"""

import argparse
from pathlib import Path

import pynauty

from chroma.graph import Graph, encode_graph6

# OEIS A001349
KNOWN_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117, 9: 261080}


def certificate(G: Graph) -> bytes:
    adjacency = {v: G.neighbors(v) for v in range(G.n)}
    return pynauty.certificate(pynauty.Graph(G.n, adjacency_dict=adjacency))


def extend(graphs: list[Graph]) -> list[Graph]:
    seen = set()
    out = []
    for G in graphs:
        n = G.n
        for subset in range(1, 1 << n):
            adj = [row | ((subset >> v & 1) << n) for v, row in enumerate(G.adj)]
            H = Graph(n + 1, tuple(adj) + (subset,))
            cert = certificate(H)
            if cert not in seen:
                seen.add(cert)
                out.append(H)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--out", type=Path, default=Path("data"))
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    level = [Graph(1, (0,))]
    for n in range(1, args.max_n + 1):
        if n > 1:
            level = extend(level)
        expected = KNOWN_COUNTS.get(n)
        status = "ok" if expected in (None, len(level)) else f"MISMATCH (expected {expected})"
        path = args.out / f"connected{n}.g6"
        path.write_text("".join(encode_graph6(G) + "\n" for G in level))
        print(f"n={n}: {len(level)} graphs -> {path} [{status}]")


if __name__ == "__main__":
    main()
