"""``chroma`` command line.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import bounds, harness
from .chromatic import (
    DEFAULT_GUARD,
    EnumerationGuardError,
    chromatic_number,
    chromatic_polynomial,
    count_colorings,
)
from .constructions import builtin
from .criticality import is_k_critical
from .graph import GraphError, encode_graph6, parse_edge_list_text, parse_graph6
from .overprediction import sis_estimate

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _default_seed() -> int:
    return int(os.environ.get("CHROMA_SEED", "0"))


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _load_graph(args):
    if args.graph6:
        return parse_graph6(args.graph6), args.graph6
    if args.edges:
        G = parse_edge_list_text(Path(args.edges).read_text())
        return G, encode_graph6(G) if G.n <= 62 else args.edges
    if args.builtin:
        return builtin(args.builtin), args.builtin
    raise GraphError("no graph given: use --graph6, --edges or --builtin")


def _k_or_chi(args, G) -> int:
    return args.k if args.k is not None else chromatic_number(G)


def cmd_count(args) -> int:
    G, gid = _load_graph(args)
    k = _k_or_chi(args, G)
    _emit({"id": gid, "k": k, "count": str(count_colorings(G, k))})
    return EXIT_OK


def cmd_poly(args) -> int:
    G, gid = _load_graph(args)
    p = chromatic_polynomial(G)
    _emit({"id": gid, "coeffs": [str(c) for c in p.coeffs], "poly": str(p)})
    return EXIT_OK


def cmd_chi(args) -> int:
    G, gid = _load_graph(args)
    _emit({"id": gid, "chi": chromatic_number(G)})
    return EXIT_OK


def cmd_estimate(args) -> int:
    G, gid = _load_graph(args)
    k = _k_or_chi(args, G)
    order = [int(t) for t in args.order.split(",")] if args.order else None
    res = sis_estimate(G, k, args.samples, order=order, seed=args.seed, jobs=args.jobs)
    _emit({"id": gid, "k": k, **res.as_dict()})
    return EXIT_OK


def cmd_bound(args) -> int:
    G, gid = _load_graph(args)
    k = _k_or_chi(args, G)
    rep = bounds.bound_chain(G, k, args.pi_samples, seed=args.seed, graph_id=gid, guard=args.guard)
    _emit(rep.as_dict())
    return EXIT_OK if rep.certified_ok() else EXIT_FAIL


def cmd_critical(args) -> int:
    G, gid = _load_graph(args)
    k = _k_or_chi(args, G)
    _emit({"id": gid, **is_k_critical(G, k).as_dict()})
    return EXIT_OK


def _parse_x_range(text: str | None):
    if not text:
        return None
    lo, _, hi = text.partition(":")
    return range(int(lo), int(hi or lo) + 1)


def cmd_verify_tomescu(args) -> int:
    summary = harness.VerificationSummary()
    for rec in harness.verify_tomescu(
        harness.read_corpus(args.corpus), k=args.k, xs=_parse_x_range(args.x_range), jobs=args.jobs, summary=summary
    ):
        _emit(rec.as_dict())
    print(json.dumps({"summary": vars(summary), "passed": summary.passed}), file=sys.stderr)
    return EXIT_OK if summary.passed else EXIT_FAIL


def cmd_census(args) -> int:
    found = 0
    ok = True
    for text, G, rep in harness.critical_census(harness.read_corpus(args.corpus), args.k, jobs=args.jobs):
        found += 1
        exact = count_colorings(G, args.k)
        rhs = bounds.tomescu_rhs(G.n, args.k)
        ok &= exact <= rhs
        _emit({"id": text, "n": G.n, "m": G.m, "count": str(exact), "tomescu_rhs": str(rhs), **rep.as_dict()})
    print(json.dumps({"critical": found, "all_within_rhs": ok}), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bound_chain(args) -> int:
    ok = True
    for rep in harness.bound_chains(
        harness.read_corpus(args.corpus), args.k, args.pi_samples, args.seed, jobs=args.jobs, guard=args.guard
    ):
        ok &= rep.certified_ok()
        _emit(rep.as_dict())
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lemma_sweep(args) -> int:
    reports = harness.lemma_sweep(args.kmax)
    for rep in reports:
        _emit(rep.as_dict())
    _emit({"k4_final_first_strict_n": next(n for n in range(7, 100) if bounds.k4_final_beats_tomescu(n))})
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chroma", description="Exact and estimated k-coloring counts.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help_, with_k=True):
        p = sub.add_parser(name, help=help_)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--graph6", help="graph6 line")
        src.add_argument("--edges", help="edge-list file: 'n m' then m lines 'u v'")
        src.add_argument("--builtin", help="complete:k, cycle:n, path:n, moser, mycielski3, clique-with-trees:k:n")
        if with_k:
            p.add_argument("-k", type=int, default=None, help="palette size (default: chromatic number)")
        p.set_defaults(func=fn)
        return p

    def corpus_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("corpus", help="graph6 file, one graph per line")
        p.add_argument("--jobs", type=int, default=1)
        p.set_defaults(func=fn)
        return p

    graph_cmd("count", cmd_count, "exact number of proper k-colorings")
    graph_cmd("poly", cmd_poly, "chromatic polynomial", with_k=False)
    graph_cmd("chi", cmd_chi, "chromatic number", with_k=False)
    p = graph_cmd("estimate", cmd_estimate, "sequential importance sampling estimate")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--order", help="fixed ordering 'v0,v1,...' (default: fresh random per sample)")
    p.add_argument("--jobs", type=int, default=1)
    p = graph_cmd("bound", cmd_bound, "bound chain for one graph")
    p.add_argument("--pi-samples", type=int, default=8)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD)
    graph_cmd("critical", cmd_critical, "k-criticality report")

    p = corpus_cmd("verify-tomescu", cmd_verify_tomescu, "check P_G(k) <= k!(k-1)^(n-k) over a corpus")
    p.add_argument("-k", type=int, default=None, help="only graphs with this chromatic number (k < 4: diagnostic)")
    p.add_argument("--x-range", help="general-x mode, 'lo:hi'")
    p = corpus_cmd("census", cmd_census, "list the k-critical graphs of a corpus")
    p.add_argument("-k", type=int, required=True)
    p = corpus_cmd("bound-chain", cmd_bound_chain, "bound chains over a corpus (JSON lines)")
    p.add_argument("-k", type=int, default=None, help="only graphs with this chromatic number")
    p.add_argument("--pi-samples", type=int, default=8)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD)

    p = sub.add_parser("lemma-sweep", help="numeric inequality sweeps")
    p.add_argument("--kmax", type=int, default=100)
    p.set_defaults(func=cmd_lemma_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (GraphError, EnumerationGuardError, OSError, ValueError) as exc:
        print(f"chroma: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
