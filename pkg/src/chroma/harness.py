"""Corpus pipelines: Tomescu verification, criticality census, bound chains, sweeps."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Iterable, Iterator

from . import bounds
from .chromatic import DEFAULT_GUARD, chromatic_number, count_colorings
from .criticality import is_k_critical
from .graph import Graph, GraphError, is_connected, parse_graph6

log = logging.getLogger(__name__)


class CorpusError(GraphError):
    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def read_corpus(path: str | Path) -> Iterator[tuple[int, str]]:
    """Yield ``(line number, graph6 text)`` for non-blank lines, lazily."""
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if line:
                yield lineno, line


def _decode(lineno: int, text: str) -> Graph:
    try:
        return parse_graph6(text)
    except GraphError as exc:
        raise CorpusError(str(exc), lineno) from None


def falling_factorial(x: int, k: int) -> int:
    return math.prod(x - i for i in range(k))


@dataclass
class VerificationRecord:
    id: str
    n: int
    chi: int
    x: int
    exact: str
    tomescu_rhs: str
    satisfied: bool
    equality: bool
    core_is_clique: bool
    asserted: bool

    @property
    def consistent(self) -> bool:
        """Inequality holds and equality occurs exactly for a K_chi 2-core (only binding when asserted)."""
        return self.satisfied and self.equality == self.core_is_clique

    def as_dict(self) -> dict:
        d = asdict(self)
        d["consistent"] = self.consistent
        return d


def verify_graph(
    G: Graph, graph_id: str, k: int | None = None, xs: Iterable[int] | None = None, min_k: int = 4
) -> list[VerificationRecord]:
    """Records for one connected graph; empty when chi does not match the filter.

    Without a filter every graph with chi >= ``min_k`` is checked. Graphs with
    chi < 4 are reported in diagnostic mode (``asserted`` false).
    """
    chi = chromatic_number(G)
    if k is not None and chi != k:
        return []
    if k is None and chi < min_k:
        return []
    core = bounds.core_is_clique(G, chi)
    out = []
    for x in (xs if xs is not None else [chi]):
        if x < chi:
            continue
        exact = count_colorings(G, x)
        rhs = falling_factorial(x, chi) * (x - 1) ** (G.n - chi)
        out.append(
            VerificationRecord(
                id=graph_id,
                n=G.n,
                chi=chi,
                x=x,
                exact=str(exact),
                tomescu_rhs=str(rhs),
                satisfied=exact <= rhs,
                equality=exact == rhs,
                core_is_clique=core,
                asserted=chi >= 4,
            )
        )
    return out


def _verify_task(args):
    lineno, text, k, xs, min_k = args
    G = _decode(lineno, text)
    if not is_connected(G):
        return lineno, None
    return lineno, verify_graph(G, text, k, xs, min_k)


def _pmap(fn: Callable, tasks: Iterable, jobs: int) -> Iterator:
    """Ordered map; with ``jobs > 1`` a process pool streams results in input order."""
    if jobs <= 1:
        for t in tasks:
            yield fn(t)
        return
    with Pool(jobs) as pool:
        yield from pool.imap(fn, tasks, chunksize=16)


@dataclass
class VerificationSummary:
    graphs: int = 0
    records: int = 0
    skipped_disconnected: int = 0
    violations: int = 0
    diagnostic_failures: int = 0

    @property
    def passed(self) -> bool:
        return self.violations == 0


def verify_tomescu(
    lines: Iterable[tuple[int, str]],
    k: int | None = None,
    xs: Iterable[int] | None = None,
    jobs: int = 1,
    summary: VerificationSummary | None = None,
    min_k: int = 4,
) -> Iterator[VerificationRecord]:
    """Stream verification records for a corpus, updating ``summary`` as it goes."""
    summary = summary if summary is not None else VerificationSummary()
    xs = list(xs) if xs is not None else None
    tasks = ((lineno, text, k, xs, min_k) for lineno, text in lines)
    for lineno, records in _pmap(_verify_task, tasks, jobs):
        summary.graphs += 1
        if records is None:
            summary.skipped_disconnected += 1
            log.warning("line %d: disconnected graph skipped", lineno)
            continue
        for rec in records:
            summary.records += 1
            if not rec.consistent:
                if rec.asserted:
                    summary.violations += 1
                else:
                    summary.diagnostic_failures += 1
            yield rec


def _census_task(args):
    lineno, text, k = args
    G = _decode(lineno, text)
    # critical graphs have minimum degree >= k-1; skip the exact test otherwise
    if G.min_degree() < k - 1:
        return lineno, text, None
    return lineno, text, is_k_critical(G, k)


def critical_census(lines: Iterable[tuple[int, str]], k: int, jobs: int = 1) -> Iterator[tuple[str, Graph, object]]:
    """Yield ``(graph6, graph, report)`` for every k-critical graph in the corpus."""
    tasks = ((lineno, text, k) for lineno, text in lines)
    for lineno, text, rep in _pmap(_census_task, tasks, jobs):
        if rep is not None and rep.is_critical:
            yield text, parse_graph6(text), rep


def _chain_task(args):
    lineno, text, k, pi_samples, seed, guard = args
    G = _decode(lineno, text)
    kk = k if k is not None else chromatic_number(G)
    if chromatic_number(G) != kk:
        return None
    # per-graph stream keyed by (seed, line number): independent of --jobs
    return bounds.bound_chain(G, kk, pi_samples, seed=[seed, lineno], graph_id=text, guard=guard)


def bound_chains(
    lines: Iterable[tuple[int, str]],
    k: int | None,
    pi_samples: int,
    seed: int,
    jobs: int = 1,
    guard: int = DEFAULT_GUARD,
) -> Iterator[bounds.BoundChainReport]:
    tasks = ((lineno, text, k, pi_samples, seed, guard) for lineno, text in lines)
    for rep in _pmap(_chain_task, tasks, jobs):
        if rep is not None:
            yield rep


def lemma_sweep(kmax: int) -> list[bounds.SweepReport]:
    if kmax < 5:
        raise ValueError("kmax must be at least 5")
    return [
        bounds.sweep_theorem9(kmax),
        bounds.sweep_edge_count(kmax),
        bounds.sweep_k4_final(1000),
        bounds.lp_grid_check(range(4, 11)),
    ]
