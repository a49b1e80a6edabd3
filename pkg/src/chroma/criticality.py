"""Criticality, radiant vertices, collision probabilities and edge-count diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .chromatic import DEFAULT_GUARD, chromatic_number, colorings_array, count_colorings, is_colorable
from .graph import Graph, GraphError, _bits, contract, delete_edge, delete_vertex, is_clique


class RadiantInvariantError(AssertionError):
    """A k-coloring of a k-chromatic graph had a color class with no radiant vertex."""


@dataclass(frozen=True)
class CriticalityReport:
    k: int
    chi: int
    is_critical: bool
    witness: tuple | None
    min_degree: int
    gallai_ok: bool | None = None

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "chi": self.chi,
            "critical": self.is_critical,
            "witness": list(self.witness) if self.witness else None,
            "min_degree": self.min_degree,
            "gallai_ok": self.gallai_ok,
        }


def is_k_critical(G: Graph, k: int) -> CriticalityReport:
    """Exact check that chi(G) = k and every edge and vertex deletion lowers it.

    Non-critical reports carry a witness ``("edge", u, v)`` or ``("vertex", v)``
    whose deletion keeps chi at k, or ``None`` when chi != k.
    """
    chi = chromatic_number(G)
    min_deg = G.min_degree()
    if chi != k:
        return CriticalityReport(k, chi, False, None, min_deg)
    for u, v in G.edges():
        if not is_colorable(delete_edge(G, u, v), k - 1):
            return CriticalityReport(k, chi, False, ("edge", u, v), min_deg)
    if G.n > 1:
        for v in range(G.n):
            if not is_colorable(delete_vertex(G, v), k - 1):
                return CriticalityReport(k, chi, False, ("vertex", v), min_deg)
    gallai = None
    if k < G.n <= 2 * k - 1:
        gallai = G.m >= gallai_lower_bound(G.n, k)
    return CriticalityReport(k, chi, True, None, min_deg, gallai)


# -- radiant vertices --------------------------------------------------------


def _closed_color_bits(G: Graph, arr: np.ndarray, v: int) -> np.ndarray:
    bits = np.left_shift(1, arr[:, v].astype(np.int64))
    for u in _bits(G.adj[v]):
        bits = bits | np.left_shift(1, arr[:, u].astype(np.int64))
    return bits


def radiant_rows(G: Graph, k: int, arr: np.ndarray) -> np.ndarray:
    """(P, k) array: lowest radiant vertex of each color per coloring row, -1 if none."""
    full = (1 << k) - 1
    out = np.full((len(arr), k), -1, dtype=np.int64)
    rows = np.arange(len(arr))
    for v in range(G.n):
        sees_all = _closed_color_bits(G, arr, v) == full
        color = arr[:, v].astype(np.int64)
        take = sees_all & (out[rows, color] < 0)
        out[rows[take], color[take]] = v
    return out


def radiant_vertices(G: Graph, k: int, coloring: Sequence[int], chi: int | None = None) -> list[int]:
    """For each color, the lowest vertex of that color whose closed neighbourhood shows all k colors."""
    if chi is None:
        chi = chromatic_number(G)
    if chi != k:
        raise GraphError(f"radiant vertices need chi(G) = k, got chi = {chi}, k = {k}")
    found = radiant_rows(G, k, np.asarray([coloring], dtype=np.int64))[0]
    missing = [i for i in range(k) if found[i] < 0]
    if missing:
        raise RadiantInvariantError(f"no radiant vertex for colors {missing} in coloring {tuple(coloring)}")
    return [int(v) for v in found]


# -- collisions and contraction ----------------------------------------------


def _colorings(G: Graph, k: int, guard: int) -> np.ndarray:
    arr = colorings_array(G, k, guard)
    if len(arr) == 0:
        raise ValueError(f"graph has no proper {k}-colorings")
    return arr


def collision_probability(G: Graph, k: int, u: int, v: int, guard: int = DEFAULT_GUARD) -> Fraction:
    """Pr[c(u) = c(v)] over uniform proper k-colorings, exactly."""
    arr = _colorings(G, k, guard)
    return Fraction(int(np.count_nonzero(arr[:, u] == arr[:, v])), len(arr))


def contraction_identity_check(G: Graph, k: int, u: int, v: int, guard: int = DEFAULT_GUARD) -> bool:
    """P_{G/uv}(k) equals the number of k-colorings of G with c(u) = c(v)."""
    if G.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is an edge; the identity is stated for non-adjacent pairs")
    merged = count_colorings(contract(G, u, v), k)
    arr = colorings_array(G, k, guard)
    same = int(np.count_nonzero(arr[:, u] == arr[:, v])) if len(arr) else 0
    return merged == same


def pair_sum_statistic(G: Graph, k: int, U: Iterable[int], guard: int = DEFAULT_GUARD) -> Fraction:
    """E_c[number of same-colored pairs inside U]."""
    arr = _colorings(G, k, guard)
    U = sorted(set(U))
    total = 0
    for c in range(k):
        sizes = np.count_nonzero(arr[:, U] == c, axis=1) if U else np.zeros(len(arr), dtype=np.int64)
        total += int(np.sum(sizes * (sizes - 1) // 2))
    return Fraction(total, len(arr))


# -- edge-count diagnostics --------------------------------------------------


def pairs_lower_bound(n: int, k: int) -> int:
    """Minimum of sum_i C(c_i, 2) over k class sizes summing to n, valid for k <= n <= 2k."""
    if not k <= n <= 2 * k:
        raise ValueError(f"n={n} outside [k, 2k] = [{k}, {2 * k}]")
    return (n - k) * math.comb(2, 2) + (2 * k - n) * math.comb(1, 2)


def gallai_lower_bound(n: int, k: int) -> Fraction:
    """Edge lower bound for k-critical graphs on k < n <= 2k-1 vertices."""
    if not k < n <= 2 * k - 1:
        raise ValueError(f"n={n} outside (k, 2k-1] = ({k}, {2 * k - 1}]")
    return Fraction((k - 1) * n, 2) + Fraction((n - k) * (2 * k - n), 2) - 1


def brooks_check(G: Graph, k: int) -> bool:
    """A k-critical graph (k >= 4) is K_k or has a vertex of degree >= k."""
    if k < 4:
        raise ValueError("the degree statement is for k >= 4")
    if not is_k_critical(G, k).is_critical:
        raise ValueError("graph is not k-critical")
    return is_clique(G) or G.max_degree() >= k
