"""Exact chromatic polynomials, coloring counts, chromatic numbers and enumeration.

Colors are ``0..k-1`` throughout; a coloring is a tuple indexed by vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .graph import Graph, _bits, degeneracy_order

__all__ = [
    "ChromaticPolynomial",
    "EnumerationGuardError",
    "chromatic_polynomial",
    "count_colorings",
    "chromatic_number",
    "is_colorable",
    "greedy_upper_bound",
    "enumerate_colorings",
    "colorings_array",
    "color_classes",
    "is_proper",
    "DEFAULT_GUARD",
    "DEFAULT_MAX_N",
]

DEFAULT_GUARD = 10**7
DEFAULT_MAX_N = 16


class EnumerationGuardError(RuntimeError):
    """Raised when an exact enumeration would exceed the configured guard."""


# -- polynomial arithmetic on ascending coefficient tuples -------------------


def _mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _sub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    size = max(len(a), len(b))
    out = [0] * size
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def _linear_power(root: int, e: int) -> tuple[int, ...]:
    """(x - root)^e."""
    p = (1,)
    for _ in range(e):
        p = _mul(p, (-root, 1))
    return p


def _falling(n: int) -> tuple[int, ...]:
    p = (1,)
    for i in range(n):
        p = _mul(p, (-i, 1))
    return p


@dataclass(frozen=True)
class ChromaticPolynomial:
    """Integer polynomial; ``coeffs[i]`` is the coefficient of ``x**i``."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            mag = abs(c)
            body = f"{mag}" if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            terms.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(terms) or "0"
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


# -- deletion-contraction ----------------------------------------------------


def _compact(adj: tuple[int, ...], keep: int) -> tuple[int, ...]:
    verts = list(_bits(keep))
    index = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        row = 0
        for u in _bits(adj[v] & keep):
            row |= 1 << index[u]
        rows.append(row)
    return tuple(rows)


def _components(adj: tuple[int, ...]) -> list[int]:
    seen = 0
    comps = []
    for s in range(len(adj)):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def _merge_adjacent(adj: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
    """Contract edge uv (u < v): u absorbs v, then v is dropped."""
    rows = list(adj)
    merged = (rows[u] | rows[v]) & ~(1 << u) & ~(1 << v)
    rows[u] = merged
    for w in _bits(merged):
        rows[w] |= 1 << u
    keep = ((1 << len(adj)) - 1) & ~(1 << v)
    return _compact(tuple(rows), keep)


@lru_cache(maxsize=1 << 18)
def _poly(adj: tuple[int, ...]) -> tuple[int, ...]:
    n = len(adj)
    if n == 0:
        return (1,)
    if not any(adj):
        return (0,) * n + (1,)

    comps = _components(adj)
    if len(comps) > 1:
        p = (1,)
        for comp in comps:
            p = _mul(p, _poly(_compact(adj, comp)))
        return p

    # connected: strip pendant vertices, each contributes a factor (x - 1)
    alive = (1 << n) - 1
    peeled = 0
    changed = True
    while changed:
        changed = False
        for v in _bits(alive):
            if (adj[v] & alive).bit_count() <= 1:
                alive &= ~(1 << v)
                peeled += 1
                changed = True
    if alive == 0:
        return _mul((0, 1), _linear_power(1, n - 1))
    if peeled:
        return _mul(_poly(_compact(adj, alive)), _linear_power(1, peeled))

    full = (1 << n) - 1
    if all(row | (1 << v) == full for v, row in enumerate(adj)):
        return _falling(n)

    # simplicial vertex: neighbourhood is a clique, contributes (x - deg)
    for v in range(n):
        nb = adj[v]
        if all((adj[u] | (1 << u)) & nb == nb for u in _bits(nb)):
            rest = _poly(_compact(adj, full & ~(1 << v)))
            return _mul(rest, _linear_power(nb.bit_count(), 1))

    # pivot on the edge whose endpoints share the most neighbours
    best, pivot = -1, None
    for v in range(n):
        for u in _bits(adj[v] & ((1 << v) - 1)):
            common = (adj[u] & adj[v]).bit_count()
            if common > best:
                best, pivot = common, (u, v)
    u, v = pivot
    deleted = list(adj)
    deleted[u] &= ~(1 << v)
    deleted[v] &= ~(1 << u)
    return _sub(_poly(tuple(deleted)), _poly(_merge_adjacent(adj, u, v)))


def chromatic_polynomial(G: Graph, max_n: int = DEFAULT_MAX_N) -> ChromaticPolynomial:
    if G.n < 1:
        raise ValueError("chromatic polynomial requires n >= 1")
    if G.n > max_n:
        raise EnumerationGuardError(f"n={G.n} exceeds the deletion-contraction size guard {max_n}")
    return ChromaticPolynomial(_poly(G.adj))


def count_colorings(G: Graph, k: int, max_n: int = DEFAULT_MAX_N) -> int:
    """Exact number of proper k-colorings."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if G.n == 0:
        return 1
    return chromatic_polynomial(G, max_n)(k)


# -- chromatic number --------------------------------------------------------


def greedy_upper_bound(G: Graph) -> int:
    """Colors used by first-fit greedy along the reversed degeneracy order."""
    colors: dict[int, int] = {}
    for v in reversed(degeneracy_order(G)):
        used = {colors[u] for u in _bits(G.adj[v]) if u in colors}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return max(colors.values(), default=-1) + 1


def is_colorable(G: Graph, k: int) -> bool:
    """Backtracking existence test for a proper k-coloring."""
    if G.n == 0:
        return True
    if k <= 0:
        return False
    order = list(reversed(degeneracy_order(G)))
    n = G.n
    colors = [-1] * n
    adj = G.adj

    def extend(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        forbidden = 0
        for u in _bits(adj[v]):
            if colors[u] >= 0:
                forbidden |= 1 << colors[u]
        # colors beyond the first unused one are interchangeable
        for c in range(min(used + 1, k)):
            if not forbidden >> c & 1:
                colors[v] = c
                if extend(i + 1, max(used, c + 1)):
                    return True
        colors[v] = -1
        return False

    return extend(0, 0)


def chromatic_number(G: Graph) -> int:
    if G.n < 1:
        raise ValueError("chromatic number requires n >= 1")
    upper = greedy_upper_bound(G)
    lower = 2 if G.m else 1
    for j in range(lower, upper):
        if is_colorable(G, j):
            return j
    return upper


# -- enumeration -------------------------------------------------------------


def is_proper(G: Graph, coloring) -> bool:
    return all(coloring[u] != coloring[v] for u, v in G.edges())


def color_classes(coloring, k: int) -> list[list[int]]:
    classes: list[list[int]] = [[] for _ in range(k)]
    for v, c in enumerate(coloring):
        classes[c].append(v)
    return classes


def _check_guard(G: Graph, k: int, guard: int) -> int:
    total = count_colorings(G, k)
    if total > guard:
        raise EnumerationGuardError(
            f"P_G({k}) = {total} exceeds the enumeration guard {guard}; sample instead"
        )
    return total


def enumerate_colorings(G: Graph, k: int, guard: int = DEFAULT_GUARD) -> Iterator[tuple[int, ...]]:
    """Yield every proper k-coloring exactly once.

    Vertices are assigned along the reversed degeneracy order, so each one
    sees at most ``degeneracy`` coloured neighbours.
    """
    _check_guard(G, k, guard)
    return _backtrack(G, k)


def _backtrack(G: Graph, k: int) -> Iterator[tuple[int, ...]]:
    n = G.n
    order = list(reversed(degeneracy_order(G)))
    colors = [-1] * n
    adj = G.adj
    stack = [0]
    # iterative DFS: stack[i] is the next color to try at depth i
    while stack:
        i = len(stack) - 1
        if i == n:
            yield tuple(colors)
            stack.pop()
            continue
        v = order[i]
        c = stack[i]
        if c:
            colors[v] = -1
        forbidden = 0
        for u in _bits(adj[v]):
            if colors[u] >= 0:
                forbidden |= 1 << colors[u]
        while c < k and forbidden >> c & 1:
            c += 1
        if c >= k:
            colors[v] = -1
            stack.pop()
            continue
        colors[v] = c
        stack[i] = c + 1
        stack.append(0)


def colorings_array(G: Graph, k: int, guard: int = DEFAULT_GUARD) -> np.ndarray:
    """All proper k-colorings as a ``(P_G(k), n)`` int8 array.

    Rows are built breadth-first along the reversed degeneracy order; the row
    order therefore differs from :func:`enumerate_colorings`.
    """
    total = _check_guard(G, k, guard)
    n = G.n
    order = list(reversed(degeneracy_order(G)))
    rows = np.zeros((1, n), dtype=np.int8)
    placed: list[int] = []
    for v in order:
        back = [u for u in placed if G.has_edge(u, v)]
        parts = []
        for c in range(k):
            ok = np.ones(len(rows), dtype=bool)
            for u in back:
                ok &= rows[:, u] != c
            sel = rows[ok]
            if len(sel):
                sel = sel.copy()
                sel[:, v] = c
                parts.append(sel)
        rows = np.concatenate(parts) if parts else np.zeros((0, n), dtype=np.int8)
        placed.append(v)
    assert len(rows) == total, (len(rows), total)
    return rows

