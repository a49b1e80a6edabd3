"""Greedy-coloring predictions of P_G(k): X_pi, the sampling process, and T/W.

An ordering is any sequence listing each vertex once. Exact expectations over
colorings are taken over :func:`chroma.chromatic.colorings_array`, so they are
limited by the enumeration guard.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence, Union

import numpy as np

from .chromatic import DEFAULT_GUARD, colorings_array
from .graph import Graph, GraphError, _bits

Ordering = Sequence[int]
Profile = tuple[int, ...]

SIS_CHUNK = 1 << 14


@dataclass(frozen=True)
class PartialColoring:
    """Proper coloring of a prefix of ``order``; ``colors[i]`` colours ``order[i]``."""

    order: tuple[int, ...]
    colors: tuple[int, ...]

    @property
    def assigned(self) -> int:
        return len(self.colors)

    def color_of(self, v: int) -> int | None:
        """Color of ``v``, or ``None`` if ``v`` lies beyond the prefix."""
        pos = self.order.index(v)
        return self.colors[pos] if pos < len(self.colors) else None

    def as_mapping(self) -> dict[int, int]:
        return dict(zip(self.order, self.colors))


def check_ordering(order: Ordering, n: int) -> tuple[int, ...]:
    order = tuple(int(v) for v in order)
    if sorted(order) != list(range(n)):
        raise GraphError(f"{order} is not an ordering of 0..{n - 1}")
    return order


def _lookup(c: Union[PartialColoring, Sequence[int]]) -> Callable[[int], int | None]:
    if isinstance(c, PartialColoring):
        mapping = c.as_mapping()
        return mapping.get
    return lambda v: c[v]


def x_pi(c, v: int, order: Ordering, G: Graph, k: int) -> int:
    """Colors of [k] missing from the coloured back-neighbourhood of ``v``."""
    color = _lookup(c)
    pos = {u: i for i, u in enumerate(order)}
    seen = set()
    for u in _bits(G.adj[v]):
        if pos[u] < pos[v]:
            cu = color(u)
            if cu is not None:
                seen.add(cu)
    return k - len(seen)


def x_pi_product(c, order: Ordering, G: Graph, k: int) -> int:
    if isinstance(c, PartialColoring):
        domain = c.order[: c.assigned]
    else:
        domain = order
    return math.prod(x_pi(c, v, order, G, k) for v in domain)


def color_profile(G: Graph, coloring: Sequence[int], v: int, k: int) -> Profile:
    counts = [0] * k
    for u in _bits(G.adj[v]):
        counts[coloring[u]] += 1
    return tuple(counts)


# -- vectorised helpers over a (P, n) coloring array -------------------------


def _neighbor_color_bits(arr: np.ndarray, neighbors: Sequence[int]) -> np.ndarray:
    bits = np.zeros(len(arr), dtype=np.int64)
    for u in neighbors:
        bits |= np.left_shift(1, arr[:, u].astype(np.int64))
    return bits


def _popcount(x: np.ndarray, k: int) -> np.ndarray:
    total = np.zeros(x.shape, dtype=np.int64)
    for c in range(k):
        total += (x >> c) & 1
    return total


def log_x_pi_rows(G: Graph, k: int, order: Ordering, arr: np.ndarray) -> np.ndarray:
    """ln X_pi(c) for every row ``c`` of a coloring array."""
    order = check_ordering(order, G.n)
    pos = {v: i for i, v in enumerate(order)}
    total = np.zeros(len(arr), dtype=float)
    for v in order:
        back = [u for u in _bits(G.adj[v]) if pos[u] < pos[v]]
        x = k - _popcount(_neighbor_color_bits(arr, back), k)
        with np.errstate(divide="ignore"):
            total += np.log(x)
    return total


def overprediction_bound_exact(
    G: Graph, k: int, order: Ordering, arr: np.ndarray | None = None, guard: int = DEFAULT_GUARD
) -> float:
    """exp(E_c[ln X_pi(c)]) over all proper k-colorings; never below P_G(k)."""
    if arr is None:
        arr = colorings_array(G, k, guard)
    if len(arr) == 0:
        raise ValueError(f"graph has no proper {k}-colorings; the expectation is undefined")
    return math.exp(math.fsum(log_x_pi_rows(G, k, order, arr)) / len(arr))


# -- the greedy process and the SIS estimator --------------------------------


def greedy_precoloring_sample(
    G: Graph, k: int, order: Ordering, rng: np.random.Generator
) -> tuple[PartialColoring, int, bool]:
    """Color along ``order`` choosing uniformly among available colors.

    Stops at the first vertex with no available color. Returns the maximal
    precoloring, the product of the choice counts, and whether it is total.
    """
    order = check_ordering(order, G.n)
    colors: dict[int, int] = {}
    assigned = []
    weight = 1
    for v in order:
        used = {colors[u] for u in _bits(G.adj[v]) if u in colors}
        free = [c for c in range(k) if c not in used]
        if not free:
            return PartialColoring(order, tuple(assigned)), weight, False
        weight *= len(free)
        c = free[int(rng.integers(len(free)))]
        colors[v] = c
        assigned.append(c)
    return PartialColoring(order, tuple(assigned)), weight, True


def _sis_weights(adj: np.ndarray, k: int, perms: np.ndarray, rng: np.random.Generator) -> list[int]:
    """Vectorised greedy process; one row of ``perms`` per sample, weight 0 if stuck."""
    S, n = perms.shape
    rows = np.arange(S)
    colors = np.full((S, n), -1, dtype=np.int64)
    counts = np.ones((S, n), dtype=np.int64)
    alive = np.ones(S, dtype=bool)
    full = (1 << k) - 1
    for t in range(n):
        v = perms[:, t]
        mask = adj[v] & (colors >= 0)
        forbidden = np.bitwise_or.reduce(np.where(mask, np.left_shift(1, np.maximum(colors, 0)), 0), axis=1)
        free = full & ~forbidden
        cnt = _popcount(free, k)
        alive &= cnt > 0
        r = np.floor(rng.random(S) * np.maximum(cnt, 1)).astype(np.int64)
        chosen = np.full(S, -1, dtype=np.int64)
        running = np.zeros(S, dtype=np.int64)
        for c in range(k):
            is_free = (free >> c) & 1
            hit = (is_free == 1) & (running == r) & (chosen < 0)
            chosen[hit] = c
            running += is_free
        colors[rows[alive], v[alive]] = chosen[alive]
        counts[:, t] = np.maximum(cnt, 1)
    if n * math.log2(max(k, 2)) < 62:
        weights = np.prod(counts, axis=1) * alive
        return [int(w) for w in weights]
    return [math.prod(row) if ok else 0 for row, ok in zip(counts.tolist(), alive.tolist())]


def _sis_chunk(args) -> tuple[int, int, int]:
    adj, k, n, size, order, seed, index = args
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    base = np.arange(n) if order is None else np.asarray(order)
    perms = np.tile(base, (size, 1))
    if order is None:
        perms = rng.permuted(perms, axis=1)
    weights = _sis_weights(adj, k, perms, rng)
    return len(weights), sum(weights), sum(w * w for w in weights)


@dataclass(frozen=True)
class SISResult:
    mean: float
    stderr: float
    samples: int
    seed: int
    total_weight: int

    def as_dict(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "samples": self.samples, "seed": self.seed}


def sis_estimate(
    G: Graph,
    k: int,
    samples: int,
    order: Ordering | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SISResult:
    """Unbiased estimate of P_G(k) from weighted greedy runs.

    ``order=None`` draws a fresh uniform ordering per sample; otherwise the
    given ordering is used for every sample. Samples are drawn in fixed-size
    chunks with streams keyed by ``(seed, chunk)``, so the result does not
    depend on ``jobs``.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if order is not None:
        order = check_ordering(order, G.n)
    adj = np.zeros((G.n, G.n), dtype=bool)
    for u, v in G.edges():
        adj[u, v] = adj[v, u] = True
    tasks = []
    for index, start in enumerate(range(0, samples, SIS_CHUNK)):
        tasks.append((adj, k, G.n, min(SIS_CHUNK, samples - start), order, seed, index))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_sis_chunk, tasks))
    else:
        parts = [_sis_chunk(t) for t in tasks]
    N = sum(p[0] for p in parts)
    total = sum(p[1] for p in parts)
    total_sq = sum(p[2] for p in parts)
    mean = Fraction(total, N)
    if N > 1:
        var = (Fraction(total_sq) - Fraction(total * total, N)) / (N - 1)
        stderr = math.sqrt(var / N)
    else:
        stderr = math.nan
    return SISResult(float(mean), stderr, N, seed, total)


# -- T and W -----------------------------------------------------------------


def distinct_color_distribution(profile: Sequence[int], t: int) -> list[Fraction]:
    """Law of the number of color classes hit by a uniform ``t``-subset.

    ``profile[i]`` elements carry color ``i``; the result is indexed by the
    number of distinct colors, ``0..len(profile)``.
    """
    d = sum(profile)
    if not 0 <= t <= d:
        raise ValueError(f"t={t} outside 0..{d}")
    classes = len(profile)
    # ways[j][h]: j elements chosen so far, hitting h classes
    ways = [[0] * (classes + 1) for _ in range(t + 1)]
    ways[0][0] = 1
    for size in profile:
        new = [[0] * (classes + 1) for _ in range(t + 1)]
        for j in range(t + 1):
            for h in range(classes + 1):
                w = ways[j][h]
                if not w:
                    continue
                for a in range(0, min(size, t - j) + 1):
                    new[j + a][h + (a > 0)] += w * math.comb(size, a)
        ways = new
    total = math.comb(d, t)
    return [Fraction(ways[t][h], total) for h in range(classes + 1)]


@lru_cache(maxsize=None)
def _log_t(profile: Profile, k: int) -> float:
    d = sum(profile)
    terms = []
    for t in range(d + 1):
        for s, p in enumerate(distinct_color_distribution(profile, t)):
            if p == 0:
                continue
            if k - s <= 0:
                return -math.inf
            terms.append(float(p) * math.log(k - s))
    return math.fsum(terms) / (d + 1)


def log_t_exact(profile: Sequence[int], k: int) -> float:
    profile = tuple(sorted((c for c in profile if c), reverse=True))
    if len(profile) > k:
        raise ValueError(f"profile uses {len(profile)} colors but k={k}")
    return _log_t(profile, k)


def t_exact(profile: Sequence[int], k: int) -> float:
    """Geometric mean of X_pi(c, v) over uniform orderings, given v's neighbour profile.

    The rank of v among its closed neighbourhood is uniform on 0..d, and the
    neighbours before it form a uniform subset of that size.
    """
    lt = log_t_exact(profile, k)
    return 0.0 if lt == -math.inf else math.exp(lt)


def w_of(profile: Sequence[int], k: int) -> Fraction:
    if len(profile) > k:
        raise ValueError(f"profile has {len(profile)} entries but k={k}")
    padded = list(profile) + [0] * (k - len(profile))
    return sum((Fraction(1, c + 1) for c in padded), Fraction(0))


# -- restricted neighbourhoods -----------------------------------------------


def make_star(G: Graph, k: int, rule: Union[str, Callable[[Graph, int, int], Sequence[int]]] = "lowest"):
    """Pick exactly k-1 neighbours per vertex.

    ``rule`` is ``"lowest"``, ``"highest"`` or a callable ``(G, v, k)``
    returning the chosen neighbours.
    """
    low = [v for v in range(G.n) if G.degree(v) < k - 1]
    if low:
        raise GraphError(f"vertices {low} have degree < k-1 = {k - 1}; graph cannot be {k}-critical")
    star = []
    for v in range(G.n):
        nb = G.neighbors(v)
        if rule == "lowest":
            chosen = nb[: k - 1]
        elif rule == "highest":
            chosen = nb[len(nb) - (k - 1):] if k > 1 else []
        elif callable(rule):
            chosen = sorted(rule(G, v, k))
            if len(chosen) != k - 1 or not set(chosen) <= set(nb):
                raise GraphError(f"rule returned {chosen} for vertex {v}")
        else:
            raise ValueError(f"unknown rule {rule!r}")
        star.append(tuple(chosen))
    return tuple(star)


def profile_star(coloring: Sequence[int], v: int, star, k: int) -> Profile:
    counts = [0] * k
    for u in star[v]:
        counts[coloring[u]] += 1
    return tuple(counts)


def profile_rows(arr: np.ndarray, neighbors: Sequence[int], k: int) -> np.ndarray:
    """(P, k) matrix of neighbour color counts for every coloring row."""
    counts = np.zeros((len(arr), k), dtype=np.int64)
    for u in neighbors:
        counts[np.arange(len(arr)), arr[:, u]] += 1
    return counts


def log_t_rows(arr: np.ndarray, neighbors: Sequence[int], k: int) -> np.ndarray:
    """ln T for each coloring row, for a vertex with the given neighbour set."""
    counts = profile_rows(arr, neighbors, k)
    uniq, inverse = np.unique(counts, axis=0, return_inverse=True)
    values = np.array([log_t_exact(tuple(int(x) for x in row), k) for row in uniq])
    return values[np.ravel(inverse)]


def global_T_bound(G: Graph, k: int, arr: np.ndarray | None = None, guard: int = DEFAULT_GUARD) -> float:
    """prod_v exp(E_c[ln T(c, v)]); the ordering-averaged overprediction bound."""
    if arr is None:
        arr = colorings_array(G, k, guard)
    if len(arr) == 0:
        raise ValueError(f"graph has no proper {k}-colorings; the expectation is undefined")
    total = math.fsum(math.fsum(log_t_rows(arr, G.neighbors(v), k)) / len(arr) for v in range(G.n))
    return 0.0 if total == -math.inf else math.exp(total)
