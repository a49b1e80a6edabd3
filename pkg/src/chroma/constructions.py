"""Named graphs and the ``--builtin`` registry.

The two seven-vertex 4-critical graphs use the labels
u1, u2, u3, v1, v2, v3, w -> 0..6.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph, GraphError, from_edge_list


def complete(k: int) -> Graph:
    return from_edge_list(k, [(i, j) for j in range(k) for i in range(j)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def moser_spindle() -> Graph:
    u1, u2, u3, v1, v2, v3, w = range(7)
    edges = [(u1, u2), (u1, u3), (u2, u3), (v1, v2), (v1, v3), (v2, v3), (u1, v1)]
    edges += [(w, u2), (w, u3), (w, v2), (w, v3)]
    return from_edge_list(7, edges)


def mycielskian_triangle() -> Graph:
    u = [0, 1, 2]
    v = [3, 4, 5]
    w = 6
    edges = [(u[i], u[j]) for i in range(3) for j in range(i + 1, 3)]
    edges += [(v[i], u[j]) for i in range(3) for j in range(3) if i != j]
    edges += [(w, v[i]) for i in range(3)]
    return from_edge_list(7, edges)


def clique_with_trees(k: int, trees: Sequence[Sequence[int]]) -> Graph:
    """K_k with a rooted tree hung from clique vertices.

    ``trees[i]`` is a parent list for the tree at clique vertex ``i``: new
    vertex ``j + 1`` of that tree hangs from ``parents[j]``, where ``0`` is
    the clique vertex itself and must satisfy ``parents[j] <= j``.
    """
    if len(trees) > k:
        raise GraphError(f"{len(trees)} trees given for a {k}-clique")
    edges = [(i, j) for j in range(k) for i in range(j)]
    n = k
    for root, parents in enumerate(trees):
        labels = [root]
        for j, p in enumerate(parents):
            if not 0 <= p <= j:
                raise GraphError(f"tree at clique vertex {root}: parent {p} of node {j + 1} is not an earlier node")
            labels.append(n)
            edges.append((labels[p], n))
            n += 1
    return from_edge_list(n, edges)


def balanced_clique_with_trees(k: int, n: int) -> Graph:
    """K_k plus n-k extra vertices spread round-robin as binary-heap-shaped trees."""
    if n < k:
        raise GraphError(f"need n >= k, got n={n}, k={k}")
    sizes = [(n - k) // k + (1 if i < (n - k) % k else 0) for i in range(k)]
    # heap parent of node j+1 is (j+1-1)//2 = j//2
    trees = [[j // 2 for j in range(size)] for size in sizes]
    return clique_with_trees(k, trees)


def builtin(name: str) -> Graph:
    """Resolve ``complete:k``, ``cycle:n``, ``path:n``, ``moser``, ``mycielski3``, ``clique-with-trees:k:n``."""
    head, *args = name.split(":")
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise GraphError(f"bad builtin arguments in {name!r}") from None
    table = {
        ("complete", 1): lambda: complete(*nums),
        ("cycle", 1): lambda: cycle(*nums),
        ("path", 1): lambda: path(*nums),
        ("moser", 0): moser_spindle,
        ("mycielski3", 0): mycielskian_triangle,
        ("clique-with-trees", 2): lambda: balanced_clique_with_trees(*nums),
    }
    key = (head, len(nums))
    if key not in table:
        raise GraphError(f"unknown builtin {name!r}")
    return table[key]()
