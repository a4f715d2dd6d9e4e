"""Simple undirected graphs stored as per-vertex neighbor bitsets.

Also holds the constructors for the named graph families and an exact
canonical labeling for small orders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

MAX_VERTICES = 64
CANON_MAX_N = 9

INFINITE = math.inf


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Labeled simple graph on vertices ``0..n-1``.

    ``adj[i]`` is an int whose bit ``j`` is set iff ``i`` and ``j`` are adjacent.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {i} has a neighbor out of range")
            if row >> i & 1:
                raise GraphError(f"self-loop at vertex {i}")
            r = row
            while r:
                j = (r & -r).bit_length() - 1
                if not self.adj[j] >> i & 1:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")
                r &= r - 1

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(i, j)`` with ``i < j``, sorted lexicographically."""
        out = []
        for i, row in enumerate(self.adj):
            r = row >> (i + 1)
            j = i + 1
            while r:
                if r & 1:
                    out.append((i, j))
                r >>= 1
                j += 1
        return out

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def neighbors(self, v: int) -> list[int]:
        return [j for j in range(self.n) if self.adj[v] >> j & 1]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling is not a permutation")
        return from_edges(self.n, [(perm[i], perm[j]) for i, j in self.edges()])

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~row & ~(1 << i) for i, row in enumerate(self.adj)))


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 1..{MAX_VERTICES}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << i) for i in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("both parts of a complete bipartite graph need a vertex")
    return from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_minus(n: int, removed: Iterable[tuple[int, int]]) -> Graph:
    adj = list(complete(n).adj)
    for u, v in removed:
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return Graph(n, tuple(adj))


# Family layouts. Vertex roles are fixed so golden tests are reproducible.

def complete_minus_edge(n: int) -> Graph:
    """K_n minus the edge {0, 1}."""
    return complete_minus(n, [(0, 1)])


def pendant_complete(n: int) -> Graph:
    """K_{n-1} on ``0..n-2`` with vertex ``n-1`` hanging off vertex 0."""
    k = complete(n - 1)
    return from_edges(n, k.edges() + [(0, n - 1)])


def complete_minus_2e(n: int = 5) -> Graph:
    return complete_minus(n, [(0, 1), (2, 3)])


def complete_minus_c4(n: int = 5) -> Graph:
    return complete_minus(n, [(0, 1), (1, 2), (2, 3), (3, 0)])


def complete_minus_triangle(n: int) -> Graph:
    return complete_minus(n, [(0, 1), (1, 2), (0, 2)])


def complete_minus_2triangles(n: int = 7) -> Graph:
    """K_7 without triangles {0,1,2} and {3,4,5}; vertex 6 sees everything."""
    return complete_minus(n, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def complete_minus_k33(n: int = 7) -> Graph:
    """K_7 without every edge between {0,1,2} and {3,4,5}; vertex 6 sees everything."""
    return complete_minus(n, [(i, j) for i in range(3) for j in range(3, 6)])


def complete_minus_p4(n: int = 5) -> Graph:
    """K_5 without the path 0-1-2-3."""
    return complete_minus(n, [(0, 1), (1, 2), (2, 3)])


def case7_family(n: int) -> Graph:
    """Vertices 0 and 1 non-adjacent, vertex 2 adjacent to exactly 0 and 1,
    and ``3..n-1`` a clique joined to both 0 and 1.

    Equivalently (K_{n-1} - e) plus a vertex on both ends of the missing edge.
    """
    edges = [(0, 2), (1, 2)]
    edges += [(a, b) for a, b in combinations(range(3, n), 2)]
    edges += [(a, v) for a in (0, 1) for v in range(3, n)]
    return from_edges(n, edges)


def complete_bipartite_2_3(n: int = 5) -> Graph:
    return complete_bipartite(2, 3)


def complete_bipartite_3_3(n: int = 6) -> Graph:
    return complete_bipartite(3, 3)


# name -> (constructor, allowed orders; None means any n >= min_n)
_FAMILIES: dict[str, tuple[Callable[[int], Graph], tuple[int, ...] | None, int]] = {
    "complete": (complete, None, 1),
    "complete_minus_edge": (complete_minus_edge, None, 5),
    "pendant_complete": (pendant_complete, None, 5),
    "complete_minus_2e": (complete_minus_2e, (5,), 5),
    "complete_minus_c4": (complete_minus_c4, (5,), 5),
    "complete_minus_triangle": (complete_minus_triangle, None, 5),
    "complete_minus_2triangles": (complete_minus_2triangles, (7,), 7),
    "complete_minus_k33": (complete_minus_k33, (7,), 7),
    "complete_minus_p4": (complete_minus_p4, (5,), 5),
    "case7_family": (case7_family, None, 5),
    "complete_bipartite_2_3": (complete_bipartite_2_3, (5,), 5),
    "complete_bipartite_3_3": (complete_bipartite_3_3, (6,), 6),
}

FAMILY_NAMES = tuple(_FAMILIES)


def family(name: str, n: int) -> Graph:
    try:
        ctor, fixed, min_n = _FAMILIES[name]
    except KeyError:
        raise GraphError(f"unknown family {name!r}; choose from {', '.join(FAMILY_NAMES)}") from None
    if fixed is not None and n not in fixed:
        raise GraphError(f"family {name} only exists for n in {fixed}, got {n}")
    if n < min_n or n > MAX_VERTICES:
        raise GraphError(f"family {name} needs {min_n} <= n <= {MAX_VERTICES}, got {n}")
    return ctor(n)


# Structural queries

def degree(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    return g.adj[v].bit_count()


def degree_sequence(g: Graph) -> tuple[int, ...]:
    return tuple(sorted((row.bit_count() for row in g.adj), reverse=True))


def _eccentricity(g: Graph, v: int) -> float:
    full = (1 << g.n) - 1
    seen = frontier = 1 << v
    depth = 0
    while seen != full:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= g.adj[low.bit_length() - 1]
            f ^= low
        nxt &= ~seen
        if not nxt:
            return INFINITE
        seen |= nxt
        frontier = nxt
        depth += 1
    return depth


def is_connected(g: Graph) -> bool:
    return _eccentricity(g, 0) != INFINITE


def diameter(g: Graph) -> float:
    """Largest shortest-path distance; ``INFINITE`` when disconnected."""
    best = 0
    for v in range(g.n):
        e = _eccentricity(g, v)
        if e == INFINITE:
            return INFINITE
        best = max(best, e)
    return best


def laplacian(g: Graph):
    from .matrix import IntMatrix

    rows = []
    for i, row in enumerate(g.adj):
        rows.append([row.bit_count() if j == i else -(row >> j & 1) for j in range(g.n)])
    return IntMatrix.from_rows(rows)


# Canonical labeling.
#
# Individualization-refinement: color refinement splits vertices into an
# ordered equitable partition, non-singleton cells are split by
# individualizing each vertex in turn, and the canonical form is the smallest
# edge mask over all discrete leaves. Twins inside a cell are interchangeable
# by an automorphism, so only one vertex per twin class is branched on.

def pair_index(i: int, j: int) -> int:
    """Bit position of pair {i, j}, i < j, in graph6 column order."""
    return j * (j - 1) // 2 + i


def edge_mask(g: Graph) -> int:
    mask = 0
    for i, j in g.edges():
        mask |= 1 << pair_index(i, j)
    return mask


def from_mask(n: int, mask: int) -> Graph:
    edges = []
    for j in range(1, n):
        for i in range(j):
            if mask >> pair_index(i, j) & 1:
                edges.append((i, j))
    return from_edges(n, edges)


def _refine(adj: Sequence[int], colors: list[int]) -> list[int]:
    n = len(adj)
    ncolors = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            row = adj[v]
            sigs.append((colors[v], tuple(sorted(colors[u] for u in range(n) if row >> u & 1))))
        ranking = {s: k for k, s in enumerate(sorted(set(sigs)))}
        colors = [ranking[s] for s in sigs]
        if len(ranking) == ncolors:
            return colors
        ncolors = len(ranking)


def _leaf_mask(edges: Sequence[tuple[int, int]], colors: Sequence[int]) -> int:
    mask = 0
    for u, v in edges:
        a, b = colors[u], colors[v]
        if a > b:
            a, b = b, a
        mask |= 1 << (b * (b - 1) // 2 + a)
    return mask


def _canonical_mask(g: Graph) -> int:
    n = g.n
    adj = g.adj
    edges = g.edges()
    best = None
    stack = [_refine(adj, [0] * n)]
    while stack:
        colors = stack.pop()
        counts: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            counts.setdefault(c, []).append(v)
        if len(counts) == n:
            m = _leaf_mask(edges, colors)
            if best is None or m < best:
                best = m
            continue
        target = min(c for c, vs in counts.items() if len(vs) > 1)
        tried: list[int] = []
        for v in counts[target]:
            if any(adj[u] & ~(1 << v) == adj[v] & ~(1 << u) for u in tried):
                continue
            tried.append(v)
            split = [2 * c for c in colors]
            split[v] -= 1
            stack.append(_refine(adj, split))
    return best


def canonical_form(g: Graph) -> int:
    """Edge mask of a canonical relabeling of ``g``.

    Equal for two graphs of the same order iff they are isomorphic.
    """
    if g.n > CANON_MAX_N:
        raise GraphError(f"canonical labeling is limited to n <= {CANON_MAX_N}, got {g.n}")
    return _canonical_mask(g)


def canonical_graph(g: Graph) -> Graph:
    return from_mask(g.n, canonical_form(g))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        return False
    if g.num_edges != h.num_edges or degree_sequence(g) != degree_sequence(h):
        return False
    return canonical_form(g) == canonical_form(h)
