"""Undirected multigraphs with self-loops, and the surgery moves the
gadget machinery is built from.

Vertices are dense integer indices 0..n-1.  Edges are an ordered tuple of
normalized (min, max) pairs; parallel edges and self-loops are allowed,
and a self-loop contributes 2 to its vertex's degree.  Graphs are
immutable values: every operation returns a fresh graph, so instances can
be shared across threads and cached freely.

Renumbering conventions (documented per operation) are deterministic so
that fixtures and serialized gadgets are reproducible byte for byte.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: Tuple[Edge, ...]

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"vertex count must be a nonnegative int, got {n!r}")
        norm = []
        for e in edges:
            u, v = e
            if not (isinstance(u, int) and isinstance(v, int)):
                raise ValueError(f"edge endpoints must be ints, got {e!r}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {e!r} out of range for n={n}")
            norm.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(norm))

    # -- basic queries --------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        d = 0
        for u, w in self.edges:
            if u == v:
                d += 1
            if w == v:
                d += 1
        return d

    def degrees(self) -> list:
        d = [0] * self.n
        for u, w in self.edges:
            d[u] += 1
            d[w] += 1
        return d

    def has_loop(self) -> bool:
        return any(u == v for u, v in self.edges)

    def is_connected(self) -> bool:
        """Connectivity over vertices (isolated vertices count)."""
        if self.n <= 1:
            return True
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = [False] * self.n
        stack = [0]
        seen[0] = True
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        return all(seen)

    def edge_multiset(self) -> tuple:
        return tuple(sorted(self.edges))

    # -- serialization ---------------------------------------------------
    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, obj) -> "Multigraph":
        if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
            raise ValueError("graph JSON must be an object with 'n' and 'edges'")
        n = obj["n"]
        if isinstance(n, bool) or not isinstance(n, int):
            raise ValueError("'n' must be an int")
        edges = obj["edges"]
        if not isinstance(edges, list):
            raise ValueError("'edges' must be a list of [u, v] pairs")
        pairs = []
        for e in edges:
            if not (isinstance(e, (list, tuple)) and len(e) == 2):
                raise ValueError(f"bad edge entry {e!r}")
            u, v = e
            if isinstance(u, bool) or isinstance(v, bool):
                raise ValueError(f"bad edge entry {e!r}")
            pairs.append((u, v))
        return cls(n, pairs)

    @classmethod
    def from_json(cls, text: str) -> "Multigraph":
        return cls.from_json_dict(json.loads(text))

    # -- canonical form (small graphs) ------------------------------------
    def canonical_form(self, max_n: int = 8) -> tuple:
        """Lexicographically minimal edge multiset over all vertex
        relabelings.  Brute force, so restricted to small n; used by tests
        to compare graphs up to isomorphism."""
        if self.n > max_n:
            raise ValueError(f"canonical_form is brute force; n={self.n} > {max_n}")
        best = None
        for perm in itertools.permutations(range(self.n)):
            mapped = tuple(sorted(
                (perm[u], perm[v]) if perm[u] <= perm[v] else (perm[v], perm[u])
                for u, v in self.edges))
            if best is None or mapped < best:
                best = mapped
        return (self.n, best)

    def __repr__(self):
        return f"Multigraph(n={self.n}, edges={list(self.edges)})"


# -- surgery ---------------------------------------------------------------

def wedge_sum(g1: Multigraph, v1: int, g2: Multigraph, v2: int):
    """Glue g2 onto g1 by identifying v2 with v1.

    g1's vertices keep their indices; g2's vertices other than v2 are
    appended after g1's in increasing original order.  Returns (graph,
    index of the merge vertex), which is just v1.
    """
    _check_vertex(g1, v1)
    _check_vertex(g2, v2)

    def remap(w: int) -> int:
        if w == v2:
            return v1
        return g1.n + (w if w < v2 else w - 1)

    edges = list(g1.edges) + [(remap(u), remap(w)) for u, w in g2.edges]
    return Multigraph(g1.n + g2.n - 1, edges), v1


def attach_edge(g: Multigraph, v: int):
    """Add a fresh pendant vertex joined to v; returns (graph, new vertex)."""
    _check_vertex(g, v)
    return Multigraph(g.n + 1, list(g.edges) + [(v, g.n)]), g.n


def delete_edge(g: Multigraph, idx: int) -> Multigraph:
    _check_edge_index(g, idx)
    return Multigraph(g.n, g.edges[:idx] + g.edges[idx + 1:])


def contract_edge(g: Multigraph, idx: int) -> Multigraph:
    """Contract a non-loop edge.  The merged vertex becomes the last index
    (n-2 in the new graph); all other vertices are compacted preserving
    order.  Parallel copies of the contracted edge become self-loops on
    the merged vertex; existing loops survive."""
    _check_edge_index(g, idx)
    u, v = g.edges[idx]
    if u == v:
        raise ValueError("cannot contract a self-loop")
    merged = g.n - 2

    def remap(w: int) -> int:
        if w == u or w == v:
            return merged
        return w - (w > u) - (w > v)

    edges = [(remap(a), remap(b)) for i, (a, b) in enumerate(g.edges) if i != idx]
    return Multigraph(g.n - 1, edges)


def _check_vertex(g: Multigraph, v: int):
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range for n={g.n}")


def _check_edge_index(g: Multigraph, idx: int):
    if not (0 <= idx < len(g.edges)):
        raise ValueError(f"edge index {idx} out of range (m={len(g.edges)})")


# -- built-in families -------------------------------------------------------

def path_graph(k: int) -> Multigraph:
    """Path with k edges (k+1 vertices)."""
    if k < 0:
        raise ValueError("need k >= 0 edges")
    return Multigraph(k + 1, [(i, i + 1) for i in range(k)])


def cycle_graph(k: int) -> Multigraph:
    if k < 3:
        raise ValueError("cycle needs >= 3 vertices")
    return Multigraph(k, [(i, (i + 1) % k) for i in range(k)])


def star_graph(k: int) -> Multigraph:
    """Center vertex 0 with k leaves."""
    if k < 0:
        raise ValueError("need k >= 0 leaves")
    return Multigraph(k + 1, [(0, i + 1) for i in range(k)])


def clique_graph(k: int) -> Multigraph:
    if k < 1:
        raise ValueError("clique needs >= 1 vertex")
    return Multigraph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def selfloops_graph(k: int) -> Multigraph:
    """Single vertex carrying k self-loops."""
    if k < 0:
        raise ValueError("need k >= 0 loops")
    return Multigraph(1, [(0, 0)] * k)


def grid_graph(k: int) -> Multigraph:
    """k x k grid; vertex (i, j) is index i*k + j."""
    if k < 1:
        raise ValueError("grid needs k >= 1")
    edges = []
    for i in range(k):
        for j in range(k):
            if j + 1 < k:
                edges.append((i * k + j, i * k + j + 1))
            if i + 1 < k:
                edges.append((i * k + j, (i + 1) * k + j))
    return Multigraph(k * k, edges)


_BUILTINS = {
    "path": path_graph,
    "cycle": cycle_graph,
    "star": star_graph,
    "clique": clique_graph,
    "selfloops": selfloops_graph,
    "grid": grid_graph,
}


def builtin(name: str, k: int) -> Multigraph:
    try:
        fn = _BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown builtin family {name!r}; "
                         f"have {sorted(_BUILTINS)}") from None
    return fn(k)
