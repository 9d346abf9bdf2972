"""Finite multigraphs: cycle matroids, cycle finding and a small enumeration corpus."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Hashable, Iterable, Sequence

from .core import FiniteMatroid, _check_size


class UnionFind:
    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: dict = {}
        for x in items:
            self.parent[x] = x

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class FiniteGraph:
    """A multigraph with loops; each edge is ``(id, source, target)``."""

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        vs = set(self.vertices)
        ids = [e[0] for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValueError("edge ids must be distinct")
        for eid, u, v in self.edges:
            if u not in vs or v not in vs:
                raise ValueError(f"edge {eid!r} has an endpoint outside the vertex set")

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple], labels: Sequence | None = None) -> "FiniteGraph":
        labels = list(labels) if labels is not None else [f"e{i}" for i in range(len(pairs))]
        verts = []
        for u, v in pairs:
            for x in (u, v):
                if x not in verts:
                    verts.append(x)
        return cls(tuple(verts), tuple((labels[i], u, v) for i, (u, v) in enumerate(pairs)))

    @property
    def edge_ids(self) -> tuple:
        return tuple(e[0] for e in self.edges)

    def ends(self) -> dict:
        return {eid: (u, v) for eid, u, v in self.edges}

    def restrict(self, keep: Iterable[Hashable]) -> "FiniteGraph":
        keep = set(keep)
        return FiniteGraph(self.vertices, tuple(e for e in self.edges if e[0] in keep))

    def components(self) -> int:
        uf = UnionFind(self.vertices)
        for _, u, v in self.edges:
            uf.union(u, v)
        return len({uf.find(v) for v in self.vertices})

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and self.components() == 1

    def is_forest(self, subset: Iterable[Hashable] | None = None) -> bool:
        return find_cycle(self, subset) is None


def find_cycle(graph: FiniteGraph, subset: Iterable[Hashable] | None = None) -> frozenset | None:
    """Edge set of some cycle inside ``subset`` (default: all edges), or None."""
    chosen = None if subset is None else set(subset)
    uf = UnionFind(graph.vertices)
    adj: dict = {v: [] for v in graph.vertices}
    for eid, u, v in graph.edges:
        if chosen is not None and eid not in chosen:
            continue
        if u == v:
            return frozenset({eid})
        if not uf.union(u, v):
            return frozenset(_tree_path(adj, u, v)) | {eid}
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    return None


def _tree_path(adj: dict, start, goal) -> list:
    prev = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x == goal:
            break
        for y, eid in adj[x]:
            if y not in prev:
                prev[y] = (x, eid)
                queue.append(y)
    path = []
    x = goal
    while prev[x] is not None:
        x, eid = prev[x]
        path.append(eid)
    return path


def finite_cycle_matroid(graph: FiniteGraph, bound: int | None = None) -> FiniteMatroid:
    """Bases are the maximal spanning forests; circuits are the cycles."""
    _check_size(len(graph.edges), bound)
    ids = graph.edge_ids
    rank = len(graph.vertices) - graph.components()
    bases = []
    for combo in combinations(range(len(ids)), rank):
        subset = [ids[i] for i in combo]
        if find_cycle(graph, subset) is None:
            bases.append(subset)
    return FiniteMatroid.from_bases(ids, bases, check=False)


def _canonical(n: int, edges: list[tuple[int, int]]) -> tuple:
    """Isomorphism-invariant form of a multigraph on vertices 0..n-1."""
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    loops = [0] * n
    for u, v in edges:
        if u == v:
            loops[u] += 1
    key = [(deg[i], loops[i]) for i in range(n)]
    classes: dict = {}
    for i in range(n):
        classes.setdefault(key[i], []).append(i)
    ordered = sorted(classes)
    best = None

    def rec(k: int, mapping: dict):
        nonlocal best
        if k == len(ordered):
            form = tuple(sorted(tuple(sorted((mapping[u], mapping[v]))) for u, v in edges))
            if best is None or form < best:
                best = form
            return
        members = classes[ordered[k]]
        base = len(mapping)
        for perm in permutations(members):
            m2 = dict(mapping)
            for j, x in enumerate(perm):
                m2[x] = base + j
            rec(k + 1, m2)

    rec(0, {})
    return (n, best)


def connected_multigraphs(max_edges: int, min_edges: int = 1) -> list[FiniteGraph]:
    """Connected multigraphs (loops and parallel edges allowed), one per isomorphism class.

    Isolated vertices never occur, so a graph is determined by its edge multiset.
    """
    seen = {(1, ()): (1, [])}
    frontier = [(1, [])]
    out = []
    for _ in range(max_edges):
        nxt = []
        for n, edges in frontier:
            options = [(u, v) for u in range(n) for v in range(u, n)] + [(u, n) for u in range(n)]
            for u, v in options:
                n2 = max(n, v + 1)
                e2 = edges + [(u, v)]
                key = _canonical(n2, e2)
                if key in seen:
                    continue
                seen[key] = (n2, e2)
                nxt.append((n2, e2))
        frontier = nxt
        for n, edges in nxt:
            if len(edges) >= min_edges:
                out.append(FiniteGraph(tuple(range(n)), tuple((f"e{i}", u, v) for i, (u, v) in enumerate(edges))))
    return out
