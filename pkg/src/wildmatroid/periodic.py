"""One-ended infinite graphs built from a finite prefix and a repeated cell.

An edge set is described by a finite exceptional part below ``onset`` and a
pattern of ``(slot, i mod period)`` pairs above it. All decisions here are
exact: they scan the graph cell by cell with a finite-state summary of the
processed part and stop once the summary repeats at the same residue.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable

from .graphs import FiniteGraph, UnionFind, find_cycle

INFINITE = math.inf


class PeriodicError(ValueError):
    pass


class FamilyMismatch(PeriodicError):
    pass


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class Slot:
    """An edge template repeated in every cell; ends are (cell label, offset)."""

    name: str
    source: tuple[str, int]
    target: tuple[str, int]

    @property
    def crossing(self) -> bool:
        return self.source[1] == 1 or self.target[1] == 1


@dataclass(frozen=True)
class RayedGraphFamily:
    name: str
    cell_labels: tuple[str, ...]
    slots: tuple[Slot, ...]
    start: int = 0
    prefix_vertices: tuple[str, ...] = ()
    # (name, source, target); an end is a prefix vertex name or a cell label at cell ``start``
    prefix_edges: tuple[tuple[str, str, str], ...] = ()

    def __post_init__(self):
        names = [s.name for s in self.slots] + [e[0] for e in self.prefix_edges]
        if len(set(names)) != len(names):
            raise PeriodicError("slot and prefix edge names must be distinct")
        for s in self.slots:
            for lab, off in (s.source, s.target):
                if lab not in self.cell_labels or off not in (0, 1):
                    raise PeriodicError(f"slot {s.name} has a malformed end {(lab, off)}")
            if s.source[1] == 1 and s.target[1] == 1:
                raise PeriodicError(f"slot {s.name} must touch its own cell")
        for name, a, b in self.prefix_edges:
            for x in (a, b):
                if x not in self.prefix_vertices and x not in self.cell_labels:
                    raise PeriodicError(f"prefix edge {name} has an unknown end {x}")

    @property
    def width(self) -> int:
        return len(self.cell_labels)

    @cached_property
    def slot_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.slots)

    @cached_property
    def prefix_edge_names(self) -> tuple[str, ...]:
        return tuple(e[0] for e in self.prefix_edges)

    def slot(self, name: str) -> Slot:
        for s in self.slots:
            if s.name == name:
                return s
        raise KeyError(name)

    def _pvertex(self, x: str):
        return (x, None) if x in self.prefix_vertices else (x, self.start)

    def ends(self, edge) -> tuple:
        """(source, target) vertices; vertices are ``(label, cell)`` or ``(name, None)``."""
        if isinstance(edge, str):
            for name, a, b in self.prefix_edges:
                if name == edge:
                    return self._pvertex(a), self._pvertex(b)
            raise KeyError(edge)
        sname, i = edge
        s = self.slot(sname)
        return (s.source[0], i + s.source[1]), (s.target[0], i + s.target[1])

    def is_edge(self, edge) -> bool:
        if isinstance(edge, str):
            return edge in self.prefix_edge_names
        try:
            sname, i = edge
        except (TypeError, ValueError):
            return False
        return sname in self.slot_names and isinstance(i, int) and i >= self.start

    def cell_vertices(self, c: int) -> list:
        return [(lab, c) for lab in self.cell_labels]

    def prefix_vertex_ids(self) -> list:
        return [(x, None) for x in self.prefix_vertices]


def _ladder_slots(clone: bool) -> tuple[Slot, ...]:
    base = [Slot("u", ("t", 0), ("t", 1)), Slot("d", ("b", 0), ("b", 1)), Slot("r", ("t", 0), ("b", 0))]
    if not clone:
        return tuple(base)
    out = []
    for s in base:
        out.append(s)
        out.append(Slot(s.name + "'", s.source, s.target))
    return tuple(out)


LADDER_L = RayedGraphFamily("LADDER_L", ("t", "b"), _ladder_slots(False), start=1)
DOUBLED_H = RayedGraphFamily("DOUBLED_H", ("t", "b"), _ladder_slots(True), start=1)
RAYED_G = RayedGraphFamily(
    "RAYED_G",
    ("a", "b"),
    (Slot("p", ("a", 0), ("a", 1)), Slot("q", ("b", 0), ("b", 1)), Slot("r", ("a", 0), ("b", 0))),
    start=0,
    prefix_vertices=("*",),
    prefix_edges=(("l", "*", "*"),),
)

BUILTIN = {f.name: f for f in (LADDER_L, DOUBLED_H, RAYED_G)}


def family_by_name(name: str) -> RayedGraphFamily:
    try:
        return BUILTIN[name]
    except KeyError:
        raise PeriodicError(f"unknown family {name!r}") from None


# ---------------------------------------------------------------------------
# edge ids


def format_edge(edge) -> str:
    if isinstance(edge, str):
        return edge
    return f"{edge[0]}:{edge[1]}"


def parse_edge(text: str):
    if ":" in text:
        name, _, idx = text.rpartition(":")
        return (name, int(idx))
    return text


def edge_sort_key(edge):
    if isinstance(edge, str):
        return (0, 0, edge)
    return (1, edge[1], edge[0])


def edge_index(edge) -> int | None:
    return None if isinstance(edge, str) else edge[1]


# ---------------------------------------------------------------------------
# eventually periodic edge sets


@dataclass(frozen=True)
class EdgeSet:
    """Finite exceptional part below ``onset`` plus a periodic tail pattern."""

    family: RayedGraphFamily
    exceptional: frozenset = frozenset()
    onset: int = 0
    period: int = 1
    pattern: frozenset = frozenset()

    def __post_init__(self):
        if self.period < 1:
            raise PeriodicError("period must be at least 1")
        if self.onset < self.family.start:
            object.__setattr__(self, "onset", self.family.start)
        for e in self.exceptional:
            if not self.family.is_edge(e):
                raise PeriodicError(f"{e!r} is not an edge of {self.family.name}")
            if not isinstance(e, str) and e[1] >= self.onset:
                raise PeriodicError(f"exceptional edge {format_edge(e)} lies at or past the onset")
        for sname, res in self.pattern:
            if sname not in self.family.slot_names or not 0 <= res < self.period:
                raise PeriodicError(f"bad pattern entry {(sname, res)}")

    # -- constructors -----------------------------------------------------
    @classmethod
    def finite(cls, family: RayedGraphFamily, edges: Iterable) -> "EdgeSet":
        edges = frozenset(edges)
        top = max((e[1] for e in edges if not isinstance(e, str)), default=family.start - 1)
        return cls(family, edges, max(top + 1, family.start), 1, frozenset())

    @classmethod
    def tail(cls, family: RayedGraphFamily, slots: Iterable[str], start: int | None = None,
             residues: Iterable[int] | None = None, period: int = 1) -> "EdgeSet":
        """Edges ``(slot, i)`` for i >= start (and i mod period in residues)."""
        start = family.start if start is None else start
        res = list(range(period)) if residues is None else list(residues)
        s = cls(family, frozenset(), start, period, frozenset((x, r) for x in slots for r in res))
        return s

    @classmethod
    def everything(cls, family: RayedGraphFamily) -> "EdgeSet":
        return cls(family, frozenset(family.prefix_edge_names), family.start, 1,
                   frozenset((s, 0) for s in family.slot_names))

    @classmethod
    def empty(cls, family: RayedGraphFamily) -> "EdgeSet":
        return cls(family)

    # -- membership -------------------------------------------------------
    def __contains__(self, edge) -> bool:
        if isinstance(edge, str):
            return edge in self.exceptional
        sname, i = edge
        if i < self.onset:
            return edge in self.exceptional
        return (sname, i % self.period) in self.pattern

    @property
    def is_finite(self) -> bool:
        return not self.pattern

    def members_in_cells(self, lo: int, hi: int) -> list:
        """Prefix members plus members with cell index in ``[lo, hi)``."""
        out = [e for e in self.exceptional if isinstance(e, str)]
        for i in range(max(lo, self.family.start), hi):
            for sname in self.family.slot_names:
                if (sname, i) in self:
                    out.append((sname, i))
        return sorted(out, key=edge_sort_key)

    def finite_members(self) -> frozenset:
        if not self.is_finite:
            raise PeriodicError("edge set is infinite")
        return frozenset(self.exceptional)

    # -- alignment and algebra -------------------------------------------
    def realign(self, onset: int, period: int) -> "EdgeSet":
        if onset < self.onset or period % self.period:
            raise PeriodicError("can only move the onset up and refine the period")
        exc = set(self.exceptional)
        for i in range(self.onset, onset):
            for sname in self.family.slot_names:
                if (sname, i) in self:
                    exc.add((sname, i))
        pat = frozenset((s, r) for s in self.family.slot_names for r in range(period)
                        if (s, r % self.period) in self.pattern)
        return EdgeSet(self.family, frozenset(exc), onset, period, pat)

    def _aligned(self, other: "EdgeSet") -> tuple["EdgeSet", "EdgeSet"]:
        if other.family != self.family:
            raise FamilyMismatch("edge sets live on different families")
        onset = max(self.onset, other.onset)
        period = math.lcm(self.period, other.period)
        return self.realign(onset, period), other.realign(onset, period)

    def _combine(self, other: "EdgeSet", op) -> "EdgeSet":
        a, b = self._aligned(other)
        exc_universe = a.exceptional | b.exceptional
        exc = frozenset(e for e in exc_universe if op(e in a.exceptional, e in b.exceptional))
        pat_universe = a.pattern | b.pattern
        pat = frozenset(x for x in pat_universe if op(x in a.pattern, x in b.pattern))
        return EdgeSet(a.family, exc, a.onset, a.period, pat).canonical()

    def __or__(self, other: "EdgeSet") -> "EdgeSet":
        return self._combine(other, lambda x, y: x or y)

    def __and__(self, other: "EdgeSet") -> "EdgeSet":
        return self._combine(other, lambda x, y: x and y)

    def __sub__(self, other: "EdgeSet") -> "EdgeSet":
        return self._combine(other, lambda x, y: x and not y)

    def complement(self) -> "EdgeSet":
        return EdgeSet.everything(self.family) - self

    def add(self, *edges) -> "EdgeSet":
        return self | EdgeSet.finite(self.family, edges)

    def remove(self, *edges) -> "EdgeSet":
        return self - EdgeSet.finite(self.family, edges)

    def issubset(self, other: "EdgeSet") -> bool:
        return (self - other).is_empty()

    def is_empty(self) -> bool:
        return not self.exceptional and not self.pattern

    def same_as(self, other: "EdgeSet") -> bool:
        a, b = self._aligned(other)
        return a.exceptional == b.exceptional and a.pattern == b.pattern

    def canonical(self) -> "EdgeSet":
        """Smallest period, then smallest onset, describing the same set."""
        p = self.period
        for d in sorted(x for x in range(1, p + 1) if p % x == 0):
            if all(((s, r) in self.pattern) == ((s, r % d) in self.pattern)
                   for s in self.family.slot_names for r in range(p)):
                p = d
                break
        pat = frozenset((s, r) for s in self.family.slot_names for r in range(p)
                        if (s, r) in self.pattern)
        exc = set(self.exceptional)
        onset = self.onset
        while onset > self.family.start:
            i = onset - 1
            if all((((s, i) in exc) == ((s, i % p) in pat)) for s in self.family.slot_names):
                for s in self.family.slot_names:
                    exc.discard((s, i))
                onset = i
            else:
                break
        return EdgeSet(self.family, frozenset(exc), onset, p, pat)

    def __repr__(self) -> str:
        exc = ",".join(format_edge(e) for e in sorted(self.exceptional, key=edge_sort_key))
        pat = ",".join(f"{s}@{r}" for s, r in sorted(self.pattern))
        return f"EdgeSet({self.family.name}; {{{exc}}}; onset={self.onset}; period={self.period}; [{pat}])"


def intersection_cardinality(s: EdgeSet, t: EdgeSet) -> float | int:
    a, b = s._aligned(t)
    if a.pattern & b.pattern:
        return INFINITE
    return len(a.exceptional & b.exceptional)


def difference_cardinality(s: EdgeSet, t: EdgeSet) -> float | int:
    d = s - t
    return INFINITE if d.pattern else len(d.exceptional)


# ---------------------------------------------------------------------------
# windows


@dataclass(frozen=True)
class WindowGraph:
    family: RayedGraphFamily
    depth: int
    graph: FiniteGraph = field(repr=False)

    @property
    def vertices(self) -> tuple:
        return self.graph.vertices

    @property
    def edges(self) -> tuple:
        return self.graph.edge_ids


def window(family: RayedGraphFamily, n: int) -> WindowGraph:
    """Prefix plus cells ``start .. start+n-1`` with every edge inside them."""
    if n < 1:
        raise PeriodicError("window depth must be at least 1")
    last = family.start + n - 1
    verts = family.prefix_vertex_ids()
    for c in range(family.start, last + 1):
        verts.extend(family.cell_vertices(c))
    edges = []
    for name in family.prefix_edge_names:
        u, v = family.ends(name)
        edges.append((name, u, v))
    for i in range(family.start, last + 1):
        for s in family.slots:
            if s.crossing and i + 1 > last:
                continue
            u, v = family.ends((s.name, i))
            edges.append(((s.name, i), u, v))
    return WindowGraph(family, n, FiniteGraph(tuple(verts), tuple(edges)))


def restrict(s: EdgeSet, n: int) -> frozenset:
    w = window(s.family, n)
    return frozenset(e for e in w.edges if e in s)


def subgraph(s: EdgeSet, hi_cell: int) -> FiniteGraph:
    """Finite graph of the members of ``s`` with both ends in cells <= hi_cell."""
    n = hi_cell - s.family.start + 1
    w = window(s.family, max(n, 1))
    return w.graph.restrict(e for e in w.edges if e in s)


# ---------------------------------------------------------------------------
# the cell-by-cell scan


def _step_edges(family: RayedGraphFamily, c: int) -> list:
    """Edges added when cell c+1 joins: crossings at index c, in-cell slots at c+1."""
    out = []
    for s in family.slots:
        if s.crossing:
            out.append((s.name, c))
        else:
            out.append((s.name, c + 1))
    return out


def _initial_edges(family: RayedGraphFamily) -> list:
    out = list(family.prefix_edge_names)
    out.extend((s.name, family.start) for s in family.slots if not s.crossing)
    return out


def _local(family: RayedGraphFamily, c: int, v) -> int:
    """Old frontier cell c -> 0..w-1, new cell c+1 -> w..2w-1."""
    lab, cell = v
    k = family.cell_labels.index(lab)
    return k if cell == c else family.width + k


@lru_cache(maxsize=None)
def _step_shape(family: RayedGraphFamily) -> tuple:
    """Local endpoint pairs of the step edges; identical for every cell."""
    shape = []
    for e in _step_edges(family, family.start):
        u, v = family.ends(e)
        shape.append((_local(family, family.start, u), _local(family, family.start, v)))
    return tuple(shape)


def _presence(s: EdgeSet, c: int) -> int:
    m = 0
    for k, e in enumerate(_step_edges(s.family, c)):
        if e in s:
            m |= 1 << k
    return m


def _key(s: EdgeSet, c: int):
    """Residue class of step c once both edge indices it reads are periodic."""
    return ("p", c % s.period) if c >= s.onset else ("c", c)


# -- forest scan --------------------------------------------------------------


def _canon_partition(labels: list) -> tuple:
    seen: dict = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


@lru_cache(maxsize=None)
def _forest_step(family: RayedGraphFamily, state: tuple, presence: int) -> tuple | None:
    w = family.width
    uf = UnionFind(range(2 * w))
    first: dict = {}
    for i, blk in enumerate(state):
        if blk in first:
            uf.union(first[blk], i)
        else:
            first[blk] = i
    for k, (u, v) in enumerate(_step_shape(family)):
        if presence >> k & 1:
            if not uf.union(u, v):
                return None
    return _canon_partition([uf.find(w + i) for i in range(w)])


def _forest_initial(s: EdgeSet) -> tuple | None:
    fam = s.family
    uf = UnionFind(fam.prefix_vertex_ids() + fam.cell_vertices(fam.start))
    for e in _initial_edges(fam):
        if e in s:
            u, v = fam.ends(e)
            if not uf.union(u, v):
                return None
    return _canon_partition([uf.find(v) for v in fam.cell_vertices(fam.start)])


def contains_finite_cycle(s: EdgeSet) -> frozenset | None:
    """A finite cycle inside ``s``, or None when ``s`` is a forest.

    The partition of the frontier cell by connectivity decides whether the next
    step closes a cycle; once (partition, residue) repeats nothing new can happen.
    """
    fam = s.family
    state = _forest_initial(s)
    c = fam.start
    seen = set()
    while state is not None:
        k = _key(s, c)
        if k[0] == "p":
            if (state, k) in seen:
                return None
            seen.add((state, k))
        state = _forest_step(fam, state, _presence(s, c))
        c += 1
    # a cycle closes within cells <= c
    g = subgraph(s, c)
    cyc = find_cycle(g)
    assert cyc is not None
    return cyc


def forest_horizon(s: EdgeSet) -> int:
    """Last cell the forest scan needs to inspect (diagnostic)."""
    fam = s.family
    state = _forest_initial(s)
    c = fam.start
    seen = set()
    while state is not None:
        k = _key(s, c)
        if k[0] == "p":
            if (state, k) in seen:
                return c
            seen.add((state, k))
        state = _forest_step(fam, state, _presence(s, c))
        c += 1
    return c


# -- path-system automaton -------------------------------------------------------
#
# A state summarises D n R_c for a subgraph D of s that is a disjoint union of
# paths whose open ends all sit in the frontier cell c. Per frontier vertex:
#   UNUSED  degree 0 so far
#   SAT     degree 2 (interior)
#   ORIG    path end whose other end is the ray's origin
#   j >= 0  path end whose other end is frontier vertex j
# Frontier vertices leave the frontier with degree 0 or 2, except for at most
# one origin (degree 1) when rays are allowed.

UNUSED, SAT, ORIG = -1, -2, -3


def _degree(code: int) -> int:
    return 0 if code == UNUSED else 2 if code == SAT else 1


def _finish(nverts_old: list, new_ids: list, deg: dict, uf: UnionFind, origin_node) -> tuple | None:
    groups: dict = {}
    for v in new_ids:
        if deg[v] == 1:
            groups.setdefault(uf.find(v), []).append(v)
    codes = []
    pos = {v: i for i, v in enumerate(new_ids)}
    oroot = uf.find(origin_node)
    for v in new_ids:
        d = deg[v]
        if d == 0:
            codes.append(UNUSED)
        elif d == 2:
            codes.append(SAT)
        else:
            root = uf.find(v)
            mates = [x for x in groups[root] if x != v]
            if root == oroot:
                if mates:
                    return None
                codes.append(ORIG)
            else:
                if len(mates) != 1:
                    return None
                codes.append(pos[mates[0]])
    return tuple(codes)


def _enumerate(old_ids: list, old_codes: tuple, new_ids: list, cand: list, allow_origin: bool,
               origin_used: bool) -> list:
    """All (new_codes, origin_used', chosen mask) reachable by choosing a subset of ``cand``."""
    out = []
    origin_node = ("origin",)
    k = len(cand)
    for mask in range(1 << k):
        deg = {v: 0 for v in new_ids}
        for v, code in zip(old_ids, old_codes):
            deg[v] = _degree(code)
        bad = False
        for j in range(k):
            if mask >> j & 1:
                u, v = cand[j]
                if u == v:
                    bad = True
                    break
                deg[u] += 1
                deg[v] += 1
                if deg[u] > 2 or deg[v] > 2:
                    bad = True
                    break
        if bad:
            continue
        new_origin = [v for v in old_ids if deg[v] == 1]
        if len(new_origin) > (1 if allow_origin and not origin_used else 0):
            continue
        uf = UnionFind(list(old_ids) + list(new_ids) + [origin_node])
        for v, code in zip(old_ids, old_codes):
            if code >= 0:
                uf.union(v, old_ids[code])
            elif code == ORIG:
                uf.union(v, origin_node)
        for j in range(k):
            if mask >> j & 1:
                u, v = cand[j]
                if not uf.union(u, v):
                    bad = True
                    break
        if bad:
            continue
        for v in new_origin:
            if not uf.union(v, origin_node):
                bad = True
        if bad:
            continue
        codes = _finish(old_ids, new_ids, deg, uf, origin_node)
        if codes is None:
            continue
        out.append((codes, origin_used or bool(new_origin), mask))
    return out


@lru_cache(maxsize=None)
def _path_step(family: RayedGraphFamily, state: tuple, presence: int, allow_origin: bool) -> tuple:
    codes, used = state
    w = family.width
    shape = _step_shape(family)
    cand_idx = [k for k in range(len(shape)) if presence >> k & 1]
    cand = [shape[k] for k in cand_idx]
    res = []
    for new_codes, used2, m in _enumerate(list(range(w)), codes, list(range(w, 2 * w)), cand,
                                          allow_origin, used):
        full = 0
        for j, k in enumerate(cand_idx):
            if m >> j & 1:
                full |= 1 << k
        res.append(((new_codes, used2), full))
    return tuple(res)


def _path_initial(s: EdgeSet, allow_origin: bool) -> list:
    fam = s.family
    old = fam.prefix_vertex_ids()
    new = fam.cell_vertices(fam.start)
    edges = [e for e in _initial_edges(fam) if e in s]
    cand = [fam.ends(e) for e in edges]
    out = []
    for codes, used, m in _enumerate(old, tuple(UNUSED for _ in old), new, cand, allow_origin, False):
        chosen = frozenset(edges[j] for j in range(len(edges)) if m >> j & 1)
        out.append(((codes, used), chosen))
    return out


def _nonempty(state: tuple) -> bool:
    return any(c >= 0 or c == ORIG for c in state[0])


@dataclass(frozen=True)
class RayCertificate:
    """Witness that ``s`` contains a ray (or a double ray).

    ``edges`` is an eventually periodic subgraph of ``s`` built from a lasso in
    the path-system automaton: a union of disjoint rays/double rays.
    """

    edges: EdgeSet
    loop_start: int
    loop_length: int


@dataclass(frozen=True)
class NoRay:
    horizon: int


def _search_paths(s: EdgeSet, allow_origin: bool) -> RayCertificate | NoRay:
    fam = s.family
    # nodes: (key, state) ; key = ("c", cell) before the onset, ("p", residue) after
    init = _path_initial(s, allow_origin)
    start = fam.start
    succ: dict = {}
    first_cell: dict = {}
    roots = []
    for st, chosen in init:
        node = (_key(s, start), st)
        roots.append((node, chosen))
        first_cell.setdefault(node, start)
    stack = [(n, start) for n, _ in roots]
    seen = {n for n, _ in roots}
    horizon = start
    while stack:
        node, c = stack.pop()
        horizon = max(horizon, c)
        k, st = node
        outs = []
        for st2, mask in _path_step(fam, st, _presence(s, c), allow_origin):
            nxt = (_key(s, c + 1), st2)
            outs.append((nxt, mask))
            if nxt not in seen:
                seen.add(nxt)
                first_cell[nxt] = c + 1
                stack.append((nxt, c + 1))
        succ[node] = outs
    # nodes with an infinite continuation: prune dead ends to a fixpoint
    alive = set(succ)
    changed = True
    while changed:
        changed = False
        for node in list(alive):
            if not any(n in alive for n, _ in succ[node]):
                alive.discard(node)
                changed = True
    good = [n for n in alive if _nonempty(n[1])]
    if not good:
        return NoRay(horizon)
    return _lasso(s, roots, succ, alive, first_cell)


def _lasso(s: EdgeSet, roots, succ, alive, first_cell) -> RayCertificate:
    """Build a concrete eventually periodic run through nonempty alive nodes."""
    fam = s.family
    start = fam.start
    # BFS from roots inside alive nodes to the first nonempty node, then walk
    # nonempty alive nodes until one repeats.
    parent: dict = {}
    queue = deque()
    for node, chosen in roots:
        if node in alive and node not in parent:
            parent[node] = (None, chosen, start)
            queue.append((node, start))
    target = None
    while queue:
        node, c = queue.popleft()
        if _nonempty(node[1]):
            target = (node, c)
            break
        for nxt, mask in succ[node]:
            if nxt in alive and nxt not in parent:
                parent[nxt] = (node, mask, c + 1)
                queue.append((nxt, c + 1))
    assert target is not None
    # recover the prefix run: list of (cell c, step mask taken at cell c)
    steps = []
    node, c_t = target
    initial_chosen = None
    cur = node
    while True:
        prev, data, c = parent[cur]
        if prev is None:
            initial_chosen = data
            break
        steps.append((c - 1, data))
        cur = prev
    steps.reverse()
    # walk forward among nonempty alive nodes; nonempty persists, so any alive
    # successor of a nonempty node is nonempty
    visited: dict = {}
    walk = []
    node, c = target
    while True:
        key = node
        if key[0][0] == "p" and key in visited:
            loop_from = visited[key]
            break
        if key[0][0] == "p":
            visited[key] = len(walk)
        nxt, mask = next((n, m) for n, m in succ[node] if n in alive)
        walk.append((c, mask))
        node, c = nxt, c + 1
    loop_steps = walk[loop_from:]
    pre_steps = steps + walk[:loop_from]
    loop_start = loop_steps[0][0]
    length = len(loop_steps)
    edges = set(initial_chosen)
    for cell, mask in pre_steps:
        for k, e in enumerate(_step_edges(fam, cell)):
            if mask >> k & 1:
                edges.add(e)
    # one full unrolling of the loop fixes indices loop_start .. loop_start+length
    for cell, mask in loop_steps:
        for k, e in enumerate(_step_edges(fam, cell)):
            if mask >> k & 1:
                edges.add(e)
    onset = loop_start + 1
    exc = frozenset(e for e in edges if isinstance(e, str) or e[1] < onset)
    pattern = set()
    for cell, mask in loop_steps:
        for k, e in enumerate(_step_edges(fam, cell)):
            if mask >> k & 1:
                pattern.add((e[0], e[1] % length))
    es = EdgeSet(fam, exc, onset, length, frozenset(pattern))
    return RayCertificate(es.canonical(), loop_start, length)


def find_ray(s: EdgeSet) -> RayCertificate | NoRay:
    return _search_paths(s, allow_origin=True)


def has_ray(s: EdgeSet) -> bool:
    return isinstance(find_ray(s), RayCertificate)


@dataclass(frozen=True)
class DoubleRayCertificate:
    """A single double ray inside ``s``, as an eventually periodic edge set."""

    ray: EdgeSet
    middle: frozenset
    tails: tuple


def contains_double_ray(s: EdgeSet) -> DoubleRayCertificate | NoRay:
    res = _search_paths(s, allow_origin=False)
    if isinstance(res, NoRay):
        return res
    single = _single_component(res.edges, res.loop_length)
    middle, tails = _describe(single)
    return DoubleRayCertificate(single, middle, tails)


def _single_component(d: EdgeSet, loop: int) -> EdgeSet:
    """Cut one double ray out of a periodic union of disjoint double rays."""
    if is_circuit_MA(d):
        return d
    fam = d.family
    first = min((e for e in d.members_in_cells(fam.start, d.onset + d.period)), key=edge_sort_key)
    for mult in range(1, 2 * fam.width + 3):
        period = d.period * mult
        onset = d.onset + period
        hi = onset + 3 * period
        g = subgraph(d, hi + 1)
        uf = UnionFind(g.vertices)
        for _, u, v in g.edges:
            uf.union(u, v)
        root = uf.find(fam.ends(first)[0])
        comp = {eid for eid, u, v in g.edges if uf.find(u) == root}
        exc = frozenset(e for e in comp if isinstance(e, str) or e[1] < onset)
        pat = frozenset((e[0], e[1] % period) for e in comp
                        if not isinstance(e, str) and onset <= e[1] < onset + period)
        cand = EdgeSet(fam, exc, onset, period, pat)
        if cand.issubset(d) and is_circuit_MA(cand):
            return cand.canonical()
    raise PeriodicError("could not isolate a single double ray")  # pragma: no cover


def _describe(ray: EdgeSet) -> tuple[frozenset, tuple]:
    """Finite middle part and the two tails as (slot sequence, start, period)."""
    fam = ray.family
    middle = frozenset(ray.members_in_cells(fam.start, ray.onset))
    slots = tuple(sorted({s for s, _ in ray.pattern}))
    return middle, ((slots, ray.onset, ray.period),)


# ---------------------------------------------------------------------------
# connectivity and degrees


def degrees_ok(s: EdgeSet, allowed=(0, 2)) -> tuple | None:
    """First vertex whose degree in ``s`` is not in ``allowed``, or None."""
    hi = s.onset + s.period + 1
    g = subgraph(s, hi + 1)
    deg = {v: 0 for v in g.vertices}
    for _, u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    for v in g.vertices:
        if v[1] is not None and v[1] > hi:
            continue
        if deg[v] not in allowed:
            return v
    return None


def is_connected(s: EdgeSet) -> bool:
    """Whether the edges of ``s`` (with their ends) form a connected graph."""
    if s.is_empty():
        return True
    if s.is_finite:
        top = max((e[1] for e in s.exceptional if not isinstance(e, str)), default=s.family.start)
        check = horizon = top + 1
    else:
        _, check, horizon = _scan_repeat(s)
    g = subgraph(s, horizon)
    uf = UnionFind(g.vertices)
    for _, u, v in g.edges:
        uf.union(u, v)
    touched = {x for _, u, v in g.edges for x in (u, v)}
    roots = {uf.find(v) for v in touched if v[1] is None or v[1] <= check}
    return len(roots) == 1


@lru_cache(maxsize=4096)
def _scan_repeat(s: EdgeSet) -> tuple[int, int, int]:
    """(t1, check cell, horizon) for the touched/marked partition scan.

    Blocks only merge, so a touched block alive at a repeated state either joins
    the marked block within (width+1) state cycles or never does.
    """
    fam = s.family
    w = fam.width
    gfirst = subgraph(s, fam.start)
    uf = UnionFind(gfirst.vertices)
    for _, u, v in gfirst.edges:
        uf.union(u, v)
    touched = {x for _, u, v in gfirst.edges for x in (u, v)}
    marked_root = None
    if gfirst.edges:
        marked_root = gfirst.edges[0][1]

    def state_at(c: int) -> tuple:
        vs = fam.cell_vertices(c)
        roots = [uf.find(v) for v in vs]
        troots = {uf.find(x) for x in touched}
        mroot = uf.find(marked_root) if marked_root is not None else None
        labels = [(r, r in troots, r == mroot) for r in roots]
        canon = _canon_partition([r for r, _, _ in labels])
        return tuple(zip(canon, [t for _, t, _ in labels], [m for _, _, m in labels]))

    seen: dict = {}
    c = fam.start
    while True:
        k = _key(s, c)
        st = (state_at(c), k)
        if k[0] == "p" and st in seen:
            t1, t2 = seen[st], c
            period = t2 - t1
            check = t2 + period
            return t1, check, check + (w + 1) * period + 1
        if k[0] == "p":
            seen[st] = c
        for e in _step_edges(fam, c):
            if e in s:
                u, v = fam.ends(e)
                uf.union(u, v)
                touched.update((u, v))
                if marked_root is None:
                    marked_root = u
        c += 1


# ---------------------------------------------------------------------------
# algebraic cycle matroid decisions


def is_independent_MA(s: EdgeSet) -> bool:
    return contains_finite_cycle(s) is None and isinstance(contains_double_ray(s), NoRay)


def dependence_witness(s: EdgeSet):
    """A circuit inside ``s`` (finite frozenset or EdgeSet), or None."""
    cyc = contains_finite_cycle(s)
    if cyc is not None:
        return cyc
    dr = contains_double_ray(s)
    if isinstance(dr, DoubleRayCertificate):
        return dr.ray
    return None


def is_circuit_MA(s: EdgeSet) -> bool:
    if s.is_empty():
        return False
    if degrees_ok(s) is not None:
        return False
    if not is_connected(s):
        return False
    # connected and 2-regular: a finite cycle if finite, otherwise a double ray
    return True


@dataclass(frozen=True)
class BaseVerdict:
    status: str  # "base" | "not-independent" | "not-maximal"
    witness: object = None

    @property
    def is_base(self) -> bool:
        return self.status == "base"

    def __bool__(self) -> bool:
        return self.is_base


def maximality_candidates(s: EdgeSet) -> list:
    """Edges outside ``s`` whose addition must be tested.

    Every edge below onset + 2*period individually, then one representative
    per (slot, residue) in the next period.
    """
    fam = s.family
    out = [e for e in fam.prefix_edge_names if e not in s]
    hi = s.onset + 2 * s.period
    for i in range(fam.start, hi + s.period):
        for sname in fam.slot_names:
            e = (sname, i)
            if e not in s:
                out.append(e)
    return out


def is_base_MA(s: EdgeSet) -> BaseVerdict:
    wit = dependence_witness(s)
    if wit is not None:
        return BaseVerdict("not-independent", wit)
    for e in maximality_candidates(s):
        if is_independent_MA(s.add(e)):
            return BaseVerdict("not-maximal", e)
    return BaseVerdict("base")


def is_skew_cut(edges: Iterable, family: RayedGraphFamily) -> bool:
    """Whether a finite edge set is a cut with a rayless side, minimal with that property."""
    if isinstance(edges, EdgeSet):
        if not edges.is_finite:
            raise PeriodicError("only finite skew cuts are supported")
        edges = edges.exceptional
    cut = frozenset(edges)
    if not cut:
        return False
    for e in cut:
        if not family.is_edge(e):
            raise PeriodicError(f"{e!r} is not an edge of {family.name}")
    if not _is_rayless_cut(cut, family):
        return False
    items = sorted(cut, key=edge_sort_key)
    for r in range(1, len(items)):
        for sub in combinations(items, r):
            if _is_rayless_cut(frozenset(sub), family):
                return False
    return True


def _is_rayless_cut(cut: frozenset, family: RayedGraphFamily) -> bool:
    """Some vertex set X with G[X] rayless has exactly ``cut`` as its boundary."""
    top = max((e[1] for e in cut if not isinstance(e, str)), default=family.start)
    hi = top + 2
    w = window(family, hi - family.start + 1)
    g = w.graph
    uf = UnionFind(g.vertices)
    for eid, u, v in g.edges:
        if eid not in cut:
            uf.union(u, v)
    # components touching the last cell of the window continue into the infinite tail
    infinite_roots = {uf.find(v) for v in family.cell_vertices(hi)}
    comps: dict = {}
    for v in g.vertices:
        comps.setdefault(uf.find(v), set()).add(v)
    finite = [r for r in comps if r not in infinite_roots]
    ends = {eid: (uf.find(u), uf.find(v)) for eid, u, v in g.edges}
    for eid in cut:
        a, b = ends[eid]
        if a == b:
            return False
    # the rayless side is a union of finite components; each cut edge must cross
    for r in range(1, len(finite) + 1):
        for side in combinations(finite, r):
            sset = set(side)
            boundary = {eid for eid, (a, b) in ends.items() if (a in sset) != (b in sset)}
            if boundary == set(cut):
                return True
    return False
