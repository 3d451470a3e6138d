"""Parent graphs, vertex-multiplications and their undirected structure.

A parent graph has vertices ``1..n``.  Its multiplication ``G(p_1, ..., p_n)``
replaces parent vertex ``i`` by the independent set ``V_i`` of ``p_i`` copies
and joins copies across every parent edge.  Multiplied vertices are
``Vertex(partite, copy)`` pairs and are totally ordered as tuples; every
tie-break in the package uses that order.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, NamedTuple

from .errors import GraphError


class Vertex(NamedTuple):
    partite: int
    copy: int

    def __str__(self):
        return f"{self.partite}.{self.copy}"


def _norm_edge(i, j):
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class ParentGraph:
    n: int
    edges: frozenset

    def __post_init__(self):
        edges = frozenset(_norm_edge(int(i), int(j)) for i, j in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n < 1:
            raise GraphError("parent graph needs at least one vertex")
        for i, j in edges:
            if i == j:
                raise GraphError(f"loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise GraphError(f"edge {i} {j} has an endpoint outside 1..{self.n}")
        if not _connected(range(1, self.n + 1), self.adj):
            raise GraphError("parent graph is disconnected")

    @classmethod
    def from_edges(cls, n, edges):
        edges = list(edges)
        seen = set()
        for i, j in edges:
            e = _norm_edge(i, j)
            if e in seen:
                raise GraphError(f"parallel edge {i} {j}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @classmethod
    def complete(cls, n):
        return cls(n, frozenset((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))

    @classmethod
    def path(cls, n):
        return cls(n, frozenset((i, i + 1) for i in range(1, n)))

    @classmethod
    def cycle(cls, n):
        return cls(n, frozenset(_norm_edge(i, i % n + 1) for i in range(1, n + 1)))

    @cached_property
    def adj(self) -> dict:
        adj = {i: set() for i in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return {i: frozenset(s) for i, s in adj.items()}

    @property
    def vertices(self):
        return range(1, self.n + 1)

    @property
    def m(self):
        return len(self.edges)

    def has_edge(self, i, j):
        return _norm_edge(i, j) in self.edges

    def edge_list(self):
        return sorted(self.edges)

    def is_complete(self):
        return self.m == self.n * (self.n - 1) // 2


@dataclass(frozen=True)
class MultGraph:
    """The vertex-multiplication ``parent(p_1, ..., p_n)``."""

    parent: ParentGraph
    p: tuple

    @cached_property
    def vertices(self) -> tuple:
        return tuple(Vertex(i, a) for i in self.parent.vertices for a in range(1, self.p[i - 1] + 1))

    @cached_property
    def edges(self) -> tuple:
        out = []
        for i, j in self.parent.edge_list():
            for a in range(1, self.p[i - 1] + 1):
                for b in range(1, self.p[j - 1] + 1):
                    out.append((Vertex(i, a), Vertex(j, b)))
        out.sort()
        return tuple(out)

    @cached_property
    def edge_index(self) -> dict:
        return {e: k for k, e in enumerate(self.edges)}

    @cached_property
    def adj(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @property
    def N(self):
        return len(self.vertices)

    @property
    def m(self):
        return len(self.edges)

    def adjacent(self, u, v):
        return u.partite != v.partite and self.parent.has_edge(u.partite, v.partite)

    def edge_id(self, u, v):
        return self.edge_index[(u, v) if u < v else (v, u)]

    def partite_set(self, i):
        return tuple(Vertex(i, a) for a in range(1, self.p[i - 1] + 1))

    @cached_property
    def twin_classes(self) -> tuple:
        """(open, closed) twin-class ids per vertex; transposing twins is an automorphism."""
        open_key, closed_key = {}, {}
        open_id, closed_id = {}, {}
        for v in self.vertices:
            nb = frozenset(self.adj[v])
            open_id[v] = open_key.setdefault(nb, len(open_key))
            closed_id[v] = closed_key.setdefault(nb | {v}, len(closed_key))
        return open_id, closed_id


def build_multiplication(parent: ParentGraph, p) -> MultGraph:
    p = tuple(int(x) for x in p)
    if len(p) != parent.n:
        raise GraphError(f"expected {parent.n} multiplicities, got {len(p)}")
    if any(x < 1 for x in p):
        raise GraphError("multiplicities must be positive")
    return MultGraph(parent, p)


def _connected(vertices, adj):
    vertices = list(vertices)
    if not vertices:
        return True
    seen = {vertices[0]}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(vertices)


def bridges(vertices, adj) -> frozenset:
    """Bridges of an undirected graph, as sorted vertex pairs."""
    vertices = sorted(vertices)
    index = {}
    low = {}
    found = set()
    counter = 0
    for root in vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(sorted(adj[root])))]
        while stack:
            x, parent, it = stack[-1]
            advanced = False
            for y in it:
                if y == parent:
                    continue
                if y in index:
                    low[x] = min(low[x], index[y])
                else:
                    index[y] = low[y] = counter
                    counter += 1
                    stack.append((y, x, iter(sorted(adj[y]))))
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            if parent is not None:
                low[parent] = min(low[parent], low[x])
                if low[x] > index[parent]:
                    found.add(_norm_edge(parent, x))
    return frozenset(found)


class Classification(NamedTuple):
    is_tree: bool
    is_bipartite: bool
    is_chordal: bool
    bridges: frozenset


def two_colouring(vertices, adj):
    """Map vertex -> 0/1, or None when the graph has an odd cycle."""
    colour = {}
    for root in sorted(vertices):
        if root in colour:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    queue.append(y)
                elif colour[y] == colour[x]:
                    return None
    return colour


def classify(parent: ParentGraph) -> Classification:
    lengths = cycle_length_sets(parent)
    return Classification(
        is_tree=parent.m == parent.n - 1,
        is_bipartite=two_colouring(parent.vertices, parent.adj) is not None,
        is_chordal=lengths.chordless_lengths <= {3},
        bridges=bridges(parent.vertices, parent.adj),
    )


def simple_cycles(vertices, adj, max_len=None) -> Iterator[tuple]:
    """Every simple cycle (length >= 3) exactly once.

    A cycle is reported starting at its smallest vertex, with its second
    vertex smaller than its last.
    """
    order = sorted(vertices)
    for s in order:
        path = [s]
        on_path = {s}
        stack = [iter(sorted(y for y in adj[s] if y > s))]
        while stack:
            y = next(stack[-1], None)
            if y is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if y in on_path:
                continue
            path.append(y)
            on_path.add(y)
            if len(path) >= 3 and s in adj[y] and path[1] < y:
                yield tuple(path)
            if max_len is None or len(path) < max_len:
                stack.append(iter(sorted(z for z in adj[y] if z > s)))
            else:
                on_path.discard(path.pop())


def chordless_cycles(vertices, adj) -> Iterator[tuple]:
    """Chordless cycles by path extension, pruning any extension that adds a chord.

    Same canonical start and direction as :func:`simple_cycles`.
    """
    for s in sorted(vertices):

        def extend(path, on_path):
            x = path[-1]
            for y in sorted(adj[x]):
                if y <= s or y in on_path:
                    continue
                if any(y in adj[z] for z in path[1:-1]):
                    continue
                if len(path) >= 2 and s in adj[y]:
                    if path[1] < y:
                        yield tuple(path) + (y,)
                    continue
                on_path.add(y)
                path.append(y)
                yield from extend(path, on_path)
                path.pop()
                on_path.discard(y)

        yield from extend([s], {s})


@dataclass(frozen=True)
class CycleLengthSets:
    all_lengths: frozenset
    chordless_lengths: frozenset
    chordless_cycles: tuple = field(default=())


def cycle_length_sets(parent: ParentGraph) -> CycleLengthSets:
    found = set()
    wanted = set(range(3, parent.n + 1))
    for cyc in simple_cycles(parent.vertices, parent.adj):
        found.add(len(cyc))
        if found >= wanted:
            break
    chordless = tuple(chordless_cycles(parent.vertices, parent.adj))
    return CycleLengthSets(
        all_lengths=frozenset(found),
        chordless_lengths=frozenset(len(c) for c in chordless),
        chordless_cycles=chordless,
    )


def base_lengths(parent: ParentGraph) -> frozenset:
    """Lengths ``{4} | L_G`` of the base reversal family for ``parent``."""
    return frozenset({4}) | cycle_length_sets(parent).chordless_lengths


# -- automorphisms ---------------------------------------------------------


def _search_order(M: MultGraph):
    # BFS order so each new vertex is adjacent to an earlier one where possible.
    order = []
    seen = set()
    for root in M.vertices:
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in M.adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return order


def automorphisms(
    M: MultGraph,
    unary: Callable | None = None,
    binary: Callable | None = None,
    rng: random.Random | None = None,
    prune: bool = True,
) -> Iterator[dict]:
    """Backtracking search over vertex bijections of ``M`` preserving adjacency.

    ``unary(v, w)`` restricts the image of ``v``; ``binary(v, w, x, y)`` is
    checked for every already-mapped ``x -> y`` adjacent to ``v``.  Without an
    ``rng`` each vertex tries itself first, so the identity comes out first
    whenever it qualifies.

    With ``prune`` set, images that differ only by swapping unused twin
    vertices are explored once; the search then still finds an automorphism
    whenever one exists but does not list the whole group.  Pass
    ``prune=False`` to enumerate every automorphism.
    """
    order = _search_order(M)
    deg = {v: len(M.adj[v]) for v in M.vertices}
    cands = {}
    for v in order:
        cs = [w for w in M.vertices if deg[w] == deg[v] and (unary is None or unary(v, w))]
        if not cs:
            return
        if rng is not None:
            rng.shuffle(cs)
        elif v in cs:
            cs.remove(v)
            cs.insert(0, v)
        cands[v] = cs
    open_id, closed_id = M.twin_classes
    label = getattr(unary, "label", None) if unary is not None else (lambda w: None)
    prune = prune and binary is None and label is not None
    assign = {}
    used = set()
    placed = []

    def consistent(v, w):
        for x in placed:
            y = assign[x]
            adj_vx = M.adjacent(v, x)
            if adj_vx != M.adjacent(w, y):
                return False
            if adj_vx and binary is not None and not binary(v, w, x, y):
                return False
        return True

    def bt(idx):
        if idx == len(order):
            yield dict(assign)
            return
        v = order[idx]
        tried = set()
        for w in cands[v]:
            if w in used:
                continue
            if prune:
                # Swapping two unused twins with equal labels is itself a
                # symmetry, so only one of them needs exploring.
                lw = label(w)
                keys = (("o", open_id[w], lw), ("c", closed_id[w], lw))
                if keys[0] in tried or keys[1] in tried:
                    continue
                tried.update(keys)
            if not consistent(v, w):
                continue
            assign[v] = w
            used.add(w)
            placed.append(v)
            yield from bt(idx + 1)
            placed.pop()
            used.discard(w)
            del assign[v]

    yield from bt(0)


class _ScoreMatch:
    """Unary constraint ``score(v) == score'(w)`` (optionally mod 2)."""

    def __init__(self, out1, out2, modulus):
        self.out1 = out1
        self.out2 = out2
        self.modulus = modulus

    def __call__(self, v, w):
        return self._key(self.out1[v]) == self._key(self.out2[w])

    def _key(self, s):
        return s % self.modulus if self.modulus else s

    def label(self, w):
        return self._key(self.out2[w])


def random_automorphism(M: MultGraph, rng: random.Random) -> dict:
    return next(automorphisms(M, rng=rng))


def is_automorphism(M: MultGraph, f: dict) -> bool:
    if sorted(f) != sorted(M.vertices) or sorted(f.values()) != sorted(M.vertices):
        return False
    return all(M.adjacent(f[u], f[v]) for u, v in M.edges) and len(set(f.values())) == M.N


def find_score_automorphism(M: MultGraph, D, D2, mode: str = "exact") -> dict | None:
    """Automorphism ``f`` of ``M`` with ``od_D(v) == od_D2(f(v))`` for all ``v``.

    ``mode="parity"`` compares outdegrees mod 2.  Returns ``None`` if no such
    automorphism exists.
    """
    if mode not in ("exact", "parity"):
        raise ValueError(f"unknown mode {mode!r}")
    out1 = D.out_degrees()
    out2 = D2.out_degrees()
    match = _ScoreMatch(out1, out2, 2 if mode == "parity" else 0)
    deg = {v: len(M.adj[v]) for v in M.vertices}
    key1 = sorted((deg[v], match._key(out1[v])) for v in M.vertices)
    key2 = sorted((deg[v], match._key(out2[v])) for v in M.vertices)
    if key1 != key2:
        return None
    return next(automorphisms(M, unary=match), None)
