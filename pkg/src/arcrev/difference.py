"""Directed difference graphs and their cycle decompositions.

For an automorphism ``f`` the difference digraph of ``(D, D2)`` keeps the arc
``u -> v`` of ``D`` exactly when ``D2`` has ``f(v) -> f(u)``.  Equivalently it
is the set of arcs where ``D`` disagrees with ``relabel(D2, f)``, the
orientation that has ``u -> v`` whenever ``D2`` has ``f(u) -> f(v)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GraphError, NotBalanced
from .graph_core import MultGraph, is_automorphism
from .orientation import Arc, Orientation, arc_in, cycle_in, reverse_cycle


def relabel(D2: Orientation, f: dict) -> Orientation:
    """Pull ``D2`` back along ``f``: ``u -> v`` iff ``f(u) -> f(v)`` in ``D2``."""
    mult = D2.mult
    bits = 0
    for k, (u, v) in enumerate(mult.edges):
        if arc_in(mult, D2.bits, f[u], f[v]):
            bits |= 1 << k
    return Orientation(mult, bits)


@dataclass(frozen=True)
class DiffDigraph:
    mult: MultGraph
    arcs: tuple
    D: Orientation
    D2: Orientation
    f: dict

    @property
    def target(self) -> Orientation:
        return relabel(self.D2, self.f)

    def out_degrees(self) -> dict:
        out = dict.fromkeys(self.mult.vertices, 0)
        for t, _ in self.arcs:
            out[t] += 1
        return out

    def in_degrees(self) -> dict:
        inn = dict.fromkeys(self.mult.vertices, 0)
        for _, h in self.arcs:
            inn[h] += 1
        return inn

    def balance(self) -> str:
        """``"exact"`` if od = id everywhere, ``"parity"`` if od + id is
        always even, otherwise ``"none"``."""
        od, idg = self.out_degrees(), self.in_degrees()
        if all(od[v] == idg[v] for v in od):
            return "exact"
        if all((od[v] + idg[v]) % 2 == 0 for v in od):
            return "parity"
        return "none"

    def as_orientation_lines(self) -> list:
        return [str(a) for a in self.arcs]


def build_ddg(f: dict, D: Orientation, D2: Orientation) -> DiffDigraph:
    mult = D.mult
    if D2.mult != mult:
        raise GraphError("orientations belong to different multiplications")
    if not is_automorphism(mult, f):
        raise GraphError("f is not an automorphism of the multiplication")
    T = relabel(D2, f)
    diff = D.bits ^ T.bits
    arcs = []
    for k, (u, v) in enumerate(mult.edges):
        if diff >> k & 1:
            arcs.append(Arc(u, v) if D.bits >> k & 1 else Arc(v, u))
    dd = DiffDigraph(mult, tuple(sorted(arcs)), D, D2, dict(f))
    od, idg = dd.out_degrees(), dd.in_degrees()
    s1, s2 = D.out_degrees(), D2.out_degrees()
    for v in mult.vertices:
        assert od[v] - idg[v] == s1[v] - s2[f[v]], f"degree identity fails at {v}"
    return dd


def _peel_walks(vertices, out, undirected=False):
    """Walk-following extraction of closed trails into simple cycles.

    ``out[x]`` is a sorted list of remaining neighbours to leave ``x`` by;
    with ``undirected`` set, using ``x - y`` also removes ``x`` from ``out[y]``.
    Each walk starts at the smallest vertex with something left and always
    takes the smallest neighbour; when it revisits a vertex the loop back to
    that vertex is emitted and the walk carries on from there.
    """
    cycles = []
    for s in vertices:
        while out[s]:
            path = [s]
            pos = {s: 0}
            while True:
                x = path[-1]
                if not out[x]:
                    if len(path) == 1:
                        break
                    raise NotBalanced(f"walk stuck at {x}")
                y = out[x].pop(0)
                if undirected:
                    out[y].remove(x)
                if y in pos:
                    cut = pos[y]
                    cycles.append(tuple(path[cut:]))
                    for z in path[cut + 1:]:
                        del pos[z]
                    del path[cut + 1:]
                else:
                    pos[y] = len(path)
                    path.append(y)
    return cycles


def dicycle_decomposition(dd: DiffDigraph) -> list:
    """Split a balanced difference digraph into arc-disjoint dicycles of ``D``."""
    od, idg = dd.out_degrees(), dd.in_degrees()
    bad = [v for v in od if od[v] != idg[v]]
    if bad:
        raise NotBalanced(f"od != id at {bad[0]}")
    out = {v: [] for v in dd.mult.vertices}
    for t, h in dd.arcs:
        out[t].append(h)
    for v in out:
        out[v].sort()
    seqs = _peel_walks(dd.mult.vertices, out)
    return [cycle_in(dd.mult, dd.D.bits, s) for s in seqs]


def cycle_decomposition_undirected(dd: DiffDigraph) -> list:
    """Split the underlying graph of the difference digraph into edge-disjoint
    cycles; each carries its arcs as they lie in ``D``."""
    od, idg = dd.out_degrees(), dd.in_degrees()
    bad = [v for v in od if (od[v] + idg[v]) % 2]
    if bad:
        raise NotBalanced(f"odd underlying degree at {bad[0]}")
    out = {v: [] for v in dd.mult.vertices}
    for t, h in dd.arcs:
        out[t].append(h)
        out[h].append(t)
    for v in out:
        out[v].sort()
    seqs = _peel_walks(dd.mult.vertices, out, undirected=True)
    return [cycle_in(dd.mult, dd.D.bits, s) for s in seqs]


def replay_decomposition(D: Orientation, cycles) -> Orientation:
    """Reverse each cycle of an edge-disjoint decomposition in turn."""
    for C in cycles:
        D = reverse_cycle(D, C)
    return D
