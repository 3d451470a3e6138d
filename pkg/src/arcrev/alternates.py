"""Alternative routes to edge-disjoint dicycles between same-score orientations.

``bipartite_merge`` completes a bipartite multiplication to a complete
bipartite graph with fixed extra arcs, reverses 4-dicycles there, and merges
the 4-cycle script back into pairwise edge-disjoint even dicycles.  Because
the extra arcs agree in both completed orientations, none of the merged
cycles uses them, so they are dicycles of the original orientation.

``subdivision_lift`` subdivides every parent edge, which makes any
multiplication bipartite, and pulls cycles back by contracting the
subdivision vertices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .difference import build_ddg, dicycle_decomposition
from .errors import GraphError, RefinementError
from .graph_core import MultGraph, ParentGraph, Vertex, build_multiplication, two_colouring
from .orientation import DIRECTED, Orientation, cycle_in, dicycles, edge_mask
from .refine import Script, Step, Tape, apply_step, fingerprint, refine_cycle, replay

# -- merging a 4-cycle script into edge-disjoint dicycles ------------------------


def _walk_arcs(w):
    return [(w[t], w[(t + 1) % len(w)]) for t in range(len(w))]


def _self_split(w):
    """Split a closed walk at the first arc whose reverse appears later.

    Removing ``x -> y`` and ``y -> x`` leaves two closed walks (either may be
    empty).  Returns ``None`` when no such pair exists.
    """
    seen = {}
    for t, (a, b) in enumerate(_walk_arcs(w)):
        if (b, a) in seen:
            s = seen[(b, a)]
            r = w[s:] + w[:s]  # r[0] -> r[1] is the earlier arc
            tt = t - s
            return [p for p in (r[1:tt], r[tt + 1:]) if p]
        seen[(a, b)] = t
    return None


def _splice(w1, w2, a, b):
    """Join ``w1`` (containing ``a -> b``) and ``w2`` (containing ``b -> a``)
    into one closed walk without those two arcs."""
    i = next(t for t, arc in enumerate(_walk_arcs(w1)) if arc == (a, b))
    j = next(t for t, arc in enumerate(_walk_arcs(w2)) if arc == (b, a))
    r1 = w1[i + 1:] + w1[: i + 1]  # b ... a
    r2 = w2[j + 1:] + w2[: j + 1]  # a ... b
    return r1 + r2[1:-1]


def _split_simple(w):
    """Cut a closed walk with distinct arcs into simple cycles."""
    out = []
    stack = [w]
    while stack:
        w = stack.pop()
        pos = {}
        for t, x in enumerate(w):
            if x in pos:
                s = pos[x]
                stack.append(w[s:t])
                stack.append(w[:s] + w[t:])
                break
            pos[x] = t
        else:
            out.append(w)
    return out


def merge_walks(steps):
    """Fold dicycle steps (vertex lists running along their arcs at the time
    of application) into closed walks with no shared edges."""
    walks = []
    for seq in steps:
        work = [list(seq)]
        while work:
            P = work.pop()
            parts = _self_split(P)
            if parts is not None:
                work.extend(parts)
                continue
            arcs = set(_walk_arcs(P))
            hit = None
            for wi, W in enumerate(walks):
                for a, b in _walk_arcs(W):
                    if (b, a) in arcs:
                        hit = (wi, b, a)
                        break
                    if (a, b) in arcs:
                        raise RefinementError("an arc was reversed twice in the same direction")
                if hit:
                    break
            if hit is None:
                walks.append(P)
                continue
            wi, a, b = hit
            W = walks.pop(wi)
            work.append(_splice(P, W, a, b))
    return walks


def merge_to_edge_disjoint(F: Orientation, script) -> Script:
    """Replace a replay-valid dicycle script on ``F`` by pairwise edge-disjoint
    dicycles of ``F`` with the same net effect."""
    M = F.mult
    bits = F.bits
    seqs = []
    for step in script:
        C = cycle_in(M, bits, step.cycle.vertices)
        if not C.directed:
            raise RefinementError(f"step {C} is not a dicycle")
        bits = apply_step(M, bits, step)
        seqs.append(C.vertices)
    cycles = []
    for w in merge_walks(seqs):
        cycles.extend(_split_simple(w))
    steps = [Step(cycle_in(M, F.bits, c), DIRECTED) for c in cycles]
    for s in steps:
        assert s.cycle.directed, "merged cycle is not a dicycle of the start orientation"
    steps.sort(key=lambda s: s.cycle.vertices)
    out = Script(steps, "C", fingerprint(F), fingerprint(Orientation(M, bits)))
    assert replay(F, out).bits == bits
    return out


# -- completion of a bipartite multiplication -------------------------------------


@dataclass(frozen=True)
class Completion:
    mult: MultGraph
    K: MultGraph
    phi: dict  # vertex of mult -> vertex of K
    back: dict  # vertex of K -> vertex of mult
    extra: int  # edge mask (in K) of the added edges

    def lift(self, D: Orientation) -> Orientation:
        """Orientation of K: arcs of ``D`` plus ``x -> y`` on every added edge."""
        arcs = [(self.phi[t], self.phi[h]) for t, h in D.arcs()]
        for k, (a, b) in enumerate(self.K.edges):
            if self.extra >> k & 1:
                arcs.append((a, b))  # a in the first side
        return Orientation.from_arcs(self.K, arcs)

    def pull(self, seq) -> tuple:
        return tuple(self.back[x] for x in seq)


def complete_bipartite(M: MultGraph) -> Completion:
    colour = two_colouring(M.parent.vertices, M.parent.adj)
    if colour is None:
        raise GraphError("parent graph is not bipartite")
    X = [v for v in M.vertices if colour[v.partite] == 0]
    Y = [v for v in M.vertices if colour[v.partite] == 1]
    K = build_multiplication(ParentGraph.complete(2), (len(X), len(Y)))
    phi = {v: Vertex(1, a + 1) for a, v in enumerate(X)}
    phi.update({v: Vertex(2, b + 1) for b, v in enumerate(Y)})
    back = {w: v for v, w in phi.items()}
    extra = 0
    for k, (a, b) in enumerate(K.edges):
        if not M.adjacent(back[a], back[b]):
            extra |= 1 << k
    return Completion(M, K, phi, back, extra)


def bipartite_merge(D: Orientation, T: Orientation) -> list:
    """Edge-disjoint dicycles of ``D`` whose reversal gives ``T``.

    ``D`` and ``T`` must have the same score at every vertex and a bipartite
    parent graph.
    """
    M = D.mult
    comp = complete_bipartite(M)
    F, F2 = comp.lift(D), comp.lift(T)
    ident = {v: v for v in comp.K.vertices}
    tape = Tape(F)
    c4 = dicycles({4})
    for C in dicycle_decomposition(build_ddg(ident, F, F2)):
        refine_cycle(F, C, c4, tape=tape, check=False)
    merged = merge_to_edge_disjoint(F, tape.steps)
    out = []
    for step in merged:
        if edge_mask(comp.K, step.cycle.vertices) & comp.extra:
            raise RefinementError("merged cycle uses an added arc")
        out.append(cycle_in(M, D.bits, comp.pull(step.cycle.vertices)))
    return out


# -- subdivision lift --------------------------------------------------------------


@dataclass(frozen=True)
class Lift:
    mult: MultGraph
    H: MultGraph
    F: Orientation
    F2: Orientation
    q: dict  # parent edge (i, j) -> |Q_ij|
    owner: dict  # subdivision vertex -> the edge (x, y) of mult it stands for

    def pull_back(self, seq) -> tuple:
        """Contract subdivision vertices of a cycle avoiding the added arcs."""
        n = self.mult.parent.n
        k = len(seq)
        out = []
        for t, w in enumerate(seq):
            if w.partite <= n:
                out.append(w)
                continue
            x, y = self.owner[w]
            a, b = seq[t - 1], seq[(t + 1) % k]
            if {a, b} != {x, y}:
                raise RefinementError(f"cycle leaves {w} through an added arc")
        return tuple(out)


def subdivision_lift(G: ParentGraph, D: Orientation, D2: Orientation) -> Lift:
    """Subdivide every edge of ``G``; each multiplied edge ``{x, y}`` with
    ``x`` in ``V_i``, ``y`` in ``V_j``, ``i < j`` gets its own vertex ``w`` in
    ``Q_ij`` carrying the arc as ``x -> w -> y`` (or reversed), plus the fixed
    arcs ``u -> w`` for ``u`` in ``V_i - {x}`` and ``w -> v`` for ``v`` in
    ``V_j - {y}``."""
    M = D.mult
    if M.parent != G:
        raise GraphError("orientation does not belong to this parent graph")
    if D.scores() != D2.scores():
        raise GraphError("score lists differ")
    n = G.n
    plist = G.edge_list()
    hedges = []
    for e, (i, j) in enumerate(plist):
        hedges += [(i, n + 1 + e), (j, n + 1 + e)]
    H_parent = ParentGraph(n + len(plist), frozenset(hedges))
    p = M.p
    q = {(i, j): p[i - 1] * p[j - 1] for i, j in plist}
    H = build_multiplication(H_parent, tuple(p) + tuple(q[e] for e in plist))
    owner = {}
    sub_of = {}
    for e, (i, j) in enumerate(plist):
        for x in M.partite_set(i):
            for y in M.partite_set(j):
                w = Vertex(n + 1 + e, (x.copy - 1) * p[j - 1] + y.copy)
                owner[w] = (x, y)
                sub_of[(x, y)] = w

    def lift(X):
        arcs = []
        for (x, y), w in sub_of.items():
            if X.has_arc(x, y):
                arcs += [(x, w), (w, y)]
            else:
                arcs += [(y, w), (w, x)]
            i, j = x.partite, y.partite
            arcs += [(u, w) for u in M.partite_set(i) if u != x]
            arcs += [(w, v) for v in M.partite_set(j) if v != y]
        return Orientation.from_arcs(H, arcs)

    return Lift(M, H, lift(D), lift(D2), q, owner)


def subdivision_cycles(D: Orientation, T: Orientation) -> list:
    """Edge-disjoint dicycles of ``D`` reaching ``T``, found in the subdivided
    multiplication and contracted back."""
    lift = subdivision_lift(D.mult.parent, D, T)
    out = []
    for C in bipartite_merge(lift.F, lift.F2):
        out.append(cycle_in(D.mult, D.bits, lift.pull_back(C.vertices)))
    return out
