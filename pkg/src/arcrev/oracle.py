"""Brute-force ground truth on small multiplications.

Orientations are enumerated as edge bitmasks.  The automorphism group of the
multiplication acts on them by permuting edges (and flipping the stored bit
when an edge's endpoints swap order), so isomorphism classes are orbits and a
canonical form is the smallest image.  Reversal classes are connected
components of the graph whose nodes are orientations and whose links are
single family reversals together with the isomorphism orbits.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import GraphError
from .graph_core import (
    MultGraph,
    ParentGraph,
    _ScoreMatch,
    automorphisms,
    build_multiplication,
    find_score_automorphism,
    simple_cycles,
)
from .orientation import (
    DIRECTED,
    ORIENTED,
    FamilySpec,
    Orientation,
    arc_in,
    dicycles,
    find_family_copy,
    oriented_cycles,
    tt3,
)

ENUM_BOUND = 24


def enumerate_orientations(M: MultGraph):
    """All ``2^m`` orientations, in increasing bitmask order."""
    if M.m > ENUM_BOUND:
        raise GraphError(f"{M.m} edges exceeds the enumeration bound {ENUM_BOUND}")
    for bits in range(1 << M.m):
        yield Orientation(M, bits)


@lru_cache(maxsize=64)
def edge_group(M: MultGraph) -> tuple:
    """Every automorphism as ``(perm, flip)``: edge ``e`` goes to ``perm[e]``
    and its stored direction bit is inverted when ``flip`` has bit ``e``."""
    out = []
    for f in automorphisms(M, prune=False):
        perm = []
        flip = 0
        for e, (u, v) in enumerate(M.edges):
            a, b = f[u], f[v]
            perm.append(M.edge_id(a, b))
            if a > b:
                flip |= 1 << e
        out.append((tuple(perm), flip))
    return tuple(out)


def image_bits(perm, flip, bits) -> int:
    x = bits ^ flip
    out = 0
    for e, t in enumerate(perm):
        if x >> e & 1:
            out |= 1 << t
    return out


def canonical_form(D: Orientation) -> int:
    return min(image_bits(p, fl, D.bits) for p, fl in edge_group(D.mult))


def orbit(D: Orientation) -> frozenset:
    return frozenset(image_bits(p, fl, D.bits) for p, fl in edge_group(D.mult))


@lru_cache(maxsize=16)
def canonical_table(M: MultGraph) -> np.ndarray:
    """Canonical form of every orientation, indexed by bitmask."""
    if M.m > ENUM_BOUND:
        raise GraphError(f"{M.m} edges exceeds the enumeration bound {ENUM_BOUND}")
    states = np.arange(1 << M.m, dtype=np.int64)
    best = states.copy()
    for perm, flip in edge_group(M):
        x = states ^ flip
        img = np.zeros_like(states)
        for e, t in enumerate(perm):
            img |= ((x >> e) & 1) << t
        np.minimum(best, img, out=best)
    best.setflags(write=False)
    return best


def find_isomorphism(D: Orientation, D2: Orientation) -> dict | None:
    """A vertex bijection carrying the arcs of ``D`` onto those of ``D2``."""
    M = D.mult
    if D.scores() != D2.scores():
        return None
    match = _ScoreMatch(D.out_degrees(), D2.out_degrees(), 0)

    def arcs_agree(v, w, x, y):
        return arc_in(M, D.bits, v, x) == arc_in(M, D2.bits, w, y)

    return next(automorphisms(M, unary=match, binary=arcs_agree), None)


# -- reversal moves -------------------------------------------------------------


class Move(NamedTuple):
    seq: tuple
    mask: int
    fwd: int  # direction bits of the cycle's edges when traversed along seq


@lru_cache(maxsize=64)
def family_moves(M: MultGraph, max_len) -> tuple:
    moves = []
    for seq in simple_cycles(M.vertices, M.adj, max_len):
        mask = 0
        fwd = 0
        k = len(seq)
        for t in range(k):
            u, v = seq[t], seq[(t + 1) % k]
            e = M.edge_id(u, v)
            mask |= 1 << e
            if u < v:
                fwd |= 1 << e
        moves.append(Move(seq, mask, fwd))
    return tuple(moves)


def _moves_for(M, family):
    return [mv for mv in family_moves(M, family.max_length()) if family.admits_length(len(mv.seq))]


def _matches(family, sub, mv):
    """Is the cycle of ``mv``, with edge bits ``sub``, in ``family``?  Works
    on scalars and on numpy arrays of states."""
    vec = isinstance(sub, np.ndarray)
    if family.kind == ORIENTED:
        return np.ones(sub.shape, dtype=bool) if vec else True
    dic = (sub == mv.fwd) | (sub == (mv.fwd ^ mv.mask))
    if family.kind == DIRECTED:
        return dic
    return ~dic if vec else not dic


def available_moves(D: Orientation, family: FamilySpec):
    """The family cycles of ``D`` as moves."""
    out = []
    for mv in _moves_for(D.mult, family):
        if _matches(family, D.bits & mv.mask, mv):
            out.append(mv)
    return out


@dataclass
class ClassPartition:
    mult: MultGraph
    family: FamilySpec
    labels: np.ndarray  # class id of every orientation bitmask
    classes: list  # class id -> frozenset of canonical forms

    def class_of(self, D: Orientation) -> int:
        return int(self.labels[D.bits])

    def same_class(self, D: Orientation, D2: Orientation) -> bool:
        return self.class_of(D) == self.class_of(D2)

    def representative(self, cid: int) -> Orientation:
        return Orientation(self.mult, min(self.classes[cid]))

    def sizes(self) -> list:
        return [len(c) for c in self.classes]

    def as_sets(self) -> set:
        return {frozenset(c) for c in self.classes}


def f_classes(M: MultGraph, family: FamilySpec) -> ClassPartition:
    """Reversal classes up to isomorphism over all orientations of ``M``."""
    canon = canonical_table(M)
    n = 1 << M.m
    states = np.arange(n, dtype=np.int64)
    rows = [states]
    cols = [canon]
    for mv in _moves_for(M, family):
        sub = states & mv.mask
        hit = _matches(family, sub, mv)
        src = states[hit]
        rows.append(src)
        cols.append(src ^ mv.mask)
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n, n)).tocsr()
    _, comp = connected_components(graph, directed=True, connection="weak")
    members = {}
    for form in np.unique(canon):
        members.setdefault(int(comp[form]), set()).add(int(form))
    ordered = sorted(members.values(), key=min)
    remap = {int(comp[min(s)]): k for k, s in enumerate(ordered)}
    labels = np.vectorize(remap.__getitem__, otypes=[np.int64])(comp)
    return ClassPartition(M, family, labels, [frozenset(s) for s in ordered])


def score_classes(M: MultGraph, parity: bool = False) -> set:
    """Isomorphism types grouped by the score condition (exact or mod 2)
    holding under some automorphism."""
    mode = "parity" if parity else "exact"
    buckets = []
    for form in sorted({int(x) for x in np.unique(canonical_table(M))}):
        D = Orientation(M, form)
        for rep, bucket in buckets:
            if find_score_automorphism(M, rep, D, mode) is not None:
                bucket.add(form)
                break
        else:
            buckets.append((D, {form}))
    return {frozenset(b) for _, b in buckets}


def reach(D: Orientation, D2: Orientation, family: FamilySpec, limit: int = 1 << 20):
    """Shortest list of family cycles (vertex sequences, each valid when
    applied) turning ``D`` into some orientation isomorphic to ``D2``.

    Returns ``(path, reached_bits)`` or ``None`` when the class of ``D`` is
    exhausted without meeting ``D2``'s isomorphism type.
    """
    goal = orbit(D2)
    M = D.mult
    moves = _moves_for(M, family)
    prev = {D.bits: None}
    queue = deque([D.bits])
    while queue:
        b = queue.popleft()
        if b in goal:
            path = []
            x = b
            while prev[x] is not None:
                x, seq = prev[x]
                path.append(seq)
            return list(reversed(path)), b
        for mv in moves:
            if _matches(family, b & mv.mask, mv):
                nb = b ^ mv.mask
                if nb not in prev:
                    prev[nb] = (b, mv.seq)
                    queue.append(nb)
        if len(prev) > limit:
            raise GraphError("reachability search exceeded its state limit")
    return None


# -- named counterexamples ------------------------------------------------------


class Certificate(NamedTuple):
    mult: MultGraph
    D: Orientation
    D2: Orientation
    checks: dict


def _bipartite_seed():
    """Smallest non-isomorphic pair of orientations of K(a, b) satisfying the
    score condition under some automorphism (so they are 4-cycle equivalent)."""
    for a, b in ((2, 2), (2, 3), (3, 3)):
        M = build_multiplication(ParentGraph.complete(2), (a, b))
        forms = sorted({int(x) for x in np.unique(canonical_table(M))})
        reps = [Orientation(M, form) for form in forms]
        for i, D in enumerate(reps):
            for D2 in reps[i + 1:]:
                if D.scores() == D2.scores() and find_score_automorphism(M, D, D2, "exact") is not None:
                    return D, D2
    raise AssertionError("no seed pair found")


def _extend_bipartite(D: Orientation, n: int) -> Orientation:
    """Embed an orientation of K(V1, V2) into K_n(p1, p2, 1, ..., 1) with
    ``V_i -> V_j`` whenever ``i > j`` and ``(i, j) != (2, 1)``."""
    p = D.mult.p + (1,) * (n - 2)
    M = build_multiplication(ParentGraph.complete(n), p)
    arcs = []
    for u, v in M.edges:
        if u.partite == 1 and v.partite == 2:
            arcs.append((u, v) if D.has_arc(u, v) else (v, u))
        else:
            arcs.append((v, u))  # v has the larger partite index
    return Orientation.from_arcs(M, arcs)


def counterexample(name: str, n: int = 3) -> Certificate:
    """Build a named instance and machine-check what it is meant to show."""
    from .instances import TREE_U, TREE_V, rigid_tree_pair, tripartite_c4_free, tripartite_tt3_free

    if name == "3.6":
        if n < 3:
            raise ValueError("needs n >= 3")
        s1, s2 = _bipartite_seed()
        D, D2 = _extend_bipartite(s1, n), _extend_bipartite(s2, n)
        M = D.mult
        checks = {
            "seed score condition": find_score_automorphism(s1.mult, s1, s2, "exact") is not None,
            "seed 4-cycle equivalent (exhaustive)": f_classes(s1.mult, dicycles({4})).same_class(s1, s2),
            "score condition": find_score_automorphism(M, D, D2, "exact") is not None,
            "not isomorphic": find_isomorphism(D, D2) is None,
            "first C3-free": find_family_copy(D, dicycles({3})) is None,
            "second C3-free": find_family_copy(D2, dicycles({3})) is None,
        }
    elif name == "3.7":
        M, D, D2 = tripartite_c4_free()
        checks = {
            "score condition": find_score_automorphism(M, D, D2, "exact") is not None,
            "not isomorphic": find_isomorphism(D, D2) is None,
            "first C4-free": find_family_copy(D, dicycles({4})) is None,
            "not C4-equivalent (exhaustive)": not f_classes(M, dicycles({4})).same_class(D, D2),
        }
    elif name == "4.6":
        M, D, D2 = rigid_tree_pair()
        even = lambda X: sum(1 for s in X.out_degrees().values() if s % 2 == 0)  # noqa: E731
        checks = {
            "same even-score count": even(D) == even(D2),
            "no parity automorphism": find_score_automorphism(M, D, D2, "parity") is None,
            "bridge oriented differently": D.has_arc(TREE_V, TREE_U) and D2.has_arc(TREE_U, TREE_V),
            "not equivalent under all cycle reversals (exhaustive)":
                not f_classes(M, oriented_cycles()).same_class(D, D2),
        }
    elif name == "4.12":
        M, D, D2 = tripartite_tt3_free()
        checks = {
            "score-list parity": find_score_automorphism(M, D, D2, "parity") is not None,
            "not isomorphic": find_isomorphism(D, D2) is None,
            "first TT3-free": find_family_copy(D, tt3()) is None,
            "not TT3-equivalent (exhaustive)": not f_classes(M, tt3()).same_class(D, D2),
        }
    else:
        raise ValueError(f"unknown example {name!r}")
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise AssertionError(f"example {name}: failed checks {failed}")
    return Certificate(M, D, D2, checks)


EXAMPLES = ("3.6", "3.7", "4.6", "4.12")
