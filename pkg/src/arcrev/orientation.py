"""Orientations of a multiplication, oriented cycles and reversal families.

An :class:`Orientation` stores one bit per edge of ``mult.edges`` (edges are
sorted pairs ``(u, v)`` with ``u < v``); the bit is set when the arc runs from
the smaller endpoint to the larger one.  Reversing a cycle is then an XOR with
the cycle's edge mask.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import ArcNotPresent, OrientationError
from .graph_core import MultGraph, Vertex, simple_cycles


class Arc(NamedTuple):
    tail: Vertex
    head: Vertex

    def __str__(self):
        return f"{self.tail} -> {self.head}"


def edge_mask(mult: MultGraph, seq) -> int:
    """Bitmask of the edges of the closed vertex sequence ``seq``."""
    mask = 0
    k = len(seq)
    for t in range(k):
        mask |= 1 << mult.edge_id(seq[t], seq[(t + 1) % k])
    return mask


def arc_in(mult: MultGraph, bits: int, u, v) -> bool:
    """True when ``u -> v`` in the orientation with edge bits ``bits``."""
    if u < v:
        return bool(bits >> mult.edge_index[(u, v)] & 1)
    return not bits >> mult.edge_index[(v, u)] & 1


@dataclass(frozen=True)
class Orientation:
    mult: MultGraph
    bits: int

    @classmethod
    def from_arcs(cls, mult: MultGraph, arcs: Iterable) -> "Orientation":
        bits = 0
        seen = set()
        for tail, head in arcs:
            if not mult.adjacent(tail, head):
                raise OrientationError(f"{tail} -> {head} is not an edge of the multiplication")
            k = mult.edge_id(tail, head)
            if k in seen:
                raise OrientationError(f"edge {tail} {head} oriented twice")
            seen.add(k)
            if tail < head:
                bits |= 1 << k
        if len(seen) != mult.m:
            raise OrientationError(f"{mult.m - len(seen)} edges left unoriented")
        return cls(mult, bits)

    def arcs(self) -> list:
        out = []
        for k, (u, v) in enumerate(self.mult.edges):
            out.append(Arc(u, v) if self.bits >> k & 1 else Arc(v, u))
        return out

    def has_arc(self, u, v) -> bool:
        return self.mult.adjacent(u, v) and arc_in(self.mult, self.bits, u, v)

    def out_degrees(self) -> dict:
        out = dict.fromkeys(self.mult.vertices, 0)
        for k, (u, v) in enumerate(self.mult.edges):
            out[u if self.bits >> k & 1 else v] += 1
        return out

    def in_degrees(self) -> dict:
        od = self.out_degrees()
        return {v: len(self.mult.adj[v]) - od[v] for v in od}

    def out_degree(self, v) -> int:
        return sum(arc_in(self.mult, self.bits, v, w) for w in self.mult.adj[v])

    def scores(self) -> tuple:
        return tuple(sorted(self.out_degrees().values()))

    def converse(self) -> "Orientation":
        return Orientation(self.mult, self.bits ^ ((1 << self.mult.m) - 1))

    def flip(self, mask: int) -> "Orientation":
        return Orientation(self.mult, self.bits ^ mask)

    def differing_edges(self, other: "Orientation") -> list:
        diff = self.bits ^ other.bits
        return [e for k, e in enumerate(self.mult.edges) if diff >> k & 1]


def scores(D: Orientation) -> tuple:
    """Score list: outdegrees sorted non-decreasingly."""
    return D.scores()


def converse(D: Orientation) -> Orientation:
    return D.converse()


@dataclass(frozen=True)
class OrientedCycle:
    """A cycle ``u_1 ... u_k u_1`` of the multiplication together with its arcs.

    ``arcs`` lists the arc on each consecutive pair as it appears in some
    orientation; it is ``None`` for steps read back from a script file where
    only the vertex sequence is recorded.  Equality ignores ``arcs``.
    """

    vertices: tuple
    arcs: tuple | None = field(default=None, compare=False)

    @property
    def k(self) -> int:
        return len(self.vertices)

    @property
    def directed(self) -> bool:
        if self.arcs is None:
            return False
        vs = self.vertices
        return all(a == (vs[t], vs[(t + 1) % len(vs)]) for t, a in enumerate(self.arcs))

    @property
    def is_tt3(self) -> bool:
        return self.k == 3 and self.arcs is not None and not _is_dicycle_arcs(self.vertices, self.arcs)

    def edges(self) -> list:
        vs = self.vertices
        return [tuple(sorted((vs[t], vs[(t + 1) % len(vs)]))) for t in range(len(vs))]

    def converse(self) -> "OrientedCycle":
        arcs = None if self.arcs is None else tuple(Arc(h, t) for t, h in self.arcs)
        return canonical_cycle(self.vertices, arcs)

    @classmethod
    def of(cls, D: Orientation, seq) -> "OrientedCycle":
        return cycle_in(D.mult, D.bits, seq)

    def __str__(self):
        return " ".join(str(v) for v in self.vertices)


def _is_dicycle_arcs(vs, arcs):
    k = len(vs)
    fwd = all(a == (vs[t], vs[(t + 1) % k]) for t, a in enumerate(arcs))
    bwd = all(a == (vs[(t + 1) % k], vs[t]) for t, a in enumerate(arcs))
    return fwd or bwd


def canonical_cycle(seq, arcs=None) -> OrientedCycle:
    """Rotate to the smallest vertex; a dicycle runs along its arcs, any other
    cycle takes the lexicographically smaller direction."""
    seq = tuple(seq)
    k = len(seq)
    pairs = None if arcs is None else {frozenset(a): Arc(*a) for a in arcs}
    forward = None
    if arcs is not None:
        if all(pairs[frozenset((seq[t], seq[(t + 1) % k]))] == (seq[t], seq[(t + 1) % k]) for t in range(k)):
            forward = True
        elif all(pairs[frozenset((seq[t], seq[(t + 1) % k]))] == (seq[(t + 1) % k], seq[t]) for t in range(k)):
            forward = False
    r = seq.index(min(seq))
    fwd_seq = seq[r:] + seq[:r]
    bwd_seq = (fwd_seq[0],) + tuple(reversed(fwd_seq[1:]))
    if forward is None:
        out = fwd_seq if fwd_seq[1] < fwd_seq[-1] else bwd_seq
    else:
        out = fwd_seq if forward else bwd_seq
    if pairs is None:
        return OrientedCycle(out, None)
    return OrientedCycle(out, tuple(pairs[frozenset((out[t], out[(t + 1) % k]))] for t in range(k)))


def cycle_in(mult: MultGraph, bits: int, seq) -> OrientedCycle:
    seq = tuple(seq)
    k = len(seq)
    if k < 3 or len(set(seq)) != k:
        raise OrientationError(f"not a cycle: {' '.join(map(str, seq))}")
    arcs = []
    for t in range(k):
        u, v = seq[t], seq[(t + 1) % k]
        if not mult.adjacent(u, v):
            raise OrientationError(f"{u} and {v} are not adjacent")
        arcs.append(Arc(u, v) if arc_in(mult, bits, u, v) else Arc(v, u))
    return canonical_cycle(seq, arcs)


def reverse_cycle(D: Orientation, C: OrientedCycle) -> Orientation:
    """Reverse every arc of ``C``; all of them must be arcs of ``D``."""
    if C.arcs is None:
        raise ArcNotPresent("cycle carries no arcs")
    for tail, head in C.arcs:
        if not D.has_arc(tail, head):
            raise ArcNotPresent(f"{tail} -> {head} is not an arc of the orientation")
    return D.flip(edge_mask(D.mult, C.vertices))


class Projection(NamedTuple):
    """Underlying partite set and underlying partite graph of an arc set."""

    vertices: frozenset
    edges: frozenset


def underlying_partite_graph(D: Orientation, arcs) -> Projection:
    up = set()
    edges = set()
    for tail, head in arcs:
        if not D.has_arc(tail, head):
            raise ArcNotPresent(f"{tail} -> {head} is not an arc of the orientation")
        i, j = tail.partite, head.partite
        up.update((i, j))
        edges.add((min(i, j), max(i, j)))
    return Projection(frozenset(up), frozenset(edges))


# -- reversal families -------------------------------------------------------

DIRECTED = "directed"
ORIENTED = "oriented"
TT3 = "tt3"


@dataclass(frozen=True)
class FamilySpec:
    """A self-converse family of cycles.

    ``kind`` is ``"directed"`` (dicycles C_k), ``"oriented"`` (every orientation
    of a k-cycle) or ``"tt3"`` (the transitive triangle).  ``lengths=None``
    admits every length >= 3.
    """

    kind: str
    lengths: frozenset | None
    label: str

    def __post_init__(self):
        if self.kind not in (DIRECTED, ORIENTED, TT3):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == TT3 and self.lengths != frozenset({3}):
            object.__setattr__(self, "lengths", frozenset({3}))

    def admits_length(self, k) -> bool:
        return self.lengths is None or k in self.lengths

    def max_length(self):
        return None if self.lengths is None else max(self.lengths)

    def matches(self, mult: MultGraph, bits: int, seq) -> bool:
        """Does the cycle ``seq``, as oriented by ``bits``, belong to the family?"""
        k = len(seq)
        if not self.admits_length(k):
            return False
        if self.kind == ORIENTED:
            return True
        fwd = all(arc_in(mult, bits, seq[t], seq[(t + 1) % k]) for t in range(k))
        bwd = not fwd and all(arc_in(mult, bits, seq[(t + 1) % k], seq[t]) for t in range(k))
        if self.kind == DIRECTED:
            return fwd or bwd
        return not (fwd or bwd)

    def step_tag(self) -> str:
        return DIRECTED if self.kind == DIRECTED else ORIENTED

    def __str__(self):
        return self.label


def _lengths_label(prefix, lengths):
    return "{" + ",".join(f"{prefix}{k}" for k in sorted(lengths)) + "}"


def dicycles(lengths=None) -> FamilySpec:
    if lengths is None:
        return FamilySpec(DIRECTED, None, "C")
    lengths = frozenset(lengths)
    label = f"C{min(lengths)}" if len(lengths) == 1 else _lengths_label("C", lengths)
    return FamilySpec(DIRECTED, lengths, label)


def oriented_cycles(lengths=None) -> FamilySpec:
    if lengths is None:
        return FamilySpec(ORIENTED, None, "CC")
    lengths = frozenset(lengths)
    label = f"CC{min(lengths)}" if len(lengths) == 1 else _lengths_label("CC", lengths)
    return FamilySpec(ORIENTED, lengths, label)


def tt3() -> FamilySpec:
    return FamilySpec(TT3, frozenset({3}), "TT3")


def family_copies(D: Orientation, family: FamilySpec):
    """Every cycle of ``D`` belonging to ``family``, in canonical enumeration order."""
    mult = D.mult
    for seq in simple_cycles(mult.vertices, mult.adj, family.max_length()):
        if family.matches(mult, D.bits, seq):
            yield cycle_in(mult, D.bits, seq)


def find_family_copy(D: Orientation, family: FamilySpec) -> OrientedCycle | None:
    return next(family_copies(D, family), None)
