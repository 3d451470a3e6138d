"""Reversal scripts and the reduction/refinement machinery.

A cycle reversal is planned on a :class:`Tape`, which tracks the current
orientation while steps are appended.  Every routine here reverses one cycle
*exactly*: the XOR of the edge masks of the steps it emits equals the mask of
the input cycle, and each step is read off the tape at the moment it is
applied, so its arcs are the ones present right then.

Splitting a cycle ``Z = u_1 ... u_k`` along a chord ``c`` gives two cycles
whose masks XOR to ``mask(Z)``.  If ``Z`` is a dicycle, exactly one of them is
a dicycle in the current orientation; reversing it first turns the other into
a dicycle too, which is how every directed split below orders its halves.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .errors import ArcNotPresent, RefinementError
from .graph_core import MultGraph, cycle_length_sets
from .orientation import (
    DIRECTED,
    ORIENTED,
    FamilySpec,
    Orientation,
    OrientedCycle,
    arc_in,
    canonical_cycle,
    cycle_in,
    edge_mask,
)


def fingerprint(D: Orientation) -> str:
    """Short stable digest of an orientation (graph, multiplicities and arcs)."""
    M = D.mult
    head = f"{M.parent.n}|{sorted(M.parent.edges)}|{M.p}|"
    return hashlib.sha256((head + format(D.bits, "x")).encode()).hexdigest()[:16]


class Step(NamedTuple):
    cycle: OrientedCycle
    tag: str

    def __str__(self):
        C = self.cycle
        if self.tag != DIRECTED:
            # the arcs of an oriented step do not matter, so write a fixed vertex order
            C = canonical_cycle(C.vertices)
        return f"{C.k}:{self.tag}: {C}"


@dataclass
class Script:
    steps: list = field(default_factory=list)
    family: str = ""
    initial: str = ""
    final: str = ""

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    @property
    def tags(self) -> list:
        return [s.tag for s in self.steps]

    def net_mask(self, mult: MultGraph) -> int:
        mask = 0
        for s in self.steps:
            mask ^= edge_mask(mult, s.cycle.vertices)
        return mask


def apply_step(mult: MultGraph, bits: int, step: Step) -> int:
    """Apply one step to ``bits``.  Steps without stored arcs take their arcs
    from the current orientation, except that a directed step must run along
    its vertex order."""
    seq = step.cycle.vertices
    arcs = step.cycle.arcs
    k = len(seq)
    if arcs is None and step.tag == DIRECTED:
        arcs = [(seq[t], seq[(t + 1) % k]) for t in range(k)]
    if arcs is not None:
        for tail, head in arcs:
            if not (mult.adjacent(tail, head) and arc_in(mult, bits, tail, head)):
                raise ArcNotPresent(f"{tail} -> {head} is not an arc of the orientation")
    return bits ^ edge_mask(mult, seq)


def replay(D: Orientation, script) -> Orientation:
    bits = D.bits
    for step in script:
        bits = apply_step(D.mult, bits, step)
    return Orientation(D.mult, bits)


class Tape:
    """Current orientation plus the steps applied so far."""

    def __init__(self, D: Orientation):
        self.mult = D.mult
        self.start = D
        self.bits = D.bits
        self.steps = []

    @property
    def current(self) -> Orientation:
        return Orientation(self.mult, self.bits)

    def cycle(self, seq) -> OrientedCycle:
        return cycle_in(self.mult, self.bits, seq)

    def is_dicycle(self, seq) -> bool:
        k = len(seq)
        fwd = all(arc_in(self.mult, self.bits, seq[t], seq[(t + 1) % k]) for t in range(k))
        return fwd or all(arc_in(self.mult, self.bits, seq[(t + 1) % k], seq[t]) for t in range(k))

    def arc(self, u, v) -> bool:
        return arc_in(self.mult, self.bits, u, v)

    def apply(self, seq, tag: str) -> OrientedCycle:
        C = self.cycle(seq)
        if tag == DIRECTED and not C.directed:
            raise RefinementError(f"step {C} is not a dicycle")
        self.steps.append(Step(C, tag))
        self.bits ^= edge_mask(self.mult, C.vertices)
        return C

    def script(self, family: str = "") -> Script:
        return Script(list(self.steps), family, fingerprint(self.start), fingerprint(self.current))


# -- reductions --------------------------------------------------------------


def _rot(seq, start):
    """Cyclic rotation of ``seq`` so that index ``start`` comes first."""
    start %= len(seq)
    return tuple(seq[start:]) + tuple(seq[:start])


def _split_halves(seq, i, j):
    """For a cycle ``seq`` and positions ``i < j`` (cyclic), the two cycles
    cut off by the chord ``u_{i-1} u_j``: the remainder ``u_j ... u_{i-1}``
    and the segment ``u_{i-1} u_i ... u_j``."""
    k = len(seq)
    r = _rot(seq, i - 1)  # r[0] = u_{i-1}, r[1] = u_i, r[d+1] = u_j
    d = (j - i) % k
    segment = r[: d + 2]
    remainder = (r[d + 1],) + r[d + 2:] + (r[0],)
    return remainder, segment


def reduction_split(D: Orientation, F: OrientedCycle, i: int, j: int):
    """Split ``F`` at the same-partite pair ``u_i, u_j`` (0-based positions).

    Returns ``(first, second)``: the two cycles ``Z'`` (remainder) and ``Z''``
    (segment ``u_{i-1} ... u_j``) in an order such that reversing ``first``
    and then ``second`` in ``D`` exactly reverses ``F``.  For a dicycle the
    order follows the chord arc; otherwise ``Z'`` goes first.
    """
    seq = F.vertices
    k = len(seq)
    if k < 5:
        raise RefinementError("reduction needs a cycle of length at least 5")
    i %= k
    j %= k
    if i == j or seq[i].partite != seq[j].partite:
        raise RefinementError(f"{seq[i]} and {seq[j]} are not a same-partite pair")
    c = seq[(i - 1) % k]
    if not D.mult.adjacent(c, seq[j]):
        raise RefinementError(f"{c} and {seq[j]} are not adjacent")
    remainder, segment = _split_halves(seq, i, j)
    if len(remainder) < 3 or len(segment) < 3:
        raise RefinementError("split would leave a degenerate cycle")
    mult = D.mult
    Zp = cycle_in(mult, D.bits, remainder)
    Zpp = cycle_in(mult, D.bits, segment)
    if F.directed or _is_dicycle(mult, D.bits, seq):
        if Zp.directed:
            return Zp, Zpp
        return Zpp, Zp
    return Zp, Zpp


def _is_dicycle(mult, bits, seq):
    k = len(seq)
    fwd = all(arc_in(mult, bits, seq[t], seq[(t + 1) % k]) for t in range(k))
    return fwd or all(arc_in(mult, bits, seq[(t + 1) % k], seq[t]) for t in range(k))


def _tree_of(parents_seq):
    """Parent vertices/edges touched by a walk; ``None`` unless they form a tree."""
    verts = set(parents_seq)
    edges = {tuple(sorted(e)) for e in zip(parents_seq, parents_seq[1:])}
    if len(edges) != len(verts) - 1:
        return None
    adj = {x: set() for x in verts}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _depths(adj, root):
    depth = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for x in frontier:
            for y in sorted(adj[x]):
                if y not in depth:
                    depth[y] = depth[x] + 1
                    nxt.append(y)
        frontier = nxt
    return depth


def _tree_segment(tape: Tape, L: tuple, directed: bool, emit4):
    """Exactly reverse cycle ``L = (c, s_0, ..., s_m)`` whose walk
    ``s_0 ... s_m`` projects onto a tree rooted at the partite set of ``s_0``
    (which also houses ``s_m``), using only 4-cycles."""
    while True:
        m = len(L) - 2
        if m == 2:
            emit4(L)
            return
        walk = [v.partite for v in L[1:]]
        adj = _tree_of(walk)
        if adj is None:
            raise RefinementError("segment does not project onto a tree")
        depth = _depths(adj, walk[0])
        deepest = max(depth.values())
        w = min(x for x, dx in depth.items() if dx == deepest)
        t = 1 + walk.index(w)  # position in L
        n = len(L)
        four = (L[t - 1], L[t], L[(t + 1) % n], L[(t + 2) % n])
        rest = tuple(x for idx, x in enumerate(L) if idx not in (t, (t + 1) % n))
        if directed and not tape.is_dicycle(rest):
            emit4(four)
            L = rest
            continue
        # Peeling the 4-cycle last: reverse the remainder first, by recursion.
        _tree_segment(tape, rest, directed, emit4)
        emit4(four)
        return


def tree_segment_to_c4(D: Orientation, F: OrientedCycle, i: int, j: int, *, tape: Tape | None = None):
    """Script of 4-cycle steps exactly reversing ``Z'' = u_{i-1} u_i ... u_j``.

    ``u_i`` and ``u_j`` lie in one partite set and the walk ``u_i ... u_j``
    must project onto a tree of the parent graph.  When ``u_{i-1}`` is already
    the cycle neighbour of ``u_j`` the whole of ``F`` is reversed.  Steps are
    dicycles when ``F`` is a dicycle, arbitrary 4-cycles otherwise.
    """
    seq = F.vertices
    k = len(seq)
    i %= k
    j %= k
    if seq[i].partite != seq[j].partite or i == j:
        raise RefinementError(f"{seq[i]} and {seq[j]} are not a same-partite pair")
    own = tape is None
    if own:
        tape = Tape(D)
    directed = tape.is_dicycle(seq)
    d = (j - i) % k
    r = _rot(seq, i - 1)
    L = r[: d + 2]
    if len(L) < 4:
        raise RefinementError("segment too short")
    walk = [v.partite for v in L[1:]]
    if _tree_of(walk) is None:
        raise RefinementError("segment does not project onto a tree")
    if not tape.mult.adjacent(L[0], L[-1]):
        raise RefinementError(f"{L[0]} and {L[-1]} are not adjacent")
    tag = DIRECTED if directed else ORIENTED
    _tree_segment(tape, L, directed, lambda q: tape.apply(q, tag))
    if own:
        return tape.script("C4" if directed else "CC4")
    return None


# -- two-phase refinement ----------------------------------------------------


def closest_pair(seq):
    """Same-partite pair ``(i, j)`` with the smallest cyclic gap ``(j - i) % k``;
    ties go to the smallest ``i``.  ``None`` if all partites differ."""
    k = len(seq)
    best = None
    for i in range(k):
        for d in range(2, k - 1):
            j = (i + d) % k
            if seq[i].partite == seq[j].partite:
                if best is None or d < best[0]:
                    best = (d, i, j)
                break
    return None if best is None else (best[1], best[2])


def _chord_split(mult, seq):
    """For a cycle with pairwise distinct partites whose projection has a
    chord: the chord cutting off the shortest side.  That side projects to a
    chordless parent cycle.  Returns ``(remainder, side)``."""
    k = len(seq)
    best = None
    for a in range(k):
        for L in range(2, k - 1):  # side a, a+1, ..., a+L closed by chord
            b = (a + L) % k
            if mult.adjacent(seq[a], seq[b]):
                if best is None or L < best[0]:
                    best = (L, a, b)
                break
    if best is None:
        return None
    L, a, _ = best
    r = _rot(seq, a)
    side = r[: L + 1]
    remainder = (r[L],) + r[L + 1:] + (r[0],)
    return remainder, side


class _Refiner:
    def __init__(self, tape: Tape, base: FamilySpec, emit: Callable | None = None):
        self.tape = tape
        self.base = base
        self.directed = base.kind == DIRECTED
        self.tag = DIRECTED if self.directed else ORIENTED
        self.emit_hook = emit

    def emit(self, seq):
        k = len(seq)
        if not self.base.admits_length(k):
            raise RefinementError(f"base family {self.base} has no {k}-cycles")
        if self.directed and not self.tape.is_dicycle(seq):
            raise RefinementError(f"internal: {seq} is not a dicycle at emission")
        if self.emit_hook is not None:
            self.emit_hook(self.tape, seq)
        else:
            self.tape.apply(seq, self.tag)

    def order(self, first, second, run_first, run_second):
        # ``first`` is the piece the orientation-mode order reverses first.
        if self.directed and not self.tape.is_dicycle(first):
            run_second()
            run_first()
        else:
            run_first()
            run_second()

    def reverse(self, seq):
        seq = tuple(seq)
        k = len(seq)
        if k == 4:
            self.emit(seq)
            return
        pair = closest_pair(seq) if k >= 5 else None
        if pair is not None:
            self._phase1(seq, *pair)
        else:
            self._phase2(seq)

    def _phase1(self, seq, i, j):
        k = len(seq)
        d = (j - i) % k
        remainder, segment = _split_halves(seq, i, j)
        if d == 2:
            self.order(remainder, segment,
                       lambda: self.reverse(remainder),
                       lambda: self._tree(segment))
            return
        # The segment u_{i-1} u_i ... u_j splits along u_i u_{j-1} into the
        # parent-cycle piece u_i ... u_{j-1} and the 4-cycle u_{i-1} u_i u_{j-1} u_j.
        inner = segment[1:-1]
        four = (segment[0], segment[1], segment[-2], segment[-1])

        def run_segment():
            self.order(inner, four, lambda: self.reverse(inner), lambda: self.emit(four))

        self.order(remainder, segment, lambda: self.reverse(remainder), run_segment)

    def _tree(self, L):
        _tree_segment(self.tape, tuple(L), self.directed, self.emit)

    def _phase2(self, seq):
        split = _chord_split(self.tape.mult, seq)
        if split is None:
            self.emit(seq)
            return
        remainder, side = split
        self.order(remainder, side, lambda: self.reverse(remainder), lambda: self.emit(side))


def check_base(parent, base: FamilySpec):
    """Raise unless ``base`` contains 4-cycles and every chordless length."""
    need = {4} | set(cycle_length_sets(parent).chordless_lengths)
    if base.lengths is not None and not need <= set(base.lengths):
        raise RefinementError(f"base family {base} lacks lengths {sorted(need - set(base.lengths))}")


def refine_cycle(D: Orientation, F: OrientedCycle, base: FamilySpec, *, tape: Tape | None = None,
                 emit: Callable | None = None, check: bool = True):
    """Script over ``base`` exactly reversing the cycle ``F`` of ``D``.

    Phase one removes same-partite pairs (closest pair first); phase two cuts
    chords of the projected parent cycle until every piece is a 4-cycle or
    projects onto a chordless parent cycle.  ``base`` must be directed when
    ``F`` is a dicycle and the caller wants dicycle steps.

    With ``tape`` given, steps go onto it and ``None`` is returned; ``emit``
    (``emit(tape, seq)``) replaces the default application of a base step.
    """
    if check:
        check_base(D.mult.parent, base)
    seq = F.vertices
    own = tape is None
    if own:
        tape = Tape(D)
    if base.kind == DIRECTED and not tape.is_dicycle(seq):
        raise RefinementError("directed base family needs a dicycle")
    _Refiner(tape, base, emit).reverse(seq)
    if own:
        return tape.script(base.label)
    return None
