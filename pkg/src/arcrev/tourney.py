"""Transitive-triangle and triangle refinements in multipartite tournaments.

All routines write onto a :class:`~arcrev.refine.Tape` and exactly reverse one
cycle of the current orientation.  Triangle steps are given by vertex sets;
each is checked against the tape when it is applied.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from .errors import RefinementError, SearchExhausted
from .orientation import ORIENTED, Orientation, OrientedCycle, edge_mask
from .refine import Tape, replay

DEPTH_CAP = 12


class TT3Pattern(NamedTuple):
    source: object
    middle: object
    sink: object


def tt3_pattern(tape: Tape, tri) -> TT3Pattern | None:
    """The transitive pattern on a triangle, or ``None`` for a 3-dicycle."""
    a, b, c = tri
    outs = {x: sum(tape.arc(x, y) for y in tri if y != x) for x in tri}
    by = sorted(tri, key=lambda x: -outs[x])
    if [outs[x] for x in by] != [2, 1, 0]:
        return None
    return TT3Pattern(*by)


def _require_multipartite_tournament(T: Orientation, min_parts: int):
    parent = T.mult.parent
    if not parent.is_complete():
        raise RefinementError("not a multipartite tournament (parent graph is not complete)")
    if parent.n < min_parts:
        raise RefinementError(f"needs at least {min_parts} partite sets, found {parent.n}")


def _apply_tt3(tape: Tape, tri):
    if tt3_pattern(tape, tri) is None:
        raise RefinementError(f"triangle {' '.join(map(str, tri))} is not transitive here")
    tape.apply(tuple(tri), ORIENTED)


# -- bounded search for exact C3 reversal -------------------------------------


@lru_cache(maxsize=None)
def _local_search(adj: tuple, bits: int, goal: int, cap: int):
    """BFS over transitive-triangle reversals on a small vertex set.

    ``adj`` lists local edges ``(a, b)`` (index order); ``bits`` gives their
    current direction (bit set means ``a -> b``).  Returns the shortest list of
    local triangles whose reversal flips exactly the edges in ``goal``, or
    ``None`` within ``cap`` steps.
    """
    index = {e: k for k, e in enumerate(adj)}
    n = 1 + max(max(e) for e in adj)
    triangles = []
    for a, b, c in combinations(range(n), 3):
        if (a, b) in index and (b, c) in index and (a, c) in index:
            triangles.append(((a, b, c), (1 << index[(a, b)]) | (1 << index[(b, c)]) | (1 << index[(a, c)]),
                              index[(a, b)], index[(b, c)], index[(a, c)]))

    def transitive(state, ab, bc, ac):
        x, y, z = state >> ab & 1, state >> bc & 1, state >> ac & 1
        # a->b->c->a (1,1,0) and its reverse (0,0,1) are the dicycles.
        return not ((x, y, z) == (1, 1, 0) or (x, y, z) == (0, 0, 1))

    target = bits ^ goal
    prev = {bits: None}
    queue = deque([(bits, 0)])
    while queue:
        state, depth = queue.popleft()
        if state == target:
            path = []
            while prev[state] is not None:
                state, tri = prev[state]
                path.append(tri)
            return tuple(reversed(path))
        if depth == cap:
            continue
        for tri, mask, ab, bc, ac in triangles:
            if transitive(state, ab, bc, ac):
                nxt = state ^ mask
                if nxt not in prev:
                    prev[nxt] = (state, tri)
                    queue.append((nxt, depth + 1))
    return None


def _search_exact(tape: Tape, seq, extra_sets, cap=DEPTH_CAP):
    """Try each candidate vertex set ``seq + extra`` in order; apply the first
    transitive-triangle script found."""
    mult = tape.mult
    goal_edges = {mult.edge_id(seq[t], seq[(t + 1) % len(seq)]) for t in range(len(seq))}
    for extra in extra_sets:
        local = list(seq) + list(extra)
        adj = []
        bits = 0
        goal = 0
        for a in range(len(local)):
            for b in range(a + 1, len(local)):
                u, v = local[a], local[b]
                if mult.adjacent(u, v):
                    k = len(adj)
                    adj.append((a, b))
                    if tape.arc(u, v):
                        bits |= 1 << k
                    if mult.edge_id(u, v) in goal_edges:
                        goal |= 1 << k
        path = _local_search(tuple(adj), bits, goal, cap)
        if path is not None:
            for tri in path:
                _apply_tt3(tape, tuple(local[x] for x in tri))
            return True
    return False


def _auxiliaries(tape: Tape, seq):
    """Vertices outside ``seq``: those adjacent to all of ``seq`` first, each
    group in vertex order."""
    mult = tape.mult
    rest = [w for w in mult.vertices if w not in seq]
    full = [w for w in rest if all(mult.adjacent(w, u) for u in seq)]
    return full + [w for w in rest if w not in full]


def _c3_on_tape(tape: Tape, seq):
    aux = _auxiliaries(tape, seq)
    if not aux:
        raise RefinementError("no auxiliary vertex available")
    singles = [(w,) for w in aux]
    if _search_exact(tape, seq, singles):
        return
    if _search_exact(tape, seq, combinations(aux, 2)):
        return
    raise SearchExhausted(f"no transitive-triangle script within depth {DEPTH_CAP}")


def tt3_refine_c3(T: Orientation, Z: OrientedCycle, *, tape: Tape | None = None):
    """Transitive-triangle script exactly reversing the 3-dicycle ``Z``.

    Found by breadth-first search over the vertices of ``Z`` plus one
    auxiliary vertex (two if one is not enough), capped at depth 12.
    """
    own = tape is None
    if own:
        tape = Tape(T)
    seq = tuple(Z.vertices)
    if len(seq) != 3 or not tape.is_dicycle(seq):
        raise RefinementError("expected a 3-dicycle")
    _c3_on_tape(tape, seq)
    return tape.script("TT3") if own else None


# -- 4-dicycles ----------------------------------------------------------------

# Canonical out-set of v against u1..u4 (1-based) and the triangle vertex sets
# reversing the dicycle u1 -> u2 -> u3 -> u4 -> u1; "v" marks the extra vertex.
C4_CASES = {
    "A": (frozenset({1, 2, 3, 4}), (("v", 2, 3), ("v", 4, 1), (1, 2, "v"), (3, 4, "v"))),
    "B": (frozenset({2, 4}), ((3, "v", 4), (4, 1, "v"), ("v", 1, 2), (2, "v", 3))),
    "C": (frozenset({1, 2, 3}), (("v", 2, 3), (3, 4, "v"), ("v", 4, 1), (1, 2, "v"))),
    "D": (frozenset({3, 4}), (("v", 3, 4), (4, 1, "v"), (2, 3, "v"), ("v", 1, 2))),
}


def normalize_c4_pattern(out_set):
    """Map an out-set of ``v`` (subset of {1,2,3,4}) to a tabulated case.

    Returns ``(case, dual, r)`` such that, with ``u'_i = u[(i - 1 + r) % 4]``
    (or ``u[(-(i - 1) + r) % 4]`` and the complemented out-set when ``dual``),
    the relabelled pattern is the case's canonical one.
    """
    out_set = frozenset(out_set)
    for dual in (False, True):
        pat = frozenset({1, 2, 3, 4}) - out_set if dual else out_set
        for r in range(4):
            if dual:
                moved = frozenset(i for i in range(1, 5) if ((-(i - 1) + r) % 4) + 1 in pat)
            else:
                moved = frozenset(i for i in range(1, 5) if ((i - 1 + r) % 4) + 1 in pat)
            for name, (canon, _) in C4_CASES.items():
                if moved == canon:
                    return name, dual, r
    raise AssertionError("unreachable: every pattern lies in a tabulated orbit")


def _frame(u, dual, r):
    if dual:
        return {i: u[(-(i - 1) + r) % 4] for i in range(1, 5)}
    return {i: u[(i - 1 + r) % 4] for i in range(1, 5)}


def _c4_on_tape(tape: Tape, seq):
    mult = tape.mult
    u = list(seq)
    if not tape.is_dicycle(u):
        raise RefinementError("expected a 4-dicycle")
    if not all(tape.arc(u[t], u[(t + 1) % 4]) for t in range(4)):
        u = [u[0], u[3], u[2], u[1]]
    for r in (0, 1):
        a, c = u[r], u[r + 2]
        if mult.adjacent(a, c):
            w = u[r:] + u[:r]
            if not tape.arc(w[0], w[2]):
                w = w[2:] + w[:2]
            _apply_tt3(tape, (w[0], w[1], w[2]))
            _apply_tt3(tape, (w[2], w[3], w[0]))
            return
    cands = [x for x in mult.vertices if x not in u and all(mult.adjacent(x, y) for y in u)]
    if not cands:
        raise RefinementError("no vertex in a third partite set")
    v = cands[0]
    out_set = {i + 1 for i in range(4) if tape.arc(v, u[i])}
    name, dual, r = normalize_c4_pattern(out_set)
    frame = _frame(u, dual, r)
    for tri in C4_CASES[name][1]:
        _apply_tt3(tape, tuple(v if x == "v" else frame[x] for x in tri))


def tt3_refine_c4(T: Orientation, Z: OrientedCycle, *, tape: Tape | None = None):
    """Transitive-triangle script exactly reversing the 4-dicycle ``Z``.

    If an opposite pair of ``Z`` is adjacent, two triangles through that chord
    suffice.  Otherwise a vertex ``v`` from a third partite set is used and its
    arc pattern towards ``Z`` picks one of four tabulated 4-step scripts, up to
    rotation and reversal of direction.
    """
    own = tape is None
    if own:
        tape = Tape(T)
    _require_multipartite_tournament(tape.start, 3)
    if Z.k != 4:
        raise RefinementError("expected a 4-cycle")
    _c4_on_tape(tape, Z.vertices)
    return tape.script("TT3") if own else None


# -- arbitrary 3- and 4-cycles -------------------------------------------------


def _reverse_triangle(tape: Tape, tri):
    if tape.is_dicycle(tri):
        _c3_on_tape(tape, tri)
    else:
        _apply_tt3(tape, tri)


def _oriented_on_tape(tape: Tape, seq):
    seq = tuple(seq)
    k = len(seq)
    mult = tape.mult
    fwd_back = [t for t in range(k) if not tape.arc(seq[t], seq[(t + 1) % k])]
    rev = tuple(reversed(seq))
    rev_back = [t for t in range(k) if not tape.arc(rev[t], rev[(t + 1) % k])]
    if len(rev_back) < len(fwd_back):
        seq, back = rev, rev_back
    else:
        back = fwd_back
    if not back:
        if k == 3:
            _c3_on_tape(tape, seq)
        else:
            _c4_on_tape(tape, seq)
        return
    s = back[0]
    seq = seq[s:] + seq[:s]  # now the arc on (u1, u2) runs backwards: u2 -> u1
    u1, u2 = seq[0], seq[1]
    cands = [x for x in mult.vertices if x not in seq and mult.adjacent(x, u1) and mult.adjacent(x, u2)]
    if not cands:
        # Every vertex is on the cycle (e.g. a 4-cycle spanning a 4-vertex
        # tournament); search the local transitive-triangle moves directly.
        aux = _auxiliaries(tape, seq)
        sets = [()] + [(w,) for w in aux]
        if not _search_exact(tape, seq, sets):
            raise SearchExhausted(f"no transitive-triangle script within depth {DEPTH_CAP}")
        return
    v = cands[0]
    tri = (u1, u2, v)
    _reverse_triangle(tape, tri)
    _oriented_on_tape(tape, seq)
    _reverse_triangle(tape, tri)


def tt3_refine_oriented(T: Orientation, F: OrientedCycle, *, tape: Tape | None = None):
    """Transitive-triangle script exactly reversing any orientation of a 3- or
    4-cycle in a multipartite tournament with at least four partite sets.

    Induction on the number ``t`` of arcs against the nearer dicycle direction:
    a backwards arc ``u2 -> u1`` is fixed by reversing a triangle ``u1 u2 v``,
    the now closer cycle is reversed, and the triangle is reversed back.
    """
    own = tape is None
    if own:
        tape = Tape(T)
    _require_multipartite_tournament(tape.start, 4)
    if F.k not in (3, 4):
        raise RefinementError("expected a 3- or 4-cycle; reduce longer cycles first")
    _oriented_on_tape(tape, F.vertices)
    return tape.script("TT3") if own else None


def tripartite_c3_refine(T: Orientation, F: OrientedCycle, *, tape: Tape | None = None):
    """Script of triangle steps (any orientation) exactly reversing a 3- or
    4-cycle ``F`` in a multipartite tournament with at least three parts."""
    own = tape is None
    if own:
        tape = Tape(T)
    _require_multipartite_tournament(tape.start, 3)
    _cc3_on_tape(tape, F.vertices)
    return tape.script("CC3") if own else None


def _cc3_on_tape(tape: Tape, seq):
    mult = tape.mult
    u = tuple(seq)
    if len(u) == 3:
        tape.apply(u, ORIENTED)
        return
    if len(u) != 4:
        raise RefinementError("expected a 3- or 4-cycle; reduce longer cycles first")
    for r in (0, 1):
        if mult.adjacent(u[r], u[r + 2]):
            w = u[r:] + u[:r]
            tape.apply((w[0], w[1], w[2]), ORIENTED)
            tape.apply((w[2], w[3], w[0]), ORIENTED)
            return
    cands = [x for x in mult.vertices if x not in u and all(mult.adjacent(x, y) for y in u)]
    if not cands:
        raise RefinementError("no vertex in a third partite set")
    w = cands[0]
    for t in range(4):
        tape.apply((u[t], u[(t + 1) % 4], w), ORIENTED)


def check_exact(T: Orientation, F: OrientedCycle, script) -> bool:
    """Does ``script`` replay on ``T`` to exactly the reversal of ``F``?"""
    return replay(T, script).bits == T.bits ^ edge_mask(T.mult, F.vertices)

