"""Equivalence planning and script verification.

``plan`` finds an automorphism matching scores (exactly for dicycle families,
mod 2 otherwise), relabels the second orientation by it, splits the
difference into edge-disjoint cycles and expands each cycle into steps of the
requested family on one shared tape.  Outcomes without a constructive
guarantee fall back to certificates: a family-free orientation, or an
exhaustive search on small instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from . import oracle
from .alternates import bipartite_merge, subdivision_cycles
from .difference import build_ddg, cycle_decomposition_undirected, dicycle_decomposition, relabel
from .errors import ArcNotPresent, ArcrevError, SearchExhausted
from .graph_core import automorphisms, base_lengths, bridges, classify, find_score_automorphism
from .orientation import (
    DIRECTED,
    ORIENTED,
    TT3,
    FamilySpec,
    Orientation,
    cycle_in,
    dicycles,
    edge_mask,
    find_family_copy,
    oriented_cycles,
    tt3,
)
from .refine import Script, Step, Tape, apply_step, fingerprint, refine_cycle
from .tourney import _cc3_on_tape, _oriented_on_tape

SAME_SCORE = "same_score"
PARITY = "parity"
STRATEGIES = ("ddg_refine", "subdivision", "bipartite_merge")
STRATEGY_ALIASES = {"ddg": "ddg_refine", "merge": "bipartite_merge"}
FAMILY_NAMES = ("auto", "c4", "c3c4", "cc3", "cc4", "tt3", "base")
ORACLE_EDGE_LIMIT = 16


class PlanError(ArcrevError, ValueError):
    """A plan request that cannot be carried out as asked."""


def resolve_family(mult, mode: str, family) -> FamilySpec:
    """Turn a family name (or ``"auto"``) into a :class:`FamilySpec`."""
    if isinstance(family, FamilySpec):
        return family
    mode = _norm_mode(mode)
    parent = mult.parent
    if family == "auto":
        cls = classify(parent)
        if mode == SAME_SCORE:
            if cls.is_tree:
                return dicycles({4})
            if cls.is_chordal:
                return dicycles({3, 4})
            return dicycles(base_lengths(parent))
        if parent.is_complete() and parent.n >= 4:
            return tt3()
        if parent.is_complete() and parent.n == 3:
            return oriented_cycles({3})
        if cls.is_tree:
            return oriented_cycles({4})
        if cls.is_chordal:
            return oriented_cycles({3, 4})
        return oriented_cycles(base_lengths(parent))
    named = {
        "c4": lambda: dicycles({4}),
        "c3c4": lambda: dicycles({3, 4}),
        "cc3": lambda: oriented_cycles({3}),
        "cc4": lambda: oriented_cycles({4}),
        "tt3": tt3,
        "base": lambda: (dicycles if mode == SAME_SCORE else oriented_cycles)(base_lengths(parent)),
    }
    if family not in named:
        raise PlanError(f"unknown family {family!r}")
    return named[family]()


def _norm_mode(mode):
    mode = mode.replace("-", "_")
    if mode not in (SAME_SCORE, PARITY):
        raise PlanError(f"unknown mode {mode!r}")
    return mode


@dataclass
class PlanRequest:
    D: Orientation
    D2: Orientation
    mode: str = SAME_SCORE
    family: object = "auto"
    strategy: str = "ddg_refine"


@dataclass
class PlanReport:
    outcome: str  # "script" | "not_equivalent" | "unknown"
    family: FamilySpec
    script: Script | None = None
    reason: str = ""
    automorphism: dict | None = None
    target: Orientation | None = None
    raw_cycles: list = field(default_factory=list)

    @property
    def step_count(self) -> int:
        return 0 if self.script is None else len(self.script)

    @property
    def tags(self) -> list:
        return [] if self.script is None else self.script.tags


# -- verification ----------------------------------------------------------------


class Verdict(NamedTuple):
    ok: bool
    step: int | None = None  # 1-based index of the failing step, 0 for the start
    kind: str = ""
    detail: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        where = "final" if self.step is None else f"step {self.step}"
        return f"violation at {where}: {self.kind}: {self.detail}"


def verify_script(D: Orientation, s, target: Orientation, family: FamilySpec | None = None) -> Verdict:
    """Replay ``s`` from ``D`` checking arcs, family membership and the final
    orientation against ``target``; report the first violation."""
    M = D.mult
    steps = list(s)
    if isinstance(s, Script) and s.initial and s.initial != fingerprint(D):
        return Verdict(False, 0, "initial-mismatch", "script was made for another orientation")
    bits = D.bits
    for idx, step in enumerate(steps, 1):
        seq = step.cycle.vertices
        try:
            C = cycle_in(M, bits, seq)
        except ArcrevError as e:
            return Verdict(False, idx, "not-a-cycle", str(e))
        if family is not None and not family.matches(M, bits, seq):
            return Verdict(False, idx, "not-in-family", f"{C} is not in {family}")
        if step.tag == DIRECTED and not C.directed:
            return Verdict(False, idx, "arc-not-present", f"{C} is not a dicycle here")
        try:
            bits = apply_step(M, bits, step)
        except ArcNotPresent as e:
            return Verdict(False, idx, "arc-not-present", str(e))
    if bits != target.bits:
        diff = Orientation(M, bits).differing_edges(target)
        listed = ", ".join(f"{u}-{v}" for u, v in diff[:8])
        more = "" if len(diff) <= 8 else f" (+{len(diff) - 8} more)"
        return Verdict(False, None, "final-mismatch", f"{len(diff)} edges differ: {listed}{more}")
    return Verdict(True)


# -- expansion of one cycle into family steps ---------------------------------------


def _expander(mult, family: FamilySpec):
    """``expand(tape, seq)`` exactly reversing ``seq`` with family steps, or
    ``None`` when no constructive route covers this family on this graph."""
    parent = mult.parent
    if family.kind in (DIRECTED, ORIENTED):
        need = base_lengths(parent)
        if family.lengths is None or need <= family.lengths:
            tag = family.step_tag()

            def expand(tape, seq):
                if family.admits_length(len(seq)):
                    tape.apply(seq, tag)
                else:
                    refine_cycle(tape.start, tape.cycle(seq), family, tape=tape, check=False)

            return expand
        if family.kind == ORIENTED and family.lengths == frozenset({3}) and parent.is_complete() and parent.n >= 3:
            return _via_small(oriented_cycles({3, 4}), _cc3_on_tape)
        return None
    if family.kind == TT3 and parent.is_complete() and parent.n >= 4:
        return _via_small(oriented_cycles({3, 4}), _oriented_on_tape)
    return None


def _via_small(small: FamilySpec, finish):
    """Reduce to 3- and 4-cycles, then finish each with ``finish(tape, seq)``."""

    def expand(tape, seq):
        refine_cycle(tape.start, tape.cycle(seq), small, tape=tape,
                     emit=lambda t, q: finish(t, q), check=False)

    return expand


# -- planning -----------------------------------------------------------------------


def _trivial_group(mult) -> bool:
    it = automorphisms(mult, prune=False)
    next(it, None)
    return next(it, None) is None


def _bridge_mismatch(D, D2):
    M = D.mult
    for u, v in sorted(bridges(M.vertices, M.adj)):
        if D.has_arc(u, v) != D2.has_arc(u, v):
            return (u, v)
    return None


def plan(req: PlanRequest) -> PlanReport:
    D, D2 = req.D, req.D2
    M = D.mult
    if D2.mult != M:
        raise PlanError("orientations belong to different multiplications")
    strategy = STRATEGY_ALIASES.get(req.strategy, req.strategy)
    if strategy not in STRATEGIES:
        raise PlanError(f"unknown strategy {req.strategy!r}")
    family = resolve_family(M, req.mode, req.family)
    exact = family.kind == DIRECTED
    if not exact:
        bad = _bridge_mismatch(D, D2)
        if bad is not None and _trivial_group(M):
            return PlanReport("not_equivalent", family, reason=f"bridge {bad[0]}-{bad[1]} oriented differently")
    f = find_score_automorphism(M, D, D2, "exact" if exact else "parity")
    if f is None:
        return PlanReport("not_equivalent", family, reason="score condition" if exact else "parity condition")
    T = relabel(D2, f)
    expand = _expander(M, family)
    if expand is None:
        return _uncovered(D, D2, family, f)
    if strategy != "ddg_refine" and not exact:
        raise PlanError(f"strategy {strategy} needs a dicycle family")
    if strategy == "ddg_refine":
        dd = build_ddg(f, D, D2)
        cycles = dicycle_decomposition(dd) if exact else cycle_decomposition_undirected(dd)
    elif strategy == "bipartite_merge":
        cycles = bipartite_merge(D, T)
    else:
        cycles = subdivision_cycles(D, T)
    tape = Tape(D)
    try:
        for C in cycles:
            expand(tape, C.vertices)
    except SearchExhausted as e:
        return PlanReport("unknown", family, reason=f"search exhausted: {e}", automorphism=f, target=T)
    script = tape.script(family.label)
    verdict = verify_script(D, script, T, family)
    if not verdict:
        raise AssertionError(f"internal error, planned script fails verification: {verdict}")
    return PlanReport("script", family, script, automorphism=f, target=T, raw_cycles=list(cycles))


def _uncovered(D, D2, family, f) -> PlanReport:
    iso = oracle.find_isomorphism(D, D2)
    if iso is not None:
        script = Script([], family.label, fingerprint(D), fingerprint(D))
        return PlanReport("script", family, script, reason="isomorphic", automorphism=iso, target=D)
    for X in (D, D2):
        if find_family_copy(X, family) is None:
            return PlanReport("not_equivalent", family, reason=f"{family.label}-free", automorphism=f)
    if D.mult.m <= ORACLE_EDGE_LIMIT:
        found = oracle.reach(D, D2, family)
        if found is None:
            return PlanReport("not_equivalent", family, reason="oracle class separation", automorphism=f)
        path, reached = found
        tape = Tape(D)
        for seq in path:
            tape.apply(seq, family.step_tag())
        target = Orientation(D.mult, reached)
        script = tape.script(family.label)
        assert verify_script(D, script, target, family)
        iso = oracle.find_isomorphism(target, D2)
        return PlanReport("script", family, script, reason="oracle search", automorphism=iso, target=target)
    return PlanReport("unknown", family, reason="no constructive route and instance too large to search",
                      automorphism=f)


def net_flip_mask(M, cycles) -> int:
    mask = 0
    for C in cycles:
        mask ^= edge_mask(M, C.vertices)
    return mask


__all__ = [
    "PlanError", "PlanReport", "PlanRequest", "Verdict", "plan", "resolve_family", "verify_script",
    "net_flip_mask", "Step", "SAME_SCORE", "PARITY", "STRATEGIES", "FAMILY_NAMES",
]
