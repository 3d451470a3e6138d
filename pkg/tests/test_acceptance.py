"""Acceptance suite: one test per criterion, each timed against its budget.

Every test records a pass/fail line that is printed in the terminal summary.
"""

import random
import time
from contextlib import contextmanager
from itertools import product

from arcrev import oracle
from arcrev.difference import build_ddg, cycle_decomposition_undirected, dicycle_decomposition, relabel
from arcrev.graph_core import (
    ParentGraph,
    Vertex,
    base_lengths,
    build_multiplication,
    find_score_automorphism,
    random_automorphism,
)
from arcrev.orientation import Orientation, cycle_in, dicycles, edge_mask, oriented_cycles, tt3
from arcrev.planner import PlanRequest, plan, verify_script
from arcrev.refine import Tape, apply_step, refine_cycle, replay
from arcrev.tourney import check_exact, tt3_pattern, tt3_refine_c4

from conftest import ACCEPTANCE
from gen import random_cycle, random_mult, random_orientation, random_pair

V = Vertex


@contextmanager
def criterion(k, budget, note=""):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        secs = time.perf_counter() - t0
        within = secs < budget
        ACCEPTANCE[k] = (ok and within, secs, budget, note if within else f"{note} (over budget)")
        print(f"criterion {k}: {'PASS' if ok and within else 'FAIL'} in {secs:.2f}s")
    assert secs < budget, f"criterion {k} took {secs:.1f}s, budget {budget}s"


def corpus(seed, size, n_max=5, p_max=2):
    rng = random.Random(seed)
    for _ in range(size):
        yield rng, random_mult(rng, 2, n_max, p_max)


# -- 1 ---------------------------------------------------------------------------------


def test_criterion_01_degree_identity():
    with criterion(1, 10, "1000 random (G, p, f, D, D')"):
        for rng, M in corpus(101, 1000):
            f = random_automorphism(M, rng)
            D, D2 = random_orientation(rng, M), random_orientation(rng, M)
            dd = build_ddg(f, D, D2)
            # recount the disagreement arcs straight from the edge list
            od = dict.fromkeys(M.vertices, 0)
            idg = dict.fromkeys(M.vertices, 0)
            for u, v in M.edges:
                if D.has_arc(u, v) != D2.has_arc(f[u], f[v]):
                    t, h = (u, v) if D.has_arc(u, v) else (v, u)
                    od[t] += 1
                    idg[h] += 1
            assert len(dd.arcs) == sum(od.values())
            for v in M.vertices:
                assert od[v] - idg[v] == D.out_degree(v) - D2.out_degree(f[v])
                assert dd.out_degrees()[v] == od[v] and dd.in_degrees()[v] == idg[v]


# -- 2 ---------------------------------------------------------------------------------


def test_criterion_02_decompositions():
    counts = {"exact": 0, "parity": 0}
    with criterion(2, 30, "score- and parity-matched pairs"):
        for rng, M in corpus(202, 1000):
            directed = rng.random() < 0.5
            D, D2 = random_pair(rng, M, directed)
            mode = "exact" if directed else "parity"
            f = find_score_automorphism(M, D, D2, mode)
            assert f is not None
            dd = build_ddg(f, D, D2)
            cycles = dicycle_decomposition(dd) if directed else cycle_decomposition_undirected(dd)
            T = relabel(D2, f)
            masks = [edge_mask(M, C.vertices) for C in cycles]
            union = 0
            for m in masks:
                assert union & m == 0  # edge-disjoint
                union |= m
            assert union == D.bits ^ T.bits  # covers exactly the disagreement set
            if directed:
                assert all(C.directed for C in cycles)
            got = D
            for C in cycles:
                got = got.flip(edge_mask(M, C.vertices))
            assert got == T
            counts[mode] += 1
    assert min(counts.values()) > 300


# -- 3 ---------------------------------------------------------------------------------


def squares_vs_scores(M):
    part = oracle.f_classes(M, dicycles({4}))
    assert part.as_sets() == oracle.score_classes(M)
    states = [Orientation(M, b) for b in range(1 << M.m)]
    for D, D2 in product(states, repeat=2):
        rep = plan(PlanRequest(D, D2, "same_score", "c4"))
        same = part.same_class(D, D2)
        assert (rep.outcome == "script") == same, (D, D2, rep.reason)
        if same:
            assert verify_script(D, rep.script, rep.target, dicycles({4}))
            assert oracle.find_isomorphism(rep.target, D2) is not None
    return len(part.classes)


def test_criterion_03_squares_on_small_bipartite():
    with criterion(3, 30, "K2(2,2), P3(1,2,1), P4(1,2,1,1), all pairs"):
        assert squares_vs_scores(build_multiplication(ParentGraph.complete(2), (2, 2))) > 1
        assert squares_vs_scores(build_multiplication(ParentGraph.path(3), (1, 2, 1))) > 1
        M = build_multiplication(ParentGraph.path(4), (1, 2, 1, 1))
        assert M.m == 5
        assert squares_vs_scores(M) > 1


# -- 4 ---------------------------------------------------------------------------------


def test_criterion_04_k4_tournaments():
    with criterion(4, 30, "{C3,C4} and {C3} on K4"):
        M = build_multiplication(ParentGraph.complete(4), (1,) * 4)
        scores = oracle.score_classes(M)
        # sorted score sequence is the invariant for tournaments
        by_seq = {}
        for b in range(1 << M.m):
            by_seq.setdefault(Orientation(M, b).scores(), set()).add(oracle.canonical_form(Orientation(M, b)))
        assert scores == {frozenset(s) for s in by_seq.values()}
        assert oracle.f_classes(M, dicycles({3, 4})).as_sets() == scores
        assert oracle.f_classes(M, dicycles({3})).as_sets() == scores


# -- 5 ---------------------------------------------------------------------------------


def test_criterion_05_tt3_parity_order_four():
    with criterion(5, 60, "TT3 classes of the 64 tournaments of order 4"):
        M = build_multiplication(ParentGraph.complete(4), (1,) * 4)
        part = oracle.f_classes(M, tt3())
        assert part.as_sets() == oracle.score_classes(M, parity=True)
        even = lambda D: sum(1 for s in D.out_degrees().values() if s % 2 == 0)  # noqa: E731
        for a, b in product(range(1 << M.m), repeat=2):
            D, D2 = Orientation(M, a), Orientation(M, b)
            assert part.same_class(D, D2) == (even(D) == even(D2))


# -- 6 to 8 ----------------------------------------------------------------------------


def test_criterion_06_tripartite_c4_free():
    with criterion(6, 10, "C4-free pair, {C3,C4} script"):
        cert = oracle.counterexample("3.7")
        D, D2 = cert.D, cert.D2
        assert D.scores() == D2.scores() == (0, 2, 2, 2, 2)
        assert cert.checks["first C4-free"] and cert.checks["not C4-equivalent (exhaustive)"]
        assert plan(PlanRequest(D, D2, "same_score", "c4")).outcome == "not_equivalent"
        rep = plan(PlanRequest(D, D2, "same_score", "c3c4"))
        assert rep.outcome == "script" and len(rep.script) > 0
        assert verify_script(D, rep.script, rep.target, dicycles({3, 4}))
        assert oracle.find_isomorphism(replay(D, rep.script), D2) is not None


def test_criterion_07_tripartite_tt3_free():
    with criterion(7, 10, "TT3-free pair, triangle script"):
        cert = oracle.counterexample("4.12")
        D, D2 = cert.D, cert.D2
        assert D.scores() == (1, 1, 1, 2)
        assert cert.checks["first TT3-free"]
        rep = plan(PlanRequest(D, D2, "parity", "tt3"))
        assert rep.outcome == "not_equivalent"
        rep = plan(PlanRequest(D, D2, "parity", "cc3"))
        assert rep.outcome == "script"
        assert verify_script(D, rep.script, rep.target, oriented_cycles({3}))
        assert oracle.find_isomorphism(replay(D, rep.script), D2) is not None


def test_criterion_08_rigid_tree_bridge():
    with criterion(8, 10, "bridge pair, exhaustive separation"):
        cert = oracle.counterexample("4.6")
        assert all(cert.checks.values()) and len(cert.checks) == 4
        rep = plan(PlanRequest(cert.D, cert.D2, "parity"))
        assert rep.outcome == "not_equivalent" and "bridge" in rep.reason


# -- 9 ---------------------------------------------------------------------------------


def test_criterion_09_four_cycle_case_table():
    with criterion(9, 5, "16 patterns of v against a 4-dicycle"):
        M = build_multiplication(ParentGraph.complete(3), (2, 2, 1))
        u = [V(1, 1), V(2, 1), V(1, 2), V(2, 2)]
        v = V(3, 1)
        for pattern in product((0, 1), repeat=4):
            arcs = [(u[t], u[(t + 1) % 4]) for t in range(4)]
            arcs += [(v, u[i]) if pattern[i] else (u[i], v) for i in range(4)]
            T = Orientation.from_arcs(M, arcs)
            Z = cycle_in(M, T.bits, u)
            s = tt3_refine_c4(T, Z)
            assert len(s) in (2, 4)
            assert check_exact(T, Z, s)
            assert replay(T, s) == T.flip(edge_mask(M, u))
            bits = T.bits
            for step in s:
                assert tt3_pattern(Tape(Orientation(M, bits)), step.cycle.vertices) is not None
                bits = apply_step(M, bits, step)


# -- 10 --------------------------------------------------------------------------------


def test_criterion_10_refinement_fuzz():
    done = 0
    with criterion(10, 60, "1000 (instance, cycle, base family) triples"):
        rng = random.Random(1010)
        while done < 1000:
            M = random_mult(rng, 2, 5, 2)
            D = random_orientation(rng, M)
            directed = rng.random() < 0.5
            F = random_cycle(rng, D, directed)
            if F is None:
                continue
            need = {4} | set(base_lengths(M.parent))
            extra = {k for k in range(3, 7) if rng.random() < 0.3}
            base = (dicycles if directed else oriented_cycles)(need | extra)
            s = refine_cycle(D, F, base)
            assert replay(D, s) == D.flip(edge_mask(M, F.vertices))
            assert verify_script(D, s, D.flip(edge_mask(M, F.vertices)), base)
            od = D.out_degrees()
            bits = D.bits
            for step in s:
                assert step.cycle.k in base.lengths
                bits = apply_step(M, bits, step)
                now = Orientation(M, bits).out_degrees()
                if directed:
                    assert now == od
                else:
                    assert all(now[x] % 2 == od[x] % 2 for x in M.vertices)
            done += 1


# -- 11 --------------------------------------------------------------------------------


def random_bipartite_parent(rng):
    r = rng.random()
    if r < 0.4:
        return ParentGraph.path(rng.randint(2, 4))
    if r < 0.7:
        n = rng.randint(3, 5)
        return ParentGraph.from_edges(n, [(rng.randint(1, v - 1), v) for v in range(2, n + 1)])
    return ParentGraph.cycle(rng.choice((4, 6)))


def test_criterion_11_strategies_cross_check():
    with criterion(11, 60, "100 bipartite pairs, three strategies"):
        rng = random.Random(1111)
        for _ in range(100):
            G = random_bipartite_parent(rng)
            M = build_multiplication(G, tuple(rng.randint(1, 2) for _ in range(G.n)))
            D, D2 = random_pair(rng, M, directed=True)
            f = find_score_automorphism(M, D, D2, "exact")
            assert f is not None
            T = relabel(D2, f)
            for strategy in ("ddg_refine", "subdivision", "bipartite_merge"):
                rep = plan(PlanRequest(D, D2, "same_score", "auto", strategy))
                assert rep.outcome == "script", (strategy, rep.reason)
                assert rep.target == T
                assert verify_script(D, rep.script, T, rep.family)
                if strategy == "bipartite_merge":
                    masks = [edge_mask(M, C.vertices) for C in rep.raw_cycles]
                    union = 0
                    for m in masks:
                        assert union & m == 0
                        union |= m
                    assert union == D.bits ^ T.bits
                    assert all(C.directed and C.k % 2 == 0 for C in rep.raw_cycles)
