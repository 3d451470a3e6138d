import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from arcrev.errors import GraphError
from arcrev.graph_core import (
    ParentGraph,
    Vertex,
    automorphisms,
    bridges,
    build_multiplication,
    chordless_cycles,
    classify,
    cycle_length_sets,
    find_score_automorphism,
    is_automorphism,
    simple_cycles,
)
from arcrev.instances import rigid_tree_pair, tripartite_tt3_free
from arcrev.orientation import Orientation

from gen import mults, random_parent

RIGID_TREE = ParentGraph.from_edges(7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)])


def test_k3_212_counts():
    M = build_multiplication(ParentGraph.complete(3), (2, 1, 2))
    assert (M.N, M.m) == (5, 8)


def test_k2_22_is_complete_bipartite():
    M = build_multiplication(ParentGraph.complete(2), (2, 2))
    assert M.m == 4
    assert all(u.partite == 1 and v.partite == 2 for u, v in M.edges)


def test_path_121_counts():
    M = build_multiplication(ParentGraph.path(3), (1, 2, 1))
    assert (M.N, M.m) == (4, 4)


@pytest.mark.parametrize("p", [(2,), (0, 1), (1, 1, 1)])
def test_bad_multiplicities(p):
    with pytest.raises(GraphError):
        build_multiplication(ParentGraph.complete(2), p)


def test_disconnected_parent_rejected():
    with pytest.raises(GraphError):
        ParentGraph.from_edges(4, [(1, 2), (3, 4)])


def test_classify_k4():
    c = classify(ParentGraph.complete(4))
    assert (c.is_tree, c.is_bipartite, c.is_chordal, c.bridges) == (False, False, True, frozenset())


def test_classify_tree_with_pendant():
    c = classify(RIGID_TREE)
    assert c.is_tree and c.is_bipartite and c.is_chordal
    assert c.bridges == frozenset(RIGID_TREE.edges)
    assert len(c.bridges) == 6


def test_classify_c5():
    c = classify(ParentGraph.cycle(5))
    assert not c.is_chordal and not c.is_bipartite and c.bridges == frozenset()


@pytest.mark.parametrize(
    "G, all_l, chordless",
    [
        (ParentGraph.complete(4), {3, 4}, {3}),
        (ParentGraph.cycle(6), {6}, {6}),
        (ParentGraph.from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)]), {3, 4}, {3}),
        (ParentGraph.path(4), set(), set()),
    ],
)
def test_cycle_length_sets(G, all_l, chordless):
    s = cycle_length_sets(G)
    assert s.all_lengths == all_l
    assert s.chordless_lengths == chordless


def _brute_cycles(G):
    """Every cycle as a (vertex set, edge set) pair, by trying all vertex orders."""
    from itertools import permutations

    found = set()
    for k in range(3, G.n + 1):
        for vs in combinations(G.vertices, k):
            first, rest = vs[0], vs[1:]
            for perm in permutations(rest):
                seq = (first,) + perm
                es = [frozenset((seq[t], seq[(t + 1) % k])) for t in range(k)]
                if all(G.has_edge(*tuple(e)) for e in es):
                    found.add((frozenset(vs), frozenset(es)))
    return found


def test_chordless_matches_brute_force():
    rng = random.Random(7)
    for _ in range(60):
        G = random_parent(rng, 3, 7)
        cycles = _brute_cycles(G)
        chordless = set()
        for vs, es in cycles:
            chords = [e for e in combinations(sorted(vs), 2) if G.has_edge(*e) and frozenset(e) not in es]
            if not chords:
                chordless.add(len(vs))
        s = cycle_length_sets(G)
        assert s.all_lengths == {len(vs) for vs, _ in cycles}
        assert s.chordless_lengths == chordless
        assert len(list(simple_cycles(G.vertices, G.adj))) == len(cycles)
        assert len(list(chordless_cycles(G.vertices, G.adj))) == sum(
            1 for vs, es in cycles
            if not any(G.has_edge(*e) and frozenset(e) not in es for e in combinations(sorted(vs), 2))
        )


def test_bridges_tree_and_cycle():
    assert bridges(RIGID_TREE.vertices, RIGID_TREE.adj) == frozenset(RIGID_TREE.edges)
    C = ParentGraph.cycle(5)
    assert bridges(C.vertices, C.adj) == frozenset()


def test_group_sizes():
    # K(3,3): 3! * 3! * 2 ; K3(2,1,1): swap the pair in V1, swap the twin singletons
    assert sum(1 for _ in automorphisms(build_multiplication(ParentGraph.complete(2), (3, 3)), prune=False)) == 72
    assert sum(1 for _ in automorphisms(build_multiplication(ParentGraph.complete(3), (2, 1, 1)), prune=False)) == 4


def test_score_automorphism_identity_when_equal():
    M = build_multiplication(ParentGraph.complete(3), (2, 1, 2))
    D = Orientation(M, 0b10110101)
    for mode in ("exact", "parity"):
        f = find_score_automorphism(M, D, D, mode)
        assert f is not None and all(D.out_degree(v) == D.out_degree(f[v]) for v in M.vertices)


def test_score_automorphism_swaps_singletons():
    M, D, D2 = tripartite_tt3_free()
    f = find_score_automorphism(M, D, D2, "parity")
    assert f is not None
    a, b = Vertex(3, 1), Vertex(2, 1)
    assert D.out_degree(a) == 2 and D2.out_degree(b) == 2
    assert f[a] == b


def test_score_automorphism_rigid_tree():
    M, D, D2 = rigid_tree_pair()
    assert find_score_automorphism(M, D, D2, "parity") is None
    assert sum(1 for _ in automorphisms(M, prune=False)) == 1


@settings(max_examples=60, deadline=None)
@given(mults(n_max=5, p_max=2))
def test_multiplication_invariants(M):
    G = M.parent
    assert M.m == sum(M.p[i - 1] * M.p[j - 1] for i, j in G.edges)
    for u, v in combinations(M.vertices, 2):
        assert M.adjacent(u, v) == (u.partite != v.partite and G.has_edge(u.partite, v.partite))


@settings(max_examples=40, deadline=None)
@given(mults(n_max=4, p_max=2))
def test_found_automorphisms_are_automorphisms(M):
    rng = random.Random(M.m)
    D = Orientation(M, rng.getrandbits(M.m))
    D2 = Orientation(M, rng.getrandbits(M.m))
    for mode in ("exact", "parity"):
        f = find_score_automorphism(M, D, D2, mode)
        if f is None:
            continue
        assert is_automorphism(M, f)
        mod = 2 if mode == "parity" else 10**9
        assert all(D.out_degree(v) % mod == D2.out_degree(f[v]) % mod for v in M.vertices)


@settings(max_examples=40, deadline=None)
@given(mults(n_max=6, p_max=1))
def test_classify_bridges(M):
    G = M.parent
    c = classify(G)
    if c.is_tree:
        assert c.bridges == frozenset(G.edges)
    # 2-edge-connected iff removing any single edge keeps it connected
    for e in G.edges:
        rest = [x for x in G.edges if x != e]
        try:
            ParentGraph.from_edges(G.n, rest)
            assert e not in c.bridges
        except GraphError:
            assert e in c.bridges
