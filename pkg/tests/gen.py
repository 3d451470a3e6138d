"""Random instance generators shared by the test modules."""

import random

from hypothesis import strategies as st

from arcrev.difference import relabel
from arcrev.graph_core import ParentGraph, build_multiplication, random_automorphism, simple_cycles
from arcrev.orientation import Orientation, cycle_in, edge_mask


def random_parent(rng: random.Random, n_min=2, n_max=5) -> ParentGraph:
    """Random connected graph: a random spanning tree plus random extra edges."""
    n = rng.randint(n_min, n_max)
    edges = set()
    for v in range(2, n + 1):
        edges.add((rng.randint(1, v - 1), v))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rng.random() < 0.35:
                edges.add((i, j))
    return ParentGraph.from_edges(n, sorted(edges))


def random_mult(rng: random.Random, n_min=2, n_max=5, p_max=2, max_edges=None):
    while True:
        G = random_parent(rng, n_min, n_max)
        M = build_multiplication(G, tuple(rng.randint(1, p_max) for _ in range(G.n)))
        if max_edges is None or M.m <= max_edges:
            return M


def random_orientation(rng: random.Random, M) -> Orientation:
    return Orientation(M, rng.getrandbits(M.m))


def some_cycles(D: Orientation, directed: bool, max_len=6, limit=400):
    M = D.mult
    out = []
    for seq in simple_cycles(M.vertices, M.adj, max_len):
        C = cycle_in(M, D.bits, seq)
        if C.directed or not directed:
            out.append(C)
            if len(out) >= limit:
                break
    return out


def random_cycle(rng: random.Random, D: Orientation, directed: bool, max_len=6):
    """A random cycle of ``D``: first a random available length, then a cycle."""
    by_len = {}
    for C in some_cycles(D, directed, max_len):
        by_len.setdefault(C.k, []).append(C)
    if not by_len:
        return None
    return rng.choice(by_len[rng.choice(sorted(by_len))])


def random_pair(rng: random.Random, M, directed: bool, moves=3):
    """``D`` and an orientation reached from it by random cycle reversals and a
    random automorphism, so the score (or parity) condition holds."""
    D = random_orientation(rng, M)
    bits = D.bits
    for _ in range(moves):
        C = random_cycle(rng, Orientation(M, bits), directed)
        if C is None:
            break
        bits ^= edge_mask(M, C.vertices)
    f = random_automorphism(M, rng)
    inv = {b: a for a, b in f.items()}
    return D, relabel(Orientation(M, bits), inv)


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def mults(draw, n_min=2, n_max=5, p_max=2):
    """Hypothesis strategy for small multiplications (shrinks towards few vertices)."""
    n = draw(st.integers(n_min, n_max))
    tree = [(draw(st.integers(1, v - 1)), v) for v in range(2, n + 1)]
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
    p = tuple(draw(st.integers(1, p_max)) for _ in range(n))
    return build_multiplication(ParentGraph.from_edges(n, sorted(set(tree) | set(extra))), p)


@st.composite
def oriented_mults(draw, **kw):
    M = draw(mults(**kw))
    return Orientation(M, draw(st.integers(0, (1 << M.m) - 1)))
