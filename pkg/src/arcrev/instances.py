"""Small named instances used by the oracle, the CLI and the tests."""

from __future__ import annotations

from typing import NamedTuple

from .graph_core import MultGraph, ParentGraph, Vertex, build_multiplication
from .orientation import Orientation


class Instance(NamedTuple):
    mult: MultGraph
    D: Orientation
    D2: Orientation


def _arcs(spec):
    out = []
    for item in spec.split(","):
        a, b = item.split(">")
        i, x = a.strip().split(".")
        j, y = b.strip().split(".")
        out.append((Vertex(int(i), int(x)), Vertex(int(j), int(y))))
    return out


def tripartite_c4_free() -> Instance:
    """K3(2,1,2): same score list (0,2,2,2,2), first orientation has no 4-dicycle."""
    M = build_multiplication(ParentGraph.complete(3), (2, 1, 2))
    D = Orientation.from_arcs(M, _arcs("1.2>2.1, 1.1>2.1, 2.1>3.1, 2.1>3.2, 1.1>3.1, 1.2>3.1, 3.2>1.1, 3.2>1.2"))
    D2 = Orientation.from_arcs(M, _arcs("2.1>1.1, 1.2>2.1, 3.2>2.1, 2.1>3.1, 3.2>1.2, 1.2>3.1, 1.1>3.1, 1.1>3.2"))
    return Instance(M, D, D2)


# The two endpoints of the flipped bridge in :func:`rigid_tree_pair`.
TREE_U = Vertex(3, 1)
TREE_V = Vertex(4, 1)


def rigid_tree_pair() -> Instance:
    """Path 1-2-3-4-5-6 with a pendant 7 at 4 (no non-trivial automorphism);
    the two orientations differ only on the bridge {3, 4}."""
    parent = ParentGraph.from_edges(7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)])
    M = build_multiplication(parent, (1,) * 7)
    D = Orientation.from_arcs(M, _arcs("4.1>3.1, 3.1>2.1, 2.1>1.1, 4.1>5.1, 5.1>6.1, 7.1>4.1"))
    D2 = Orientation.from_arcs(M, _arcs("3.1>4.1, 3.1>2.1, 2.1>1.1, 4.1>5.1, 5.1>6.1, 7.1>4.1"))
    return Instance(M, D, D2)


def tripartite_tt3_free() -> Instance:
    """K3(2,1,1): score lists (1,1,1,2) with matching parities, first
    orientation has no transitive triangle."""
    M = build_multiplication(ParentGraph.complete(3), (2, 1, 1))
    D = Orientation.from_arcs(M, _arcs("1.1>2.1, 1.2>2.1, 2.1>3.1, 3.1>1.1, 3.1>1.2"))
    D2 = Orientation.from_arcs(M, _arcs("2.1>1.1, 1.2>2.1, 2.1>3.1, 3.1>1.2, 1.1>3.1"))
    return Instance(M, D, D2)
