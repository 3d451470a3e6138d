"""Plain-text formats for parent graphs, orientations and scripts.

Graph::

    graph <n>
    edges <m>
    <i> <j>          (m lines, 1-based)
    mult <p1> ... <pn>

Orientation: one arc ``<i>.<a> -> <j>.<b>`` per line, one per edge.
Script: ``# family: ..``, ``# initial: ..`` and ``# final: ..`` headers, then
one step per line ``k:directed|oriented: v1 ... vk``.

Blank lines and lines starting with ``#`` are ignored except for the script
headers.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import ArcrevError, ParseError
from .graph_core import MultGraph, ParentGraph, Vertex, build_multiplication
from .orientation import DIRECTED, ORIENTED, Arc, FamilySpec, Orientation, canonical_cycle, dicycles, oriented_cycles, tt3
from .refine import Script, Step

_VERTEX = re.compile(r"^(\d+)\.(\d+)$")
_FAMILY = re.compile(r"^(CC|C)(\d+)$")


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _ints(fields, source, lineno):
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise ParseError(source, lineno, f"expected integers, got {' '.join(fields)!r}") from None


# -- graphs -----------------------------------------------------------------------


def parse_graph(text: str, source: str = "<graph>") -> MultGraph:
    lines = list(_lines(text))
    if not lines:
        raise ParseError(source, 1, "empty graph file")

    def header(idx, word):
        if idx >= len(lines):
            raise ParseError(source, lines[-1][0], f"missing '{word}' line")
        lineno, line = lines[idx]
        fields = line.split()
        if fields[0] != word or len(fields) != 2:
            raise ParseError(source, lineno, f"expected '{word} <count>'")
        return _ints(fields[1:], source, lineno)[0]

    n = header(0, "graph")
    m = header(1, "edges")
    if len(lines) != m + 3:
        raise ParseError(source, lines[-1][0], f"expected {m} edge lines followed by 'mult'")
    edges = []
    for lineno, line in lines[2:2 + m]:
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(source, lineno, "expected '<i> <j>'")
        edges.append((lineno, tuple(_ints(fields, source, lineno))))
    lineno, line = lines[-1]
    fields = line.split()
    if fields[0] != "mult" or len(fields) != n + 1:
        raise ParseError(source, lineno, f"expected 'mult' followed by {n} multiplicities")
    p = tuple(_ints(fields[1:], source, lineno))
    seen = set()
    for eline, (i, j) in edges:
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ParseError(source, eline, f"bad edge {i} {j}")
        if frozenset((i, j)) in seen:
            raise ParseError(source, eline, f"repeated edge {i} {j}")
        seen.add(frozenset((i, j)))
    try:
        parent = ParentGraph.from_edges(n, [e for _, e in edges])
        return build_multiplication(parent, p)
    except ArcrevError as e:
        raise ParseError(source, lineno, str(e)) from None


def format_graph(M: MultGraph) -> str:
    G = M.parent
    out = [f"graph {G.n}", f"edges {G.m}"]
    out += [f"{i} {j}" for i, j in G.edge_list()]
    out.append("mult " + " ".join(map(str, M.p)))
    return "\n".join(out) + "\n"


# -- orientations -----------------------------------------------------------------


def parse_vertex(token: str, M: MultGraph, source: str, lineno: int) -> Vertex:
    m = _VERTEX.match(token)
    if not m:
        raise ParseError(source, lineno, f"bad vertex {token!r}, expected <partite>.<copy>")
    v = Vertex(int(m.group(1)), int(m.group(2)))
    if not (1 <= v.partite <= M.parent.n and 1 <= v.copy <= M.p[v.partite - 1]):
        raise ParseError(source, lineno, f"vertex {v} is not in the multiplication")
    return v


def parse_orientation(text: str, M: MultGraph, source: str = "<orientation>") -> Orientation:
    bits = 0
    seen = set()
    lineno = 0
    for lineno, line in _lines(text):
        parts = line.split("->")
        if len(parts) != 2:
            raise ParseError(source, lineno, "expected '<i>.<a> -> <j>.<b>'")
        u = parse_vertex(parts[0].strip(), M, source, lineno)
        v = parse_vertex(parts[1].strip(), M, source, lineno)
        if not M.adjacent(u, v):
            raise ParseError(source, lineno, f"{u} and {v} are not adjacent")
        e = frozenset((u, v))
        if e in seen:
            raise ParseError(source, lineno, f"edge {u}-{v} oriented twice")
        seen.add(e)
        if u < v:
            bits |= 1 << M.edge_id(u, v)
    if len(seen) != M.m:
        raise ParseError(source, lineno + 1, f"{len(seen)} arcs given, the graph has {M.m} edges")
    return Orientation(M, bits)


def format_orientation(D: Orientation, comments=()) -> str:
    out = [f"# {c}" for c in comments]
    out += [f"{t} -> {h}" for t, h in D.arcs()]
    return "\n".join(out) + "\n"


# -- families and scripts -----------------------------------------------------------


def parse_family_label(label: str) -> FamilySpec:
    """Inverse of the labels produced by :mod:`arcrev.orientation`."""
    label = label.strip()
    if label == "TT3":
        return tt3()
    if label == "C":
        return dicycles()
    if label == "CC":
        return oriented_cycles()
    items = label[1:-1].split(",") if label.startswith("{") and label.endswith("}") else [label]
    kinds, lengths = set(), set()
    for item in items:
        m = _FAMILY.match(item.strip())
        if not m:
            raise ValueError(f"unknown family label {label!r}")
        kinds.add(m.group(1))
        lengths.add(int(m.group(2)))
    if len(kinds) != 1:
        raise ValueError(f"mixed family label {label!r}")
    return (dicycles if kinds == {"C"} else oriented_cycles)(lengths)


def parse_step(line: str, M: MultGraph, source: str = "<script>", lineno: int = 1) -> Step:
    head, sep, rest = line.partition(":")
    tag, sep2, body = rest.partition(":")
    tag = tag.strip()
    if not (sep and sep2) or tag not in (DIRECTED, ORIENTED):
        raise ParseError(source, lineno, "expected 'k:directed|oriented: v1 ... vk'")
    k = _ints([head.strip()], source, lineno)[0]
    seq = tuple(parse_vertex(tok, M, source, lineno) for tok in body.split())
    if len(seq) != k:
        raise ParseError(source, lineno, f"step declares {k} vertices but lists {len(seq)}")
    if k < 3 or len(set(seq)) != k:
        raise ParseError(source, lineno, "step is not a cycle")
    if tag == DIRECTED:
        # a directed step runs along its vertex order
        C = canonical_cycle(seq, [Arc(seq[t], seq[(t + 1) % k]) for t in range(k)])
    else:
        C = canonical_cycle(seq)
    return Step(C, tag)


def parse_script(text: str, M: MultGraph, source: str = "<script>") -> Script:
    headers = {}
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep and key.strip() in ("family", "initial", "final"):
                headers[key.strip()] = value.strip()
            continue
        steps.append(parse_step(line, M, source, lineno))
    return Script(steps, headers.get("family", ""), headers.get("initial", ""), headers.get("final", ""))


def format_script(s: Script) -> str:
    out = [f"# family: {s.family}", f"# initial: {s.initial}", f"# final: {s.final}"]
    out += [str(step) for step in s.steps]
    return "\n".join(out) + "\n"


# -- files ----------------------------------------------------------------------------


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except FileNotFoundError:
        raise ParseError(str(path), 0, "file not found") from None
    except OSError as e:
        raise ParseError(str(path), 0, e.strerror or str(e)) from None


def read_graph(path) -> MultGraph:
    return parse_graph(_read(path), str(path))


def read_orientation(path, M: MultGraph) -> Orientation:
    return parse_orientation(_read(path), M, str(path))


def read_script(path, M: MultGraph) -> Script:
    return parse_script(_read(path), M, str(path))
