"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 not equivalent, 3 unknown.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import oracle
from .difference import build_ddg
from .errors import ArcrevError
from .formats import (
    format_graph,
    format_orientation,
    format_script,
    parse_family_label,
    read_graph,
    read_orientation,
    read_script,
)
from .graph_core import bridges, classify, cycle_length_sets, find_score_automorphism
from .planner import FAMILY_NAMES, PlanError, PlanRequest, plan, resolve_family, verify_script
from .refine import fingerprint, replay

EXIT_OK, EXIT_INPUT, EXIT_NOT_EQUIVALENT, EXIT_UNKNOWN = 0, 1, 2, 3


def _mode(text):
    return text.replace("-", "_")


def _fmt_map(f):
    return " ".join(f"{u}>{v}" for u, v in sorted(f.items()) if u != v) or "identity"


def cmd_mult(args, out):
    M = read_graph(args.graph)
    cls = classify(M.parent)
    out.write(f"vertices {M.N}\n")
    out.write(f"edges {M.m}\n")
    kind = "tree" if cls.is_tree else "chordal" if cls.is_chordal else "general"
    out.write(f"parent {kind}{' complete' if M.parent.is_complete() else ''}\n")
    for u, v in M.edges:
        out.write(f"{u} {v}\n")
    return EXIT_OK


def cmd_scores(args, out):
    M = read_graph(args.graph)
    D = read_orientation(args.orient, M)
    if args.per_vertex:
        for v, s in sorted(D.out_degrees().items()):
            out.write(f"{v} {s}\n")
    else:
        out.write(" ".join(map(str, D.scores())) + "\n")
    return EXIT_OK


def cmd_chordless(args, out):
    M = read_graph(args.graph)
    sets = cycle_length_sets(M.parent)
    out.write("lengths " + " ".join(map(str, sorted(sets.all_lengths))) + "\n")
    out.write("chordless " + " ".join(map(str, sorted(sets.chordless_lengths))) + "\n")
    for c in sets.chordless_cycles:
        out.write(" ".join(map(str, c)) + "\n")
    br = sorted(bridges(M.parent.vertices, M.parent.adj))
    out.write("bridges " + " ".join(f"{i}-{j}" for i, j in br) + "\n")
    return EXIT_OK


def cmd_ddg(args, out):
    M = read_graph(args.graph)
    D = read_orientation(getattr(args, "from"), M)
    D2 = read_orientation(args.to, M)
    mode = _mode(args.mode)
    f = None
    if mode != "identity":
        f = find_score_automorphism(M, D, D2, "exact" if mode == "same_score" else "parity")
    note = _fmt_map(f) if f is not None else "identity"
    if f is None:
        f = {v: v for v in M.vertices}
        if mode != "identity":
            note += " (no automorphism satisfies the score condition)"
    dd = build_ddg(f, D, D2)
    out.write(f"# automorphism: {note}\n")
    out.write(f"# balanced: {dd.balance()}\n")
    for line in dd.as_orientation_lines():
        out.write(line + "\n")
    return EXIT_OK


def cmd_plan(args, out):
    M = read_graph(args.graph)
    D = read_orientation(getattr(args, "from"), M)
    D2 = read_orientation(args.to, M)
    req = PlanRequest(D, D2, _mode(args.mode), args.family, args.strategy)
    rep = plan(req)
    out.write(f"family: {rep.family.label}\n")
    out.write(f"outcome: {rep.outcome}\n")
    if rep.reason:
        out.write(f"reason: {rep.reason}\n")
    if rep.automorphism is not None:
        out.write(f"automorphism: {_fmt_map(rep.automorphism)}\n")
    if rep.outcome == "not_equivalent":
        return EXIT_NOT_EQUIVALENT
    if rep.outcome == "unknown":
        return EXIT_UNKNOWN
    out.write(f"steps: {rep.step_count}\n")
    text = format_script(rep.script)
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_verify(args, out):
    M = read_graph(args.graph)
    D = read_orientation(getattr(args, "from"), M)
    s = read_script(args.script, M)
    target = read_orientation(args.to, M)
    family = parse_family_label(args.family or s.family) if (args.family or s.family) else None
    final = replay_or_none(D, s)
    note = ""
    if final is not None and final != target and oracle.find_isomorphism(final, target) is not None:
        # a plan reaches an automorphic relabelling of the requested orientation
        target = final
        note = " (final orientation isomorphic to the target)"
    verdict = verify_script(D, s, target, family)
    if verdict and s.final and s.final != fingerprint(target):
        out.write("violation at final: header-mismatch: final fingerprint differs from the script header\n")
        return EXIT_INPUT
    out.write(f"{verdict}{note}\n")
    return EXIT_OK if verdict else EXIT_INPUT


def replay_or_none(D, s):
    try:
        return replay(D, s)
    except ArcrevError:
        return None


def cmd_classes(args, out):
    M = read_graph(args.graph)
    if M.m > oracle.ENUM_BOUND:
        raise PlanError(f"{M.m} edges exceed the enumeration bound {oracle.ENUM_BOUND}")
    family = resolve_family(M, _mode(args.mode), args.family)
    part = oracle.f_classes(M, family)
    out.write(f"# family: {family.label}\n")
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for cid, forms in enumerate(part.classes):
        rep = part.representative(cid)
        scores = ",".join(map(str, rep.scores()))
        where = "-"
        if out_dir:
            path = out_dir / f"class{cid}.or"
            path.write_text(format_orientation(rep, [f"class {cid}, {len(forms)} isomorphism types"]))
            where = str(path)
        out.write(f"{cid} {len(forms)} {scores} {where}\n")
    return EXIT_OK


def cmd_example(args, out):
    cert = oracle.counterexample(args.id, args.n)
    d = Path(args.out_dir)
    d.mkdir(parents=True, exist_ok=True)
    stem = "ex" + args.id.replace(".", "_")
    files = {
        d / f"{stem}.g": format_graph(cert.mult),
        d / f"{stem}_d.or": format_orientation(cert.D),
        d / f"{stem}_dp.or": format_orientation(cert.D2),
    }
    for path, text in files.items():
        path.write_text(text)
        out.write(f"wrote {path}\n")
    for name in cert.checks:
        out.write(f"check ok: {name}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arcrev", description="Cycle-reversal equivalence of orientations "
                                 "of vertex-multiplied graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mult", help="summarize a multiplication and list its edges")
    p.add_argument("--graph", required=True)
    p.set_defaults(run=cmd_mult)

    p = sub.add_parser("scores", help="score list of an orientation")
    p.add_argument("--graph", required=True)
    p.add_argument("--orient", required=True)
    p.add_argument("--per-vertex", action="store_true")
    p.set_defaults(run=cmd_scores)

    p = sub.add_parser("chordless", help="cycle lengths, chordless cycles and bridges of the parent")
    p.add_argument("--graph", required=True)
    p.set_defaults(run=cmd_chordless)

    p = sub.add_parser("ddg", help="difference digraph between two orientations")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--mode", choices=["same-score", "parity", "identity"], default="same-score")
    p.set_defaults(run=cmd_ddg)

    p = sub.add_parser("plan", help="find a reversal script between two orientations")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--mode", choices=["same-score", "parity"], default="same-score")
    p.add_argument("--family", choices=FAMILY_NAMES, default="auto")
    p.add_argument("--strategy", choices=["ddg", "subdivision", "merge"], default="ddg")
    p.add_argument("--out")
    p.set_defaults(run=cmd_plan)

    p = sub.add_parser("verify", help="replay and check a script")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", required=True)
    p.add_argument("--script", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--family", help="family label; defaults to the script header")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("classes", help="reversal classes over all orientations (small graphs)")
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", choices=["same-score", "parity"], default="same-score")
    p.add_argument("--family", choices=FAMILY_NAMES, default="auto")
    p.add_argument("--out-dir")
    p.set_defaults(run=cmd_classes)

    p = sub.add_parser("example", help="write a named counterexample pair")
    p.add_argument("id", choices=oracle.EXAMPLES)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--n", type=int, default=3, help="number of partite sets for 3.6")
    p.set_defaults(run=cmd_example)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        return args.run(args, out)
    except (ArcrevError, ValueError, OSError) as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
