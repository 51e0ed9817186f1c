"""Command-line interface.

Every subcommand prints a JSON report (sorted keys) on stdout.  Exit status:
0 when the property holds or the artifact was produced, 1 when it fails,
2 on unreadable input, usage errors or exceeded size caps.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from . import io
from .classes import check_class
from .configs import KINDS, find_configurations
from .covers import (Cover, IFPartition, find_sfdt, parse_cover, validate_cover,
                     verify_if_partition, if_partition)
from .degeneracy import (DEFAULT_SIZE_CAP, SizeCapExceeded, constant_fmap, degeneracy,
                         f_core, format_sequence, is_weakly_f_degenerate, parse_sequence,
                         verify_op_sequence, weak_degeneracy)
from .discharging import audit
from .graph import Graph, GraphError, PlaneGraph
from .reducer import ReductionError, reduce_to_empty
from .structure import (TheoremContradiction, face_profile, is_special_8_face, lemma1_audit,
                        structure_theorem_check)


class UsageError(Exception):
    pass


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def _load(args) -> Graph | PlaneGraph:
    return io.load_graph(args.graph, args.format)


def _plane(args) -> PlaneGraph:
    obj = _load(args)
    if not isinstance(obj, PlaneGraph):
        raise UsageError(f"{args.command} needs an embedded graph (rotation format)")
    return obj


def _graph(args) -> Graph:
    obj = _load(args)
    return obj.graph if isinstance(obj, PlaneGraph) else obj


def _fmap_for(g: Graph, path: str) -> dict[int, int]:
    f = io.parse_fmap(Path(path).read_text())
    missing = [v for v in g.vertices if v not in f]
    if missing:
        raise GraphError(f"f is undefined at vertex {missing[0]}")
    return f


def _ops(seq) -> list[str]:
    return [str(op) for op in seq]


# ---------------------------------------------------------------------------
# subcommands

def cmd_check_class(args) -> int:
    report = check_class(_plane(args))
    _emit(report.to_json())
    return 0 if report.in_class else 1


def cmd_faces(args) -> int:
    pg = _plane(args)
    faces = []
    for fid, face in enumerate(pg.faces):
        entry = {"id": fid, "is_cycle": face.is_cycle(), "size": face.length,
                 "walk": list(face.walk)}
        if face.length >= 7:
            prof = face_profile(pg, fid)
            entry["richness"] = [r.value for r in prof.richness]
            entry["s0"] = prof.s0
            entry["t3_prime"] = prof.t3_prime
            entry["controlling_paths"] = [
                {"controlled": list(r.controlled), "length": r.length, "start": r.start}
                for r in prof.runs]
        if face.length == 8:
            kind = is_special_8_face(pg, fid)
            entry["special"] = None if kind is None else kind.value
        faces.append(entry)
    census = Counter(face.length for face in pg.faces)
    _emit({"census": {str(k): census[k] for k in sorted(census)}, "faces": faces})
    return 0


def cmd_wd(args) -> int:
    g = _graph(args)
    if args.k is not None:
        if args.size_cap is not None and len(g) > args.size_cap:
            raise SizeCapExceeded(f"{len(g)} vertices exceeds the exact-search cap of "
                                  f"{args.size_cap}")
        ok, seq = is_weakly_f_degenerate(g, constant_fmap(g, args.k))
        report = {"k": args.k, "weakly_degenerate": ok, "witness": _ops(seq) if ok else None}
        if ok and args.cert:
            Path(args.cert).write_text(format_sequence(seq))
        _emit(report)
        return 0 if ok else 1
    res = weak_degeneracy(g, size_cap=args.size_cap)
    if args.cert:
        Path(args.cert).write_text(format_sequence(res.witness))
    _emit({"degeneracy": degeneracy(g).value, "value": res.value, "witness": _ops(res.witness)})
    return 0


def cmd_degeneracy(args) -> int:
    res = degeneracy(_graph(args))
    _emit({"order": list(res.witness), "value": res.value})
    return 0


def cmd_strict_check(args) -> int:
    g = _graph(args)
    core = f_core(g, _fmap_for(g, args.f))
    _emit({"core": sorted(core), "strictly_f_degenerate": not core})
    return 0 if not core else 1


def cmd_sfdt(args) -> int:
    g = _graph(args)
    cover: Cover = parse_cover(Path(args.cover).read_text(), g)
    problems = validate_cover(g, cover)
    if problems:
        raise GraphError("invalid cover: " + "; ".join(problems))
    f = io.parse_cover_fmap(Path(args.f).read_text())
    missing = [cv for cv in cover.vertices() if cv not in f]
    if missing:
        raise GraphError(f"f is undefined at cover vertex {missing[0]}")
    t = find_sfdt(cover, f)
    if t is None:
        _emit({"sfdt": "none"})
        return 1
    if args.cert:
        Path(args.cert).write_text("".join(f"{v} {i}\n" for v, i in sorted(t.items())))
    _emit({"sfdt": {str(v): i for v, i in sorted(t.items())}})
    return 0


def cmd_if_partition(args) -> int:
    g = _graph(args)
    p = if_partition(g)
    if p is None:
        _emit({"partition": "none"})
        return 1
    if args.cert:
        Path(args.cert).write_text(io.format_partition(p.independent, p.forest))
    _emit({"partition": {"F": sorted(p.forest), "I": sorted(p.independent)}})
    return 0


def cmd_verify_partition(args) -> int:
    g = _graph(args)
    ind, forest = io.parse_partition(Path(args.partition).read_text())
    ok = verify_if_partition(g, IFPartition(frozenset(ind), frozenset(forest)))
    _emit({"valid": ok})
    return 0 if ok else 1


def cmd_find_config(args) -> int:
    g = _graph(args)
    kinds = tuple(args.kind) if args.kind else KINDS
    matches = find_configurations(g, kinds)
    _emit({"count": len(matches), "matches": [m.to_json() for m in matches]})
    return 0 if matches else 1


def cmd_structure(args) -> int:
    pg = _plane(args)
    if not check_class(pg).in_class:
        _emit({"error": "graph is not in the class"})
        return 1
    _emit(structure_theorem_check(pg).to_json())
    return 0


def cmd_audit_lemma1(args) -> int:
    violations = lemma1_audit(_plane(args))
    _emit({"violations": [v.to_json() for v in violations]})
    return 0 if not violations else 1


def cmd_discharge(args) -> int:
    report = audit(_plane(args))
    _emit(report.to_json(ledger=args.ledger))
    return 0 if report.conserved and report.path_bounds_ok else 1


def cmd_reduce(args) -> int:
    pg = _plane(args)
    if not check_class(pg).in_class:
        _emit({"error": "graph is not in the class"})
        return 1
    trace = reduce_to_empty(pg, prefer_configurations=args.prefer_configurations)
    if args.out:
        Path(args.out).write_text(format_sequence(trace.steps))
        Path(args.out + ".provenance").write_text(trace.provenance_text())
    counts = Counter(trace.provenance)
    _emit({"provenance": {k: counts[k] for k in sorted(counts)},
           "steps": _ops(trace.steps)})
    return 0


def cmd_verify_seq(args) -> int:
    g = _graph(args)
    seq = parse_sequence(Path(args.sequence).read_text())
    f = _fmap_for(g, args.f) if args.f else constant_fmap(g, args.k)
    report = verify_op_sequence(g, f, seq)
    _emit({"failed_step": report.failed_step, "ok": report.ok, "reason": report.reason})
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakdeg", description="Weak degeneracy tools for plane graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", help="input graph file")
        p.add_argument("--format", choices=io.FORMATS,
                       help="input format (default: guessed from the extension)")
        p.set_defaults(func=func)
        return p

    add("check-class", cmd_check_class, "class membership of an embedded graph")
    add("faces", cmd_faces, "face census with controlling paths and special faces")
    p = add("wd", cmd_wd, "weak degeneracy, or a weak k-degeneracy decision with --k")
    p.add_argument("--k", type=int)
    p.add_argument("--cert", help="write the witness sequence here")
    p.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP)
    add("degeneracy", cmd_degeneracy, "degeneracy and a peeling order")
    p = add("strict-check", cmd_strict_check, "strict f-degeneracy via the f-core")
    p.add_argument("--f", required=True, help="f-map file ('v value' lines)")
    p = add("sfdt", cmd_sfdt, "strictly f-degenerate transversal of a cover")
    p.add_argument("--cover", required=True)
    p.add_argument("--f", required=True, help="cover f-map file ('v i value' lines)")
    p.add_argument("--cert")
    p = add("if-partition", cmd_if_partition, "independent set plus forest partition")
    p.add_argument("--cert")
    p = add("verify-partition", cmd_verify_partition, "check an (I,F)-partition file")
    p.add_argument("partition")
    p = add("find-config", cmd_find_config, "list configuration matches")
    p.add_argument("--kind", action="append", choices=KINDS)
    add("structure", cmd_structure, "2^- vertex or configuration for a class member")
    add("audit-lemma1", cmd_audit_lemma1, "structural audit of faces")
    p = add("discharge", cmd_discharge, "apply the discharging rules and audit them")
    p.add_argument("--ledger", action="store_true")
    p = add("reduce", cmd_reduce, "replay-verified weak 2-degeneracy sequence")
    p.add_argument("--out", help="write the sequence here (provenance to OUT.provenance)")
    p.add_argument("--prefer-configurations", action="store_true")
    p = add("verify-seq", cmd_verify_seq, "replay an operation sequence")
    p.add_argument("sequence")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--f", help="f-map file instead of the constant --k")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, SizeCapExceeded, UsageError, OSError, ValueError) as exc:
        print(f"weakdeg {args.command}: {exc}", file=sys.stderr)
        return 2
    except (TheoremContradiction, ReductionError) as exc:
        print(f"weakdeg {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
