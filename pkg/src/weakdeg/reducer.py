"""Constructive weak 2-degeneracy for the class: peel 2^- vertices, and when
none exist remove a configuration with its fixed operation ordering."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from .classes import check_class, graph_in_class
from .configs import ConfigMatch, find_configurations
from .degeneracy import (Delete, DeleteSave, Op, constant_fmap, is_weakly_f_degenerate,
                         verify_op_sequence)
from .graph import Graph, GraphError, PlaneGraph
from .structure import TheoremContradiction

TWO_MINUS = "TwoMinusDelete"
FALLBACK = "FallbackSearch"


def config_provenance(kind: str) -> str:
    return f"ConfigOrdering({kind})"


class MissingLabel(KeyError):
    pass


def _ring_order(a: Mapping[str, int]) -> list[Op]:
    order = []
    for i in list(range(2, 9)) + [1]:
        order.append(f"x{i}")
        order += [lab for lab in (f"u{i}", f"v{i}") if lab in a]
    if "v1" not in a:
        raise MissingLabel("v1")
    ops: list[Op] = [DeleteSave(a["x2"], a["v1"])]
    ops += [Delete(a[lab]) for lab in order[1:]]
    return ops


def _special_order(a: Mapping[str, int]) -> list[Op]:
    ops: list[Op] = [DeleteSave(a["v6"], a["w1"]), Delete(a["v7"]),
                     DeleteSave(a["u6"], a["w2"]), Delete(a["u7"]), Delete(a["v"])]
    labels = [f"u{i}" for i in range(1, 6)] + ["w2"] + [f"v{i}" for i in range(1, 6)] + ["w1"]
    return ops + [Delete(a[lab]) for lab in labels]


def _f3f4_order(a: Mapping[str, int]) -> list[Op]:
    labels = ["v1", "v", "u6", "u5", "u4", "u3", "w5", "w4", "u2", "u1", "u",
              "v6", "v5", "w3", "w2", "v4", "v3", "w1"]
    ops: list[Op] = [DeleteSave(a["v2"], a["w1"])]
    return ops + [Delete(a[lab]) for lab in labels if lab in a or lab not in ("w4", "w5")]


def config_finish_sequence(kind: str, assignment: Mapping[str, int]) -> list[Op]:
    """The fixed ordering that empties a configuration from its residual
    values; the first step is the ordering's DeleteSave."""
    try:
        if kind in ("CB", "CC", "CD", "CE", "CF", "CG"):
            return _ring_order(assignment)
        if kind == "C_SPECIAL":
            return _special_order(assignment)
        if kind in ("C_F3F4A", "C_F3F4B"):
            return _f3f4_order(assignment)
    except KeyError as exc:
        raise MissingLabel(f"assignment lacks label {exc.args[0]}") from None
    raise ValueError(f"no fixed ordering for configuration kind {kind!r}")


def residual_fmap(g: Graph, kept) -> dict[int, int]:
    """Values on ``kept`` after every other vertex was deleted from (g, 2)."""
    kept = set(kept)
    if not kept <= set(g.vertices):
        raise GraphError("kept vertices must belong to the graph")
    return {v: 2 - sum(1 for w in g.neighbors(v) if w not in kept) for v in sorted(kept)}


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[Op, ...]
    provenance: tuple[str, ...]

    def provenance_text(self) -> str:
        return "".join(f"{op}\t{src}\n" for op, src in zip(self.steps, self.provenance))


class ReductionError(RuntimeError):
    pass


def _finish(sub: Graph, f: dict[int, int], match: ConfigMatch) -> tuple[list[Op], str]:
    if match.kind != "CA":
        ops = config_finish_sequence(match.kind, match.assignment)
        if verify_op_sequence(sub, f, ops):
            return ops, config_provenance(match.kind)
    ok, ops = is_weakly_f_degenerate(sub, f)
    if not ok:
        raise ReductionError(f"configuration {match.kind} residual is not weakly "
                             "f-degenerate: bug or counterexample")
    return ops, FALLBACK


def reduce_to_empty(pg: PlaneGraph | Graph, *, prefer_configurations: bool = False,
                    check: bool = True) -> ReductionTrace:
    """A replay-verified sequence emptying the graph from f = 2.

    Each round removes either a 2^- vertex or a configuration S: the
    sequence for G - S is built first and the ordering on S is appended, so
    pieces are emitted in reverse discovery order.  With
    ``prefer_configurations`` a configuration is removed whenever one is
    present, even if a 2^- vertex exists.
    """
    if isinstance(pg, PlaneGraph):
        g = pg.graph
        if check and not check_class(pg).in_class:
            raise GraphError("graph is not in the class")
    else:
        g = pg
        if check and not graph_in_class(g):
            raise GraphError("graph is not in the class")
    pieces: list[tuple[list[Op], str]] = []
    cur = g
    while len(cur):
        low = next((v for v in cur.vertices if cur.degree(v) <= 2), None)
        match = None
        if low is None or prefer_configurations:
            matches = find_configurations(cur)
            # kinds with a fixed ordering first, CA (search only) last
            match = next((m for m in matches if m.kind != "CA"), matches[0] if matches else None)
        if match is not None:
            s = match.vertices
            f = residual_fmap(cur, s)
            ops, src = _finish(cur.subgraph(s), f, match)
            pieces.append((ops, src))
            cur = cur.remove(s)
        elif low is not None:
            pieces.append(([Delete(low)], TWO_MINUS))
            cur = cur.remove([low])
        else:
            raise TheoremContradiction(
                "no vertex of degree <= 2 and no configuration: bug or counterexample")
    steps: list[Op] = []
    prov: list[str] = []
    for ops, src in reversed(pieces):
        steps += ops
        prov += [src] * len(ops)
    report = verify_op_sequence(g, constant_fmap(g, 2), steps)
    if not report:
        raise ReductionError(f"assembled trace failed replay: {report.reason}")
    return ReductionTrace(tuple(steps), tuple(prov))
