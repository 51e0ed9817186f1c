"""Face-local structure: controlling edges, richness, special 8-faces, the
structural audit, and the two-outcome structure check."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .classes import check_class, cycles_up_to
from .graph import GraphError, PlaneGraph


class Richness(str, Enum):
    RICH = "rich"
    SEMI_RICH = "semi-rich"
    POOR = "poor"


def controls(pg: PlaneGraph, u: int, v: int) -> int | None:
    """The 4^- face controlled by edge uv: uv must separate a 4^- face from
    a 7^+ face."""
    f1, f2 = pg.edge_faces(u, v)
    d1, d2 = pg.face_size(f1), pg.face_size(f2)
    if f1 == f2:
        return None
    if d1 <= 4 and d2 >= 7:
        return f1
    if d2 <= 4 and d1 >= 7:
        return f2
    return None


def adjacent_faces(pg: PlaneGraph, fid: int) -> Counter:
    """Other faces sharing an edge with ``fid``, with the number of shared
    edges."""
    out: Counter = Counter()
    for a, b in pg.faces[fid].darts():
        other = pg.dart_face[(b, a)]
        if other != fid:
            out[other] += 1
    return out


@dataclass(frozen=True)
class ControlRun:
    """A maximal 4^- controlling walk on a face: ``start`` indexes the first
    boundary edge, ``length`` edges follow it."""

    start: int
    length: int
    controlled: tuple[int, ...]
    vertices: tuple[int, ...]
    closed: bool = False

    @property
    def only_4_faces(self) -> bool:
        return bool(self.controlled) and all(c is not None for c in self.controlled)


@dataclass(frozen=True)
class FaceProfile:
    face: int
    size: int
    controlled: tuple[int | None, ...]   # per boundary edge i = walk[i] -> walk[i+1]
    runs: tuple[ControlRun, ...]
    richness: tuple[Richness, ...]        # per boundary occurrence
    s0: int
    t3_prime: int

    def controlled_sizes(self, pg: PlaneGraph, run: ControlRun) -> list[int]:
        return [pg.face_size(c) for c in run.controlled]

    def is_4_controlling(self, pg: PlaneGraph, run: ControlRun) -> bool:
        return all(pg.face_size(c) == 4 for c in run.controlled)


def face_profile(pg: PlaneGraph, fid: int) -> FaceProfile:
    face = pg.faces[fid]
    n = face.length
    if n < 7:
        raise GraphError(f"face {fid} has size {n}; profiles need a 7^+ face")
    walk = face.walk
    controlled: list[int | None] = []
    for i in range(n):
        a, b = walk[i], walk[(i + 1) % n]
        other = pg.dart_face[(b, a)]
        controlled.append(other if other != fid and pg.face_size(other) <= 4 else None)
    richness = []
    for i in range(n):
        hits = (controlled[i - 1] is not None) + (controlled[i] is not None)
        richness.append((Richness.RICH, Richness.SEMI_RICH, Richness.POOR)[hits])
    runs = []
    if all(c is not None for c in controlled):
        runs.append(ControlRun(0, n, tuple(controlled), tuple(walk), closed=True))
    else:
        # start scanning right after an uncontrolled edge
        first = next(i for i in range(n) if controlled[i] is None)
        i = 0
        while i < n:
            k = (first + 1 + i) % n
            if controlled[k] is None:
                i += 1
                continue
            length = 0
            while controlled[(k + length) % n] is not None:
                length += 1
            verts = tuple(walk[(k + j) % n] for j in range(length + 1))
            ctrl = tuple(controlled[(k + j) % n] for j in range(length))
            runs.append(ControlRun(k, length, ctrl, verts))
            i += length
    runs.sort(key=lambda r: r.start)
    t3 = sum(1 for other in adjacent_faces(pg, fid) if pg.face_size(other) == 3)
    s0 = sum(1 for r in richness if r is Richness.RICH)
    return FaceProfile(fid, n, tuple(controlled), tuple(runs), tuple(richness), s0, t3)


def is_light(pg: PlaneGraph, fid: int) -> bool:
    return all(pg.graph.degree(v) == 3 for v in pg.faces[fid].walk)


class SpecialType(str, Enum):
    TYPE_I = "I"
    TYPE_II = "II"


def is_special_8_face(pg: PlaneGraph, fid: int) -> SpecialType | None:
    """Special 8-face test; type I when the non-light small face is a
    4-face, type II when it is a 3-face."""
    face = pg.faces[fid]
    if face.length != 8:
        raise GraphError(f"face {fid} is not an 8-face")
    if not face.is_cycle():
        return None
    g = pg.graph
    degs = [g.degree(v) for v in face.walk]
    if sorted(degs) != [3] * 7 + [4]:
        return None
    prof = face_profile(pg, fid)
    four = degs.index(4)
    if prof.richness[four] is not Richness.SEMI_RICH:
        return None
    small = [h for h in adjacent_faces(pg, fid) if pg.face_size(h) <= 4]
    sizes = sorted(pg.face_size(h) for h in small)
    if sizes != [3, 3, 4, 4]:
        return None
    heavy = [h for h in small if not is_light(pg, h)]
    if len(heavy) != 1:
        return None
    h = heavy[0]
    if sum(1 for v in set(pg.faces[h].walk) if g.degree(v) >= 4) < 2:
        return None
    return SpecialType.TYPE_I if pg.face_size(h) == 4 else SpecialType.TYPE_II


# ---------------------------------------------------------------------------
# structural audit

@dataclass(frozen=True)
class Violation:
    item: str
    detail: str
    witness: tuple

    def to_json(self) -> dict:
        return {"detail": self.detail, "item": self.item, "witness": list(self.witness)}


def _seven_face_ok(pg: PlaneGraph, g_id: int, h_id: int) -> bool:
    """7-face bounded by a triangle and a 4-cycle through a common vertex,
    whose 4-face neighbour shares exactly two consecutive 4-cycle edges."""
    walk = pg.faces[g_id].walk
    counts = Counter(walk)
    reps = [v for v, c in counts.items() if c == 2]
    if len(reps) != 1 or len(counts) != 6:
        return False
    x = reps[0]
    i = walk.index(x)
    rot = walk[i:] + walk[:i]
    j = rot.index(x, 1)
    parts = [rot[:j], rot[j:]]
    if sorted(len(p) for p in parts) != [3, 4]:
        return False
    quad = next(p for p in parts if len(p) == 4)
    quad_edges = {frozenset((quad[k], quad[(k + 1) % 4])) for k in range(4)}
    shared = [frozenset(d) for d in pg.faces[h_id].darts()
              if pg.dart_face[(d[1], d[0])] == g_id]
    if len(shared) != 2 or not all(e in quad_edges for e in shared):
        return False
    return len(shared[0] & shared[1]) == 1


def _eight_face_ok(pg: PlaneGraph, fid: int) -> bool:
    """A non-cycle 8-face must be two 4-cycles at a cut vertex, with no
    adjacent 3-face and at most two adjacent 4-faces."""
    walk = pg.faces[fid].walk
    counts = Counter(walk)
    reps = [v for v, c in counts.items() if c == 2]
    if len(reps) != 1 or len(counts) != 7:
        return False
    x = reps[0]
    i = walk.index(x)
    rot = walk[i:] + walk[:i]
    j = rot.index(x, 1)
    for part in (rot[:j], rot[j:]):
        if len(part) != 4 or not all(pg.graph.has_edge(part[k], part[(k + 1) % 4]) for k in range(4)):
            return False
    adj = adjacent_faces(pg, fid)
    if any(pg.face_size(h) == 3 for h in adj):
        return False
    return sum(1 for h in adj if pg.face_size(h) == 4) <= 2


def lemma1_audit(pg: PlaneGraph) -> list[Violation]:
    """Check the six structural facts and the opposite-special-faces fact.

    These facts are stated for class members with minimum degree at least
    three; graphs with 2^- vertices can break items 4 and 5 (a triangle or
    4-cycle bounding faces on both sides).
    """
    g = pg.graph
    out: list[Violation] = []
    short = cycles_up_to(g, 4)
    tri = [c for c in short if len(c) == 3]
    for t in tri:
        t_edges = {frozenset((t[k], t[(k + 1) % 3])) for k in range(3)}
        for c in short:
            if c == t:
                continue
            c_edges = {frozenset((c[k], c[(k + 1) % len(c)])) for k in range(len(c))}
            if t_edges & c_edges and (len(c) == 4 or c > t):
                out.append(Violation("1", "3-cycle shares an edge with a 4^- cycle", (t, c)))
    for fid, face in enumerate(pg.faces):
        if face.length == 6:
            out.append(Violation("2", "6-face present", (fid,)))
    for fid, face in enumerate(pg.faces):
        d = face.length
        if d not in (3, 4):
            continue
        for other in sorted(adjacent_faces(pg, fid)):
            od = pg.face_size(other)
            if d == 3 and od <= 7:
                out.append(Violation("4", "3-face adjacent to a 7^- face", (fid, other)))
            if d == 4 and od <= 6:
                if od == 4 and other < fid:
                    continue
                out.append(Violation("5", "4-face adjacent to a 6^- face", (fid, other)))
            if d == 4 and od == 7 and not _seven_face_ok(pg, other, fid):
                out.append(Violation("3", "7-face adjacent to a 4^- face is not the "
                                          "triangle-plus-4-cycle shape", (other, fid)))
    for fid, face in enumerate(pg.faces):
        if face.length == 8 and not face.is_cycle():
            small_at_cut = any(
                len({h for h in pg.faces_at(v) if pg.face_size(h) <= 4}) >= 2
                for v, c in Counter(face.walk).items() if c > 1)
            if small_at_cut and not _eight_face_ok(pg, fid):
                out.append(Violation("6", "non-cycle 8-face is not two 4-cycles at a cut "
                                          "vertex with at most two 4-faces", (fid,)))
    specials = {fid for fid, face in enumerate(pg.faces)
                if face.length == 8 and is_special_8_face(pg, fid)}
    for v in g.vertices:
        if g.degree(v) != 4:
            continue
        around = pg.faces_at(v)
        for k in range(2):
            if around[k] in specials and around[k + 2] in specials:
                # opposite special faces force the paired-special configuration
                if not _special_pair_at(pg, v):
                    out.append(Violation("opposite-special", "4-vertex between two opposite special "
                                                   "8-faces", (v, around[k], around[k + 2])))
    return out


def _special_pair_at(pg: PlaneGraph, v: int) -> bool:
    from .configs import find_configurations

    return any(m.assignment["v"] == v
               for m in find_configurations(pg.graph, kinds=("C_SPECIAL",)))


# ---------------------------------------------------------------------------
# two-outcome check

class TheoremContradiction(RuntimeError):
    """Neither a 2^- vertex nor a configuration was found in a class member."""


@dataclass(frozen=True)
class StructureVerdict:
    two_minus_vertex: int | None = None
    configuration: object | None = None   # a ConfigMatch

    def to_json(self) -> dict:
        if self.two_minus_vertex is not None:
            return {"outcome": "two-minus-vertex", "vertex": self.two_minus_vertex}
        return {"outcome": "configuration", "match": self.configuration.to_json()}


def structure_theorem_check(pg: PlaneGraph) -> StructureVerdict:
    from .configs import find_configurations

    report = check_class(pg)
    if not report.in_class:
        raise GraphError("graph is not in the class (see check-class)")
    g = pg.graph
    low = [v for v in g.vertices if g.degree(v) <= 2]
    if low:
        return StructureVerdict(two_minus_vertex=low[0])
    matches = find_configurations(g)
    if not matches:
        raise TheoremContradiction(
            "no vertex of degree <= 2 and no configuration: bug or counterexample")
    return StructureVerdict(configuration=matches[0])
