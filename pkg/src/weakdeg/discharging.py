"""Exact discharging: initial charges, the five redistribution rules with a
transfer ledger, and an audit of conservation and path-wise sending bounds.

Elements are written ``v<id>`` for vertices and ``f<id>`` for faces.  All
amounts are Fractions whose denominators divide 12.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import GraphError, PlaneGraph
from .structure import Richness, face_profile, is_special_8_face

ZERO = Fraction(0)
HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)
TOTAL = Fraction(-12)


def _v(x: int) -> str:
    return f"v{x}"


def _f(x: int) -> str:
    return f"f{x}"


@dataclass(frozen=True)
class Transfer:
    source: str
    target: str
    amount: Fraction
    rule: str
    via: tuple[int, int] | None = None   # shared edge, for face-to-face transfers

    def to_json(self) -> dict:
        out = {"amount": str(self.amount), "rule": self.rule,
               "source": self.source, "target": self.target}
        if self.via is not None:
            out["via"] = list(self.via)
        return out


@dataclass(frozen=True)
class Anomaly:
    rule: str
    detail: str

    def to_json(self) -> dict:
        return {"detail": self.detail, "rule": self.rule}


@dataclass
class ChargeState:
    vertex_charge: dict[int, Fraction]
    face_charge: dict[int, Fraction]
    transfers: list[Transfer] = field(default_factory=list)
    anomalies: list[Anomaly] = field(default_factory=list)

    def total(self) -> Fraction:
        return sum(self.vertex_charge.values(), ZERO) + sum(self.face_charge.values(), ZERO)

    def charge(self, element: str) -> Fraction:
        table = self.vertex_charge if element[0] == "v" else self.face_charge
        return table[int(element[1:])]

    def negatives(self) -> list[str]:
        return ([_v(v) for v, c in sorted(self.vertex_charge.items()) if c < 0]
                + [_f(f) for f, c in sorted(self.face_charge.items()) if c < 0])


def _require_connected(pg: PlaneGraph) -> None:
    if len(pg.graph) == 0 or not pg.graph.is_connected():
        raise GraphError("discharging needs a connected, nonempty plane graph")


def initial_charges(pg: PlaneGraph) -> ChargeState:
    _require_connected(pg)
    g = pg.graph
    return ChargeState({v: Fraction(2 * g.degree(v) - 6) for v in g.vertices},
                       {i: Fraction(face.length - 6) for i, face in enumerate(pg.faces)})


def _small_face_kind(pg: PlaneGraph, fid: int) -> str | None:
    """Receiving row of a 3- or 4-face by its vertex degrees, or ``None``."""
    degs = [pg.graph.degree(v) for v in pg.faces[fid].walk]
    if min(degs, default=0) < 3:
        return None
    big = sum(1 for d in degs if d >= 4)
    return {(3, 0): "333", (3, 1): "334", (3, 2): "344",
            (4, 0): "3333", (4, 1): "3334"}.get((len(degs), big))


_ROW_AMOUNT = {"333": Fraction(1), "334": Fraction(2, 3), "344": Fraction(1, 3),
               "3333": HALF, "3334": QUARTER}


def _collect(pg: PlaneGraph, anomalies: list[Anomaly]) -> list[Transfer]:
    g = pg.graph
    out: list[Transfer] = []
    sizes = [face.length for face in pg.faces]

    # R1: each 4^- face gets 1 from each 4^+ vertex, per occurrence
    for fid, face in enumerate(pg.faces):
        if 0 < face.length <= 4:
            for v in face.walk:
                if g.degree(v) >= 4:
                    out.append(Transfer(_v(v), _f(fid), Fraction(1), "R1"))

    # R2: face to face, once per shared edge
    for fid, face in enumerate(pg.faces):
        if face.length not in (3, 4):
            continue
        row = _small_face_kind(pg, fid)
        for a, b in face.darts():
            other = pg.dart_face[(b, a)]
            if other == fid:
                continue
            if row is not None:
                if sizes[other] >= 7:
                    out.append(Transfer(_f(other), _f(fid), _ROW_AMOUNT[row], "R2",
                                        (min(a, b), max(a, b))))
                else:
                    anomalies.append(Anomaly("R2", f"sender f{other} of size {sizes[other]} "
                                                   f"is not a 7+-face (receiver f{fid})"))
            degs = [g.degree(v) for v in face.walk]
            heavy4 = (face.length == 4 and min(degs) >= 3
                      and sum(1 for d in degs if d >= 4) >= 3)
            if heavy4 and g.degree(a) >= 4 and g.degree(b) >= 4:
                if sizes[other] >= 7:
                    out.append(Transfer(_f(fid), _f(other), HALF, "R2",
                                        (min(a, b), max(a, b))))
                else:
                    anomalies.append(Anomaly("R2", f"receiver f{other} of size {sizes[other]} "
                                                   f"is not a 7+-face (sender f{fid})"))

    # R3: 4-vertices with at most one incident 4^- face
    special = {fid for fid, face in enumerate(pg.faces)
               if face.length == 8 and is_special_8_face(pg, fid) is not None}
    for v in g.vertices:
        if g.degree(v) != 4:
            continue
        around = pg.faces_at(v)
        small = [i for i, h in enumerate(around) if sizes[h] <= 4]
        if not small:
            out += [Transfer(_v(v), _f(h), HALF, "R3c") for h in around]
            continue
        if len(small) > 1:
            continue
        i = small[0]
        f2, f3, f4 = (around[(i + k) % 4] for k in (1, 2, 3))
        s2, s4 = f2 in special, f4 in special
        if s2 and s4:
            anomalies.append(Anomaly("R3", f"4-vertex {v} lies between two opposite "
                                           "special 8-faces"))
        elif s2 or s4:
            near, far = (f2, f4) if s2 else (f4, f2)
            out += [Transfer(_v(v), _f(near), HALF, "R3a"),
                    Transfer(_v(v), _f(f3), QUARTER, "R3a"),
                    Transfer(_v(v), _f(far), QUARTER, "R3a")]
        else:
            out += [Transfer(_v(v), _f(f3), HALF, "R3b"),
                    Transfer(_v(v), _f(f2), QUARTER, "R3b"),
                    Transfer(_v(v), _f(f4), QUARTER, "R3b")]

    # R4, R5: 5-vertices and 6^+ vertices on 8-faces, per occurrence
    for fid, face in enumerate(pg.faces):
        if face.length != 8:
            continue
        prof = None
        for k, v in enumerate(face.walk):
            d = g.degree(v)
            if d == 5:
                prof = prof or face_profile(pg, fid)
                amount = Fraction(3, 4) if prof.richness[k] is Richness.SEMI_RICH else HALF
                out.append(Transfer(_v(v), _f(fid), amount, "R4"))
            elif d >= 6:
                out.append(Transfer(_v(v), _f(fid), Fraction(1), "R5"))
    return out


def apply_rules(pg: PlaneGraph) -> ChargeState:
    """Final charges after one simultaneous application of all rules."""
    state = initial_charges(pg)
    transfers = _collect(pg, state.anomalies)
    for t in transfers:
        assert 12 % t.amount.denominator == 0, t
        for element, sign in ((t.source, -1), (t.target, 1)):
            table = state.vertex_charge if element[0] == "v" else state.face_charge
            table[int(element[1:])] += sign * t.amount
    state.transfers = sorted(transfers, key=lambda t: (t.rule, t.source, t.target, t.via or ()))
    return state


# ---------------------------------------------------------------------------
# audit

@dataclass(frozen=True)
class PathCheck:
    face: int
    start: int
    length: int
    controlled_sizes: tuple[int, ...]
    sent: Fraction
    bound: Fraction | None      # None: no bound applies (informational only)

    @property
    def ok(self) -> bool:
        return self.bound is None or self.sent <= self.bound

    def to_json(self) -> dict:
        return {"bound": None if self.bound is None else str(self.bound),
                "controlled_sizes": list(self.controlled_sizes), "face": self.face,
                "length": self.length, "ok": self.ok, "sent": str(self.sent),
                "start": self.start}


@dataclass(frozen=True)
class StarCheck:
    face: int
    final: Fraction
    lower_bound: Fraction

    @property
    def ok(self) -> bool:
        return self.final >= self.lower_bound

    def to_json(self) -> dict:
        return {"face": self.face, "final": str(self.final),
                "lower_bound": str(self.lower_bound), "ok": self.ok}


@dataclass
class AuditReport:
    total_before: Fraction
    total_after: Fraction
    negatives: list[str]
    path_checks: list[PathCheck]
    star_checks: list[StarCheck]
    anomalies: list[Anomaly]
    state: ChargeState

    @property
    def conserved(self) -> bool:
        return self.total_before == self.total_after == TOTAL

    @property
    def path_bounds_ok(self) -> bool:
        return all(c.ok for c in self.path_checks)

    def to_json(self, ledger: bool = False) -> dict:
        out = {
            "anomalies": [a.to_json() for a in self.anomalies],
            "conserved": self.conserved,
            "negatives": self.negatives,
            "path_bounds_ok": self.path_bounds_ok,
            "path_checks": [c.to_json() for c in self.path_checks],
            "star_checks": [c.to_json() for c in self.star_checks],
            "total_after": str(self.total_after),
            "total_before": str(self.total_before),
        }
        if ledger:
            out["ledger"] = [t.to_json() for t in self.state.transfers]
            out["final_charges"] = {
                **{_v(v): str(c) for v, c in sorted(self.state.vertex_charge.items())},
                **{_f(f): str(c) for f, c in sorted(self.state.face_charge.items())}}
        return out


def path_bound(sizes: tuple[int, ...]) -> Fraction | None:
    """Upper bound on what a face may send along a maximal 4^- controlling
    path with the given controlled face sizes."""
    if all(s == 4 for s in sizes):
        return HALF
    if len(sizes) in (2, 3):
        return Fraction(11, 12)
    if len(sizes) == 1:
        return Fraction(1)
    return None


def star_lower_bound(d: int, s0: int, t3: int) -> Fraction:
    return Fraction(d) - HALF * ((d - s0) // 2) - 6 - HALF * t3


def audit(pg: PlaneGraph) -> AuditReport:
    before = initial_charges(pg).total()
    state = apply_rules(pg)
    sent_via: dict[tuple[int, frozenset], Fraction] = defaultdict(Fraction)
    for t in state.transfers:
        if t.rule == "R2" and t.source[0] == "f":
            sent_via[(int(t.source[1:]), frozenset(t.via))] += t.amount
    paths, stars = [], []
    for fid, face in enumerate(pg.faces):
        if face.length < 8:
            continue
        prof = face_profile(pg, fid)
        walk = face.walk
        n = face.length
        for run in prof.runs:
            sent = sum((sent_via[(fid, frozenset((walk[(run.start + j) % n],
                                                   walk[(run.start + j + 1) % n])))]
                        for j in range(run.length)), ZERO)
            sizes = tuple(pg.face_size(c) for c in run.controlled)
            paths.append(PathCheck(fid, run.start, run.length, sizes, sent, path_bound(sizes)))
        stars.append(StarCheck(fid, state.face_charge[fid],
                               star_lower_bound(n, prof.s0, prof.t3_prime)))
    return AuditReport(before, state.total(), state.negatives(), paths, stars,
                       list(state.anomalies), state)
