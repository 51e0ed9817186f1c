"""The ten reducible configurations and a degree-constrained matcher.

Each configuration is an 8-cycle (or two glued 8-cycles) with attached
controlled faces.  An attached face on x_i x_{i+1} is either a 3-face
x_i v_i x_{i+1} or a 4-face x_i u_i v_i x_{i+1}, so every kind expands into
one concrete pattern per choice of face sizes.

A match maps pattern labels injectively to graph vertices such that pattern
edges map to edges, all other label pairs map to non-edges, and every
matched vertex has exactly the pattern's degree (3, or 4 for square
vertices) in the host graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .graph import Graph

KINDS = ("CA", "CB", "CC", "CD", "CE", "CF", "CG", "C_SPECIAL", "C_F3F4A", "C_F3F4B")


@dataclass(frozen=True)
class Pattern:
    kind: str
    labels: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    degree: dict[str, int]
    semicircles: tuple[tuple[str, int], ...]   # (attachment edge name, path length)

    def neighbors(self, a: str) -> list[str]:
        return sorted(b for e in self.edges if a in e for b in e if b != a)

    def has_edge(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges


@dataclass(frozen=True)
class ConfigMatch:
    kind: str
    assignment: dict[str, int]
    semicircle_lengths: dict[str, int]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.assignment.values())

    def to_json(self) -> dict:
        return {"assignment": dict(sorted(self.assignment.items(), key=lambda kv: _label_key(kv[0]))),
                "kind": self.kind,
                "semicircle_lengths": dict(sorted(self.semicircle_lengths.items()))}


def _label_key(label: str) -> tuple[str, int]:
    head = label.rstrip("0123456789")
    tail = label[len(head):]
    return head, int(tail) if tail else 0


def _make(kind, edges, squares, semicircles) -> Pattern:
    edge_set = frozenset(frozenset(e) for e in edges)
    labels = sorted({a for e in edge_set for a in e}, key=_label_key)
    degree = {a: 4 if a in squares else 3 for a in labels}
    return Pattern(kind, tuple(labels), edge_set, degree, tuple(semicircles))


def _semicircle(a: str, b: str, i: str, length: int, prefix=("u", "v")) -> list[tuple[str, str]]:
    """Path of the given length from a to b through fresh interior labels.
    The interior of a 2-path is ``prefix[1]+i``; a 3-path uses
    ``prefix[0]+i`` next to a and ``prefix[1]+i`` next to b."""
    p, q = prefix
    if length == 2:
        return [(a, q + i), (q + i, b)]
    return [(a, p + i), (p + i, q + i), (q + i, b)]


_RING_KINDS = {
    # kind: (attached edges x_i x_{i+1}, square vertices)
    "CA": ((1,), ()),
    "CB": ((1, 4), (4,)),
    "CC": ((5, 1), (5,)),
    "CD": ((5, 1, 2), (5, 2)),
    "CE": ((7, 1, 4), (4, 7)),
    "CF": ((5, 4, 1), (4, 5)),
    "CG": ((1, 3), (3,)),
}


def _ring_variants(kind: str) -> list[Pattern]:
    arcs, squares = _RING_KINDS[kind]
    out = []
    for lengths in product((2, 3), repeat=len(arcs)):
        edges = [(f"x{i}", f"x{i % 8 + 1}") for i in range(1, 9)]
        semis = []
        for i, length in zip(arcs, lengths):
            a, b = f"x{i}", f"x{i % 8 + 1}"
            edges += _semicircle(a, b, str(i), length)
            semis.append((a + b, length))
        out.append(_make(kind, edges, {f"x{i}" for i in squares}, sorted(semis)))
    return out


def _cycle(seq: list[str]) -> list[tuple[str, str]]:
    return [(seq[k], seq[(k + 1) % len(seq)]) for k in range(len(seq))]


def _special() -> Pattern:
    edges = _cycle(["v6", "v5", "v4", "v3", "v2", "v1", "v", "v7"])
    edges += _cycle(["u6", "u7", "v", "u1", "u2", "u3", "u4", "u5"])
    edges += [("v6", "w1"), ("w1", "v5"), ("u5", "w2"), ("w2", "u6")]
    return _make("C_SPECIAL", edges, {"v"}, [("u5u6", 2), ("v5v6", 2)])


def _f3f4(extra: int | None) -> Pattern:
    edges = _cycle(["u6", "u5", "u4", "u3", "u2", "u1", "u", "v"])
    edges += [e for e in _cycle(["v2", "v1", "v", "u", "v6", "v5", "v4", "v3"])
              if set(e) != {"u", "v"}]
    edges += [("u1", "v6"), ("v3", "w1"), ("w1", "v2"),
              ("v5", "w3"), ("w3", "w2"), ("w2", "v4")]
    semis = [("v2v3", 2), ("v4v5", 3)]
    if extra is None:
        return _make("C_F3F4A", edges, {"v"}, semis)
    edges += _semicircle("u2", "u3", "", extra, prefix=("w4", "w5"))
    return _make("C_F3F4B", edges, {"v", "u3"}, sorted(semis + [("u2u3", extra)]))


def _all_patterns() -> list[Pattern]:
    out = []
    for kind in KINDS[:7]:
        out += _ring_variants(kind)
    out.append(_special())
    out.append(_f3f4(None))
    out += [_f3f4(2), _f3f4(3)]
    return out


PATTERNS: tuple[Pattern, ...] = tuple(_all_patterns())


def patterns_of(kind: str) -> list[Pattern]:
    if kind not in KINDS:
        raise ValueError(f"unknown configuration kind {kind!r}")
    return [p for p in PATTERNS if p.kind == kind]


# ---------------------------------------------------------------------------
# matching

def _search_order(p: Pattern) -> list[str]:
    """Labels in BFS order from a square label (fewest candidates)."""
    root = next((a for a in p.labels if p.degree[a] == 4), p.labels[0])
    order, seen = [root], {root}
    k = 0
    while k < len(order):
        for b in p.neighbors(order[k]):
            if b not in seen:
                seen.add(b)
                order.append(b)
        k += 1
    return order


def match_pattern(g: Graph, p: Pattern) -> list[dict[str, int]]:
    """Every injective assignment of ``p`` into ``g`` (automorphic copies
    included)."""
    order = _search_order(p)
    # for each label after the root, an already placed neighbor to grow from
    anchor = {}
    for k, a in enumerate(order[1:], 1):
        anchor[a] = next(b for b in order[:k] if p.has_edge(a, b))
    checks = {a: [(b, p.has_edge(a, b)) for b in order[:k]] for k, a in enumerate(order)}
    out: list[dict[str, int]] = []
    assign: dict[str, int] = {}
    used: set[int] = set()

    def extend(k: int) -> None:
        if k == len(order):
            out.append(dict(assign))
            return
        a = order[k]
        cands = g.vertices if k == 0 else g.neighbors(assign[anchor[a]])
        for x in cands:
            if x in used or g.degree(x) != p.degree[a]:
                continue
            if any(g.has_edge(x, assign[b]) != want for b, want in checks[a]):
                continue
            assign[a] = x
            used.add(x)
            extend(k + 1)
            used.remove(x)
            del assign[a]

    extend(0)
    return out


def _canonical(p: Pattern, assignment: dict[str, int]) -> tuple[int, ...]:
    return tuple(assignment[a] for a in p.labels)


def find_configurations(g: Graph, kinds=KINDS) -> list[ConfigMatch]:
    """All matches, one per occurrence up to pattern automorphism.

    Occurrences are identified by their image edge set; the representative is
    the assignment whose vertex tuple (in label order) is least.  Results are
    sorted by kind, then by that tuple.
    """
    best: dict[tuple, tuple[tuple[int, ...], Pattern, dict[str, int]]] = {}
    for p in PATTERNS:
        if p.kind not in kinds:
            continue
        for assignment in match_pattern(g, p):
            image = frozenset(frozenset(assignment[a] for a in e) for e in p.edges)
            key = (p.kind, image)
            canon = _canonical(p, assignment)
            if key not in best or canon < best[key][0]:
                best[key] = (canon, p, assignment)
    matches = [ConfigMatch(p.kind, a, dict(p.semicircles))
               for canon, p, a in sorted(best.values(),
                                         key=lambda t: (KINDS.index(t[1].kind), t[0]))]
    return matches
