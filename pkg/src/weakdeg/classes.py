"""Membership in the class of plane graphs with no 5-, 6- or 7-cycles and
triangles at distance at least two."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph import Graph, PlaneGraph, check_embedding

FORBIDDEN_LENGTHS = (5, 6, 7)


def cycles_up_to(g: Graph, max_len: int) -> list[tuple[int, ...]]:
    """All simple cycles of length <= max_len, each reported once.

    A cycle is written starting at its smallest vertex, in the direction
    whose second vertex is the smaller of the two neighbours.
    """
    if not 3 <= max_len <= 8:
        raise ValueError("max_len must lie in 3..8")
    out = []
    for s in g.vertices:
        path = [s]
        on_path = {s}

        def extend(v: int) -> None:
            for w in g.neighbors(v):
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                elif w > s and w not in on_path and len(path) < max_len:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.remove(w)

        extend(s)
    out.sort(key=lambda c: (len(c), c))
    return out


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    return [c for c in cycles_up_to(g, 3)]


def triangle_distance(g: Graph) -> float:
    """Least vertex-to-vertex distance between two distinct triangles
    (``math.inf`` with fewer than two triangles or none reachable)."""
    tris = triangles(g)
    best = math.inf
    for i, t in enumerate(tris):
        if len(tris) < 2:
            break
        dist = g.distances_from(t)
        for t2 in tris[i + 1:]:
            best = min(best, min(dist.get(v, math.inf) for v in t2))
    return best


@dataclass
class ClassReport:
    embedding_valid: bool
    bad_cycles: list[tuple[int, ...]]
    triangles: list[tuple[int, int, int]]
    triangle_distance: float
    embedding_problems: list[str] = field(default_factory=list)

    @property
    def in_class(self) -> bool:
        return self.embedding_valid and not self.bad_cycles and self.triangle_distance >= 2

    def to_json(self) -> dict:
        return {
            "bad_cycles": [list(c) for c in self.bad_cycles],
            "embedding_problems": self.embedding_problems,
            "embedding_valid": self.embedding_valid,
            "in_class": self.in_class,
            "triangle_distance": "inf" if math.isinf(self.triangle_distance)
            else int(self.triangle_distance),
            "triangles": [list(t) for t in self.triangles],
        }


def check_class(pg: PlaneGraph) -> ClassReport:
    problems = check_embedding(pg)
    g = pg.graph
    bad = [c for c in cycles_up_to(g, 7) if len(c) in FORBIDDEN_LENGTHS]
    return ClassReport(
        embedding_valid=not problems,
        bad_cycles=bad,
        triangles=triangles(g),
        triangle_distance=triangle_distance(g),
        embedding_problems=problems,
    )


def graph_in_class(g: Graph) -> bool:
    """Cycle and triangle-distance conditions only (no embedding)."""
    return (not any(len(c) in FORBIDDEN_LENGTHS for c in cycles_up_to(g, 7))
            and triangle_distance(g) >= 2)
