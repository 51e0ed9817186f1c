"""Simple graphs, plane embeddings given by rotation systems, and blocks.

Vertex identifiers are nonnegative integers and are kept stable across
subgraph operations, so a vertex removed by a reduction step is still named
by the id it had in the input.  Solvers that want bitsets compress ids to
positions locally.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from math import pi, atan2


class GraphError(ValueError):
    """Malformed graph or embedding input."""


@dataclass(frozen=True)
class Graph:
    """An immutable simple undirected graph."""

    adj: Mapping[int, tuple[int, ...]]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.adj))

    def __len__(self) -> int:
        return len(self.adj)

    def __contains__(self, v: object) -> bool:
        return v in self.adj

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.adj and v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices for v in self.adj[u] if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.adj.values()) // 2

    def min_degree(self) -> int:
        return min((len(nb) for nb in self.adj.values()), default=0)

    def max_degree(self) -> int:
        return max((len(nb) for nb in self.adj.values()), default=0)

    def subgraph(self, keep: Iterable[int]) -> Graph:
        keep = set(keep)
        return Graph({v: tuple(w for w in self.adj[v] if w in keep)
                      for v in self.vertices if v in keep})

    def remove(self, drop: Iterable[int]) -> Graph:
        drop = set(drop)
        return self.subgraph(v for v in self.adj if v not in drop)

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for s in self.vertices:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_forest(self) -> bool:
        return self.num_edges == len(self) - len(self.components())

    def distances_from(self, sources: Iterable[int]) -> dict[int, int]:
        frontier = list(dict.fromkeys(sources))
        dist = {v: 0 for v in frontier}
        while frontier:
            nxt = []
            for v in frontier:
                for w in self.adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        return dist


def build_graph(edges: Iterable[Sequence[int]],
                vertices: Iterable[int] = ()) -> Graph:
    """Build a simple graph from an edge list.

    Loops and repeated edges are rejected rather than collapsed.  Extra
    ``vertices`` may be given to include isolated vertices.
    """
    adj: dict[int, set[int]] = {}
    for v in vertices:
        if v < 0:
            raise GraphError(f"negative vertex id {v}")
        adj.setdefault(int(v), set())
    for pair in edges:
        if len(pair) != 2:
            raise GraphError(f"edge {pair!r} is not a pair")
        u, v = int(pair[0]), int(pair[1])
        if u < 0 or v < 0:
            raise GraphError(f"negative vertex id in edge ({u}, {v})")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        if v in adj.get(u, ()):
            raise GraphError(f"duplicate edge ({u}, {v})")
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return Graph({v: tuple(sorted(adj[v])) for v in sorted(adj)})


def complete_graph(n: int) -> Graph:
    return build_graph(combinations(range(n), 2), range(n))


def cycle_graph(n: int) -> Graph:
    return build_graph([(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph([(i, i + 1) for i in range(n - 1)], range(n))


# ---------------------------------------------------------------------------
# Plane embeddings

@dataclass(frozen=True)
class FacialWalk:
    """Boundary walk of a face; vertices may repeat on non-simple faces."""

    walk: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.walk)

    def darts(self) -> list[tuple[int, int]]:
        n = len(self.walk)
        return [(self.walk[i], self.walk[(i + 1) % n]) for i in range(n)]

    def is_cycle(self) -> bool:
        return len(set(self.walk)) == len(self.walk) >= 3


@dataclass(frozen=True)
class PlaneGraph:
    """A graph with a clockwise rotation system and its traced faces.

    ``dart_face[(u, v)]`` is the face lying to the traced side of the dart
    u -> v; every dart belongs to exactly one face.
    """

    graph: Graph
    rotation: Mapping[int, tuple[int, ...]]
    faces: tuple[FacialWalk, ...]
    dart_face: Mapping[tuple[int, int], int] = field(repr=False)

    def face_size(self, fid: int) -> int:
        return self.faces[fid].length

    def edge_faces(self, u: int, v: int) -> tuple[int, int]:
        """The faces on the two sides of edge uv."""
        if not self.graph.has_edge(u, v):
            raise GraphError(f"({u}, {v}) is not an edge")
        return self.dart_face[(u, v)], self.dart_face[(v, u)]

    def faces_at(self, v: int) -> list[int]:
        """Faces in the corners around ``v``, following the rotation.

        Corner i lies between rot[i] and rot[i+1]; a face appears once per
        corner it occupies.
        """
        rot = self.rotation[v]
        # dart (w, v) is followed by (v, next(w)); the corner between w and
        # next(w) belongs to the face of dart (w, v).
        return [self.dart_face[(w, v)] for w in rot]

    def subgraph(self, keep: Iterable[int]) -> PlaneGraph:
        keep = set(keep)
        rot = {v: tuple(w for w in self.rotation[v] if w in keep)
               for v in self.rotation if v in keep}
        return trace_faces(rot)

    def remove(self, drop: Iterable[int]) -> PlaneGraph:
        drop = set(drop)
        return self.subgraph(v for v in self.rotation if v not in drop)

    def euler_characteristic_ok(self) -> bool:
        """Each component satisfies V - E + F = 2."""
        comp_of = {}
        comps = self.graph.components()
        for i, comp in enumerate(comps):
            for v in comp:
                comp_of[v] = i
        faces_per = [0] * len(comps)
        for i, face in enumerate(self.faces):
            if face.walk:
                faces_per[comp_of[face.walk[0]]] += 1
        for i, comp in enumerate(comps):
            e = sum(self.graph.degree(v) for v in comp) // 2
            f = faces_per[i] if e else 1
            if len(comp) - e + f != 2:
                return False
        return True


def trace_faces(rotation: Mapping[int, Sequence[int]]) -> PlaneGraph:
    """Trace the faces of the embedding given by a clockwise rotation system.

    The face successor of dart (u, v) is (v, w) where w follows u in the
    rotation at v.  An edgeless graph gets a single face of length zero.
    """
    adj: dict[int, set[int]] = {v: set(nb) for v, nb in rotation.items()}
    for v, nb in rotation.items():
        if len(set(nb)) != len(nb):
            raise GraphError(f"rotation at {v} repeats a neighbor")
        for w in nb:
            if w == v:
                raise GraphError(f"loop at vertex {v}")
            if w not in adj or v not in adj[w]:
                raise GraphError(f"rotation lists {w} at {v} but not {v} at {w}")
    graph = Graph({v: tuple(sorted(adj[v])) for v in sorted(adj)})
    rot = {v: tuple(rotation[v]) for v in sorted(rotation)}
    pos = {v: {w: i for i, w in enumerate(nb)} for v, nb in rot.items()}

    dart_face: dict[tuple[int, int], int] = {}
    faces: list[FacialWalk] = []
    for u in graph.vertices:
        for v in rot[u]:
            if (u, v) in dart_face:
                continue
            fid = len(faces)
            walk = []
            a, b = u, v
            while (a, b) not in dart_face:
                dart_face[(a, b)] = fid
                walk.append(a)
                nb = rot[b]
                a, b = b, nb[(pos[b][a] + 1) % len(nb)]
            faces.append(FacialWalk(tuple(walk)))
    # isolated vertices: one empty face per isolated component
    for v in graph.vertices:
        if not rot[v]:
            faces.append(FacialWalk(()))
    return PlaneGraph(graph, rot, tuple(faces), dart_face)


def rotation_from_coordinates(coords: Mapping[int, tuple[float, float]],
                              edges: Iterable[Sequence[int]]) -> dict[int, tuple[int, ...]]:
    """Clockwise rotation system of a straight-line drawing."""
    g = build_graph(edges, coords)
    rot = {}
    for v in g.vertices:
        x0, y0 = coords[v]
        rot[v] = tuple(sorted(
            g.neighbors(v),
            key=lambda w: -(atan2(coords[w][1] - y0, coords[w][0] - x0) % (2 * pi))))
    return rot


def check_embedding(pg: PlaneGraph) -> list[str]:
    """Problems with the PlaneGraph invariants; empty when it is a valid
    planar (genus-0 per component) embedding."""
    problems = []
    darts = [d for face in pg.faces for d in face.darts()]
    if len(darts) != len(set(darts)):
        problems.append("a dart lies on more than one facial walk")
    if len(darts) != 2 * pg.graph.num_edges:
        problems.append("sum of face lengths differs from 2|E|")
    for face in pg.faces:
        for a, b in face.darts():
            if not pg.graph.has_edge(a, b):
                problems.append(f"facial walk step {a}->{b} is not an edge")
    if not pg.euler_characteristic_ok():
        problems.append("Euler formula fails: rotation system is not planar")
    return problems


# ---------------------------------------------------------------------------
# Blocks

@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]


def blocks(g: Graph) -> BlockDecomposition:
    """Biconnected components (Hopcroft-Tarjan, iterative).

    Isolated vertices form singleton blocks.
    """
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    out: list[frozenset[int]] = []
    cuts: set[int] = set()
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        if not g.adj[root]:
            index[root] = counter
            counter += 1
            out.append(frozenset([root]))
            continue
        index[root] = low[root] = counter
        counter += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(g.adj[root]))]
        root_children = 0
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(g.adj[w])))
                    if v == root:
                        root_children += 1
                    advanced = True
                    break
                if index[w] < index[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            stack.pop()
            if not stack:
                break
            p = stack[-1][0]
            low[p] = min(low[p], low[v])
            if low[v] >= index[p]:
                if p != root:
                    cuts.add(p)
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.update((a, b))
                    if (a, b) == (p, v):
                        break
                out.append(frozenset(comp))
        if root_children > 1:
            cuts.add(root)
    out.sort(key=lambda b: sorted(b))
    return BlockDecomposition(tuple(out), frozenset(cuts))


def is_gdp_tree(g: Graph) -> bool:
    """Connected, and every block induces a complete graph or a cycle."""
    if len(g) == 0 or not g.is_connected():
        return False
    for block in blocks(g).blocks:
        n = len(block)
        m = sum(1 for u in block for w in g.adj[u] if w in block) // 2
        complete = m == n * (n - 1) // 2
        cycle = n >= 3 and m == n  # a 2-connected block with |E| = |V| is a cycle
        if not (complete or cycle):
            return False
    return True
