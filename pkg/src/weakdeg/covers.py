"""Covers, strictly f-degenerate transversals (SfDTs) and (I,F)-partitions."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from itertools import product

from .degeneracy import is_strictly_f_degenerate, SizeCapExceeded
from .graph import Graph, GraphError, build_graph

CoverVertex = tuple[int, int]          # (base vertex v, list index i), 1-based i
CoverFMap = Mapping[CoverVertex, int]
Transversal = dict[int, int]           # base vertex -> chosen list index

BRUTE_FORCE_CAP = 20


@dataclass(frozen=True)
class Cover:
    """A cover of ``base``: lists L_v = {(v,1),...,(v,s)} joined by one
    matching per base edge.  ``matchings[(a, b)]`` (a < b) holds index pairs
    (i, j) meaning (a, i) ~ (b, j)."""

    base: Graph
    s: int
    matchings: Mapping[tuple[int, int], frozenset[tuple[int, int]]]

    def vertices(self) -> list[CoverVertex]:
        return [(v, i) for v in self.base.vertices for i in range(1, self.s + 1)]

    def cover_graph(self) -> Graph:
        idx = {cv: k for k, cv in enumerate(self.vertices())}
        edges = [(idx[(a, i)], idx[(b, j)])
                 for (a, b), m in self.matchings.items() for i, j in m]
        return build_graph(edges, range(len(idx)))

    def neighbors(self, v: int, i: int) -> list[CoverVertex]:
        out = []
        for w in self.base.neighbors(v):
            key, flip = ((v, w), False) if v < w else ((w, v), True)
            for a, b in self.matchings.get(key, ()):
                if flip and b == i:
                    out.append((w, a))
                elif not flip and a == i:
                    out.append((w, b))
        return out

    @property
    def num_edges(self) -> int:
        return sum(len(m) for m in self.matchings.values())


def good_cover(g: Graph, s: int) -> Cover:
    """Identity matchings: (u, i) ~ (v, j) iff i = j and uv is an edge."""
    if s < 1:
        raise ValueError("list size must be at least 1")
    ident = frozenset((i, i) for i in range(1, s + 1))
    return Cover(g, s, {e: ident for e in g.edges()})


def validate_cover(g: Graph, h: Cover) -> list[str]:
    """Diagnostics for cover-invariant violations (empty when valid)."""
    problems = []
    if h.s < 1:
        problems.append("list size must be at least 1")
    if set(h.base.vertices) != set(g.vertices) or set(h.base.edges()) != set(g.edges()):
        problems.append("cover base differs from the given graph")
    for (a, b), m in sorted(h.matchings.items()):
        if a >= b:
            problems.append(f"matching key ({a}, {b}) must be ordered a < b")
        if not g.has_edge(a, b):
            problems.append(f"edges between L_{a} and L_{b} but {a}{b} is not a base edge")
        left = [i for i, _ in m]
        right = [j for _, j in m]
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            problems.append(f"M_{a}{b} is not a matching")
        for i, j in m:
            if not (1 <= i <= h.s and 1 <= j <= h.s):
                problems.append(f"M_{a}{b} uses index outside 1..{h.s}")
    return problems


def parse_cover(text: str, base: Graph) -> Cover:
    """Header ``s=<int>`` then ``a b: i1-j1 i2-j2 ...`` per base edge."""
    s = None
    matchings: dict[tuple[int, int], frozenset[tuple[int, int]]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("s="):
            s = int(line[2:])
            continue
        try:
            head, _, tail = line.partition(":")
            a, b = (int(t) for t in head.split())
            pairs = [tuple(int(x) for x in tok.split("-")) for tok in tail.split()]
        except ValueError:
            raise GraphError(f"line {lineno}: expected 'a b: i-j ...'") from None
        if a > b:
            a, b = b, a
            pairs = [(j, i) for i, j in pairs]
        matchings[(a, b)] = frozenset(pairs)
    if s is None:
        raise GraphError("cover file lacks an 's=<int>' header")
    return Cover(base, s, matchings)


def format_cover(h: Cover) -> str:
    lines = [f"s={h.s}"]
    for (a, b), m in sorted(h.matchings.items()):
        lines.append(f"{a} {b}: " + " ".join(f"{i}-{j}" for i, j in sorted(m)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# transversals

def transversal_graph(h: Cover, t: Mapping[int, int]) -> Graph:
    """H[T] on base vertex ids (edges where the chosen entries are matched)."""
    edges = []
    for (a, b), m in h.matchings.items():
        if a in t and b in t and (t[a], t[b]) in m:
            edges.append((a, b))
    return build_graph(edges, t.keys())


def is_sfdt(h: Cover, f: CoverFMap, t: Mapping[int, int]) -> bool:
    if set(t) != set(h.base.vertices):
        return False
    return is_strictly_f_degenerate(transversal_graph(h, t), {v: f[(v, i)] for v, i in t.items()})


class _SfdtSearch:
    """Backtracking over list choices.

    H[T] being strictly f-degenerate is hereditary, so a partial choice is
    pruned as soon as the component of the newly chosen vertex has a nonempty
    f-core.  Only that component can create a core: the rest was already
    checked.
    """

    def __init__(self, h: Cover, f: CoverFMap, order: Sequence[int]):
        self.h, self.f, self.order = h, f, list(order)
        self.choice: dict[int, int] = {}
        self.nbrs = {(v, i): h.neighbors(v, i) for v in h.base.vertices
                     for i in range(1, h.s + 1)}

    def _chosen_nbrs(self, v: int) -> list[int]:
        i = self.choice[v]
        return [w for w, j in self.nbrs[(v, i)] if self.choice.get(w) == j]

    def _component_ok(self, root: int) -> bool:
        comp, stack = {root}, [root]
        while stack:
            x = stack.pop()
            for y in self._chosen_nbrs(x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        deg = {x: len(self._chosen_nbrs(x)) for x in comp}
        val = {x: self.f[(x, self.choice[x])] for x in comp}
        queue = [x for x in comp if deg[x] < val[x]]
        alive = set(comp)
        while queue:
            x = queue.pop()
            if x not in alive:
                continue
            alive.remove(x)
            for y in self._chosen_nbrs(x):
                if y in alive:
                    deg[y] -= 1
                    if deg[y] < val[y]:
                        queue.append(y)
        return not alive

    def run(self, k: int = 0) -> bool:
        if k == len(self.order):
            return True
        v = self.order[k]
        for i in range(1, self.h.s + 1):
            self.choice[v] = i
            if self._component_ok(v) and self.run(k + 1):
                return True
        del self.choice[v]
        return False


def _search_order(g: Graph, vertices) -> list[int]:
    return sorted(vertices, key=lambda v: (g.degree(v), v))


def find_sfdt(h: Cover, f: CoverFMap) -> Transversal | None:
    """An SfDT of (h, f), or None when none exists."""
    search = _SfdtSearch(h, f, _search_order(h.base, h.base.vertices))
    if not search.run():
        return None
    t = dict(search.choice)
    assert is_sfdt(h, f, t)
    return t


def brute_force_sfdt(h: Cover, f: CoverFMap) -> list[Transversal]:
    """Every SfDT, by enumerating all s^n transversals."""
    verts = h.base.vertices
    found = []
    for combo in product(range(1, h.s + 1), repeat=len(verts)):
        t = dict(zip(verts, combo))
        if is_sfdt(h, f, t):
            found.append(t)
    return found


def check_extension_conditions(g: Graph, order: Sequence[int], k: int,
                         pairs: Sequence[tuple[int, int]] | None = None) -> bool:
    """Whether ``order`` = u1..um satisfies the three ordering conditions of
    the SfDT extension theorem for threshold k.

    ``pairs`` defaults to the single pair (u1, um).  With several pairs (a, b)
    each one must satisfy the first two conditions, the list must start with a
    first member and end with a second member, and the interior bound is
    waived for the members of every pair.
    """
    if len(set(order)) != len(order) or any(v not in g for v in order):
        raise GraphError("ordering must list distinct vertices of the graph")
    if len(order) < 2:
        return False
    if pairs is None:
        pairs = [(order[0], order[-1])]
    pos = {v: i for i, v in enumerate(order)}
    if any(a not in pos or b not in pos or pos[a] >= pos[b] for a, b in pairs):
        raise GraphError("each pair must list two ordered vertices of the ordering")
    if order[0] not in {a for a, _ in pairs} or order[-1] not in {b for _, b in pairs}:
        return False
    members = set(order)

    def outside(v):
        return sum(1 for w in g.neighbors(v) if w not in members)

    for a, b in pairs:
        if not k - outside(a) > k - outside(b):
            return False
        if g.degree(b) > k or not g.has_edge(a, b):
            return False
    exempt = {v for pair in pairs for v in pair}
    for i in range(1, len(order) - 1):
        if order[i] in exempt:
            continue
        later = set(order[i + 1:])
        if sum(1 for w in g.neighbors(order[i]) if w not in later) > k - 1:
            return False
    return True


class ExtensionError(ValueError):
    pass


def extend_sfdt(h: Cover, f: CoverFMap, partial: Mapping[int, int],
                order: Sequence[int]) -> Transversal:
    """Extend an SfDT of H - H_K to all of H, searching only the lists of K."""
    k_set = set(order)
    rest = [v for v in h.base.vertices if v not in k_set]
    if set(partial) != set(rest):
        raise ExtensionError("partial transversal must cover exactly V - K")
    if not is_strictly_f_degenerate(transversal_graph(h, partial),
                                    {v: f[(v, i)] for v, i in partial.items()}):
        raise ExtensionError("partial transversal is not an SfDT of H - H_K")
    search = _SfdtSearch(h, f, list(order))
    search.choice.update(partial)
    if not search.run():
        raise ExtensionError("no extension exists; the ordering conditions do not hold")
    t = dict(search.choice)
    assert is_sfdt(h, f, t)
    return t


# ---------------------------------------------------------------------------
# (I,F)-partitions

@dataclass(frozen=True)
class IFPartition:
    independent: frozenset[int]
    forest: frozenset[int]


def if_partition(g: Graph) -> IFPartition | None:
    """Partition via an SfDT of the good 2-cover with f = (1, 2)."""
    h = good_cover(g, 2)
    f = {(v, i): i for v in g.vertices for i in (1, 2)}
    t = find_sfdt(h, f)
    if t is None:
        return None
    return IFPartition(frozenset(v for v, i in t.items() if i == 1),
                       frozenset(v for v, i in t.items() if i == 2))


def verify_if_partition(g: Graph, p: IFPartition) -> bool:
    verts = set(g.vertices)
    if p.independent & p.forest or (p.independent | p.forest) != verts:
        return False
    if any(g.has_edge(u, v) for u in p.independent for v in g.neighbors(u) if v in p.independent):
        return False
    return g.subgraph(p.forest).is_forest()


def brute_force_if_partition(g: Graph) -> IFPartition | None:
    verts = g.vertices
    if len(verts) > BRUTE_FORCE_CAP:
        raise SizeCapExceeded(f"brute force is limited to {BRUTE_FORCE_CAP} vertices")
    for mask in range(1 << len(verts)):
        ind = frozenset(v for k, v in enumerate(verts) if mask >> k & 1)
        p = IFPartition(ind, frozenset(verts) - ind)
        if verify_if_partition(g, p):
            return p
    return None
