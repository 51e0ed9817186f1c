"""Delete / DeleteSave operations, exact weak f-degeneracy, degeneracy,
strict f-degeneracy and certificate replay."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import NamedTuple, Union

from .graph import Graph, GraphError

FMap = Mapping[int, int]

DEFAULT_SIZE_CAP = 24
CHROMATIC_CAP = 12


class Delete(NamedTuple):
    u: int

    def __str__(self) -> str:
        return f"D {self.u}"


class DeleteSave(NamedTuple):
    a: int
    b: int

    def __str__(self) -> str:
        return f"S {self.a} {self.b}"


Op = Union[Delete, DeleteSave]


class SizeCapExceeded(ValueError):
    pass


def format_sequence(seq: Iterable[Op]) -> str:
    return "".join(f"{op}\n" for op in seq)


def parse_sequence(text: str) -> list[Op]:
    """One step per line: ``D u`` or ``S a b``."""
    seq: list[Op] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        try:
            if line[0] == "D" and len(line) == 2:
                seq.append(Delete(int(line[1])))
                continue
            if line[0] == "S" and len(line) == 3:
                seq.append(DeleteSave(int(line[1]), int(line[2])))
                continue
        except ValueError:
            pass
        raise GraphError(f"line {lineno}: expected 'D u' or 'S a b', got {raw!r}")
    return seq


def constant_fmap(g: Graph, k: int) -> dict[int, int]:
    return {v: k for v in g.vertices}


# ---------------------------------------------------------------------------
# Single operations (value semantics: inputs are never mutated)

def delete_op(g: Graph, f: FMap, u: int) -> tuple[Graph, dict[int, int], bool]:
    """Delete_u.  Legal iff f(u) >= 0 and f_{-u} >= 0.

    An illegal call returns the unchanged state with ``False``.
    """
    if u not in g:
        raise GraphError(f"vertex {u} is not present")
    nb = g.neighbors(u)
    if f[u] < 0 or any(f[w] < 1 for w in nb):
        return g, dict(f), False
    new_f = {v: val for v, val in f.items() if v != u}
    for w in nb:
        new_f[w] -= 1
    return g.remove([u]), new_f, True


def delete_save_op(g: Graph, f: FMap, a: int, b: int) -> tuple[Graph, dict[int, int], bool]:
    """DeleteSave_(a,b): remove a, decrement every neighbor of a except b.

    Legal iff f(a) > f(b) (strictly) and no value goes negative.
    """
    if a not in g or b not in g:
        raise GraphError(f"vertex {a if a not in g else b} is not present")
    if not g.has_edge(a, b):
        raise GraphError(f"DeleteSave needs adjacent vertices, {a} and {b} are not")
    nb = [w for w in g.neighbors(a) if w != b]
    if f[a] <= f[b] or any(f[w] < 1 for w in nb):
        return g, dict(f), False
    new_f = {v: val for v, val in f.items() if v != a}
    for w in nb:
        new_f[w] -= 1
    return g.remove([a]), new_f, True


@dataclass(frozen=True)
class ReplayReport:
    ok: bool
    failed_step: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_op_sequence(g: Graph, f: FMap, seq: Sequence[Op]) -> ReplayReport:
    """Replay ``seq`` from (g, f); ok iff every step is legal and g ends empty."""
    f = dict(f)
    missing = [v for v in g.vertices if v not in f]
    if missing:
        return ReplayReport(False, None, f"f undefined at {missing[0]}")
    for i, op in enumerate(seq):
        try:
            if isinstance(op, DeleteSave):
                g, f, legal = delete_save_op(g, f, op.a, op.b)
            else:
                g, f, legal = delete_op(g, f, op.u)
        except GraphError as exc:
            return ReplayReport(False, i, str(exc))
        if not legal:
            return ReplayReport(False, i, f"step {i} ({op}) is illegal")
    if len(g):
        return ReplayReport(False, None, f"{len(g)} vertices remain after the sequence")
    return ReplayReport(True)


# ---------------------------------------------------------------------------
# Exact search

class _Search:
    """Memoized search over (remaining-vertex bitmask, f) states.

    Two sound reductions keep the state space small:

    * a vertex whose value is at least its current degree can be deleted last
      (weak f-degeneracy is monotone in f and closed under vertex deletion),
      so it is dropped from the state and scheduled at the end;
    * Delete(a) is never tried when some DeleteSave(a, b) is legal, since the
      DeleteSave result dominates it pointwise.

    With all values nonnegative every step lowers sum(f) by at least the number
    of edges it removes, so a state with sum(f) < |E| is rejected at once.
    """

    def __init__(self, g: Graph, f: FMap):
        self.verts = g.vertices
        idx = {v: i for i, v in enumerate(self.verts)}
        self.nbmask = [0] * len(self.verts)
        self.nbrs = []
        for v in self.verts:
            ids = [idx[w] for w in g.neighbors(v)]
            self.nbrs.append(ids)
            for j in ids:
                self.nbmask[idx[v]] |= 1 << j
        self.f0 = tuple(f[v] for v in self.verts)
        self.failed: set[tuple[int, tuple[int, ...]]] = set()
        self.states = 0

    def _peel(self, mask: int, f: list[int]) -> tuple[int, list[int]]:
        """Drop vertices with f >= degree; returns new mask and their order."""
        late = []
        changed = True
        while changed:
            changed = False
            m = mask
            while m:
                low = m & -m
                i = low.bit_length() - 1
                m ^= low
                if f[i] >= (self.nbmask[i] & mask).bit_count():
                    mask ^= low
                    late.append(i)
                    changed = True
        return mask, late

    def solve(self, mask: int, f: list[int]) -> list[tuple] | None:
        if any(f[i] < 0 for i in _bits(mask)):
            return None
        mask, late = self._peel(mask, f)
        tail = [("D", i) for i in reversed(late)]
        if not mask:
            return tail
        key = (mask, tuple(f[i] for i in _bits(mask)))
        if key in self.failed:
            return None
        alive = list(_bits(mask))
        if sum(f[i] for i in alive) < sum((self.nbmask[i] & mask).bit_count() for i in alive) // 2:
            return None
        self.states += 1
        for move in self._moves(mask, f):
            new_f = list(f)
            if move[0] == "D":
                a, b = move[1], -1
            else:
                a, b = move[1], move[2]
            for j in self.nbrs[a]:
                if mask >> j & 1 and j != b:
                    new_f[j] -= 1
            rest = self.solve(mask & ~(1 << a), new_f)
            if rest is not None:
                return [move] + rest + tail
        self.failed.add(key)
        return None

    def _moves(self, mask: int, f: list[int]) -> list[tuple]:
        alive = list(_bits(mask))
        saves = []
        deletes = []
        for a in alive:
            nb = [j for j in self.nbrs[a] if mask >> j & 1]
            short = [j for j in nb if f[j] < 1]
            if len(short) > 1:
                continue
            had_save = False
            for b in nb:
                if f[a] > f[b] and (not short or short == [b]):
                    saves.append(("S", a, b))
                    had_save = True
            if not short and not had_save and f[a] >= 0:
                deletes.append(("D", a))
        deletes.sort(key=lambda m: (f[m[1]], m[1]))
        saves.sort(key=lambda m: (-(f[m[1]] - f[m[2]]), m[1], m[2]))
        return deletes + saves

    def to_ops(self, moves: list[tuple]) -> list[Op]:
        out: list[Op] = []
        for m in moves:
            if m[0] == "D":
                out.append(Delete(self.verts[m[1]]))
            else:
                out.append(DeleteSave(self.verts[m[1]], self.verts[m[2]]))
        return out


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_weakly_f_degenerate(g: Graph, f: FMap, *, size_cap: int | None = None
                           ) -> tuple[bool, list[Op] | None]:
    """Exact decision with a replayable witness when the answer is yes."""
    if size_cap is not None and len(g) > size_cap:
        raise SizeCapExceeded(f"{len(g)} vertices exceeds the exact-search cap of {size_cap}")
    search = _Search(g, f)
    moves = search.solve((1 << len(search.verts)) - 1, list(search.f0))
    if moves is None:
        return False, None
    return True, search.to_ops(moves)


@dataclass(frozen=True)
class WdResult:
    value: int
    witness: tuple  # operation sequence for wd, peeling order for d


def degeneracy(g: Graph) -> WdResult:
    """d(G) by min-degree peeling; the witness is the peeling order."""
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(deg)
    order = []
    value = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        value = max(value, deg[v])
        order.append(v)
        alive.remove(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
    return WdResult(value, tuple(order))


def degeneracy_sequence(g: Graph) -> list[Op]:
    """All-Delete sequence legal at f = d(G): reverse peeling order."""
    return [Delete(v) for v in reversed(degeneracy(g).witness)]


def weak_degeneracy(g: Graph, *, size_cap: int | None = DEFAULT_SIZE_CAP) -> WdResult:
    """wd(G) with a witness sequence at the optimum."""
    if size_cap is not None and len(g) > size_cap:
        raise SizeCapExceeded(f"{len(g)} vertices exceeds the exact-search cap of {size_cap}")
    d = degeneracy(g).value
    for k in range(d):
        ok, seq = is_weakly_f_degenerate(g, constant_fmap(g, k))
        if ok:
            return WdResult(k, tuple(seq))
    return WdResult(d, tuple(degeneracy_sequence(g)))


def f_core(g: Graph, f: FMap) -> set[int]:
    """Vertices left after repeatedly deleting v with degree < f(v)."""
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(deg)
    queue = [v for v in alive if deg[v] < f[v]]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.remove(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
                if deg[w] < f[w]:
                    queue.append(w)
    return alive


def is_strictly_f_degenerate(g: Graph, f: FMap) -> bool:
    return not f_core(g, f)


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by DSATUR-ordered branch and bound."""
    n = len(g)
    if n > CHROMATIC_CAP:
        raise SizeCapExceeded(f"chromatic oracle is limited to {CHROMATIC_CAP} vertices")
    if n == 0:
        return 0
    verts = g.vertices
    colour: dict[int, int] = {}
    best = [n]

    def pick() -> int:
        def key(v):
            sat = {colour[w] for w in g.neighbors(v) if w in colour}
            return (len(sat), g.degree(v), -v)
        return max((v for v in verts if v not in colour), key=key)

    def extend(used: int) -> None:
        if used >= best[0]:
            return
        if len(colour) == n:
            best[0] = used
            return
        v = pick()
        taken = {colour[w] for w in g.neighbors(v) if w in colour}
        for c in range(min(used + 1, best[0] - 1)):
            if c in taken:
                continue
            colour[v] = c
            extend(max(used, c + 1))
            del colour[v]

    extend(0)
    return best[0]
