"""Text formats: edge lists, rotation systems, graph6, operation sequences,
f-maps, covers and partitions."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from pathlib import Path

from .graph import Graph, GraphError, PlaneGraph, build_graph, trace_faces


def _lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_edge_list(text: str) -> Graph:
    """One ``u v`` pair per line; a lone ``v`` declares an isolated vertex."""
    edges, isolated = [], []
    for lineno, line in _lines(text):
        nums = _ints(line.split(), lineno)
        if len(nums) == 2:
            edges.append(nums)
        elif len(nums) == 1:
            isolated.append(nums[0])
        else:
            raise GraphError(f"line {lineno}: expected 'u v'")
    return build_graph(edges, isolated)


def format_edge_list(g: Graph) -> str:
    lines = [f"{u} {v}" for u, v in g.edges()]
    lines += [str(v) for v in g.vertices if g.degree(v) == 0]
    return "\n".join(lines) + "\n"


def parse_rotation(text: str) -> PlaneGraph:
    """One ``v: w1 w2 ... wk`` line per vertex, neighbors clockwise."""
    rot: dict[int, tuple[int, ...]] = {}
    for lineno, line in _lines(text):
        if ":" not in line:
            raise GraphError(f"line {lineno}: expected 'v: w1 w2 ...'")
        head, tail = line.split(":", 1)
        (v,) = _ints([head.strip()], lineno)
        if v in rot:
            raise GraphError(f"line {lineno}: vertex {v} listed twice")
        rot[v] = tuple(_ints(tail.split(), lineno))
    return trace_faces(rot)


def format_rotation(rotation: Mapping[int, Iterable[int]]) -> str:
    return "".join(f"{v}: {' '.join(map(str, rotation[v]))}\n".replace(": \n", ":\n")
                   for v in sorted(rotation))


# graph6 --------------------------------------------------------------------

def _g6_bits(data: bytes):
    for byte in data:
        val = byte - 63
        if not 0 <= val < 64:
            raise GraphError("graph6: byte out of range")
        for shift in range(5, -1, -1):
            yield (val >> shift) & 1


def parse_graph6(line: str) -> Graph:
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    data = s.encode("ascii")
    if not data:
        raise GraphError("graph6: empty string")
    if data[0] == 126:
        if len(data) > 1 and data[1] == 126:
            n = int("".join(f"{b - 63:06b}" for b in data[2:8]), 2)
            data = data[8:]
        else:
            n = int("".join(f"{b - 63:06b}" for b in data[1:4]), 2)
            data = data[4:]
    else:
        n = data[0] - 63
        data = data[1:]
    need = n * (n - 1) // 2
    if len(data) * 6 < need:
        raise GraphError("graph6: truncated adjacency data")
    bits = _g6_bits(data)
    edges = []
    for j in range(1, n):
        for i in range(j):
            if next(bits):
                edges.append((i, j))
    return build_graph(edges, range(n))


def format_graph6(g: Graph) -> str:
    verts = g.vertices
    if verts != tuple(range(len(verts))):
        raise GraphError("graph6 needs vertex ids 0..n-1")
    n = len(verts)
    if n < 63:
        head = [n + 63]
    elif n < 258048:
        head = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        head = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = [int("".join(map(str, bits[k:k + 6])), 2) + 63 for k in range(0, len(bits), 6)]
    return bytes(head + body).decode("ascii")


# graph loading ----------------------------------------------------------------

FORMATS = ("edge-list", "graph6", "rotation")


def guess_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".g6", ".graph6"):
        return "graph6"
    if suffix in (".rot", ".rotation"):
        return "rotation"
    return "edge-list"


def load_graph(path: str | Path, fmt: str | None = None) -> Graph | PlaneGraph:
    """Read a graph; rotation files yield a PlaneGraph."""
    fmt = fmt or guess_format(path)
    text = Path(path).read_text()
    if fmt == "edge-list":
        return parse_edge_list(text)
    if fmt == "graph6":
        lines = [ln for _, ln in _lines(text)]
        if len(lines) != 1:
            raise GraphError("graph6 input must hold exactly one graph")
        return parse_graph6(lines[0])
    if fmt == "rotation":
        return parse_rotation(text)
    raise GraphError(f"unknown format {fmt!r}")


# f-maps ---------------------------------------------------------------------

def parse_fmap(text: str) -> dict[int, int]:
    """``v value`` (or ``v: value``) per line."""
    out = {}
    for lineno, line in _lines(text):
        nums = _ints(line.replace(":", " ").split(), lineno)
        if len(nums) != 2:
            raise GraphError(f"line {lineno}: expected 'v value'")
        out[nums[0]] = nums[1]
    return out


def parse_cover_fmap(text: str) -> dict[tuple[int, int], int]:
    """``v i value`` per line, for cover vertex (v, i)."""
    out = {}
    for lineno, line in _lines(text):
        nums = _ints(line.replace(":", " ").split(), lineno)
        if len(nums) != 3:
            raise GraphError(f"line {lineno}: expected 'v i value'")
        out[(nums[0], nums[1])] = nums[2]
    return out


def format_partition(independent: Iterable[int], forest: Iterable[int]) -> str:
    return (f"I: {' '.join(map(str, sorted(independent)))}".rstrip() + "\n"
            + f"F: {' '.join(map(str, sorted(forest)))}".rstrip() + "\n")


def parse_partition(text: str) -> tuple[set[int], set[int]]:
    parts: dict[str, set[int]] = {}
    for lineno, line in _lines(text):
        head, _, tail = line.partition(":")
        if head.strip() not in ("I", "F"):
            raise GraphError(f"line {lineno}: expected 'I: ...' or 'F: ...'")
        parts[head.strip()] = set(_ints(tail.split(), lineno))
    if set(parts) != {"I", "F"}:
        raise GraphError("partition needs both an I line and an F line")
    return parts["I"], parts["F"]
