"""Level graphs, properness, subdivision and the surface reductions to the torus."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property


class LevelGraphError(ValueError):
    pass


class ParseError(LevelGraphError):
    def __init__(self, lineno: int, msg: str) -> None:
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    graph_id: int = 1


@dataclass(frozen=True)
class Layer:
    """The bipartite slice between level ``index`` and the next one (cyclically)."""

    index: int
    lower: tuple[str, ...]
    upper: tuple[str, ...]
    edges: tuple[Edge, ...]

    @property
    def lower_active(self) -> tuple[str, ...]:
        used = {e.u for e in self.edges}
        return tuple(x for x in self.lower if x in used)

    @property
    def upper_active(self) -> tuple[str, ...]:
        used = {e.v for e in self.edges}
        return tuple(x for x in self.upper if x in used)

    def incident(self, x: str) -> list[Edge]:
        return [e for e in self.edges if e.u == x or e.v == x]


@dataclass(frozen=True)
class LevelGraph:
    k: int
    levels: tuple[tuple[str, int], ...]
    edges: tuple[Edge, ...] = field(default=())

    @classmethod
    def build(
        cls,
        k: int,
        vertices: Mapping[str, int] | Iterable[tuple[str, int]],
        edges: Iterable[tuple] = (),
    ) -> LevelGraph:
        """Validate and freeze a level graph.

        `edges` holds ``(u, v)`` or ``(u, v, graph_id)`` tuples; edge ids are
        ``u->v`` (``u->v@g`` outside graph 1) with a ``#n`` suffix on parallel
        copies.
        """
        items = list(vertices.items()) if isinstance(vertices, Mapping) else list(vertices)
        if k < 1:
            raise LevelGraphError(f"level count must be positive, got {k}")
        names = [n for n, _ in items]
        dup = [n for n, c in Counter(names).items() if c > 1]
        if dup:
            raise LevelGraphError(f"duplicate vertex {dup[0]!r}")
        lv = dict(items)
        for n, l in items:
            if not 1 <= l <= k:
                raise LevelGraphError(f"vertex {n!r} on level {l} outside 1..{k}")
        seen: Counter = Counter()
        out = []
        for raw in edges:
            u, v, *rest = raw
            gid = int(rest[0]) if rest else 1
            for x in (u, v):
                if x not in lv:
                    raise LevelGraphError(f"edge endpoint {x!r} is not a vertex")
            if u == v:
                raise LevelGraphError(f"self-loop at {u!r}")
            base = f"{u}->{v}" if gid == 1 else f"{u}->{v}@{gid}"
            seen[base] += 1
            eid = base if seen[base] == 1 else f"{base}#{seen[base]}"
            out.append(Edge(eid, u, v, gid))
        return cls(k, tuple(sorted(items, key=lambda p: (p[1], p[0]))), tuple(out))

    @cached_property
    def level_of(self) -> dict[str, int]:
        return dict(self.levels)

    @property
    def vertices(self) -> list[str]:
        return [n for n, _ in self.levels]

    def level(self, i: int) -> tuple[str, ...]:
        return tuple(n for n, l in self.levels if l == i)

    def next_level(self, i: int) -> int:
        return i % self.k + 1

    def span(self, e: Edge) -> int:
        """Number of strips crossed walking forward cyclically from u's level to v's."""
        return (self.level_of[e.v] - self.level_of[e.u]) % self.k

    def layer(self, i: int) -> Layer:
        j = self.next_level(i)
        lvl = self.level_of
        es = tuple(e for e in self.edges if lvl[e.u] == i and lvl[e.v] == j)
        return Layer(i, self.level(i), self.level(j), es)

    def layers(self) -> list[Layer]:
        return [self.layer(i) for i in range(1, self.k + 1)]

    def graph_ids(self) -> list[int]:
        return sorted({e.graph_id for e in self.edges})

    def with_extra(self, vertices: Iterable[tuple[str, int]], edges: Iterable[tuple]) -> LevelGraph:
        old = [(e.u, e.v, e.graph_id) for e in self.edges]
        return LevelGraph.build(self.k, list(self.levels) + list(vertices), old + list(edges))

    def fresh_name(self, base: str, taken: Iterable[str] = ()) -> str:
        used = set(self.level_of) | set(taken)
        name, n = base, 0
        while name in used:
            n += 1
            name = f"{base}{n}"
        return name


def is_proper(g: LevelGraph) -> bool:
    lvl = g.level_of
    return all(
        lvl[e.u] == lvl[e.v] - 1 or (lvl[e.u] == g.k and lvl[e.v] == 1) for e in g.edges
    )


def has_backward_edge(g: LevelGraph) -> bool:
    lvl = g.level_of
    return any(lvl[e.u] >= lvl[e.v] for e in g.edges)


def check_drawable(g: LevelGraph) -> None:
    """Reject inputs no surface here can draw: intra-level edges, or edges with k=1."""
    lvl = g.level_of
    if g.k == 1 and g.edges:
        raise LevelGraphError("a graph on a single level cannot have edges")
    for e in g.edges:
        if lvl[e.u] == lvl[e.v]:
            raise LevelGraphError(f"intra-level edge unsupported: {e.u}->{e.v}")


@dataclass(frozen=True)
class Subdivision:
    """Bookkeeping of :func:`make_proper`."""

    chains: dict[str, tuple[str, ...]]
    edge_origin: dict[str, str]
    original_vertices: frozenset[str]


def make_proper(g: LevelGraph) -> tuple[LevelGraph, Subdivision]:
    """Subdivide every long edge so it crosses one strip per segment.

    New vertices sit on the interior levels of the cyclic walk from the tail's
    level to the head's level.
    """
    check_drawable(g)
    lvl = g.level_of
    taken: set[str] = set()
    new_vertices: list[tuple[str, int]] = []
    new_edges: list[tuple] = []
    chains: dict[str, tuple[str, ...]] = {}
    pending: list[tuple[str, tuple]] = []
    for e in g.edges:
        h = g.span(e)
        if h == 1:
            pending.append((e.id, (e.u, e.v, e.graph_id)))
            continue
        chain = []
        level = lvl[e.u]
        for j in range(1, h):
            level = g.next_level(level)
            name = g.fresh_name(f"{e.u}~{e.v}~{j}", taken)
            taken.add(name)
            chain.append(name)
            new_vertices.append((name, level))
        chains[e.id] = tuple(chain)
        path = [e.u, *chain, e.v]
        for a, b in zip(path, path[1:]):
            pending.append((e.id, (a, b, e.graph_id)))
    new_edges = [t for _, t in pending]
    out = LevelGraph.build(g.k, list(g.levels) + new_vertices, new_edges)
    origin = {ne.id: oid for ne, (oid, _) in zip(out.edges, pending)}
    return out, Subdivision(chains, origin, frozenset(g.level_of))


def radial_to_torus(g: LevelGraph) -> LevelGraph:
    """Add a 4-cycle alternating between the last and first level.

    All four cycle edges point from level k down to level 1, so the cycle is
    a K_{2,2} inside the wraparound strip and no other edge can pass through
    that strip. Torus embeddings of the result are then radial embeddings of
    `g`. (Routing two of the cycle edges upward through every level instead
    would collide with blocking structures of `g` such as a K_{2,2}.)
    """
    taken: list[str] = []
    names = []
    for base in ("a", "b", "c", "d"):
        n = g.fresh_name(f"_{base}", taken)
        taken.append(n)
        names.append(n)
    a, b, c, d = names
    k = g.k
    return g.with_extra(
        [(a, k), (b, 1), (c, k), (d, 1)],
        [(a, b), (c, b), (c, d), (a, d)],
    )


def cyclic_to_torus(g: LevelGraph) -> LevelGraph:
    """Add a directed cycle w_1 -> ... -> w_k -> w_1 with w_i on level i."""
    if g.k < 2:
        raise LevelGraphError("cyclic reduction needs at least two levels")
    ws: list[str] = []
    for i in range(1, g.k + 1):
        ws.append(g.fresh_name(f"_w{i}", ws))
    edges = [(ws[i], ws[(i + 1) % g.k]) for i in range(g.k)]
    return g.with_extra([(w, i + 1) for i, w in enumerate(ws)], edges)


def parse_level_graph(text: str) -> LevelGraph:
    """Read the line-oriented ``levels`` / ``v`` / ``e`` format."""
    k = None
    vertices: list[tuple[str, int]] = []
    edges: list[tuple] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        if k is None:
            if tag != "levels" or len(parts) != 2:
                raise ParseError(lineno, "expected 'levels <k>' first")
            k = _int(parts[1], lineno)
            if k < 1:
                raise ParseError(lineno, f"level count must be positive, got {k}")
            continue
        if tag == "v" and len(parts) == 3:
            level = _int(parts[2], lineno)
            if not 1 <= level <= k:
                raise ParseError(lineno, f"level {level} outside 1..{k}")
            if any(n == parts[1] for n, _ in vertices):
                raise ParseError(lineno, f"duplicate vertex {parts[1]!r}")
            vertices.append((parts[1], level))
        elif tag == "e" and len(parts) in (3, 4):
            gid = _int(parts[3], lineno) if len(parts) == 4 else 1
            if gid < 1:
                raise ParseError(lineno, f"graph id must be positive, got {gid}")
            edges.append((parts[1], parts[2], gid, lineno))
        else:
            raise ParseError(lineno, f"cannot parse {raw.strip()!r}")
    if k is None:
        raise ParseError(0, "missing 'levels <k>' line")
    known = {n for n, _ in vertices}
    for u, v, _, lineno in edges:
        for x in (u, v):
            if x not in known:
                raise ParseError(lineno, f"unknown vertex {x!r}")
    try:
        return LevelGraph.build(k, vertices, [e[:3] for e in edges])
    except LevelGraphError as exc:
        raise ParseError(0, str(exc)) from exc


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {tok!r}") from None


def format_level_graph(g: LevelGraph) -> str:
    lines = [f"levels {g.k}"]
    lines += [f"v {n} {l}" for n, l in g.levels]
    for e in g.edges:
        lines.append(f"e {e.u} {e.v}" + (f" {e.graph_id}" if e.graph_id != 1 else ""))
    return "\n".join(lines) + "\n"
