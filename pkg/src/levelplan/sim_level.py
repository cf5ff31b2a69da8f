"""Simultaneous level planarity: the two-graph two-level case and the hardness gadgets.

A simultaneous instance is a :class:`LevelGraph` whose edges carry graph ids
1..m over a shared vertex set; every edge must go one level up.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from itertools import permutations

from . import oracle
from .level_graph import LevelGraph, LevelGraphError
from .torus import test_cyclic


class BetweennessError(ValueError):
    pass


@dataclass(frozen=True)
class BetweennessInstance:
    elements: tuple[str, ...]
    triplets: tuple[tuple[str, str, str], ...]

    def __post_init__(self) -> None:
        if len(set(self.elements)) != len(self.elements):
            raise BetweennessError("repeated element")
        known = set(self.elements)
        for t in self.triplets:
            if len(t) != 3 or len(set(t)) != 3:
                raise BetweennessError(f"triplet {t} must have three distinct entries")
            if not set(t) <= known:
                raise BetweennessError(f"triplet {t} uses unknown elements")

    def satisfied_by(self, order: Sequence[str]) -> bool:
        pos = {x: i for i, x in enumerate(order)}
        return all(
            pos[a] < pos[b] < pos[c] or pos[c] < pos[b] < pos[a] for a, b, c in self.triplets
        )


@dataclass(frozen=True)
class SimResult:
    planar: bool
    orders: dict[int, tuple[str, ...]] | None = None  # left-to-right per level


def parse_betweenness(text: str) -> BetweennessInstance:
    elems: list[str] = []
    trips: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "elem" and len(parts) == 2:
            elems.append(parts[1])
        elif parts[0] == "triplet" and len(parts) == 4:
            trips.append((parts[1], parts[2], parts[3]))
        else:
            raise BetweennessError(f"line {lineno}: cannot parse {raw.strip()!r}")
    try:
        return BetweennessInstance(tuple(elems), tuple(trips))
    except BetweennessError as exc:
        raise BetweennessError(f"invalid instance: {exc}") from None


def format_betweenness(b: BetweennessInstance) -> str:
    lines = [f"elem {x}" for x in b.elements]
    lines += [f"triplet {a} {c} {d}" for a, c, d in b.triplets]
    return "\n".join(lines) + "\n"


def solve_betweenness(b: BetweennessInstance, max_n: int = 8) -> tuple[str, ...] | None:
    """First satisfying linear order in lexicographic order of permutations, or None."""
    if len(b.elements) > max_n:
        raise BetweennessError(f"{len(b.elements)} elements exceed the enumeration bound {max_n}")
    for perm in permutations(b.elements):
        if b.satisfied_by(perm):
            return perm
    return None


def graph_count(g: LevelGraph) -> int:
    return max(g.graph_ids(), default=0)


def reduce_2x2_to_cyclic(inst: LevelGraph) -> LevelGraph:
    """One cyclic instance on two levels: graph 1 points up, graph 2 is turned around."""
    if inst.k != 2 or not set(inst.graph_ids()) <= {1, 2}:
        raise LevelGraphError("expected two graphs on two levels")
    lvl = inst.level_of
    edges = []
    for e in inst.edges:
        if lvl[e.u] != 1 or lvl[e.v] != 2:
            raise LevelGraphError(f"edge {e.id} does not go from level 1 to level 2")
        edges.append((e.u, e.v) if e.graph_id == 1 else (e.v, e.u))
    return LevelGraph.build(2, inst.levels, edges)


def test_sim_2x2(inst: LevelGraph) -> SimResult:
    """Decide two graphs on two levels through rolling-cylinder planarity.

    The witness cuts each level's circular order at the vertex of the added
    level cycle, which marks where the cylinder was opened up.
    """
    cyc = reduce_2x2_to_cyclic(inst)
    res = test_cyclic(cyc)
    if not res.planar:
        return SimResult(False)
    keep = set(inst.level_of)
    orders: dict[int, tuple[str, ...]] = {}
    for i in (1, 2):
        circ = res.embedding.levels[i]
        cut = next(x for x in circ if x not in keep)
        orders[i] = tuple(x for x in circ.starting_at(cut) if x in keep)
    if not oracle.crossing_free_linear(inst, orders):
        orders = {i: tuple(reversed(o)) for i, o in orders.items()}
        if not oracle.crossing_free_linear(inst, orders):
            raise AssertionError("simultaneous witness failed the crossing check")
    return SimResult(True, orders)


test_sim_2x2.__test__ = False  # type: ignore[attr-defined]


def u_name(i: int, j: int) -> str:
    return f"u{i}.{j}"


def v_name(i: int, j: int) -> str:
    return f"v{i}.{j}"


def _indices(b: BetweennessInstance) -> list[tuple[int, int, int]]:
    pos = {x: j for j, x in enumerate(b.elements, 1)}
    return [(pos[a], pos[c], pos[d]) for a, c, d in b.triplets]


def _ordering_gadget(n: int, rows: int) -> tuple[list[tuple[str, int]], list[tuple]]:
    vertices = [(u_name(i, j), 1) for i in range(1, rows + 1) for j in range(1, n + 1)]
    vertices += [(v_name(i, j), 2) for i in range(1, rows) for j in range(1, n + 1)]
    edges: list[tuple] = []
    for i in range(1, rows):
        for j in range(1, n + 1):
            edges.append((u_name(i, j), v_name(i, j), 1))
            edges.append((u_name(i + 1, j), v_name(i, j), 2))
    return vertices, edges


def _check_gadget_input(b: BetweennessInstance) -> None:
    if len(b.elements) < 3:
        raise BetweennessError("gadgets need at least three elements")
    if not b.triplets:
        raise BetweennessError("gadgets need at least one triplet")


def gen_gadget_3x2(b: BetweennessInstance) -> LevelGraph:
    """Three graphs on two levels, simultaneous-level-planar iff `b` is satisfiable.

    Element j of `b` is ``u1.j``; row i of the ordering gadget copies the
    order and hosts the path of triplet i in graph 3.
    """
    _check_gadget_input(b)
    n, k = len(b.elements), len(b.triplets)
    vertices, edges = _ordering_gadget(n, k)
    for i, (a, c, d) in enumerate(_indices(b), 1):
        x, y = f"x{i}", f"y{i}"
        vertices += [(x, 2), (y, 2)]
        edges += [
            (u_name(i, a), x, 3),
            (u_name(i, c), x, 3),
            (u_name(i, c), y, 3),
            (u_name(i, d), y, 3),
        ]
    return LevelGraph.build(2, vertices, edges)


def gen_gadget_2x3(b: BetweennessInstance) -> LevelGraph:
    """Two graphs on three levels, simultaneous-level-planar iff `b` is satisfiable.

    The ordering gadget gets k+1 rows on level 1 so that level 2 carries k
    copies of the order; triplet i is a path in graph 1 through row i of
    level 2 and two fresh vertices on level 3.
    """
    _check_gadget_input(b)
    n, k = len(b.elements), len(b.triplets)
    vertices, edges = _ordering_gadget(n, k + 1)
    for i, (a, c, d) in enumerate(_indices(b), 1):
        x, y = f"x{i}", f"y{i}"
        vertices += [(x, 3), (y, 3)]
        edges += [
            (v_name(i, a), x, 1),
            (v_name(i, c), x, 1),
            (v_name(i, c), y, 1),
            (v_name(i, d), y, 1),
        ]
    return LevelGraph.build(3, vertices, edges)


def element_order(b: BetweennessInstance, orders: Mapping[int, Sequence[str]]) -> tuple[str, ...]:
    """Read the element order off a gadget witness (row 1 of level 1).

    A reversed solution is a solution too; the orientation returned is the
    one whose index sequence in `b.elements` is lexicographically smaller.
    """
    pos = {x: p for p, x in enumerate(orders[1])}
    idx = sorted(range(1, len(b.elements) + 1), key=lambda j: pos[u_name(1, j)])
    idx = min(idx, idx[::-1])
    return tuple(b.elements[j - 1] for j in idx)


def rows_share_pattern(orders: Mapping[int, Sequence[str]], n: int) -> bool:
    """Every u-row and v-row appears in the same left-to-right pattern as row 1."""
    pos = {x: p for o in orders.values() for p, x in enumerate(o)}
    pattern = None
    for prefix in ("u", "v"):
        i = 1
        while f"{prefix}{i}.1" in pos:
            row = tuple(sorted(range(1, n + 1), key=lambda j: pos[f"{prefix}{i}.{j}"]))
            if pattern is None:
                pattern = row
            elif row != pattern:
                return False
            i += 1
    return True


def middle_between(orders: Mapping[int, Sequence[str]], w1: str, w3: str, w5: str) -> bool:
    pos = {x: p for o in orders.values() for p, x in enumerate(o)}
    return pos[w1] < pos[w3] < pos[w5] or pos[w5] < pos[w3] < pos[w1]


def sim_test(inst: LevelGraph, budget: oracle.OracleBudget = oracle.DEFAULT_BUDGET) -> SimResult:
    """Two graphs on two levels use the polynomial route; anything else the exact search."""
    if inst.k == 2 and set(inst.graph_ids()) <= {1, 2}:
        lvl = inst.level_of
        if all(lvl[e.u] == 1 and lvl[e.v] == 2 for e in inst.edges):
            return test_sim_2x2(inst)
    res = oracle.brute_sim_level(inst, budget)
    return SimResult(res.planar, res.linear)
