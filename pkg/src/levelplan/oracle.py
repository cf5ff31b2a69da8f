"""Brute-force ground truth for every planarity notion, at desk scale.

Nothing here touches PQ-trees. Torus and radial verdicts enumerate circular
vertex orders per level and ask, layer by layer, whether some
vertex-consecutive edge order induces them. Cyclic and simultaneous
(plane) verdicts work with linear orders per level and the two-line crossing
rule; they run an exact search over pairwise "x before y" decisions with
transitivity propagation, plus a literal enumeration variant for cross-checks.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from . import kernels
from .level_graph import Layer, LevelGraph, LevelGraphError, has_backward_edge, make_proper
from .orders import CircularOrder, all_circular_orders, is_consecutive
from .torus import TorusEmbedding


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_per_level: int = 8
    max_layer_edges: int = 8
    max_total: int = 2_000_000

    def __post_init__(self) -> None:
        if min(self.max_per_level, self.max_layer_edges, self.max_total) <= 0:
            raise ValueError("oracle budget entries must be positive")


DEFAULT_BUDGET = OracleBudget()


@dataclass(frozen=True)
class OracleResult:
    planar: bool
    graph: LevelGraph
    embedding: TorusEmbedding | None = None  # torus / radial witnesses
    linear: dict[int, tuple[str, ...]] | None = None  # cyclic / plane witnesses
    original: frozenset[str] = field(default_factory=frozenset)

    def levels(self) -> dict[int, tuple[str, ...]]:
        keep = self.original or frozenset(self.graph.level_of)
        if self.embedding is not None:
            return {i: o.restrict(keep).elems for i, o in self.embedding.levels.items()}
        if self.linear is not None:
            return {i: tuple(x for x in o if x in keep) for i, o in self.linear.items()}
        return {}


class _LayerTable:
    """All (lower, upper) active-vertex orders realisable by some v-consecutive edge order."""

    def __init__(self, layer: Layer, budget: OracleBudget) -> None:
        if len(layer.edges) > budget.max_layer_edges:
            raise BudgetExceeded(
                f"layer {layer.index} has {len(layer.edges)} edges (budget {budget.max_layer_edges})"
            )
        self.layer = layer
        self.lower = sorted(layer.lower_active)
        self.upper = sorted(layer.upper_active)
        li = {x: i for i, x in enumerate(self.lower)}
        ui = {x: i for i, x in enumerate(self.upper)}
        self.table = kernels.layer_signatures(
            [li[e.u] for e in layer.edges], [ui[e.v] for e in layer.edges]
        )
        self._li, self._ui = li, ui

    def lookup(self, lower: CircularOrder, upper: CircularOrder) -> CircularOrder | None:
        lo = _canon([self._li[x] for x in lower if x in self._li])
        up = _canon([self._ui[x] for x in upper if x in self._ui])
        order = self.table.get((lo, up))
        if order is None:
            return None
        return CircularOrder(self.layer.edges[i].id for i in order)


def _canon(seq: list[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    i = seq.index(min(seq))
    return tuple(seq[i:] + seq[:i])


def brute_layer_feasible(
    layer: Layer,
    lower: CircularOrder,
    upper: CircularOrder,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> CircularOrder | None:
    """A v-consecutive edge order whose induced orders are suborders of `lower`/`upper`."""
    if not layer.edges:
        return CircularOrder(())
    return _LayerTable(layer, budget).lookup(lower, upper)


def _check_level_budget(g: LevelGraph, budget: OracleBudget, factorial_of: int) -> None:
    total = 1
    for i in range(1, g.k + 1):
        n = len(g.level(i))
        if n > budget.max_per_level:
            raise BudgetExceeded(f"level {i} has {n} vertices (budget {budget.max_per_level})")
        total *= math.factorial(max(n - factorial_of, 0))
    if total > budget.max_total:
        raise BudgetExceeded(f"{total} level-order tuples exceed budget {budget.max_total}")


def _circular_search(
    g: LevelGraph, layers: Sequence[Layer], budget: OracleBudget
) -> TorusEmbedding | None:
    """First (lexicographic) tuple of circular level orders admitting every layer."""
    _check_level_budget(g, budget, 1)
    tables = {layer.index: _LayerTable(layer, budget) for layer in layers if layer.edges}
    choices = [list(all_circular_orders(g.level(i))) for i in range(1, g.k + 1)]
    chosen: list[CircularOrder] = []
    layer_orders: dict[int, CircularOrder] = {}

    def layers_closed_by(i: int) -> list[int]:
        # layers whose both levels are assigned once level i (1-based) is
        out = []
        if i >= 2:
            out.append(i - 1)
        if i == g.k:
            out.append(g.k)
        return [j for j in out if j in tables]

    def dfs(i: int) -> bool:
        if i > g.k:
            return True
        for o in choices[i - 1]:
            chosen.append(o)
            ok = True
            closed = layers_closed_by(i)
            for j in closed:
                lo = chosen[j - 1]
                up = chosen[g.next_level(j) - 1]
                found = tables[j].lookup(lo, up)
                if found is None:
                    ok = False
                    break
                layer_orders[j] = found
            if ok and dfs(i + 1):
                return True
            for j in closed:
                layer_orders.pop(j, None)
            chosen.pop()
        return False

    if not dfs(1):
        return None
    levels = {i + 1: o for i, o in enumerate(chosen)}
    return TorusEmbedding(levels, dict(layer_orders))


def _proper_for_oracle(g: LevelGraph) -> LevelGraph:
    if g.k == 1 and not g.edges:
        return g
    proper, _ = make_proper(g)
    return proper


def brute_torus(g: LevelGraph, budget: OracleBudget = DEFAULT_BUDGET) -> OracleResult:
    """Torus level planarity by enumeration of circular orders per level."""
    original = frozenset(g.level_of)
    p = _proper_for_oracle(g)
    emb = _circular_search(p, p.layers(), budget) if p.k > 1 else None
    if p.k == 1:
        levels = {1: CircularOrder(p.level(1))}
        return OracleResult(True, p, TorusEmbedding(levels, {}), original=original)
    return OracleResult(emb is not None, p, emb, original=original)


def brute_radial(g: LevelGraph, budget: OracleBudget = DEFAULT_BUDGET) -> OracleResult:
    """Standing-cylinder planarity: circular orders, no strip between the last and first level."""
    original = frozenset(g.level_of)
    if has_backward_edge(g):
        return OracleResult(False, g, original=original)
    p = _proper_for_oracle(g)
    if p.k == 1:
        return OracleResult(True, p, TorusEmbedding({1: CircularOrder(p.level(1))}, {}), original=original)
    emb = _circular_search(p, [p.layer(i) for i in range(1, p.k)], budget)
    return OracleResult(emb is not None, p, emb, original=original)


def _orientation(pos: dict, a, b, c) -> bool:
    pa, pb, pc = pos[a], pos[b], pos[c]
    return (pa < pb < pc) or (pb < pc < pa) or (pc < pa < pb)


def _layer_ok_by_triples(layer: Layer, order: CircularOrder, lower: CircularOrder, upper: CircularOrder) -> bool:
    for x in {e.u for e in layer.edges} | {e.v for e in layer.edges}:
        if not is_consecutive(order, [e.id for e in layer.incident(x)]):
            return False
    epos = {x: i for i, x in enumerate(order)}
    lpos = {x: i for i, x in enumerate(lower)}
    upos = {x: i for i, x in enumerate(upper)}
    for e, f, h in itertools.combinations(layer.edges, 3):
        if len({e.u, f.u, h.u}) == 3:
            if _orientation(epos, e.id, f.id, h.id) != _orientation(lpos, e.u, f.u, h.u):
                return False
        if len({e.v, f.v, h.v}) == 3:
            if _orientation(epos, e.id, f.id, h.id) != _orientation(upos, e.v, f.v, h.v):
                return False
    return True


def brute_torus_triples(g: LevelGraph, budget: OracleBudget = OracleBudget(5, 6, 200_000)) -> bool:
    """Second torus oracle: raw edge-order enumeration judged by triple orientations."""
    p = _proper_for_oracle(g)
    if p.k == 1:
        return True
    _check_level_budget(p, budget, 1)
    layers = [layer for layer in p.layers() if layer.edges]
    for layer in layers:
        if len(layer.edges) > budget.max_layer_edges:
            raise BudgetExceeded(f"layer {layer.index} too large for the triple oracle")
    edge_orders = {layer.index: list(all_circular_orders(e.id for e in layer.edges)) for layer in layers}
    level_choices = [list(all_circular_orders(p.level(i))) for i in range(1, p.k + 1)]
    for combo in itertools.product(*level_choices):
        if all(
            any(
                _layer_ok_by_triples(layer, o, combo[layer.index - 1], combo[p.next_level(layer.index) - 1])
                for o in edge_orders[layer.index]
            )
            for layer in layers
        ):
            return True
    return False


# --- linear orders: rolling cylinder and plane -------------------------------------------


class _PairSearch:
    """Exact search for linear orders per level under 'same relative order' constraints.

    A group is a list of edges ``(u, v)`` (u's on one level, v's on another)
    that must not cross: for two of them with distinct endpoints, u before u'
    iff v before v'. Variables are the pairwise orders of vertices on each
    level; the constraints tie them with parity (union-find) and the search
    branches on whole classes while propagating transitivity.
    """

    def __init__(
        self,
        level_vertices: dict[int, Sequence[str]],
        groups: Iterable[Sequence[tuple[str, str]]],
        max_nodes: int,
    ) -> None:
        self.max_nodes = max_nodes
        self.level_of: dict[str, int] = {}
        self.index: dict[str, int] = {}
        self.members: dict[int, list[str]] = {}
        for lvl, vs in level_vertices.items():
            self.members[lvl] = sorted(vs)
            for i, x in enumerate(self.members[lvl]):
                self.level_of[x] = lvl
                self.index[x] = i
        self.var: dict[tuple[str, str], int] = {}
        for lvl, vs in self.members.items():
            for a, b in itertools.combinations(vs, 2):
                self.var[(a, b)] = len(self.var)
        n = len(self.var)
        self.parent = list(range(n))
        self.parity = [0] * n  # value(v) = value(parent) ^ parity
        self.contradiction = False
        for grp in groups:
            for (u1, v1), (u2, v2) in itertools.combinations(grp, 2):
                if u1 == u2 or v1 == v2:
                    continue
                x, px = self._lit(u1, u2)
                y, py = self._lit(v1, v2)
                self._union(x, y, px ^ py)
        self.value: list[bool | None] = [None] * n
        self.classes: dict[int, list[int]] = {}
        for v in range(n):
            self.classes.setdefault(self._find(v)[0], []).append(v)
        self.pairs = {v: k for k, v in self.var.items()}
        self.nodes = 0

    def _lit(self, a: str, b: str) -> tuple[int, int]:
        # before(a, b) == value(var) ^ parity
        if a < b:
            return self.var[(a, b)], 0
        return self.var[(b, a)], 1

    def _find(self, v: int) -> tuple[int, int]:
        p = 0
        while self.parent[v] != v:
            p ^= self.parity[v]
            v = self.parent[v]
        return v, p

    def _union(self, x: int, y: int, rel: int) -> None:
        rx, px = self._find(x)
        ry, py = self._find(y)
        if rx == ry:
            if px ^ py != rel:
                self.contradiction = True
            return
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ rel

    def _before(self, a: str, b: str) -> bool | None:
        v, p = self._lit(a, b)
        val = self.value[v]
        return None if val is None else val ^ bool(p)

    def _set_class(self, root: int, val: bool, trail: list[int], queue: list[int]) -> bool:
        for v in self.classes[root]:
            want = val ^ bool(self._find(v)[1])
            cur = self.value[v]
            if cur is None:
                self.value[v] = want
                trail.append(v)
                queue.append(v)
            elif cur != want:
                return False
        return True

    def _force(self, a: str, b: str, trail: list[int], queue: list[int]) -> bool:
        cur = self._before(a, b)
        if cur is not None:
            return cur
        v, p = self._lit(a, b)
        root, rp = self._find(v)
        return self._set_class(root, True ^ bool(p) ^ bool(rp), trail, queue)

    def _propagate(self, trail: list[int], queue: list[int]) -> bool:
        while queue:
            v = queue.pop()
            a, b = self.pairs[v]
            if not self.value[v]:
                a, b = b, a
            # now a before b
            for c in self.members[self.level_of[a]]:
                if c == a or c == b:
                    continue
                if self._before(c, a) and not self._force(c, b, trail, queue):
                    return False
                if self._before(b, c) and not self._force(a, c, trail, queue):
                    return False
        return True

    def _undo(self, trail: list[int], mark: int) -> None:
        while len(trail) > mark:
            self.value[trail.pop()] = None

    def solve(self) -> dict[int, tuple[str, ...]] | None:
        if self.contradiction:
            return None
        # big classes first: they carry the most constraints
        roots = sorted(self.classes, key=lambda r: (-len(self.classes[r]), r))
        trail: list[int] = []

        def dfs(i: int) -> bool:
            while i < len(roots) and self.value[roots[i]] is not None:
                i += 1
            if i == len(roots):
                return True
            self.nodes += 1
            if self.nodes > self.max_nodes:
                raise BudgetExceeded(f"pairwise search exceeded {self.max_nodes} nodes")
            for val in (True, False):
                mark = len(trail)
                queue: list[int] = []
                root_val = val ^ bool(self._find(roots[i])[1])
                if self._set_class(roots[i], root_val, trail, queue) and self._propagate(trail, queue):
                    if dfs(i + 1):
                        return True
                self._undo(trail, mark)
            return False

        if not dfs(0):
            return None
        out = {}
        for lvl, vs in self.members.items():
            out[lvl] = tuple(sorted(vs, key=lambda x: sum(bool(self._before(y, x)) for y in vs if y != x)))
        return out


def _enumerate_linear(
    level_vertices: dict[int, Sequence[str]],
    groups: list[list[tuple[str, str]]],
    budget: OracleBudget,
) -> dict[int, tuple[str, ...]] | None:
    """Literal enumeration of linear orders per level (lexicographic, first witness)."""
    levels = sorted(level_vertices)
    total = math.prod(math.factorial(len(level_vertices[l])) for l in levels)
    for l in levels:
        if len(level_vertices[l]) > budget.max_per_level:
            raise BudgetExceeded(f"level {l} too large to enumerate")
    if total > budget.max_total:
        raise BudgetExceeded(f"{total} linear-order tuples exceed budget {budget.max_total}")
    names = sorted({x for l in levels for x in level_vertices[l]})
    idx = {x: i for i, x in enumerate(names)}
    flat = [(gi, idx[u], idx[v]) for gi, grp in enumerate(groups) for u, v in grp]
    us = [u for _, u, _ in flat]
    vs = [v for _, _, v in flat]
    gids = [g for g, _, _ in flat]
    pos = [0] * len(names)
    for combo in itertools.product(*(itertools.permutations(sorted(level_vertices[l])) for l in levels)):
        for perm in combo:
            for p, x in enumerate(perm):
                pos[idx[x]] = p
        if kernels.crossing_free(pos, us, vs, gids):
            return dict(zip(levels, combo))
    return None


def _cyclic_groups(p: LevelGraph) -> list[list[tuple[str, str]]]:
    return [[(e.u, e.v) for e in layer.edges] for layer in p.layers() if layer.edges]


def brute_cyclic(
    g: LevelGraph, budget: OracleBudget = DEFAULT_BUDGET, *, enumerate_all: bool = False
) -> OracleResult:
    """Rolling-cylinder planarity: linear orders per level, every strip (incl. last→first) crossing-free."""
    original = frozenset(g.level_of)
    p = _proper_for_oracle(g)
    levels = {i: p.level(i) for i in range(1, p.k + 1)}
    groups = _cyclic_groups(p)
    if enumerate_all:
        lin = _enumerate_linear(levels, groups, budget)
    else:
        lin = _PairSearch(levels, groups, budget.max_total).solve()
    return OracleResult(lin is not None, p, linear=lin, original=original)


def sim_groups(g: LevelGraph) -> list[list[tuple[str, str]]]:
    """Edge groups that must be pairwise non-crossing in a plane simultaneous embedding."""
    lvl = g.level_of
    out: dict[tuple[int, int], list[tuple[str, str]]] = {}
    for e in g.edges:
        if lvl[e.v] != lvl[e.u] + 1:
            raise LevelGraphError(f"edge {e.id} does not join consecutive levels upward")
        out.setdefault((e.graph_id, lvl[e.u]), []).append((e.u, e.v))
    return [out[k] for k in sorted(out)]


def brute_sim_level(
    g: LevelGraph, budget: OracleBudget = DEFAULT_BUDGET, *, enumerate_all: bool = False
) -> OracleResult:
    """Simultaneous level planarity in the plane for the graphs tagged in `g`.

    Edges going downward make the instance negative; edges skipping a level
    must be subdivided by the caller.
    """
    lvl = g.level_of
    if any(lvl[e.v] <= lvl[e.u] for e in g.edges):
        return OracleResult(False, g, original=frozenset(lvl))
    groups = sim_groups(g)
    levels = {i: g.level(i) for i in range(1, g.k + 1)}
    if enumerate_all:
        lin = _enumerate_linear(levels, groups, budget)
    else:
        lin = _PairSearch(levels, groups, budget.max_total).solve()
    return OracleResult(lin is not None, g, linear=lin, original=frozenset(lvl))


def crossing_free_linear(g: LevelGraph, orders: dict[int, Sequence[str]], cyclic: bool = False) -> bool:
    """Witness check for linear orders: plane simultaneous (default) or rolling cylinder."""
    pos = {x: i for o in orders.values() for i, x in enumerate(o)}
    for i in range(1, g.k + 1):
        if sorted(orders.get(i, ())) != sorted(g.level(i)):
            return False
    groups = _cyclic_groups(g) if cyclic else sim_groups(g)
    for grp in groups:
        for (u1, v1), (u2, v2) in itertools.combinations(grp, 2):
            if (pos[u1] - pos[u2]) * (pos[v1] - pos[v2]) < 0:
                return False
    return True


def iter_tiny_graphs(k: int, per_level: Sequence[int], allow_backward: bool = True) -> Iterator[LevelGraph]:
    """Every proper graph with the given level sizes (all subsets of the possible edges)."""
    vertices = [(f"{chr(96 + i)}{j}", i) for i in range(1, k + 1) for j in range(1, per_level[i - 1] + 1)]
    lvl = dict(vertices)
    possible = [
        (u, v)
        for u, v in itertools.permutations(lvl, 2)
        if lvl[v] == lvl[u] % k + 1 and (allow_backward or lvl[v] > lvl[u])
    ]
    for mask in range(1 << len(possible)):
        edges = [possible[i] for i in range(len(possible)) if mask >> i & 1]
        yield LevelGraph.build(k, vertices, edges)
