"""Simultaneous PQ-Ordering instances: normalization, fixedness, exact solving.

The solver handles the two-tier class produced by the torus pipeline: every
tree is either a source with at most two children or a sink with at most two
parents. It backtracks over orderings of the source trees only; each sink's
ordering is forced by its parents, which must agree. Failed partial states
are memoized, which turns the search into a dynamic program along the chain
of sources.
"""

from __future__ import annotations

import logging
from collections import defaultdict, deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from itertools import combinations, permutations

from . import pqtree as pq
from .orders import CircularOrder
from .pqtree import PQTree

log = logging.getLogger(__name__)


class SpqoError(ValueError):
    pass


class UnsupportedInstance(SpqoError):
    pass


@dataclass(frozen=True)
class Arc:
    source: str
    target: str
    phi: Mapping[str, str]  # target leaf -> source leaf


@dataclass(frozen=True)
class SpqoInstance:
    trees: Mapping[str, PQTree]
    arcs: tuple[Arc, ...] = field(default=())

    def __post_init__(self) -> None:
        for a in self.arcs:
            if a.source not in self.trees or a.target not in self.trees:
                raise SpqoError(f"arc {a.source}->{a.target} references a missing tree")
            src, tgt = self.trees[a.source], self.trees[a.target]
            if set(a.phi) != set(tgt.ground):
                raise SpqoError(f"arc {a.source}->{a.target}: map domain is not the target's leaves")
            image = list(a.phi.values())
            if len(set(image)) != len(image):
                raise SpqoError(f"arc {a.source}->{a.target}: map is not injective")
            if not set(image) <= src.ground:
                raise SpqoError(f"arc {a.source}->{a.target}: image outside the source's leaves")
        _topological(self)

    @property
    def infeasible(self) -> bool:
        return any(t.is_empty for t in self.trees.values())

    def parents(self, tid: str) -> list[Arc]:
        return [a for a in self.arcs if a.target == tid]

    def children(self, tid: str) -> list[Arc]:
        return [a for a in self.arcs if a.source == tid]

    def leaf_count(self) -> int:
        return sum(len(t.ground) for t in self.trees.values())

    def replace(self, tid: str, tree: PQTree) -> SpqoInstance:
        trees = dict(self.trees)
        trees[tid] = tree
        return SpqoInstance(trees, self.arcs)


def _topological(inst: SpqoInstance) -> list[str]:
    indeg = {t: 0 for t in inst.trees}
    succ = defaultdict(list)
    for a in inst.arcs:
        indeg[a.target] += 1
        succ[a.source].append(a.target)
    queue = deque(sorted(t for t, d in indeg.items() if d == 0))
    out = []
    while queue:
        t = queue.popleft()
        out.append(t)
        for s in succ[t]:
            indeg[s] -= 1
            if indeg[s] == 0:
                queue.append(s)
    if len(out) != len(inst.trees):
        raise SpqoError("arcs contain a directed cycle")
    return out


def _pull_back(source: PQTree, arc: Arc) -> PQTree:
    """Projection of the source onto the arc image, renamed to target leaves."""
    inverse = {s: t for t, s in arc.phi.items()}
    return pq.map_tree(pq.project(source, inverse), inverse)


def normalize(inst: SpqoInstance) -> SpqoInstance:
    """Intersect every arc target with the pulled-back projection of its source."""
    cur = inst
    for _ in range(len(inst.arcs) + 1):
        changed = False
        for a in sorted(cur.arcs, key=lambda a: (a.source, a.target)):
            tgt = cur.trees[a.target]
            new = pq.intersect(tgt, _pull_back(cur.trees[a.source], a))
            if new != tgt:
                cur = cur.replace(a.target, new)
                changed = True
        if not changed:
            return cur
    raise SpqoError("normalization did not reach a fixpoint")


def _separated_triple(parts_a: list[frozenset], parts_b: list[frozenset], phi: Mapping[str, str]) -> bool:
    """Three leaves in distinct parts of `parts_a` whose images lie in distinct parts of `parts_b`."""
    where_b = {x: i for i, part in enumerate(parts_b) for x in part}
    links = [
        {where_b[phi[x]] for x in part if x in phi and phi[x] in where_b} for part in parts_a
    ]
    for trio in combinations(range(len(links)), 3):
        for bs in permutations(range(len(parts_b)), 3):
            if all(b in links[a] for a, b in zip(trio, bs)):
                return True
    return False


def fixing_nodes(inst: SpqoInstance, arc: Arc, target_node: int) -> list[int]:
    """Nodes of the arc source fixed by internal node `target_node` of the target."""
    tgt_nodes = inst.trees[arc.target].internal_nodes()
    parts_t = list(tgt_nodes[target_node][1])
    out = []
    for i, (_, parts_s) in enumerate(inst.trees[arc.source].internal_nodes()):
        if _separated_triple(parts_t, list(parts_s), arc.phi):
            out.append(i)
    return out


def fixedness(inst: SpqoInstance) -> dict[tuple[str, int], int]:
    """Fixedness of every P-node, computed from the sources down.

    ``fixed(mu) = omega + sum over parents (fixed(mu_i) - 1)`` where omega
    counts the children whose trees contain a node fixing ``mu``. A parent
    node that is a Q-node contributes nothing.
    """
    out: dict[tuple[str, int], int] = {}
    for tid in _topological(inst):
        nodes = inst.trees[tid].internal_nodes()
        for idx, (kind, parts) in enumerate(nodes):
            if kind != pq.PNODE:
                continue
            omega = 0
            for a in inst.children(tid):
                child_nodes = inst.trees[a.target].internal_nodes()
                if any(
                    _separated_triple(list(cp), list(parts), a.phi) for _, cp in child_nodes
                ):
                    omega += 1
            total = omega
            for a in inst.parents(tid):
                fixed_in_parent = fixing_nodes(inst, a, idx)
                if not fixed_in_parent:
                    continue
                j = fixed_in_parent[0]
                if inst.trees[a.source].internal_nodes()[j][0] == pq.PNODE:
                    total += out[(a.source, j)] - 1
            out[(tid, idx)] = total
    return out


def is_2fixed(inst: SpqoInstance) -> bool:
    return all(v <= 2 for v in fixedness(inst).values())


def check_solution(inst: SpqoInstance, sol: Mapping[str, CircularOrder]) -> bool:
    """Every order is represented by its tree and every arc is satisfied."""
    missing = set(inst.trees) - set(sol)
    if missing:
        raise SpqoError(f"solution misses trees {sorted(missing)}")
    for tid, tree in inst.trees.items():
        if set(sol[tid]) != tree.ground or not pq.contains(tree, sol[tid]):
            return False
    for a in inst.arcs:
        if sol[a.source].restrict(a.phi.values()) != sol[a.target].map(a.phi.__getitem__):
            return False
    return True


def _check_supported(inst: SpqoInstance) -> tuple[list[str], list[str]]:
    sources, sinks = [], []
    for tid in sorted(inst.trees):
        ins, outs = inst.parents(tid), inst.children(tid)
        if ins and outs:
            raise UnsupportedInstance(f"tree {tid} has both parents and children")
        if len(outs) > 2 or len(ins) > 2:
            raise UnsupportedInstance(f"tree {tid} has more than two neighbours")
        (sinks if ins else sources).append(tid)
    return sources, sinks


def solve(inst: SpqoInstance) -> dict[str, CircularOrder] | None:
    """Exact search; returns a checked solution or None when infeasible."""
    sources, sinks = _check_supported(inst)
    if inst.infeasible:
        return None

    # walk depth-first through shared sinks so that, on the chains and cycles
    # the torus pipeline produces, few sinks are open at any time
    neighbours: dict[str, set[str]] = defaultdict(set)
    for s in sinks:
        ps = [a.source for a in inst.parents(s)]
        for p in ps:
            neighbours[p].update(q for q in ps if q != p)
    order: list[str] = []
    seen: set[str] = set()
    for start in sorted(sources, key=lambda t: (inst.trees[t].count(), t)):
        if start in seen:
            continue
        stack = [start]
        while stack:
            s = stack.pop()
            if s in seen:
                continue
            seen.add(s)
            order.append(s)
            stack.extend(sorted(neighbours[s] - seen, reverse=True))

    child_arcs = {s: inst.children(s) for s in sources}
    sink_orders: dict[str, CircularOrder] = {}
    sink_owner: dict[str, str] = {}
    chosen: dict[str, CircularOrder] = {}
    rank = {sid: i for i, sid in enumerate(order)}
    # a sink stops mattering once its last parent has been placed
    last_parent = {s: max(rank[a.source] for a in inst.parents(s)) for s in sinks}
    failed: set = set()
    # a source matters only through its restrictions to the arc images
    visible: dict[str, PQTree] = {}
    for sid in sources:
        image = frozenset(x for a in child_arcs[sid] for x in a.phi.values())
        t = inst.trees[sid]
        visible[sid] = pq.project(t, image) if image and image != t.ground else t

    def state(i: int) -> tuple:
        return i, tuple(sorted((t, o.elems) for t, o in sink_orders.items() if last_parent[t] >= i))

    def induced(o: CircularOrder, a: Arc) -> CircularOrder:
        inverse = {v: k for k, v in a.phi.items()}
        return o.restrict(inverse).map(inverse.__getitem__)

    def search(i: int) -> bool:
        if i == len(order):
            return True
        key = state(i)
        if key in failed:
            return False
        sid = order[i]
        tree = visible[sid]
        fixed = [a for a in child_arcs[sid] if a.target in sink_orders]
        if fixed:
            # only orders agreeing with an already fixed sink are worth trying
            a = max(fixed, key=lambda a: len(a.phi))
            candidates = pq.orders_extending(tree, sink_orders[a.target].map(a.phi.__getitem__))
        else:
            candidates = tree.orders()
        for o in candidates:
            placed = []
            ok = True
            for a in child_arcs[sid]:
                sub = induced(o, a)
                if a.target in sink_orders:
                    if sink_orders[a.target] != sub:
                        ok = False
                        break
                else:
                    if not pq.contains(inst.trees[a.target], sub):
                        ok = False
                        break
                    sink_orders[a.target] = sub
                    sink_owner[a.target] = sid
                    placed.append(a.target)
            if ok:
                chosen[sid] = o
                if search(i + 1):
                    return True
                del chosen[sid]
            for t in placed:
                del sink_orders[t]
                del sink_owner[t]
        failed.add(key)
        return False

    if not search(0):
        return None
    sol = {
        sid: o if visible[sid] is inst.trees[sid] else next(pq.orders_extending(inst.trees[sid], o))
        for sid, o in chosen.items()
    }
    for s in sinks:
        sol[s] = sink_orders[s]
    if not check_solution(inst, sol):
        raise AssertionError("solver produced an invalid solution")
    return sol


def dump(inst: SpqoInstance) -> str:
    """Readable text description of the trees and arcs."""
    lines = ["trees:"]
    for tid in sorted(inst.trees):
        lines.append(f"  {tid}: {inst.trees[tid].describe()}")
    lines.append("arcs:")
    for a in inst.arcs:
        mapping = ", ".join(f"{k}->{v}" for k, v in sorted(a.phi.items()))
        lines.append(f"  {a.source} => {a.target} [{mapping}]")
    return "\n".join(lines)


def brute_force_solutions(inst: SpqoInstance) -> Iterable[dict[str, CircularOrder]]:
    """Every solution, by cross product of enumerated tree orders (tiny instances only)."""
    from itertools import product

    ids = sorted(inst.trees)
    choices = [pq.enumerate_orders(inst.trees[t]) for t in ids]
    for combo in product(*choices):
        sol = dict(zip(ids, combo))
        if check_solution(inst, sol):
            yield sol
