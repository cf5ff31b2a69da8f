"""Unrooted PQ-trees representing sets of circular orderings.

A tree is stored rooted at an anchor leaf, the smallest ground element.
Cutting every represented circular ordering just before the anchor turns it
into a linear ordering of the remaining elements, so the rest of the tree is
an ordinary rooted PQ-tree over those elements. A circular consecutivity
constraint on ``X`` becomes a linear one on ``X`` (anchor not in ``X``) or on
its complement (anchor in ``X``).

Internal nodes are nested tuples ``(kind, children)``; leaves are
``("L", name)``. Every constructor goes through :func:`_make`, which contracts
unary nodes, turns two-child Q-nodes into P-nodes and fixes a canonical child
order, so two trees over the same ground set are structurally equal exactly
when they represent the same orderings.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator
from functools import lru_cache

from .orders import CircularOrder

LEAF, PNODE, QNODE = "L", "P", "Q"
EMPTY_LABEL, FULL_LABEL, PARTIAL_LABEL = 0, 1, 2

DEFAULT_ENUM_BOUND = 10
DEFAULT_ENUM_CAP = 1_000_000


class PQTreeError(ValueError):
    pass


class TooLargeToEnumerate(PQTreeError):
    pass


class _Infeasible(Exception):
    pass


@lru_cache(maxsize=1 << 16)
def _leaves(node: tuple) -> frozenset:
    if node[0] == LEAF:
        return frozenset((node[1],))
    return frozenset().union(*(_leaves(c) for c in node[1]))


@lru_cache(maxsize=1 << 16)
def _key(node: tuple) -> str:
    if node[0] == LEAF:
        return node[1]
    return min(_key(c) for c in node[1])


def _make(kind: str, children: Iterable[tuple]) -> tuple:
    ch = list(children)
    if len(ch) == 1:
        return ch[0]
    if kind == QNODE and len(ch) == 2:
        kind = PNODE
    if kind == PNODE:
        ch.sort(key=_key)
    elif _key(ch[-1]) < _key(ch[0]):
        ch.reverse()
    return (kind, tuple(ch))


def _group(nodes: list[tuple]) -> tuple:
    return nodes[0] if len(nodes) == 1 else _make(PNODE, nodes)


def _label(node: tuple, s: frozenset) -> int:
    lv = _leaves(node)
    if lv <= s:
        return FULL_LABEL
    if lv.isdisjoint(s):
        return EMPTY_LABEL
    return PARTIAL_LABEL


def _end_sequence(node: tuple, s: frozenset) -> list[tuple]:
    """Children sequence of a partial node rearranged empty-side first, full-side last."""
    kind, children = node
    labels = [_label(c, s) for c in children]
    if kind == PNODE:
        empties = [c for c, l in zip(children, labels) if l == EMPTY_LABEL]
        fulls = [c for c, l in zip(children, labels) if l == FULL_LABEL]
        partials = [c for c, l in zip(children, labels) if l == PARTIAL_LABEL]
        if len(partials) > 1:
            raise _Infeasible
        seq: list[tuple] = []
        if empties:
            seq.append(_group(empties))
        if partials:
            seq.extend(_end_sequence(partials[0], s))
        if fulls:
            seq.append(_group(fulls))
        return seq
    for idx in (range(len(children)), range(len(children) - 1, -1, -1)):
        idx = list(idx)
        if _is_end_pattern([labels[i] for i in idx]):
            seq = []
            for i in idx:
                if labels[i] == PARTIAL_LABEL:
                    seq.extend(_end_sequence(children[i], s))
                else:
                    seq.append(children[i])
            return seq
    raise _Infeasible


def _is_end_pattern(labels: list[int]) -> bool:
    # empty* partial? full*
    i, n = 0, len(labels)
    while i < n and labels[i] == EMPTY_LABEL:
        i += 1
    if i < n and labels[i] == PARTIAL_LABEL:
        i += 1
    while i < n and labels[i] == FULL_LABEL:
        i += 1
    return i == n


def _reduce_root(node: tuple, s: frozenset) -> tuple:
    kind, children = node
    labels = [_label(c, s) for c in children]
    if kind == PNODE:
        empties = [c for c, l in zip(children, labels) if l == EMPTY_LABEL]
        fulls = [c for c, l in zip(children, labels) if l == FULL_LABEL]
        partials = [c for c, l in zip(children, labels) if l == PARTIAL_LABEL]
        if len(partials) > 2:
            raise _Infeasible
        if not partials:
            return _make(PNODE, empties + [_group(fulls)])
        seq = _end_sequence(partials[0], s)
        if fulls:
            seq.append(_group(fulls))
        if len(partials) == 2:
            seq.extend(reversed(_end_sequence(partials[1], s)))
        q = _make(QNODE, seq)
        return _make(PNODE, empties + [q]) if empties else q

    touched = [i for i, l in enumerate(labels) if l != EMPTY_LABEL]
    lo, hi = touched[0], touched[-1]
    if touched != list(range(lo, hi + 1)):
        raise _Infeasible
    if any(labels[i] == PARTIAL_LABEL for i in range(lo + 1, hi)):
        raise _Infeasible
    seq = list(children[:lo])
    if labels[lo] == PARTIAL_LABEL:
        seq.extend(_end_sequence(children[lo], s))
    else:
        seq.append(children[lo])
    seq.extend(children[lo + 1:hi])
    if hi > lo:
        if labels[hi] == PARTIAL_LABEL:
            seq.extend(reversed(_end_sequence(children[hi], s)))
        else:
            seq.append(children[hi])
    seq.extend(children[hi + 1:])
    return _make(QNODE, seq)


def _reduce_linear(node: tuple, s: frozenset) -> tuple:
    """Make `s` consecutive in the frontier of the rooted tree `node`."""
    if _leaves(node) == s:
        return node
    kind, children = node
    for i, c in enumerate(children):
        if s <= _leaves(c):
            ch = list(children)
            ch[i] = _reduce_linear(c, s)
            return _make(kind, ch)
    return _reduce_root(node, s)


def _prune(node: tuple, keep: frozenset) -> tuple | None:
    if node[0] == LEAF:
        return node if node[1] in keep else None
    kept = [p for c in node[1] if (p := _prune(c, keep)) is not None]
    if not kept:
        return None
    return _make(node[0], kept)


def _reroot(anchor: str, root: tuple, new_anchor: str) -> tuple:
    kinds: list[str] = []
    names: list[str | None] = []
    adj: list[list[int]] = []

    def add(kind: str, name: str | None) -> int:
        kinds.append(kind)
        names.append(name)
        adj.append([])
        return len(kinds) - 1

    def build(node: tuple, parent: int) -> int:
        i = add(node[0], node[1] if node[0] == LEAF else None)
        adj[i].append(parent)
        if node[0] != LEAF:
            for c in node[1]:
                adj[i].append(build(c, i))
        return i

    a = add(LEAF, anchor)
    adj[a].append(build(root, a))
    target = names.index(new_anchor)

    def grow(i: int, parent: int) -> tuple:
        if kinds[i] == LEAF:
            return (LEAF, names[i])
        nb = adj[i]
        p = nb.index(parent)
        return _make(kinds[i], [grow(j, i) for j in nb[p + 1:] + nb[:p]])

    return grow(adj[target][0], target)


def _count(node: tuple) -> int:
    if node[0] == LEAF:
        return 1
    sub = math.prod(_count(c) for c in node[1])
    if node[0] == PNODE:
        return sub * math.factorial(len(node[1]))
    return sub * 2


def _frontiers(node: tuple) -> Iterator[tuple]:
    if node[0] == LEAF:
        yield (node[1],)
        return
    kind, children = node
    parts = [list(_frontiers(c)) for c in children]
    if kind == PNODE:
        arrangements = itertools.permutations(range(len(children)))
    else:
        arrangements = iter((tuple(range(len(children))), tuple(reversed(range(len(children))))))
    for arr in arrangements:
        for combo in itertools.product(*(parts[i] for i in arr)):
            yield tuple(itertools.chain.from_iterable(combo))


def _matching(node: tuple, target: tuple, sub: frozenset) -> Iterator[tuple]:
    """Frontiers of `node` whose restriction to `sub` is exactly `target`."""
    if node[0] == LEAF:
        yield (node[1],)
        return
    kind, children = node
    marked = [_leaves(c) & sub for c in children]

    def place(seq: tuple[int, ...], pos: int) -> Iterator[tuple]:
        # children in the fixed sequence `seq`, each covering the next slice of target
        if not seq:
            yield ()
            return
        i, n = seq[0], len(marked[seq[0]])
        if n and frozenset(target[pos:pos + n]) != marked[i]:
            return
        for f in _matching(children[i], target[pos:pos + n], sub):
            for rest in place(seq[1:], pos + n):
                yield f + rest

    def permute(left: tuple[int, ...], pos: int) -> Iterator[tuple]:
        if not left:
            yield ()
            return
        for i in left:
            n = len(marked[i])
            if n and frozenset(target[pos:pos + n]) != marked[i]:
                continue
            others = tuple(j for j in left if j != i)
            for f in _matching(children[i], target[pos:pos + n], sub):
                for rest in permute(others, pos + n):
                    yield f + rest

    idx = tuple(range(len(children)))
    if kind == PNODE:
        yield from permute(idx, 0)
    else:
        yield from place(idx, 0)
        yield from place(idx[::-1], 0)


def _describe(node: tuple) -> str:
    if node[0] == LEAF:
        return node[1]
    inner = ", ".join(_describe(c) for c in node[1])
    return f"{node[0]}({inner})"


class PQTree:
    """Immutable unrooted PQ-tree over a ground set of string labels.

    Build trees with :func:`universal` and the set operations; the EMPTY tree
    (no represented orderings) is an ordinary value, see :attr:`is_empty`.
    """

    __slots__ = ("ground", "_root", "_empty")

    def __init__(self, ground: frozenset, root: tuple | None, empty: bool = False) -> None:
        self.ground = ground
        self._root = root
        self._empty = empty

    @property
    def anchor(self) -> str:
        return min(self.ground)

    @property
    def is_empty(self) -> bool:
        return self._empty

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PQTree):
            return NotImplemented
        return (self.ground, self._root, self._empty) == (other.ground, other._root, other._empty)

    def __hash__(self) -> int:
        return hash((self.ground, self._root, self._empty))

    def __repr__(self) -> str:
        return f"PQTree({self.describe()})"

    def describe(self) -> str:
        if self._empty:
            return "EMPTY{" + ", ".join(sorted(self.ground)) + "}"
        if self._root is None:
            return self.anchor
        return f"{self.anchor} | {_describe(self._root)}"

    def count(self) -> int:
        """Number of represented circular orderings."""
        if self._empty:
            return 0
        return 1 if self._root is None else _count(self._root)

    def is_universal(self) -> bool:
        return self.count() == math.factorial(len(self.ground) - 1)

    def internal_nodes(self) -> list[tuple[str, tuple[frozenset, ...]]]:
        """Internal nodes in preorder as ``(kind, parts)``.

        ``parts`` are the leaf sets of the components left after deleting the
        node, the anchor side first; node ids elsewhere are list indices.
        """
        out: list[tuple[str, tuple[frozenset, ...]]] = []
        if self._empty or self._root is None:
            return out

        def walk(node: tuple) -> None:
            if node[0] == LEAF:
                return
            outside = self.ground - _leaves(node)
            out.append((node[0], (outside, *(_leaves(c) for c in node[1]))))
            for c in node[1]:
                walk(c)

        walk(self._root)
        return out

    def orders(self) -> Iterator[CircularOrder]:
        """Lazily yield every represented circular ordering exactly once."""
        if self._empty:
            return
        if self._root is None:
            yield CircularOrder((self.anchor,))
            return
        a = self.anchor
        for f in _frontiers(self._root):
            yield CircularOrder((a, *f))


def _empty(ground: frozenset) -> PQTree:
    return PQTree(ground, None, empty=True)


def _check_ground(ground: Iterable[str]) -> frozenset:
    g = frozenset(ground)
    if not g:
        raise PQTreeError("PQ-tree needs a nonempty ground set")
    return g


def universal(ground: Iterable[str]) -> PQTree:
    """The star tree representing every circular ordering of `ground`."""
    g = _check_ground(ground)
    rest = sorted(g)[1:]
    if not rest:
        return PQTree(g, None)
    return PQTree(g, _make(PNODE, [(LEAF, x) for x in rest]))


def empty_tree(ground: Iterable[str]) -> PQTree:
    return _empty(_check_ground(ground))


def reduce(t: PQTree, x: Iterable[str]) -> PQTree:
    """Restrict `t` to the orderings in which `x` is consecutive."""
    xs = frozenset(x)
    if not xs <= t.ground:
        raise PQTreeError(f"reduction set {sorted(xs - t.ground)} not in ground set")
    if t.is_empty:
        return t
    s = t.ground - xs if t.anchor in xs else xs
    if len(s) <= 1 or len(s) >= len(t.ground) - 1:
        return t
    try:
        root = _reduce_linear(t._root, s)
    except _Infeasible:
        return _empty(t.ground)
    return PQTree(t.ground, root)


def reduce_all(t: PQTree, sets: Iterable[Iterable[str]]) -> PQTree:
    for x in sets:
        t = reduce(t, x)
        if t.is_empty:
            break
    return t


def project(t: PQTree, x: Iterable[str]) -> PQTree:
    """Tree on `x` representing the restrictions of the orderings of `t`."""
    xs = frozenset(x)
    if not xs:
        raise PQTreeError("projection to an empty set")
    if not xs <= t.ground:
        raise PQTreeError(f"projection set {sorted(xs - t.ground)} not in ground set")
    if t.is_empty:
        return _empty(xs)
    if t._root is None:
        return t
    root = t._root
    new_anchor = min(xs)
    if new_anchor != t.anchor:
        root = _reroot(t.anchor, root, new_anchor)
    return PQTree(xs, _prune(root, xs - {new_anchor}))


def constraint_sets(t: PQTree) -> list[frozenset]:
    """Consecutivity constraints whose common solutions are exactly ``O(t)``."""
    out: list[frozenset] = []
    if t.is_empty or t._root is None:
        return out

    def walk(node: tuple) -> None:
        if node[0] == LEAF:
            return
        kind, children = node
        out.append(_leaves(node))
        if kind == QNODE:
            for i in range(len(children)):
                for j in range(i + 2, len(children) + 1):
                    out.append(frozenset().union(*(_leaves(c) for c in children[i:j])))
        for c in children:
            walk(c)

    walk(t._root)
    return out


def intersect(t1: PQTree, t2: PQTree) -> PQTree:
    if t1.ground != t2.ground:
        raise PQTreeError("intersection of trees over different ground sets")
    if t1.is_empty or t2.is_empty:
        return _empty(t1.ground)
    return reduce_all(t1, constraint_sets(t2))


def contains(t: PQTree, o: CircularOrder) -> bool:
    """Membership test of a circular ordering."""
    if set(o) != t.ground:
        raise PQTreeError("order and tree have different ground sets")
    if t.is_empty:
        return False
    if t._root is None:
        return True
    line = o.starting_at(t.anchor)[1:]
    pos = {e: i for i, e in enumerate(line)}

    def span(node: tuple) -> tuple[int, int]:
        if node[0] == LEAF:
            p = pos[node[1]]
            return p, p
        spans = [span(c) for c in node[1]]
        lo = min(s[0] for s in spans)
        hi = max(s[1] for s in spans)
        if hi - lo + 1 != len(_leaves(node)):
            raise _Infeasible
        if node[0] == QNODE:
            ranks = sorted(range(len(spans)), key=lambda i: spans[i][0])
            if ranks != list(range(len(spans))) and ranks != list(range(len(spans) - 1, -1, -1)):
                raise _Infeasible
        return lo, hi

    try:
        span(t._root)
    except _Infeasible:
        return False
    return True


def enumerate_orders(
    t: PQTree, cap: int = DEFAULT_ENUM_CAP, max_ground: int = DEFAULT_ENUM_BOUND
) -> list[CircularOrder]:
    """All represented orderings; refuses trees that are too large."""
    if t.is_empty:
        return []
    if len(t.ground) > max_ground:
        raise TooLargeToEnumerate(f"ground set of size {len(t.ground)} exceeds {max_ground}")
    if t.count() > cap:
        raise TooLargeToEnumerate(f"{t.count()} orderings exceed cap {cap}")
    return list(t.orders())


def orders_extending(t: PQTree, part: CircularOrder) -> Iterator[CircularOrder]:
    """Represented orderings whose restriction to the elements of `part` equals `part`."""
    sub = frozenset(part)
    if not sub <= t.ground:
        raise PQTreeError("suborder uses elements outside the ground set")
    if t.is_empty:
        return
    if len(sub) <= 2:  # every restriction to at most two elements coincides
        yield from t.orders()
        return
    a = min(sub)
    root = t._root if a == t.anchor else _reroot(t.anchor, t._root, a)
    for f in _matching(root, part.starting_at(a)[1:], sub):
        yield CircularOrder((a, *f))


def from_constraints(ground: Iterable[str], sets: Iterable[Iterable[str]]) -> PQTree:
    return reduce_all(universal(ground), sets)


def map_tree(t: PQTree, mapping: dict[str, str]) -> PQTree:
    """Rename the leaves of `t` through the injective `mapping`."""
    ground = frozenset(mapping[g] for g in t.ground)
    if len(ground) != len(t.ground):
        raise PQTreeError("leaf renaming is not injective")
    if t.is_empty:
        return _empty(ground)
    return from_constraints(ground, ({mapping[x] for x in s} for s in constraint_sets(t)))
