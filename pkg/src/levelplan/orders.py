"""Circular orderings compared up to rotation."""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Iterator


class CircularOrder:
    """A cyclic sequence of distinct elements.

    Two orders are equal iff one is a rotation of the other. A reversed
    order is a different object: edge orderings on an oriented surface are
    chiral.
    """

    __slots__ = ("_elems",)

    def __init__(self, elems: Iterable[Hashable]) -> None:
        seq = tuple(elems)
        if len(set(seq)) != len(seq):
            raise ValueError(f"repeated element in circular order {seq!r}")
        if seq:
            i = seq.index(min(seq))
            seq = seq[i:] + seq[:i]
        self._elems = seq

    @property
    def elems(self) -> tuple:
        return self._elems

    def __iter__(self) -> Iterator:
        return iter(self._elems)

    def __len__(self) -> int:
        return len(self._elems)

    def __contains__(self, x: object) -> bool:
        return x in self._elems

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CircularOrder):
            return NotImplemented
        return self._elems == other._elems

    def __hash__(self) -> int:
        return hash(self._elems)

    def __repr__(self) -> str:
        return f"CircularOrder({list(self._elems)!r})"

    def starting_at(self, x: Hashable) -> tuple:
        """Linear sequence obtained by cutting the cycle just before `x`."""
        i = self._elems.index(x)
        return self._elems[i:] + self._elems[:i]

    def restrict(self, keep: Iterable[Hashable]) -> CircularOrder:
        keep = set(keep)
        return CircularOrder(e for e in self._elems if e in keep)

    def reversed(self) -> CircularOrder:
        return CircularOrder(reversed(self._elems))

    def map(self, fn: Callable[[Hashable], Hashable]) -> CircularOrder:
        return CircularOrder(fn(e) for e in self._elems)

    def is_suborder_of(self, other: CircularOrder) -> bool:
        return other.restrict(self._elems) == self


def all_circular_orders(elems: Iterable[Hashable]) -> Iterator[CircularOrder]:
    """Every circular order on `elems`, each exactly once, in lexicographic order."""
    from itertools import permutations

    items = sorted(set(elems))
    if not items:
        yield CircularOrder(())
        return
    first, rest = items[0], items[1:]
    for perm in permutations(rest):
        yield CircularOrder((first, *perm))


def is_consecutive(order: CircularOrder, subset: Iterable[Hashable]) -> bool:
    """True iff the elements of `subset` form one contiguous block of `order`."""
    sub = set(subset)
    seq = order.elems
    n = len(seq)
    if len(sub) <= 1 or len(sub) >= n:
        return True
    # count boundaries between inside and outside while walking the cycle
    changes = sum((seq[i] in sub) != (seq[(i + 1) % n] in sub) for i in range(n))
    return changes == 2
