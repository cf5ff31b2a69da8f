from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levelplan import pqtree as pq
from levelplan.orders import CircularOrder, all_circular_orders, is_consecutive

from _support import filtered_orders, random_tree

ABCD = list("abcd")


def orders_of(t: pq.PQTree) -> set:
    return set(pq.enumerate_orders(t))


@pytest.mark.parametrize("ground, count", [("abc", 2), ("a", 1), ("abcd", 6), ("abcde", 24)])
def test_universal_counts(ground, count):
    t = pq.universal(ground)
    assert t.count() == count == len(orders_of(t))
    assert t.is_universal()


def test_universal_needs_ground():
    with pytest.raises(pq.PQTreeError):
        pq.universal([])


def test_reduce_pair_keeps_four_orders():
    t = pq.reduce(pq.universal(ABCD), "ab")
    assert orders_of(t) == filtered_orders(ABCD, [["a", "b"]])
    assert len(orders_of(t)) == 4


def test_reduce_by_whole_ground_is_identity():
    t = pq.reduce(pq.universal(ABCD), "ab")
    assert pq.reduce(t, ABCD) == t


def test_three_overlapping_pairs():
    t = pq.reduce_all(pq.universal(ABCD), ["ab", "bc", "ac"])
    # pairwise adjacency of three elements cannot happen on a 4-cycle
    assert t.is_empty
    assert orders_of(t) == filtered_orders(ABCD, [list("ab"), list("bc"), list("ac")])


def test_reduce_contradiction_is_empty():
    t = pq.reduce_all(pq.universal("abcde"), ["ab", "bc", "ca"])
    assert orders_of(t) == filtered_orders(list("abcde"), [list("ab"), list("bc"), list("ca")])
    assert t.is_empty


def test_reduce_rejects_foreign_elements():
    with pytest.raises(pq.PQTreeError):
        pq.reduce(pq.universal("abc"), "az")


@pytest.mark.parametrize(
    "tree, keep, expected",
    [
        (pq.universal(ABCD), "abc", 2),
        (pq.reduce(pq.universal(ABCD), "ab"), "acd", 2),
        (pq.reduce(pq.universal(ABCD), "ab"), "a", 1),
    ],
)
def test_project_examples(tree, keep, expected):
    p = pq.project(tree, keep)
    assert p.ground == frozenset(keep)
    assert p.count() == expected


def test_project_empty_set_rejected():
    with pytest.raises(pq.PQTreeError):
        pq.project(pq.universal("abc"), [])


def test_intersect_examples():
    u = pq.universal(ABCD)
    t1, t2 = pq.reduce(u, "ab"), pq.reduce(u, "cd")
    assert orders_of(pq.intersect(t1, t2)) == filtered_orders(ABCD, [list("ab"), list("cd")])
    assert pq.intersect(t1, u) == t1
    assert pq.intersect(t1, t1) == t1
    with pytest.raises(pq.PQTreeError):
        pq.intersect(t1, pq.universal("abc"))


def test_contains_examples():
    assert pq.contains(pq.universal("abc"), CircularOrder("abc"))
    t = pq.reduce(pq.universal(ABCD), "ab")
    assert not pq.contains(t, CircularOrder("acbd"))
    assert not pq.contains(pq.empty_tree("abc"), CircularOrder("abc"))


def test_enumerate_limits():
    assert pq.enumerate_orders(pq.empty_tree("abc")) == []
    with pytest.raises(pq.TooLargeToEnumerate):
        pq.enumerate_orders(pq.universal("abcdefghijk"))
    with pytest.raises(pq.TooLargeToEnumerate):
        pq.enumerate_orders(pq.universal("abcdefg"), cap=10)


def test_q_node_fixes_chirality_up_to_reversal():
    t = pq.reduce_all(pq.universal("abcde"), ["ab", "bc", "cd", "de"])
    assert orders_of(t) == {CircularOrder("abcde"), CircularOrder("edcba")}


grounds = st.integers(3, 6).map(lambda n: [chr(97 + i) for i in range(n)])


@settings(max_examples=150, deadline=None)
@given(grounds, st.randoms(use_true_random=False))
def test_reduce_matches_filter(ground, rng):
    t = random_tree(rng, ground)
    x = rng.sample(ground, rng.randint(1, len(ground)))
    expected = {o for o in orders_of(t) if is_consecutive(o, x)}
    assert orders_of(pq.reduce(t, x)) == expected


@settings(max_examples=150, deadline=None)
@given(grounds, st.randoms(use_true_random=False))
def test_project_matches_restriction(ground, rng):
    t = random_tree(rng, ground)
    x = rng.sample(ground, rng.randint(1, len(ground)))
    assert orders_of(pq.project(t, x)) == {o.restrict(x) for o in orders_of(t)}


@settings(max_examples=150, deadline=None)
@given(grounds, st.randoms(use_true_random=False))
def test_intersect_matches_set_intersection(ground, rng):
    t1, t2 = random_tree(rng, ground), random_tree(rng, ground)
    assert orders_of(pq.intersect(t1, t2)) == orders_of(t1) & orders_of(t2)


@settings(max_examples=100, deadline=None)
@given(grounds, st.randoms(use_true_random=False))
def test_contains_agrees_with_enumeration(ground, rng):
    t = random_tree(rng, ground)
    members = orders_of(t)
    for o in all_circular_orders(ground):
        assert pq.contains(t, o) == (o in members)


@settings(max_examples=100, deadline=None)
@given(grounds, st.randoms(use_true_random=False))
def test_reduction_order_does_not_matter(ground, rng):
    sets = [rng.sample(ground, rng.randint(2, len(ground) - 1)) for _ in range(3)]
    a = pq.reduce_all(pq.universal(ground), sets)
    b = pq.reduce_all(pq.universal(ground), sets[::-1])
    assert orders_of(a) == orders_of(b)
    assert a == b  # canonical form


@settings(max_examples=100, deadline=None)
@given(grounds, st.randoms(use_true_random=False))
def test_count_and_universality(ground, rng):
    t = random_tree(rng, ground)
    n = len(orders_of(t))
    assert t.count() == n
    assert t.is_universal() == (n == math.factorial(len(ground) - 1))


def test_map_tree_renames():
    t = pq.reduce(pq.universal(ABCD), "ab")
    m = pq.map_tree(t, {"a": "w", "b": "x", "c": "y", "d": "z"})
    assert orders_of(m) == {o.map({"a": "w", "b": "x", "c": "y", "d": "z"}.__getitem__) for o in orders_of(t)}
    with pytest.raises(pq.PQTreeError):
        pq.map_tree(t, {"a": "w", "b": "w", "c": "y", "d": "z"})


def test_internal_nodes_partition_ground():
    t = pq.reduce_all(pq.universal("abcdef"), ["ab", "abc", "de"])
    for kind, parts in t.internal_nodes():
        assert kind in (pq.PNODE, pq.QNODE)
        assert frozenset().union(*parts) == t.ground
        assert sum(map(len, parts)) == len(t.ground)


@settings(max_examples=150, deadline=None)
@given(grounds, st.randoms(use_true_random=False))
def test_orders_extending_matches_filter(ground, rng):
    t = random_tree(rng, ground)
    part = CircularOrder(rng.sample(ground, rng.randint(1, len(ground))))
    expected = {o for o in orders_of(t) if o.restrict(part) == part}
    got = list(pq.orders_extending(t, part))
    assert len(got) == len(set(got))
    assert set(got) == expected


def test_orders_extending_rejects_foreign_elements():
    with pytest.raises(pq.PQTreeError):
        list(pq.orders_extending(pq.universal("abc"), CircularOrder("xyz")))
