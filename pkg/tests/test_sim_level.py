from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levelplan import oracle
from levelplan.level_graph import LevelGraph, LevelGraphError
from levelplan.sim_level import (
    BetweennessError,
    BetweennessInstance,
    element_order,
    format_betweenness,
    gen_gadget_2x3,
    gen_gadget_3x2,
    middle_between,
    parse_betweenness,
    reduce_2x2_to_cyclic,
    rows_share_pattern,
    sim_test,
    solve_betweenness,
    test_sim_2x2 as run_2x2,
    u_name,
    v_name,
)

SAT4 = BetweennessInstance(
    ("s1", "s2", "s3", "s4"),
    (("s1", "s2", "s4"), ("s2", "s3", "s4"), ("s1", "s3", "s4")),
)
UNSAT3 = BetweennessInstance(("a", "b", "c"), (("a", "b", "c"), ("b", "c", "a")))
SINGLE = BetweennessInstance(("a", "b", "c"), (("a", "b", "c"),))


def test_betweenness_validation():
    with pytest.raises(BetweennessError):
        BetweennessInstance(("a", "a"), ())
    with pytest.raises(BetweennessError):
        BetweennessInstance(("a", "b", "c"), (("a", "a", "b"),))
    with pytest.raises(BetweennessError):
        BetweennessInstance(("a", "b", "c"), (("a", "b", "z"),))


def test_betweenness_io_roundtrip():
    assert parse_betweenness(format_betweenness(SAT4)) == SAT4
    with pytest.raises(BetweennessError, match="line 2"):
        parse_betweenness("elem a\nnonsense\n")


@pytest.mark.parametrize(
    "b, expected",
    [(SAT4, ("s1", "s2", "s3", "s4")), (UNSAT3, None), (BetweennessInstance(("a", "b"), ()), ("a", "b"))],
)
def test_solve_betweenness(b, expected):
    assert solve_betweenness(b) == expected


def test_solve_betweenness_bound():
    with pytest.raises(BetweennessError):
        solve_betweenness(BetweennessInstance(tuple("abcdefghi"), ()))


def test_reduce_2x2_shape():
    inst = LevelGraph.build(2, {"a": 1, "b": 1, "c": 2, "d": 2}, [("a", "c", 1), ("b", "d", 2)])
    cyc = reduce_2x2_to_cyclic(inst)
    assert {(e.u, e.v) for e in cyc.edges} == {("a", "c"), ("d", "b")}
    assert run_2x2(inst).planar


def test_reduce_2x2_rejects_other_shapes():
    with pytest.raises(LevelGraphError):
        reduce_2x2_to_cyclic(LevelGraph.build(3, {"a": 1}))
    with pytest.raises(LevelGraphError):
        reduce_2x2_to_cyclic(LevelGraph.build(2, {"a": 1, "c": 2}, [("c", "a", 1)]))


def test_identical_k22_graphs():
    vs = {"u1": 1, "u2": 1, "v1": 2, "v2": 2}
    es = [(u, v, g) for g in (1, 2) for u in ("u1", "u2") for v in ("v1", "v2")]
    inst = LevelGraph.build(2, vs, es)
    assert run_2x2(inst).planar == oracle.brute_sim_level(inst).planar


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False), st.floats(0.1, 0.6))
def test_2x2_matches_oracle(rng, density):
    n1, n2 = rng.randint(1, 3), rng.randint(1, 3)
    vs = [(f"a{i}", 1) for i in range(n1)] + [(f"b{i}", 2) for i in range(n2)]
    es = [(f"a{i}", f"b{j}", g) for g in (1, 2) for i in range(n1) for j in range(n2) if rng.random() < density]
    inst = LevelGraph.build(2, vs, es)
    res = run_2x2(inst)
    assert res.planar == oracle.brute_sim_level(inst).planar
    if res.planar:
        assert oracle.crossing_free_linear(inst, res.orders)


def test_gadget_3x2_size():
    g = gen_gadget_3x2(SAT4)
    n, k = 4, 3
    assert len(g.vertices) == n * k + n * (k - 1) + 2 * k == 26
    assert g.graph_ids() == [1, 2, 3]


def test_gadget_2x3_shape():
    g = gen_gadget_2x3(SAT4)
    assert g.k == 3 and g.graph_ids() == [1, 2]
    lvl = g.level_of
    assert all(lvl[e.v] == lvl[e.u] + 1 for e in g.edges)


def test_gadget_input_checks():
    with pytest.raises(BetweennessError):
        gen_gadget_3x2(BetweennessInstance(("a", "b"), ()))
    with pytest.raises(BetweennessError):
        gen_gadget_2x3(BetweennessInstance(("a", "b", "c"), ()))


@pytest.mark.parametrize("gen", [gen_gadget_3x2, gen_gadget_2x3])
@pytest.mark.parametrize("b, expected", [(SAT4, True), (UNSAT3, False), (SINGLE, True)])
def test_gadget_verdicts(gen, b, expected):
    res = sim_test(gen(b))
    assert res.planar is expected
    if res.planar:
        g = gen(b)
        assert oracle.crossing_free_linear(g, res.orders)
        assert b.satisfied_by(element_order(b, res.orders))
        n = len(b.elements)
        assert rows_share_pattern(res.orders, n)


def test_triplet_middle_in_witness():
    res = sim_test(gen_gadget_3x2(SAT4))
    pos = {x: j for j, x in enumerate(SAT4.elements, 1)}
    for i, (a, c, d) in enumerate(SAT4.triplets, 1):
        assert middle_between(res.orders, u_name(i, pos[a]), u_name(i, pos[c]), u_name(i, pos[d]))


def test_element_order_normalizes_reversal():
    orders = {1: tuple(u_name(1, j) for j in (3, 2, 1)), 2: ()}
    assert element_order(SINGLE, orders) == ("a", "b", "c")


def test_names():
    assert u_name(2, 3) == "u2.3" and v_name(1, 4) == "v1.4"
