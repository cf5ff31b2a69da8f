from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levelplan import oracle
from levelplan.level_graph import (
    LevelGraph,
    LevelGraphError,
    ParseError,
    cyclic_to_torus,
    format_level_graph,
    has_backward_edge,
    is_proper,
    make_proper,
    parse_level_graph,
    radial_to_torus,
)

from _support import K22, TRIANGLE, random_level_graph


def test_build_sorts_levels_and_names_edges():
    g = LevelGraph.build(2, {"b": 2, "a": 1}, [("a", "b"), ("a", "b"), ("a", "b", 2)])
    assert g.levels == (("a", 1), ("b", 2))
    assert [e.id for e in g.edges] == ["a->b", "a->b#2", "a->b@2"]


@pytest.mark.parametrize(
    "k, vertices, edges",
    [
        (0, {}, []),
        (2, {"a": 3}, []),
        (2, [("a", 1), ("a", 2)], []),
        (2, {"a": 1}, [("a", "zz")]),
        (2, {"a": 1}, [("a", "a")]),
    ],
)
def test_build_rejects_bad_input(k, vertices, edges):
    with pytest.raises(LevelGraphError):
        LevelGraph.build(k, vertices, edges)


@pytest.mark.parametrize(
    "g, expected",
    [
        (TRIANGLE, True),
        (LevelGraph.build(3, {"u": 1, "v": 3}, [("u", "v")]), False),
        (LevelGraph.build(3, {"u": 1, "v": 3}), True),
    ],
)
def test_is_proper(g, expected):
    assert is_proper(g) is expected


def test_layers_are_cyclic():
    layers = TRIANGLE.layers()
    assert [len(layer.edges) for layer in layers] == [1, 1, 1]
    assert layers[2].lower == ("a3",) and layers[2].upper == ("a1",)


def test_make_proper_forward():
    g = LevelGraph.build(4, {"u": 1, "v": 4}, [("u", "v")])
    p, sub = make_proper(g)
    assert is_proper(p)
    chain = sub.chains["u->v"]
    assert [p.level_of[x] for x in chain] == [2, 3]


def test_make_proper_wraps_around():
    g = LevelGraph.build(4, {"u": 3, "v": 2}, [("u", "v")])
    p, sub = make_proper(g)
    assert [p.level_of[x] for x in sub.chains["u->v"]] == [4, 1]
    assert is_proper(p)


def test_make_proper_keeps_proper_graphs():
    p, sub = make_proper(TRIANGLE)
    assert p == TRIANGLE and sub.chains == {}


def test_make_proper_rejects_intra_level():
    g = LevelGraph.build(2, {"u": 1, "v": 1}, [("u", "v")])
    with pytest.raises(LevelGraphError, match="intra-level"):
        make_proper(g)


def test_single_level_with_edges_rejected():
    g = LevelGraph.build(1, {"u": 1, "v": 1}, [("u", "v")])
    with pytest.raises(LevelGraphError):
        make_proper(g)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.randoms(use_true_random=False))
def test_make_proper_always_proper(k, rng):
    g = random_level_graph(rng, k, 2, 0.4, proper=False)
    p, sub = make_proper(g)
    assert is_proper(p)
    assert set(sub.edge_origin.values()) == {e.id for e in g.edges}
    assert len(p.edges) == sum(g.span(e) for e in g.edges)


def test_radial_gadget_shape():
    g = LevelGraph.build(2, {"x": 1, "y": 2})
    h = radial_to_torus(g)
    assert len(h.vertices) == 6 and len(h.edges) == 4
    # every added edge runs through the wraparound strip
    assert all(h.level_of[e.u] == 2 and h.level_of[e.v] == 1 for e in h.edges)


def test_gadget_names_avoid_collisions():
    g = LevelGraph.build(2, {"_a": 1, "_w1": 2})
    assert len(radial_to_torus(g).vertices) == 6
    assert len(cyclic_to_torus(g).vertices) == 4


def test_cyclic_gadget_on_triangle():
    h = cyclic_to_torus(TRIANGLE)
    assert (len(h.vertices), len(h.edges)) == (6, 6)
    assert oracle.brute_torus(h).planar


@pytest.mark.parametrize("g", [LevelGraph.build(2, {"x": 1, "y": 2}, [("x", "y")]), K22])
def test_radial_gadget_preserves_verdict(g):
    assert oracle.brute_torus(radial_to_torus(g)).planar == oracle.brute_radial(g).planar is True


def test_has_backward_edge():
    assert has_backward_edge(TRIANGLE)
    assert not has_backward_edge(K22)


GOOD = """\
# a comment
levels 3

v a1 1
v a2 2   # trailing comment
v a3 3
e a1 a2
e a2 a3 2
"""


def test_parse_and_format_roundtrip():
    g = parse_level_graph(GOOD)
    assert g.k == 3 and len(g.edges) == 2 and g.edges[1].graph_id == 2
    assert parse_level_graph(format_level_graph(g)) == g


@pytest.mark.parametrize(
    "text, line",
    [
        ("v a 1\n", 1),
        ("levels x\n", 1),
        ("levels 2\nv a 1\nv a 2\n", 3),
        ("levels 2\nv a 5\n", 2),
        ("levels 2\nv a 1\ne a b\n", 3),
        ("levels 2\nv a 1\nbogus line\n", 3),
        ("levels 2\nv a 1\nv b 2\ne a b 0\n", 4),
        ("levels 0\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_level_graph(text)
    assert info.value.lineno == line


def test_parse_empty_input():
    with pytest.raises(ParseError):
        parse_level_graph("# nothing\n")


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.randoms(use_true_random=False))
def test_format_parse_roundtrip(k, rng):
    g = random_level_graph(rng, k, 3, 0.3, proper=False) if k > 1 else LevelGraph.build(1, {"a1": 1})
    assert parse_level_graph(format_level_graph(g)) == g
