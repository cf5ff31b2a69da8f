from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levelplan import _kernels_py, kernels, oracle

from _support import random_level_graph

BACKENDS = sorted(kernels.BACKENDS)


@pytest.fixture(params=BACKENDS)
def backend(request):
    before = kernels.backend()
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(before)


def test_compiled_backend_is_built():
    # the package is meant to ship with the extension; the fallback still works without it
    assert "cython" in kernels.BACKENDS


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_switching(backend):
    assert kernels.backend() == backend


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 6), st.randoms(use_true_random=False))
def test_layer_signatures_agree(m, rng):
    lower = [rng.randrange(3) for _ in range(m)]
    upper = [rng.randrange(3) for _ in range(m)]
    expected = _kernels_py.layer_signatures(lower, upper)
    for name in BACKENDS:
        assert kernels.BACKENDS[name].layer_signatures(lower, upper) == expected


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 12), st.randoms(use_true_random=False))
def test_crossing_free_agrees(n, rng):
    pos = [rng.randrange(5) for _ in range(2 * n + 1)]
    us = [rng.randrange(len(pos)) for _ in range(n)]
    vs = [rng.randrange(len(pos)) for _ in range(n)]
    gids = [rng.randrange(2) for _ in range(n)]
    expected = _kernels_py.crossing_free(pos, us, vs, gids)
    for name in BACKENDS:
        assert kernels.BACKENDS[name].crossing_free(pos, us, vs, gids) == expected


def test_crossing_free_examples(backend):
    pos = [0, 1, 0, 1]
    assert kernels.crossing_free(pos, [0, 1], [2, 3], [0, 0])
    assert not kernels.crossing_free(pos, [0, 1], [3, 2], [0, 0])
    assert kernels.crossing_free(pos, [0, 1], [3, 2], [0, 1])  # different graphs may cross


def test_oracles_agree_across_backends():
    rng = random.Random(7)
    graphs = [random_level_graph(rng, rng.randint(2, 3), 3, 0.4) for _ in range(40)]
    verdicts = {}
    before = kernels.backend()
    for name in BACKENDS:
        kernels.use_backend(name)
        verdicts[name] = [
            (oracle.brute_torus(g).planar, oracle.brute_cyclic(g, enumerate_all=True).planar) for g in graphs
        ]
    kernels.use_backend(before)
    assert len({tuple(v) for v in verdicts.values()}) == 1
