"""Level planarity testing on the torus and cylinders, and simultaneous level planarity."""

from .level_graph import LevelGraph, LevelGraphError, ParseError, format_level_graph, parse_level_graph
from .orders import CircularOrder
from .pqtree import PQTree
from .sim_level import BetweennessInstance, sim_test
from .torus import TorusEmbedding, TorusResult, test_cyclic, test_radial, test_torus

__all__ = [
    "BetweennessInstance",
    "CircularOrder",
    "LevelGraph",
    "LevelGraphError",
    "PQTree",
    "ParseError",
    "TorusEmbedding",
    "TorusResult",
    "format_level_graph",
    "parse_level_graph",
    "sim_test",
    "test_cyclic",
    "test_radial",
    "test_torus",
]
