"""Randomized algebraic all-pairs edge connectivity for directed graphs."""

__version__ = "0.1.0"

from .apc import ConnectivityResult, RetryExhaustedError, connectivity_pair, solve_apc
from .field import GF2q, field_for_instance
from .graph import Digraph, gen_random, read_edge_list, write_edge_list
from .kapc import build_gadget, solve_kapc
from .oracle import all_pairs_oracle, max_flow

__all__ = [
    "ConnectivityResult",
    "Digraph",
    "GF2q",
    "RetryExhaustedError",
    "all_pairs_oracle",
    "build_gadget",
    "connectivity_pair",
    "field_for_instance",
    "gen_random",
    "max_flow",
    "read_edge_list",
    "solve_apc",
    "solve_kapc",
    "write_edge_list",
    "__version__",
]
