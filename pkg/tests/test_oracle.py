"""Tests for the BFS max-flow oracle and its edge-set variant."""

import numpy as np
import pytest

from apconn.graph import Digraph, gen_random
from apconn.oracle import (
    all_pairs_oracle,
    disjoint_paths_between_edge_sets,
    max_flow,
    max_flow_decomposed,
)


def k4() -> Digraph:
    edges = [(u, v) for u in range(4) for v in range(4) if u != v]
    return Digraph(4, edges)


def diamond() -> Digraph:
    """0 -> {1, 2} -> 3 plus a direct 0 -> 3 edge; lambda(0, 3) = 3."""
    return Digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)])


def random_corpus(count: int = 12) -> list[Digraph]:
    graphs = []
    for i in range(count):
        rng = np.random.default_rng([1701, i])
        n = int(rng.integers(4, 8))
        m = int(rng.integers(n, n * (n - 1) + 1))
        graphs.append(gen_random(n, m, rng))
    return graphs


def test_single_edge():
    g = Digraph(2, [(0, 1)])
    assert max_flow(g, 0, 1) == 1
    assert max_flow(g, 1, 0) == 0


def test_diamond_value():
    assert max_flow(diamond(), 0, 3) == 3


def test_k4_all_pairs_three():
    lam = all_pairs_oracle(k4())
    expected = np.full((4, 4), 3, dtype=np.int64)
    np.fill_diagonal(expected, 0)
    assert np.array_equal(lam, expected)


def test_directed_cycle_is_one_everywhere():
    n = 6
    g = Digraph(n, [(v, (v + 1) % n) for v in range(n)])
    lam = all_pairs_oracle(g)
    for s in range(n):
        for t in range(n):
            assert lam[s, t] == (0 if s == t else 1)


def test_same_vertex_is_zero():
    g = diamond()
    assert max_flow(g, 2, 2) == 0
    assert max_flow_decomposed(g, 2, 2) == (0, [])


def test_vertex_range_validated():
    g = diamond()
    with pytest.raises(ValueError, match="range"):
        max_flow(g, 0, 4)
    with pytest.raises(ValueError, match="range"):
        max_flow(g, -1, 0)


def test_all_pairs_matches_single_runs():
    for g in random_corpus(6):
        lam = all_pairs_oracle(g)
        for s in range(g.n):
            for t in range(g.n):
                assert lam[s, t] == max_flow(g, s, t)


def test_decomposition_walks_are_valid_and_disjoint():
    for g in random_corpus(8):
        lam = all_pairs_oracle(g)
        for s in range(g.n):
            for t in range(g.n):
                if s == t:
                    continue
                value, walks = max_flow_decomposed(g, s, t)
                assert value == lam[s, t]
                assert len(walks) == value
                seen: set[int] = set()
                for walk in walks:
                    assert g.tail(walk[0]) == s
                    assert g.head(walk[-1]) == t
                    for e, f in zip(walk, walk[1:]):
                        assert g.head(e) == g.tail(f)
                    for e in walk:
                        assert e not in seen
                        seen.add(e)


def test_deleting_an_edge_decreases_flow_by_at_most_one():
    for g in random_corpus(4):
        rng = np.random.default_rng([42, g.n, g.m])
        e = int(rng.integers(g.m))
        kept = [g.edges[i] for i in range(g.m) if i != e]
        g2 = Digraph(g.n, kept)
        for s in range(g.n):
            for t in range(g.n):
                before = max_flow(g, s, t)
                after = max_flow(g2, s, t)
                assert after <= before <= after + 1


def test_edge_set_variant_matches_vertex_flow():
    for g in random_corpus(8):
        rng = np.random.default_rng([7, g.n, g.m])
        for _ in range(6):
            s = int(rng.integers(g.n))
            t = int(rng.integers(g.n))
            if s == t:
                continue
            r = disjoint_paths_between_edge_sets(g, g.out_edges(s), g.in_edges(t))
            assert r == max_flow(g, s, t)


def test_edge_in_both_sets_is_a_length_one_walk():
    g = Digraph(2, [(0, 1)])
    assert disjoint_paths_between_edge_sets(g, [0], [0]) == 1


def test_edge_set_variant_validates_ids():
    g = diamond()
    with pytest.raises(ValueError, match="out of range"):
        disjoint_paths_between_edge_sets(g, [0, 9], [1])


def test_edge_set_variant_empty_sets():
    g = diamond()
    assert disjoint_paths_between_edge_sets(g, [], [0]) == 0
    assert disjoint_paths_between_edge_sets(g, [0], []) == 0
