"""Tests for the k-bounded solver, its gadget, and the low-rank algebra."""

import numpy as np
import pytest

from apconn.field import GF2q
from apconn.graph import Digraph, gen_random
from apconn.kapc import (
    LowRankFactors,
    build_gadget,
    sample_factors,
    solve_kapc,
    structured_cb,
    verify_woodbury_identity,
)
from apconn.apc import solve_apc
from apconn.linalg import SingularMatrixError
from apconn.oracle import all_pairs_oracle


def diamond() -> Digraph:
    return Digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)])


def random_corpus(count: int = 6) -> list[Digraph]:
    graphs = []
    for i in range(count):
        rng = np.random.default_rng([6174, i])
        n = int(rng.integers(4, 8))
        m = int(rng.integers(n, n * (n - 1) + 1))
        graphs.append(gen_random(n, m, rng))
    return graphs


def sampled_factors(g: Digraph, k: int, seed: int = 0) -> LowRankFactors:
    gg = build_gadget(g, k)
    return sample_factors(gg, GF2q(32), np.random.default_rng([seed, 0, 0]))


def test_gadget_counts_isolated_vertex():
    gg = build_gadget(Digraph(1, []), 2)
    assert gg.n_new == 3 and gg.graph.n == 3
    assert gg.m_new == 4 and gg.graph.m == 4


def test_gadget_counts_single_edge():
    gg = build_gadget(Digraph(2, [(0, 1)]), 1)
    assert gg.n_new == 6 and gg.m_new == 5
    assert gg.graph.edges[0] == (gg.v_out(0), gg.v_in(1))


def test_gadget_wiring():
    g = diamond()
    k = 2
    gg = build_gadget(g, k)
    for e, (u, v) in enumerate(g.edges):
        assert gg.graph.edges[e] == (gg.v_out(u), gg.v_in(v))
    for v in range(g.n):
        assert len(gg.out_parallel(v)) == k
        assert len(gg.in_parallel(v)) == k
        for e in gg.out_parallel(v):
            assert gg.graph.edges[e] == (v, gg.v_out(v))
        for e in gg.in_parallel(v):
            assert gg.graph.edges[e] == (gg.v_in(v), v)
    assert list(gg.e_out) == [e for v in range(g.n) for e in gg.out_parallel(v)]
    assert list(gg.e_in) == [e for v in range(g.n) for e in gg.in_parallel(v)]


def test_gadget_rejects_nonpositive_k():
    with pytest.raises(ValueError, match="at least 1"):
        build_gadget(diamond(), 0)


@pytest.mark.parametrize("k", [1, 2])
def test_gadget_clamps_connectivity_exactly(k):
    for g in random_corpus(4):
        lam = all_pairs_oracle(g)
        gg = build_gadget(g, k)
        lam_gg = all_pairs_oracle(gg.graph)
        for s in range(g.n):
            for t in range(g.n):
                assert lam_gg[s, t] == min(k, lam[s, t])


def test_structured_cb_matches_dense_product():
    for g in [diamond(), random_corpus(1)[0]]:
        for k in [1, 2, 3]:
            factors = sampled_factors(g, k, seed=k)
            structured_cb(factors, dense_check=True)


def test_woodbury_identity_on_draws():
    for seed in range(3):
        for attempt in range(8):
            gg = build_gadget(diamond(), 2)
            rng = np.random.default_rng([seed, 0, attempt])
            factors = sample_factors(gg, GF2q(32), rng)
            try:
                assert verify_woodbury_identity(factors)
                break
            except SingularMatrixError:
                continue
        else:
            pytest.fail("every draw came out singular")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_kapc_matches_clamped_oracle(k):
    for g in random_corpus(4):
        res = solve_kapc(g, k, seed=7)
        assert np.array_equal(res.values, np.minimum(k, all_pairs_oracle(g)))


def test_kapc_monotone_in_k():
    g = random_corpus(3)[2]
    prev = None
    for k in [1, 2, 3]:
        values = solve_kapc(g, k, seed=1).values
        if prev is not None:
            assert (prev <= values).all()
        prev = values


def test_kapc_result_metadata():
    res = solve_kapc(diamond(), 2, seed=4)
    assert res.k == 2
    assert res.q == 16
    assert res.seed == 4
    assert res.invert_dim == 2 * 12  # k * n_new for the one component
    assert set(res.timings) == {"build", "invert", "product", "ranks"}


def test_kapc_reproducible():
    g = random_corpus(2)[0]
    a = solve_kapc(g, 2, seed=13)
    b = solve_kapc(g, 2, seed=13)
    assert np.array_equal(a.values, b.values)


def test_large_k_delegates_to_exact_solver():
    g = diamond()
    res = solve_kapc(g, 10, seed=5)
    exact = solve_apc(g, seed=5)
    assert res.k is None
    assert np.array_equal(res.values, exact.values)
    assert (res.q, res.retries, res.invert_dim) == (
        exact.q,
        exact.retries,
        exact.invert_dim,
    )


def test_kapc_disconnected_components():
    g = Digraph(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
    res = solve_kapc(g, 1)
    expected = np.zeros((4, 4), dtype=np.int64)
    expected[0, 1] = expected[1, 0] = 1
    expected[2, 3] = expected[3, 2] = 1
    assert np.array_equal(res.values, expected)


def test_kapc_validation():
    with pytest.raises(ValueError, match="at least 1"):
        solve_kapc(diamond(), 0)
    with pytest.raises(ValueError, match="simple"):
        solve_kapc(Digraph(2, [(0, 1), (0, 1)]), 1)


def test_kapc_unsafe_flag():
    g = random_corpus(1)[0]
    assert g.n >= 5
    res = solve_kapc(g, 2, q=16, seed=0)
    assert res.unsafe and res.q == 16
