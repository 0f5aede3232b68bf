"""k-bounded all-pairs connectivity: min(k, lambda) for every pair.

Exact connectivity needs an m x m inverse; when only values up to k matter,
a degree-reduction gadget plus a low-rank factorization shrink the inversion
to dimension k * n_new:

  gadget: each vertex v becomes (in(v), v, out(v)) joined by k parallel
  edges in(v) -> v and v -> out(v); each original edge (u, v) becomes
  (out(u), in(v)). Between original vertices every path now threads
  bottlenecks of width k, so connectivity in the gadget is exactly
  min(k, lambda) - deterministically, with n_new = 3n and m_new = m + 2kn.

  algebra: the random edge-adjacency matrix of the gadget factors as BC
  with inner dimension k * n_new: B[e, (v, j)] is random where head(e) = v,
  C[(v, j), f] is random where tail(f) = v. Writing W = (I - CB)^{-1},
  the inverse (I - BC)^{-1} equals I + BWC, and its rank on the block
  (E_out(s), E_in(t)) - a k x k block, since s has exactly k gadget
  out-edges - equals min(k, lambda(s, t)) with probability at least
  1 - 1/n when 2^q >= 12 n^6 (n the original vertex count). The identity
  term never lands in those blocks because E_out(s) and E_in(t) are
  disjoint edge sets.

The solver materializes M = B~ W C~ (rows E_out, columns E_in, grouped per
original vertex with the k parallel edges in insertion order) and reads
each pair's answer off one k x k block.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import linalg
from .apc import (
    DEFAULT_MAX_RETRIES,
    ConnectivityResult,
    _invert_with_retries,
    solve_apc,
)
from .field import GF2q, field_for_instance
from .graph import Digraph, weak_components
from .linalg import SingularMatrixError


@dataclass(frozen=True)
class Gadget:
    """Degree-reduction gadget over a base graph.

    Vertex ids in graph: original v at v, in(v) at n + v, out(v) at 2n + v.
    Edge ids: original edge e keeps id e as (out(u), in(v)); then the k
    parallel (v, out(v)) edges per vertex, then the k parallel (in(v), v)
    edges per vertex, both in vertex order with the j-th parallel edge j-th.
    """

    base_n: int
    base_m: int
    k: int
    graph: Digraph

    @property
    def n_new(self) -> int:
        return 3 * self.base_n

    @property
    def m_new(self) -> int:
        return self.base_m + 2 * self.k * self.base_n

    def v_in(self, v: int) -> int:
        return self.base_n + v

    def v_out(self, v: int) -> int:
        return 2 * self.base_n + v

    def out_parallel(self, v: int) -> range:
        """Ids of the k parallel (v, out(v)) edges."""
        return range(self.base_m + v * self.k, self.base_m + (v + 1) * self.k)

    def in_parallel(self, v: int) -> range:
        """Ids of the k parallel (in(v), v) edges."""
        base = self.base_m + self.base_n * self.k
        return range(base + v * self.k, base + (v + 1) * self.k)

    @property
    def e_out(self) -> range:
        """All edges leaving original vertices, grouped by vertex."""
        return range(self.base_m, self.base_m + self.base_n * self.k)

    @property
    def e_in(self) -> range:
        """All edges entering original vertices, grouped by vertex."""
        return range(
            self.base_m + self.base_n * self.k,
            self.base_m + 2 * self.base_n * self.k,
        )


def build_gadget(g: Digraph, k: int) -> Gadget:
    """Expand g so every vertex's degree is capped by width-k bottlenecks."""
    if k < 1:
        raise ValueError("k must be at least 1")
    n = g.n
    edges: list[tuple[int, int]] = [(2 * n + u, n + v) for u, v in g.edges]
    for v in range(n):
        edges.extend([(v, 2 * n + v)] * k)
    for v in range(n):
        edges.extend([(n + v, v)] * k)
    gg = Gadget(base_n=n, base_m=g.m, k=k, graph=Digraph(3 * n, edges))
    assert not set(gg.e_out) & set(gg.e_in)
    return gg


@dataclass
class LowRankFactors:
    """Random factors B (m_new x k*n_new) and C (k*n_new x m_new) whose
    product BC is a random edge-adjacency matrix of the gadget. Column
    (row) index (v, j) lives at v * k + j."""

    gadget: Gadget
    fld: GF2q
    b: np.ndarray
    c: np.ndarray

    @property
    def b_out(self) -> np.ndarray:
        """Rows of B for edges leaving original vertices (B~)."""
        return self.b[self.gadget.e_out.start : self.gadget.e_out.stop, :]

    @property
    def c_in(self) -> np.ndarray:
        """Columns of C for edges entering original vertices (C~)."""
        return self.c[:, self.gadget.e_in.start : self.gadget.e_in.stop]


def sample_factors(
    gg: Gadget, fld: GF2q, rng: np.random.Generator, *, enforce_bound: bool = True
) -> LowRankFactors:
    """Draw B then C, edges ascending, k values per edge.

    The field bound is stated in terms of the original vertex count.
    """
    if enforce_bound:
        fld.check_instance(gg.base_n)
    g = gg.graph
    k = gg.k
    b = np.zeros((gg.m_new, k * gg.n_new), dtype=np.uint64)
    c = np.zeros((k * gg.n_new, gg.m_new), dtype=np.uint64)
    for e in range(gg.m_new):
        h = g.head(e)
        b[e, h * k : (h + 1) * k] = fld.random_elements(rng, k)
    for f in range(gg.m_new):
        t = g.tail(f)
        c[t * k : (t + 1) * k, f] = fld.random_elements(rng, k)
    return LowRankFactors(gadget=gg, fld=fld, b=b, c=c)


def structured_cb(factors: LowRankFactors, *, dense_check: bool = False) -> np.ndarray:
    """CB without forming an m_new-sized product.

    CB[(u, i), (v, j)] sums c_ie * b_ej over edges e from u to v. In the
    gadget only three shapes of (u, v) carry edges:
      - v original: all k parallel edges (in(v), v), so u = in(v)
      - u original: all k parallel edges (u, out(u)), so v = out(u)
      - u = out(w), v = in(z): the single replaced edge (w, z), if any
    for O(n k^3 + (n k)^2) field work. dense_check recomputes CB as a full
    product and compares (test hook).
    """
    gg = factors.gadget
    fld = factors.fld
    k = gg.k
    b, c = factors.b, factors.c
    mul = fld.mul
    cb = np.zeros((k * gg.n_new, k * gg.n_new), dtype=np.uint64)

    for v in range(gg.base_n):
        u = gg.v_in(v)
        for i in range(k):
            for j in range(k):
                acc = 0
                for e in gg.in_parallel(v):
                    acc ^= mul(int(c[u * k + i, e]), int(b[e, v * k + j]))
                cb[u * k + i, v * k + j] = acc
        w = gg.v_out(v)
        for i in range(k):
            for j in range(k):
                acc = 0
                for e in gg.out_parallel(v):
                    acc ^= mul(int(c[v * k + i, e]), int(b[e, w * k + j]))
                cb[v * k + i, w * k + j] = acc

    for e, (w, z) in enumerate(gg.graph.edges[: gg.base_m]):
        # w = out(w0), z = in(z0) by construction
        for i in range(k):
            ci = int(c[w * k + i, e])
            if ci == 0:
                continue
            for j in range(k):
                cb[w * k + i, z * k + j] ^= mul(ci, int(b[e, z * k + j]))

    if dense_check:
        dense = linalg.matmul(c, b, fld)
        if not np.array_equal(cb, dense):
            raise AssertionError("structured CB disagrees with dense product")
    return cb


def verify_woodbury_identity(factors: LowRankFactors) -> bool:
    """Exact check of (I - BC)^{-1} = I + B (I - CB)^{-1} C on a draw.

    Raises SingularMatrixError if either side's inverse does not exist for
    this draw (resample and retry in that case).
    """
    gg = factors.gadget
    fld = factors.fld
    big = linalg.invert(
        linalg.identity(gg.m_new) ^ linalg.matmul(factors.b, factors.c, fld), fld
    )
    small = linalg.invert(
        linalg.identity(gg.k * gg.n_new) ^ linalg.matmul(factors.c, factors.b, fld),
        fld,
    )
    if big is None or small is None:
        raise SingularMatrixError("singular draw; resample")
    rhs = linalg.identity(gg.m_new) ^ linalg.matmul(
        linalg.matmul(factors.b, small, fld), factors.c, fld
    )
    return np.array_equal(big, rhs)


def solve_kapc(
    g: Digraph,
    k: int,
    *,
    seed: int = 0,
    q: int | None = None,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> ConnectivityResult:
    """min(k, lambda(s, t)) for all ordered pairs of a simple digraph.

    k >= n answers are exact anyway, so those instances delegate to
    solve_apc (and report k as None, making the runs indistinguishable).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not g.is_simple():
        raise ValueError("input graph must be simple")
    if k >= g.n:
        return solve_apc(g, seed=seed, q=q, max_retries=max_retries)
    q_used = field_for_instance(g.n) if q is None else q
    fld = GF2q(q_used)
    values = np.zeros((g.n, g.n), dtype=np.int64)
    timings: dict[str, float] = {}
    retries = 0
    invert_dim = 0
    for ci, comp in enumerate(weak_components(g)):
        cg = comp.graph
        if cg.m == 0:
            continue
        gg = build_gadget(cg, k)

        def build(rng, gg=gg):
            factors = sample_factors(gg, fld, rng, enforce_bound=q is None)
            cb = structured_cb(factors)
            return linalg.identity(k * gg.n_new) ^ cb, factors

        w, factors, failures = _invert_with_retries(
            build, ci, seed, max_retries, fld, timings
        )
        retries += failures
        invert_dim = max(invert_dim, k * gg.n_new)
        t0 = time.perf_counter()
        m_mat = linalg.matmul(
            factors.b_out, linalg.matmul(w, factors.c_in, fld), fld
        )
        timings["product"] = timings.get("product", 0.0) + time.perf_counter() - t0
        t0 = time.perf_counter()
        for ls in range(cg.n):
            for lt in range(cg.n):
                if ls == lt:
                    continue
                block = m_mat[ls * k : (ls + 1) * k, lt * k : (lt + 1) * k]
                values[comp.vertices[ls], comp.vertices[lt]] = linalg.rank(block, fld)
        timings["ranks"] = timings.get("ranks", 0.0) + time.perf_counter() - t0
    return ConnectivityResult(
        values=values,
        k=k,
        q=q_used,
        seed=seed,
        retries=retries,
        unsafe=not fld.is_safe_for(g.n),
        invert_dim=invert_dim,
        timings=timings,
    )
