"""Exact all-pairs edge connectivity from one random matrix inverse.

Sample an m x m matrix A over GF(2^q) whose (e, f) entry is uniformly
random where head(e) = tail(f) and zero elsewhere, and let M = (I - A)^{-1}.
For every ordered pair, the rank of M restricted to rows E_out(s) and
columns E_in(t) equals lambda(s, t): the submatrix generically attains the
edge-disjoint-path count, and with 2^q >= 12 n^6 a union bound over pairs
puts the failure probability of the whole answer matrix below 1/n.

Weak components are solved independently (cross-component connectivity is
zero); a singular draw of (I - A), which has probability O(nm / 2^q), is
retried with a derived child seed a bounded number of times.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .field import GF2q, field_for_instance
from .graph import Digraph, weak_components

DEFAULT_MAX_RETRIES = 3


class RetryExhaustedError(RuntimeError):
    """Every allowed resample of the random matrix came out singular."""


@dataclass
class ConnectivityResult:
    """Answer matrix plus the run parameters that reproduce it.

    values[s][t] is lambda(s, t), clamped at k when k is not None; the
    diagonal is zero by convention. timings and invert_dim are diagnostics
    (bench fodder) and deliberately not part of the reproducible report.
    """

    values: np.ndarray
    k: int | None
    q: int
    seed: int
    retries: int
    unsafe: bool = False
    invert_dim: int = 0
    timings: dict[str, float] = dc_field(default_factory=dict)


def sample_adjacency(
    g: Digraph, fld: GF2q, rng: np.random.Generator, *, enforce_bound: bool = True
) -> np.ndarray:
    """Random edge-adjacency matrix: uniform entries on composable pairs.

    Draw order is fixed (edges ascending, successors ascending) so a seeded
    rng reproduces the matrix. enforce_bound=False is for callers that
    knowingly probe fields below the 12 n^6 bound.
    """
    if enforce_bound:
        fld.check_instance(g.n)
    m = g.m
    a = np.zeros((m, m), dtype=np.uint64)
    for e in range(m):
        outs = g.out_edges(g.head(e))
        if outs:
            a[e, outs] = fld.random_elements(rng, len(outs))
    return a


def _invert_with_retries(
    build, ci: int, seed: int, max_retries: int, fld: GF2q, timings: dict
) -> tuple[np.ndarray, object, int]:
    """Draw, assemble, invert; resample on singularity.

    build(rng) returns (matrix_to_invert, payload); the payload rides along
    so callers can keep whatever the draw produced. Returns (inverse,
    payload, failed_attempts).
    """
    failures = 0
    for attempt in range(max_retries + 1):
        rng = np.random.default_rng([seed, ci, attempt])
        t0 = time.perf_counter()
        mat, payload = build(rng)
        timings["build"] = timings.get("build", 0.0) + time.perf_counter() - t0
        t0 = time.perf_counter()
        inv = linalg.invert(mat, fld)
        timings["invert"] = timings.get("invert", 0.0) + time.perf_counter() - t0
        if inv is not None:
            return inv, payload, failures
        failures += 1
    raise RetryExhaustedError(
        f"matrix stayed singular through {max_retries + 1} draws"
    )


def solve_apc(
    g: Digraph,
    *,
    seed: int = 0,
    q: int | None = None,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> ConnectivityResult:
    """lambda(s, t) for all ordered pairs of a simple digraph."""
    if not g.is_simple():
        raise ValueError("input graph must be simple")
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

        def build(rng, cg=cg):
            a = sample_adjacency(cg, fld, rng, enforce_bound=q is None)
            return linalg.identity(cg.m) ^ a, None

        minv, _, failures = _invert_with_retries(
            build, ci, seed, max_retries, fld, timings
        )
        retries += failures
        invert_dim = max(invert_dim, cg.m)
        t0 = time.perf_counter()
        for ls in range(cg.n):
            rows = cg.out_edges(ls)
            if not rows:
                continue
            for lt in range(cg.n):
                if ls == lt:
                    continue
                cols = cg.in_edges(lt)
                if not cols:
                    continue
                sub = linalg.submatrix(minv, rows, cols)
                values[comp.vertices[ls], comp.vertices[lt]] = linalg.rank(sub, fld)
        timings["ranks"] = timings.get("ranks", 0.0) + time.perf_counter() - t0
    return ConnectivityResult(
        values=values,
        k=None,
        q=q_used,
        seed=seed,
        retries=retries,
        unsafe=not fld.is_safe_for(g.n),
        invert_dim=invert_dim,
        timings=timings,
    )


def connectivity_pair(
    g: Digraph,
    s: int,
    t: int,
    *,
    seed: int = 0,
    q: int | None = None,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> int:
    """lambda(s, t) alone, from the same draw solve_apc would use.

    The component of s is solved with the seed path solve_apc uses for it,
    so the answer agrees with the corresponding entry of the full solve.
    """
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError("vertex out of range")
    if not g.is_simple():
        raise ValueError("input graph must be simple")
    if s == t:
        return 0
    q_used = field_for_instance(g.n) if q is None else q
    fld = GF2q(q_used)
    for ci, comp in enumerate(weak_components(g)):
        if s not in comp.vertices:
            continue
        if t not in comp.vertices:
            return 0
        cg = comp.graph
        if cg.m == 0:
            return 0
        ls = comp.vertices.index(s)
        lt = comp.vertices.index(t)
        rows = cg.out_edges(ls)
        cols = cg.in_edges(lt)
        if not rows or not cols:
            return 0

        def build(rng, cg=cg):
            a = sample_adjacency(cg, fld, rng, enforce_bound=q is None)
            return linalg.identity(cg.m) ^ a, None

        minv, _, _ = _invert_with_retries(build, ci, seed, max_retries, fld, {})
        return linalg.rank(linalg.submatrix(minv, rows, cols), fld)
    raise AssertionError("unreachable: every vertex is in some component")
