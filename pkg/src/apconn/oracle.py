"""Reference connectivity oracle: BFS augmenting paths on unit capacities.

lambda(s, t) is computed as a max flow where every edge is an arc of
capacity one, so its value is the maximum number of pairwise edge-disjoint
s -> t paths. Everything here is deliberately plain Python with no shared
state with the algebraic solvers; it is the ground truth they are tested
against.
"""

from __future__ import annotations

import numpy as np

from .graph import Digraph


class _Network:
    """Residual network with integer caps; arcs stored as parallel arrays."""

    def __init__(self, nodes: int):
        self.nodes = nodes
        self.adj: list[list[int]] = [[] for _ in range(nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, u: int, v: int, cap: int) -> int:
        aid = len(self.to)
        self.adj[u].append(aid)
        self.to.append(v)
        self.cap.append(cap)
        self.adj[v].append(aid + 1)
        self.to.append(u)
        self.cap.append(0)
        return aid

    def max_flow(self, s: int, t: int) -> int:
        """Unit augmentations until no residual s -> t path remains."""
        total = 0
        adj, to, cap = self.adj, self.to, self.cap
        while True:
            prev_arc = [-1] * self.nodes
            prev_arc[s] = -2
            queue = [s]
            qi = 0
            while qi < len(queue) and prev_arc[t] == -1:
                u = queue[qi]
                qi += 1
                for aid in adj[u]:
                    v = to[aid]
                    if cap[aid] > 0 and prev_arc[v] == -1:
                        prev_arc[v] = aid
                        queue.append(v)
            if prev_arc[t] == -1:
                return total
            v = t
            while v != s:
                aid = prev_arc[v]
                cap[aid] -= 1
                cap[aid ^ 1] += 1
                v = to[aid ^ 1]
            total += 1


def _vertex_network(g: Digraph) -> _Network:
    net = _Network(g.n)
    for u, v in g.edges:
        net.add_arc(u, v, 1)
    return net


def max_flow(g: Digraph, s: int, t: int) -> int:
    """Edge connectivity lambda(s, t); lambda(s, s) is 0 by convention."""
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError("vertex out of range")
    if s == t:
        return 0
    return _vertex_network(g).max_flow(s, t)


def max_flow_decomposed(g: Digraph, s: int, t: int) -> tuple[int, list[tuple[int, ...]]]:
    """Flow value plus edge-disjoint s -> t walks consuming the flow.

    Each returned walk is a tuple of edge ids; no edge appears in two walks.
    Leftover flow cycles (possible byproducts of augmentation) are dropped.
    """
    if s == t:
        return 0, []
    net = _vertex_network(g)
    value = net.max_flow(s, t)
    used: list[list[int]] = [[] for _ in range(g.n)]
    for e in range(g.m):
        if net.cap[2 * e] == 0:  # forward arc saturated
            used[g.tail(e)].append(e)
    walks = []
    for _ in range(value):
        u = s
        walk: list[int] = []
        while u != t:
            e = used[u].pop()
            walk.append(e)
            u = g.head(e)
        walks.append(tuple(walk))
    return value, walks


def all_pairs_oracle(g: Digraph) -> np.ndarray:
    """lambda for every ordered pair, via n^2 max-flow runs."""
    out = np.zeros((g.n, g.n), dtype=np.int64)
    base = _vertex_network(g)
    base_cap = list(base.cap)
    for s in range(g.n):
        for t in range(g.n):
            if s == t:
                continue
            base.cap = list(base_cap)
            out[s, t] = base.max_flow(s, t)
    return out


def disjoint_paths_between_edge_sets(g: Digraph, sources, targets) -> int:
    """Max r such that r edge-disjoint walks pair distinct source edges
    with distinct target edges (each walk starts at an S-edge, ends at a
    T-edge, edges pairwise distinct across all walks).

    Built by splitting every edge e into a unit arc enter(e) -> exit(e),
    wiring exit(e) -> enter(f) wherever head(e) = tail(f), and attaching a
    super source to the S arcs and the T arcs to a super sink. An edge in
    both sets can serve as a length-one walk.
    """
    S = sorted(set(int(e) for e in sources))
    T = sorted(set(int(e) for e in targets))
    for e in S + T:
        if not 0 <= e < g.m:
            raise ValueError(f"edge id {e} out of range")
    net = _Network(2 * g.m + 2)
    src = 2 * g.m
    snk = 2 * g.m + 1
    for e in range(g.m):
        net.add_arc(2 * e, 2 * e + 1, 1)
        for f in g.out_edges(g.head(e)):
            net.add_arc(2 * e + 1, 2 * f, 1)
    for e in S:
        net.add_arc(src, 2 * e, 1)
    for e in T:
        net.add_arc(2 * e + 1, snk, 1)
    return net.max_flow(src, snk)
