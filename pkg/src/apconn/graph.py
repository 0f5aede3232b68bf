"""Directed graphs with dense integer edge ids, plus generation and I/O.

An edge's id is its position in the edge list; every algorithm in this
package indexes matrices by those ids. Self-loops are rejected at
construction (the connectivity semantics never need them). Parallel edges
are representable because the k-bounded gadget builds them deliberately;
user-facing input is validated as simple at parse time instead.

Edge-list text format: '#' lines are comments, the first data line is
"n m", then exactly m lines "u v" with 0-indexed endpoints separated by a
single space. Writes are canonical: header, edges in id order, single
trailing newline per line, no comments.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence

import numpy as np


class ParseError(ValueError):
    """Malformed edge-list input; message carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Digraph:
    """Immutable-by-convention digraph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "_out", "_in")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = int(n)
        es = []
        out: list[list[int]] = [[] for _ in range(self.n)]
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for eid, (u, v) in enumerate(edges):
            u = int(u)
            v = int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {eid}: endpoint out of range")
            if u == v:
                raise ValueError(f"edge {eid}: self-loops are not allowed")
            es.append((u, v))
            out[u].append(eid)
            inc[v].append(eid)
        self.edges = tuple(es)
        self._out = out
        self._in = inc

    @property
    def m(self) -> int:
        return len(self.edges)

    def tail(self, e: int) -> int:
        return self.edges[e][0]

    def head(self, e: int) -> int:
        return self.edges[e][1]

    def out_edges(self, v: int) -> list[int]:
        """Ids of edges leaving v, ascending."""
        return list(self._out[v])

    def in_edges(self, v: int) -> list[int]:
        """Ids of edges entering v, ascending."""
        return list(self._in[v])

    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Component:
    """One weak component, with maps back to the parent graph.

    graph: the component as a standalone digraph with local ids
    vertices: local vertex i is parent vertex vertices[i] (ascending)
    edge_ids: local edge j is parent edge edge_ids[j] (ascending, so the
        relative edge order of the parent is preserved)
    """

    graph: Digraph
    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]


def weak_components(g: Digraph) -> list[Component]:
    """Split into weakly connected components, ordered by smallest vertex.

    Isolated vertices become singleton components with no edges.
    """
    parent = list(range(g.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)

    roots: dict[int, int] = {}
    members: list[list[int]] = []
    for v in range(g.n):
        r = find(v)
        if r not in roots:
            roots[r] = len(members)
            members.append([])
        members[roots[r]].append(v)

    comps = []
    for verts in members:
        local = {v: i for i, v in enumerate(verts)}
        eids = [e for e, (u, _) in enumerate(g.edges) if find(u) == find(verts[0])]
        sub = Digraph(len(verts), [(local[g.tail(e)], local[g.head(e)]) for e in eids])
        comps.append(Component(sub, tuple(verts), tuple(eids)))
    return comps


def gen_random(
    n: int, m: int, rng: np.random.Generator, *, acyclic: bool = False
) -> Digraph:
    """Uniform random simple digraph with exactly m edges.

    With acyclic=True, a uniform random topological order is drawn first and
    edges are sampled among the pairs it orients, so the result is a DAG.
    Edges are sorted by (tail, head); the same rng state yields the same
    graph.
    """
    if acyclic:
        order = rng.permutation(n)
        pos = np.empty(n, dtype=np.int64)
        pos[order] = np.arange(n)
        cands = [(u, v) for u in range(n) for v in range(n) if u != v and pos[u] < pos[v]]
    else:
        cands = [(u, v) for u in range(n) for v in range(n) if u != v]
    if not 0 <= m <= len(cands):
        raise ValueError(f"m = {m} out of range for n = {n}" + (" acyclic" if acyclic else ""))
    picked = rng.choice(len(cands), size=m, replace=False)
    return Digraph(n, sorted(cands[i] for i in picked))


def read_edge_list(source: str | Path | IO[str]) -> Digraph:
    """Parse the edge-list format; raises ParseError with a line number."""
    if hasattr(source, "read"):
        return _parse_lines(source)
    with open(source, "r", encoding="ascii") as f:
        return _parse_lines(f)


def _parse_lines(f: IO[str]) -> Digraph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    ln = 0
    for ln, raw in enumerate(f, start=1):
        line = raw.rstrip("\n")
        if line.startswith("#"):
            continue
        fields = line.split(" ")
        if len(fields) != 2:
            raise ParseError(ln, f"expected two fields, got {line!r}")
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(ln, f"expected two integers, got {line!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError(ln, "negative header values")
            header = (a, b)
            continue
        n, m = header
        if len(edges) == m:
            raise ParseError(ln, f"more than the declared {m} edges")
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(ln, f"vertex out of range in edge {a} {b}")
        if a == b:
            raise ParseError(ln, f"self-loop at vertex {a}")
        if (a, b) in seen:
            raise ParseError(ln, f"duplicate edge {a} {b}")
        seen.add((a, b))
        edges.append((a, b))
    if header is None:
        raise ParseError(ln + 1, "missing header")
    if len(edges) != header[1]:
        raise ParseError(ln + 1, f"expected {header[1]} edges, got {len(edges)}")
    return Digraph(header[0], edges)


def write_edge_list(g: Digraph, dest: str | Path | IO[str]) -> None:
    """Canonical form: header then edges in id order, bit-exact."""
    if hasattr(dest, "write"):
        _write_lines(g, dest)
        return
    with open(dest, "w", encoding="ascii", newline="") as f:
        _write_lines(g, f)


def _write_lines(g: Digraph, f: IO[str]) -> None:
    f.write(f"{g.n} {g.m}\n")
    for u, v in g.edges:
        f.write(f"{u} {v}\n")
