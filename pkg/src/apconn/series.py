"""Symbolic truncated power series over GF(2), for verifying the walk
calculus behind the randomized solvers at desk scale.

One indeterminate x_(e,f) exists for every composable edge pair (head(e) =
tail(f)). A walk <e_1, ..., e_l> has weight prod_j x_(e_j, e_{j+1}); a
single-edge walk has weight 1. Monomials are multisets of pairs stored as
sorted tuples; a polynomial is the set of monomials with coefficient 1,
since over GF(2) addition is symmetric difference and coefficients are 0/1.

The symbolic edge-adjacency matrix X has X[e,f] = x_(e,f) where composable.
Its geometric series cut at total degree D, sum_{l=0..D} X^l, is the formal
inverse of (I - X) there: entry (e, f) enumerates walks from e to f of at
most D+1 edges, one monomial per walk, mod 2. Determinants of its r x r
submatrices (rows S, cols T) enumerate exactly the collections of r
pairwise edge-disjoint walks pairing distinct S-edges with distinct
T-edges: collections sharing an edge cancel mod 2, which
verify_cancellation demonstrates by brute force.

Everything here is exhaustive enumeration over tiny graphs (m <= 8); the
point is auditability, not speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

from .graph import Digraph

# A monomial: sorted tuple of (e, f) variable indices, with multiplicity.
Monomial = tuple[tuple[int, int], ...]
# A GF(2) polynomial: the set of monomials whose coefficient is 1.
Poly = set

ONE: Monomial = ()

_DESK_EDGES = 8
_DESK_LENGTH = 8
_DESK_R = 3


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b))


def poly_mul(p: Poly, q: Poly, bound: int) -> Poly:
    """Product dropping every monomial of degree above bound."""
    out: Poly = set()
    for ma in p:
        da = len(ma)
        for mb in q:
            if da + len(mb) > bound:
                continue
            m = mono_mul(ma, mb)
            if m in out:
                out.remove(m)
            else:
                out.add(m)
    return out


@dataclass
class SeriesMatrix:
    """Square matrix of GF(2) polynomials indexed by edge ids.

    bound is the shared truncation degree; None means no truncation has
    been applied (entries are exact, as in the degree-1 matrix X).
    """

    entries: list[list[Poly]]
    bound: int | None

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]


def series_identity(m: int) -> SeriesMatrix:
    return SeriesMatrix([[{ONE} if i == j else set() for j in range(m)] for i in range(m)], None)


def symbolic_x(g: Digraph) -> SeriesMatrix:
    """The edge-adjacency matrix of indeterminates."""
    m = g.m
    entries: list[list[Poly]] = [[set() for _ in range(m)] for _ in range(m)]
    for e in range(m):
        for f in g.out_edges(g.head(e)):
            entries[e][f] = {((e, f),)}
    return SeriesMatrix(entries, None)


def series_add(a: SeriesMatrix, b: SeriesMatrix) -> SeriesMatrix:
    if a.size != b.size:
        raise ValueError("size mismatch")
    bound = a.bound if b.bound is None else (b.bound if a.bound is None else min(a.bound, b.bound))
    return SeriesMatrix(
        [[a.entries[i][j] ^ b.entries[i][j] for j in range(a.size)] for i in range(a.size)],
        bound,
    )


def series_matmul(a: SeriesMatrix, b: SeriesMatrix, bound: int) -> SeriesMatrix:
    m = a.size
    if b.size != m:
        raise ValueError("size mismatch")
    out = [[set() for _ in range(m)] for _ in range(m)]
    for i in range(m):
        row = a.entries[i]
        for k in range(m):
            p = row[k]
            if not p:
                continue
            brow = b.entries[k]
            for j in range(m):
                if brow[j]:
                    out[i][j] ^= poly_mul(p, brow[j], bound)
    return SeriesMatrix(out, bound)


def truncated_gamma(x: SeriesMatrix, bound: int) -> SeriesMatrix:
    """sum_{l=0..bound} X^l, truncated at total degree bound.

    Valid as the inverse of (I - X) up to that degree because every entry
    of X has degree exactly one, so X^l only contributes degree >= l.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    acc = series_identity(x.size)
    power = series_identity(x.size)
    for _ in range(bound):
        power = series_matmul(power, x, bound)
        if all(not p for row in power.entries for p in row):
            break
        acc = series_add(acc, power)
    return SeriesMatrix(acc.entries, bound)


def det_submatrix(gamma: SeriesMatrix, rows: Sequence[int], cols: Sequence[int]) -> Poly:
    """Determinant of gamma[rows, cols] by permutation expansion.

    Over GF(2) there is no sign. Sized for r <= 4; factorial blowup beyond
    that is not this module's business.
    """
    if gamma.bound is None:
        raise ValueError("determinants need a truncated matrix")
    r = len(rows)
    if len(cols) != r:
        raise ValueError("rows and cols must have equal length")
    if r > 4:
        raise ValueError("submatrix determinants are limited to r <= 4")
    det: Poly = set()
    for perm in permutations(range(r)):
        prod: Poly = {ONE}
        for i in range(r):
            prod = poly_mul(prod, gamma.entry(rows[i], cols[perm[i]]), gamma.bound)
            if not prod:
                break
        det ^= prod
    return det


def enumerate_walks(g: Digraph, e: int, f: int, length: int) -> list[tuple[int, ...]]:
    """All walks of exactly `length` edges starting at edge e, ending at f."""
    if length < 1:
        raise ValueError("walks have at least one edge")
    walks: list[tuple[int, ...]] = []

    def extend(prefix: list[int]) -> None:
        if len(prefix) == length:
            if prefix[-1] == f:
                walks.append(tuple(prefix))
            return
        for nxt in g.out_edges(g.head(prefix[-1])):
            prefix.append(nxt)
            extend(prefix)
            prefix.pop()

    extend([e])
    return walks


def walk_weight(walk: Sequence[int]) -> Monomial:
    return tuple(sorted((walk[j], walk[j + 1]) for j in range(len(walk) - 1)))


def collection_weight(walks: Sequence[Sequence[int]]) -> Monomial:
    m: Monomial = ()
    for w in walks:
        m = mono_mul(m, walk_weight(w))
    return m


def _desk_guard(g: Digraph, r: int, total_length: int) -> None:
    if g.m > _DESK_EDGES:
        raise ValueError(f"enumeration is limited to m <= {_DESK_EDGES}")
    if total_length > _DESK_LENGTH:
        raise ValueError(f"enumeration is limited to total length <= {_DESK_LENGTH}")
    if r > _DESK_R:
        raise ValueError(f"enumeration is limited to r <= {_DESK_R}")


def _collections(
    g: Digraph,
    sources: Sequence[int],
    targets: Sequence[int],
    total_length: int,
    disjoint_only: bool,
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Ordered collections <W_1..W_r>: W_i starts at sources[i], the ends
    exhaust `targets` (each exactly once), lengths sum to total_length."""
    r = len(sources)
    for assigned in permutations(targets):

        def rec(i: int, remaining: int, used: frozenset, chosen: tuple) -> Iterator[tuple]:
            if i == r:
                if remaining == 0:
                    yield chosen
                return
            # walks after this one need at least one edge each
            for li in range(1, remaining - (r - i - 1) + 1):
                for w in enumerate_walks(g, sources[i], assigned[i], li):
                    if disjoint_only:
                        # disjointness is pairwise: a walk may reuse its own
                        # edges, but no edge may appear in two walks
                        ws = frozenset(w)
                        if ws & used:
                            continue
                        yield from rec(i + 1, remaining - li, used | ws, chosen + (w,))
                    else:
                        yield from rec(i + 1, remaining - li, used, chosen + (w,))

        yield from rec(0, total_length, frozenset(), ())


def enumerate_disjoint_collections(
    g: Digraph, sources: Sequence[int], targets: Sequence[int], total_length: int
) -> Poly:
    """Mod-2 weight set over collections of pairwise edge-disjoint walks
    from distinct source edges to distinct target edges, with the given
    total edge count."""
    sources = sorted(set(sources))
    targets = sorted(set(targets))
    if len(sources) != len(targets):
        raise ValueError("need equally many source and target edges")
    _desk_guard(g, len(sources), total_length)
    out: Poly = set()
    for coll in _collections(g, sources, targets, total_length, disjoint_only=True):
        out ^= {collection_weight(coll)}
    return out


def verify_cancellation(
    g: Digraph, sources: Sequence[int], targets: Sequence[int], total_length: int
) -> bool:
    """Check that the full mod-2 walk-collection sum equals the
    edge-disjoint-only sum: collections with a shared edge must cancel in
    pairs."""
    sources = sorted(set(sources))
    targets = sorted(set(targets))
    if len(sources) != len(targets):
        raise ValueError("need equally many source and target edges")
    _desk_guard(g, len(sources), total_length)
    full: Poly = set()
    for coll in _collections(g, sources, targets, total_length, disjoint_only=False):
        full ^= {collection_weight(coll)}
    return full == enumerate_disjoint_collections(g, sources, targets, total_length)


def walks_to_paths(g: Digraph, walks: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Shorten pairwise edge-disjoint walks into pairwise edge-disjoint
    paths with the same start and end edges.

    Each output is a shortest edge sequence from the walk's first to its
    last edge using only that walk's own edges, found by BFS over edge
    adjacency; shortest implies no vertex is entered twice. Outputs stay
    disjoint because each draws from its own walk's edges.
    """
    seen: set[int] = set()
    for w in walks:
        ws = set(w)
        if ws & seen:
            raise ValueError("input walks must be pairwise edge-disjoint")
        seen |= ws

    out = []
    for w in walks:
        allowed = set(w)
        start, goal = w[0], w[-1]
        prev: dict[int, int | None] = {start: None}
        frontier = [start]
        while frontier and goal not in prev:
            nxt_frontier = []
            for e in frontier:
                for f in g.out_edges(g.head(e)):
                    if f in allowed and f not in prev:
                        prev[f] = e
                        nxt_frontier.append(f)
            frontier = nxt_frontier
        path = [goal]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        out.append(tuple(reversed(path)))
    return out
