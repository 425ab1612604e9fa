"""Separated-arc combinatorics: relations on marked points, connectivity
bounds, fundamental domains and the sphere witnesses of the bouquet argument.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

import networkx as nx

from .simplicial import SimplicialComplex


class ArcError(ValueError):
    pass


def cycle_distance(i: int, j: int, q: int) -> int:
    d = (i - j) % q
    return min(d, q - d)


@dataclass(frozen=True)
class SeparationRelation:
    """A symmetric relation on the marked points Z_q."""

    q: int
    pairs: frozenset  # frozenset of 2-element frozensets
    r: int | None = None

    def __post_init__(self):
        if self.q < 1:
            raise ArcError("q must be >= 1")
        for p in self.pairs:
            if len(p) != 2 or not all(0 <= x < self.q for x in p):
                raise ArcError(f"bad related pair {sorted(p)}")

    @classmethod
    def separation(cls, q: int, r: int) -> "SeparationRelation":
        """i ~ j iff their distance in Z_q exceeds r."""
        if r < 0:
            raise ArcError("r must be >= 0")
        pairs = frozenset(frozenset((i, j)) for i, j in combinations(range(q), 2)
                          if cycle_distance(i, j, q) > r)
        return cls(q, pairs, r)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[bool]]) -> "SeparationRelation":
        q = len(matrix)
        pairs = set()
        for i in range(q):
            if len(matrix[i]) != q:
                raise ArcError("relation matrix must be square")
            for j in range(q):
                if bool(matrix[i][j]) != bool(matrix[j][i]):
                    raise ArcError("relation matrix must be symmetric")
                if i < j and matrix[i][j]:
                    pairs.add(frozenset((i, j)))
        return cls(q, frozenset(pairs))

    @classmethod
    def from_predicate(cls, q: int, pred: Callable[[int, int], bool]) -> "SeparationRelation":
        return cls.from_matrix([[i != j and pred(i, j) for j in range(q)] for i in range(q)])

    def related(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.pairs

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.q))
        g.add_edges_from(tuple(p) for p in self.pairs)
        return g


def min_related(rel: SeparationRelation) -> int:
    """Least size of an inclusion-maximal set of pairwise related points."""
    return min(len(c) for c in nx.find_cliques(rel.graph()))


def separation_min_formula(q: int, r: int) -> int:
    if q < 1 or r < 0:
        raise ArcError("need q >= 1 and r >= 0")
    return q // (r + 1)


def connectivity_bound(p: int, q: int, r: int) -> int:
    """Connectivity degree guaranteed for the complex of r-separated arcs."""
    if p < 2 or q < 1 or r < 0:
        raise ArcError("need p >= 2, q >= 1, r >= 0")
    return (p + q // (r + 1)) // 3 - 2


def general_bound(p_count: int, rel: SeparationRelation) -> int:
    if p_count < 2:
        raise ArcError("need at least two punctures")
    return (p_count + min_related(rel)) // 3 - 2


def conjectured_bouquet_dimension(p_count: int, rel: SeparationRelation) -> int:
    """Conjectural dimension of the spheres in the bouquet (not a theorem)."""
    return min(p_count, min_related(rel)) - 1


def fundamental_domain(q: int, r: int, cap: int | None = None) -> SimplicialComplex:
    """Independence complex of the circulant graph on Z_q with jumps 1..r.

    With a cap, only simplices of at most ``cap`` vertices are kept.
    """
    rel = SeparationRelation.separation(q, r)
    facets = [tuple(sorted(c)) for c in nx.find_cliques(rel.graph())]
    if cap is not None:
        if cap < 1:
            raise ArcError("cap must be >= 1")
        capped = set()
        for f in facets:
            if len(f) <= cap:
                capped.add(f)
            else:
                capped.update(combinations(f, cap))
        facets = sorted(capped)
    return SimplicialComplex(facets)


# ---------------------------------------------------------------------------
# sphere witnesses


@dataclass(frozen=True, order=True)
class SymbolicArc:
    marked_point: int
    generation: int

    def __post_init__(self):
        if self.marked_point < 1 or self.generation < 1:
            raise ArcError("arc indices start at 1")

    def adjacent(self, other: "SymbolicArc") -> bool:
        # arcs at different marked points live in disjoint discs
        return self.marked_point != other.marked_point

    def vertex_id(self, k: int) -> int:
        return (self.generation - 1) * k + (self.marked_point - 1)


def witness_arcs(k: int, j: int) -> list[SymbolicArc]:
    return [SymbolicArc(i, g) for g in (j, j + 1) for i in range(1, k + 1)]


def sphere_witness(k: int, j: int) -> SimplicialComplex:
    """Full subcomplex on the arcs of generations j and j+1 at k marked points."""
    if k < 1 or j < 1:
        raise ArcError("need k >= 1 and j >= 1")
    arcs = witness_arcs(k, j)
    g = nx.Graph()
    g.add_nodes_from(a.vertex_id(k) for a in arcs)
    g.add_edges_from((a.vertex_id(k), b.vertex_id(k))
                     for a, b in combinations(arcs, 2) if a.adjacent(b))
    return SimplicialComplex(tuple(sorted(c)) for c in nx.find_cliques(g))


def witness_disjointness(k: int, j1: int, j2: int) -> bool:
    if min(k, j1, j2) < 1:
        raise ArcError("indices start at 1")
    return not ({j1, j1 + 1} & {j2, j2 + 1})


def puncture_budget(k: int) -> int:
    """Punctures needed for k marked points: one p_i and one q_i each."""
    if k < 1:
        raise ArcError("k must be >= 1")
    return 2 * k
