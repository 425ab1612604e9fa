"""Finite abstract simplicial complexes and their reduced integral homology."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .snf import SparseMatrix, elimination_diagonal, invariant_factors, rational_rank

Simplex = tuple[int, ...]


class SimplicialError(ValueError):
    pass


class AbsentSimplexError(SimplicialError):
    pass


class OverlappingVerticesError(SimplicialError):
    pass


class EmptyComplexError(SimplicialError):
    pass


def _maximal(simplices: Iterable[Iterable[int]]) -> frozenset[Simplex]:
    cands = sorted({tuple(sorted(set(s))) for s in simplices}, key=len, reverse=True)
    kept: list[frozenset] = []
    out = []
    for s in cands:
        fs = frozenset(s)
        if not any(fs <= k for k in kept if len(k) > len(fs)):
            kept.append(fs)
            out.append(s)
    return frozenset(out)


class SimplicialComplex:
    """A complex given by its facets.

    The complex with no facets is the void complex; ``[()]`` is the complex
    whose only simplex is the empty one (the link of a facet).
    """

    def __init__(self, facets: Iterable[Iterable[int]] = ()):
        facets = list(facets)
        for f in facets:
            for v in f:
                if not isinstance(v, int) or v < 0:
                    raise SimplicialError(f"vertices must be nonnegative integers, got {v!r}")
        self.facets: frozenset[Simplex] = _maximal(facets)

    # -- basic structure ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __repr__(self) -> str:
        return f"SimplicialComplex({sorted(self.facets)})"

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_void(self) -> bool:
        return not self.facets

    def __contains__(self, simplex: Iterable[int]) -> bool:
        s = frozenset(simplex)
        return any(s <= frozenset(f) for f in self.facets)

    @cached_property
    def _faces(self) -> dict[int, list[Simplex]]:
        by_dim: dict[int, set[Simplex]] = {}
        for f in self.facets:
            for k in range(1, len(f) + 1):
                by_dim.setdefault(k - 1, set()).update(combinations(f, k))
        return {d: sorted(s) for d, s in by_dim.items()}

    def faces(self, dim: int) -> list[Simplex]:
        """Sorted simplices of the given dimension (dim -1 is the empty face)."""
        if dim == -1:
            return [()] if self.facets else []
        return self._faces.get(dim, [])

    def f_vector(self) -> list[int]:
        return [len(self.faces(d)) for d in range(self.dimension + 1)]

    def reduced_euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector())) - 1

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.faces(1))
        return g

    def relabel(self, mapping) -> "SimplicialComplex":
        return SimplicialComplex([mapping[v] for v in f] for f in self.facets)

    def shifted(self, offset: int) -> "SimplicialComplex":
        return SimplicialComplex([v + offset for v in f] for f in self.facets)

    # -- file format ----------------------------------------------------------

    def to_text(self) -> str:
        return "".join(" ".join(map(str, f)) + "\n" for f in sorted(self.facets))

    @classmethod
    def from_text(cls, text: str) -> "SimplicialComplex":
        facets = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            facets.append([int(tok) for tok in line.split()])
        return cls(facets)

    # -- operators ------------------------------------------------------------

    def link(self, simplex: Iterable[int]) -> "SimplicialComplex":
        return link(self, simplex)

    def star(self, simplex: Iterable[int]) -> "SimplicialComplex":
        s = frozenset(simplex)
        if s not in self:
            raise AbsentSimplexError(f"{sorted(s)} is not a simplex")
        return SimplicialComplex(f for f in self.facets if s <= frozenset(f))

    def boundary_matrix(self, dim: int) -> SparseMatrix:
        """Augmented boundary map C_dim -> C_{dim-1}; dim 0 maps onto Z."""
        lower = {s: i for i, s in enumerate(self.faces(dim - 1))}
        cols = []
        for s in self.faces(dim):
            col = {}
            for k in range(len(s)):
                col[lower[s[:k] + s[k + 1:]]] = (-1) ** k
            cols.append(col)
        return SparseMatrix(len(lower), len(cols), cols)


def link(K: SimplicialComplex, simplex: Iterable[int]) -> SimplicialComplex:
    s = frozenset(simplex)
    if s not in K:
        raise AbsentSimplexError(f"{sorted(s)} is not a simplex")
    return SimplicialComplex(tuple(v for v in f if v not in s) for f in K.facets if s <= frozenset(f))


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    if set(K1.vertices) & set(K2.vertices):
        raise OverlappingVerticesError("join needs disjoint vertex sets; relabel first")
    return SimplicialComplex(f1 + f2 for f1 in K1.facets for f2 in K2.facets)


def simplex(vertices: Iterable[int]) -> SimplicialComplex:
    return SimplicialComplex([tuple(vertices)])


def sphere_boundary(n_vertices: int) -> SimplicialComplex:
    """Boundary of the simplex on 0..n_vertices-1."""
    return SimplicialComplex(combinations(range(n_vertices), n_vertices - 1))


def cycle(n: int) -> SimplicialComplex:
    return SimplicialComplex((i, (i + 1) % n) for i in range(n))


def octahedron() -> SimplicialComplex:
    zero = SimplicialComplex([[0], [1]])
    return join(join(zero, zero.shifted(2)), zero.shifted(4))


def torus7() -> SimplicialComplex:
    """Moebius' 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex(tris)


# ---------------------------------------------------------------------------
# homology


@dataclass
class HomologyReport:
    betti: list[int]
    torsion: dict[int, list[int]] = field(default_factory=dict)

    def is_trivial(self) -> bool:
        return not any(self.betti) and not any(self.torsion.values())

    def same_groups(self, other: "HomologyReport") -> bool:
        """Equal homology, ignoring trailing zero degrees."""
        def trim(b):
            b = list(b)
            while b and b[-1] == 0:
                b.pop()
            return b
        tors = lambda r: {d: f for d, f in r.torsion.items() if f}
        return trim(self.betti) == trim(other.betti) and tors(self) == tors(other)

    def to_dict(self) -> dict:
        return {
            "betti": list(self.betti),
            "torsion": [[d, list(f)] for d, f in sorted(self.torsion.items()) if f],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _check_dd_zero(d_hi: SparseMatrix, d_lo: SparseMatrix) -> None:
    # (d_lo @ d_hi) must vanish
    for j in range(d_hi.ncols):
        acc: dict[int, int] = {}
        for k in d_hi.cols.get(j, ()):
            a = d_hi.rows[k][j]
            for i in d_lo.cols.get(k, ()):
                acc[i] = acc.get(i, 0) + d_lo.rows[i][k] * a
        if any(acc.values()):
            raise AssertionError("boundary of a boundary is not zero")


def reduced_homology(K: SimplicialComplex, check: bool = __debug__) -> HomologyReport:
    """Reduced integral homology through Smith normal forms."""
    if not K.vertices:
        raise EmptyComplexError("homology of an empty complex")
    top = K.dimension
    mats = {d: K.boundary_matrix(d) for d in range(0, top + 1)}
    if check:
        for d in range(1, top + 1):
            _check_dd_zero(mats[d], mats[d - 1])
    diags = {d: elimination_diagonal(mats[d]) for d in mats}
    ranks = {d: len(diags[d]) for d in diags}
    betti, torsion = [], {}
    for d in range(0, top + 1):
        cycles = len(K.faces(d)) - ranks[d]
        betti.append(cycles - ranks.get(d + 1, 0))
        tors = [x for x in invariant_factors(diags.get(d + 1, [])) if x > 1]
        if tors:
            torsion[d] = tors
    return HomologyReport(betti, torsion)


def rational_betti(K: SimplicialComplex) -> list[int]:
    """Reduced Betti numbers from ranks over Q (independent of the SNF path)."""
    top = K.dimension
    ranks = {d: rational_rank(K.boundary_matrix(d).to_dense()) for d in range(0, top + 1)}
    return [len(K.faces(d)) - ranks[d] - ranks.get(d + 1, 0) for d in range(0, top + 1)]


def is_flag(K: SimplicialComplex) -> bool:
    """Every set of pairwise adjacent vertices spans a simplex."""
    return all(tuple(sorted(c)) in K for c in nx.find_cliques(K.graph()))


def homological_connectivity(K: SimplicialComplex, d: int) -> bool:
    """H~_i(K) = 0 for 0 <= i <= d (and K nonempty).

    This is necessary for d-connectivity; it is not sufficient once d >= 1
    since the fundamental group is not examined.
    """
    if d < -1:
        raise SimplicialError("connectivity degree must be >= -1")
    if not K.vertices:
        return False
    if d == -1:
        return True
    rep = reduced_homology(K)
    return all(rep.betti[i] == 0 and not rep.torsion.get(i) for i in range(min(d, K.dimension) + 1))
