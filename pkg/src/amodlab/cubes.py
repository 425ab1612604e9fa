"""Finite pieces of the identity-marked skeleton of the cube complex.

Vertices are admissible surfaces; a cube is an interval ``[T, T + B]`` where
``B`` is a set of pairwise distinct polygons adjacent to ``T``.  Markings are
all the identity, so the braid directions of the full complex are absent.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, NamedTuple

from .simplicial import SimplicialComplex, reduced_homology, HomologyReport
from .trees import (
    Address,
    AdmissibleSurface,
    TreeFamily,
    TreeError,
    UnsupportedError,
    spine_surfaces,
    subsurfaces_within,
)


class CubeError(ValueError):
    pass


class NotDominatedError(CubeError):
    pass


class HeightTooSmallError(CubeError):
    pass


class ClaimViolation(AssertionError):
    """A cube the contractibility or spine argument guarantees is missing."""


@dataclass(frozen=True)
class Cube:
    base: AdmissibleSurface
    additions: frozenset

    @property
    def dim(self) -> int:
        return len(self.additions)

    @property
    def top(self) -> AdmissibleSurface:
        return self.base.add(*self.additions)

    def vertices(self) -> list[AdmissibleSurface]:
        adds = sorted(self.additions)
        return [self.base.add(*sub) for k in range(len(adds) + 1) for sub in combinations(adds, k)]

    def faces(self) -> Iterable["Cube"]:
        adds = sorted(self.additions)
        for k in range(len(adds) + 1):
            for inner in combinations(adds, k):
                rest = [a for a in adds if a not in inner]
                base = self.base.add(*inner)
                for j in range(len(rest) + 1):
                    for free in combinations(rest, j):
                        yield Cube(base, frozenset(free))

    def contains_cube(self, other: "Cube") -> bool:
        lo, hi = self.base.polygons, self.base.polygons | self.additions
        return lo <= other.base.polygons and (other.base.polygons | other.additions) <= hi


def _cube_ok(base: AdmissibleSurface, adds, vertex_set) -> bool:
    return all(base.add(*sub) in vertex_set
               for k in range(1, len(adds) + 1) for sub in combinations(adds, k))


class CubeFragment:
    """Full subcomplex of the skeleton spanned by a finite set of surfaces.

    Only maximal cubes are stored; ``all_cubes`` materializes every face.
    """

    def __init__(self, vertices: Iterable[AdmissibleSurface]):
        self.vertices = frozenset(vertices)
        fams = {v.family for v in self.vertices}
        if len(fams) > 1:
            raise CubeError("fragment mixes tree families")
        self.family: TreeFamily | None = fams.pop() if fams else None
        self.cubes = frozenset(self._maximal_cubes())

    def _maximal_cubes(self) -> list[Cube]:
        vs = self.vertices
        ups = {v: [h for h in v.adjacent_polygons() if v.add(h) in vs] for v in vs}
        found: list[Cube] = []
        for v in vs:
            # maximal subsets of the ascending directions spanning a cube
            cand = ups[v]
            maximal: list[frozenset] = []
            for k in range(len(cand), -1, -1):
                for sub in combinations(cand, k):
                    fs = frozenset(sub)
                    if any(fs <= m for m in maximal):
                        continue
                    if _cube_ok(v, sub, vs):
                        maximal.append(fs)
            found.extend(Cube(v, m) for m in maximal)
        found.sort(key=lambda c: -c.dim)
        top: list[Cube] = []
        for c in found:
            if not any(t.dim > c.dim and t.contains_cube(c) for t in top):
                top.append(c)
        return top

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def dimension(self) -> int:
        return max((c.dim for c in self.cubes), default=-1)

    def all_cubes(self) -> set[Cube]:
        out: set[Cube] = set()
        for c in self.cubes:
            out.update(c.faces())
        return out

    def has_cube(self, base: AdmissibleSurface, additions) -> bool:
        return base in self.vertices and _cube_ok(base, tuple(additions), self.vertices)

    def ordered_vertices(self) -> list[AdmissibleSurface]:
        """Canonical vertex order: by serialized surface."""
        return sorted(self.vertices, key=lambda s: s.key)

    def vertex_ids(self) -> dict[AdmissibleSurface, int]:
        return {v: i for i, v in enumerate(self.ordered_vertices())}

    def to_simplicial(self) -> SimplicialComplex:
        """Triangulate each cube by its maximal inclusion chains."""
        ids = self.vertex_ids()
        facets = []
        for c in self.cubes:
            adds = sorted(c.additions)
            for order in permutations(adds):
                chain = [c.base]
                for a in order:
                    chain.append(chain[-1].add(a))
                facets.append([ids[s] for s in chain])
        for v in self.vertices:
            facets.append([ids[v]])
        return SimplicialComplex(facets)

    def homology(self) -> HomologyReport:
        return reduced_homology(self.to_simplicial())

    def serialize(self) -> str:
        lines = ["# vertex ids:"]
        for v, i in sorted(self.vertex_ids().items(), key=lambda kv: kv[1]):
            lines.append(f"# {i}: {{{', '.join(repr(k) for k in v.key)}}}")
        return "\n".join(lines) + "\n" + self.to_simplicial().to_text()


# ---------------------------------------------------------------------------
# contractibility machinery


def dominates(top: AdmissibleSurface, s: AdmissibleSurface) -> bool:
    return s.family == top.family and s.polygons <= top.polygons


def interval_vertices(sources: Iterable[AdmissibleSurface], top: AdmissibleSurface) -> set[AdmissibleSurface]:
    sources = list(sources)
    for s in sources:
        if not dominates(top, s):
            raise NotDominatedError(f"{s!r} is not contained in {top!r}")
    out = set()
    for t in subsurfaces_within(top):
        if any(s.polygons <= t.polygons for s in sources):
            out.add(t)
    return out


def build_interval(sources: Iterable[AdmissibleSurface], top: AdmissibleSurface) -> CubeFragment:
    """Union of all increasing paths from the sources up to ``top``."""
    return CubeFragment(interval_vertices(sources, top))


class CollapseStep(NamedTuple):
    vertex: AdmissibleSurface
    directions: tuple[Address, ...]


def morse_collapse(fragment: CubeFragment, top: AdmissibleSurface,
                   sources: Iterable[AdmissibleSurface] | None = None) -> list[CollapseStep]:
    """Collapse an interval fragment onto its apex, recording each move.

    At every step the least-height source (ties: least serialized surface)
    is pushed up along all its ascending edges; the cube spanned by those
    edges must lie in the current subcomplex.
    """
    if sources is None:
        sources = [v for v in fragment.vertices
                   if not any(v.remove(p) in fragment.vertices for p in v.polygons if v.is_removable(p))]
    current = set(sources)
    verts = set(fragment.vertices)
    trace: list[CollapseStep] = []
    while current != {top}:
        x = min(current, key=lambda s: (s.height, s.key))
        if x == top:
            # apex is minimal only when it is the sole source
            raise ClaimViolation("apex reached with sources left over")
        ups = tuple(sorted(h for h in x.adjacent_polygons() if x.add(h).polygons <= top.polygons))
        if not ups:
            raise ClaimViolation(f"{x!r} has no ascending edge toward the apex")
        for k in range(1, len(ups) + 1):
            for sub in combinations(ups, k):
                if x.add(*sub) not in verts:
                    raise ClaimViolation(f"cube at {x!r} on {sub} is not in the fragment")
        trace.append(CollapseStep(x, ups))
        current.discard(x)
        current.update(x.add(h) for h in ups)
        verts = interval_vertices(current, top)
    return trace


# ---------------------------------------------------------------------------
# the spine


def tau_closure(fragment: CubeFragment) -> CubeFragment:
    verts = set()
    for v in fragment.vertices:
        while True:
            verts.add(v)
            if v.contains_center:
                break
            v = v.tau_step()
    return CubeFragment(verts)


class RetractLayer(NamedTuple):
    central_height: int
    removed: int
    cubes_checked: int


def spine_retract(fragment: CubeFragment, layers: list | None = None) -> CubeFragment:
    """Retract the tau-closure of a fragment onto its spine part.

    Each layer of maximal central height is pushed across the cubes
    ``C + tau(C)``; the function checks that these cubes exist and that tau
    is injective on every component of the layer.
    """
    closure = tau_closure(fragment)
    verts = set(closure.vertices)
    while True:
        top_ch = max((v.central_height for v in verts), default=0)
        if top_ch == 0:
            break
        layer = {v for v in verts if v.central_height == top_ch}
        checked = 0
        for v in layer:
            up = v.tau_step()
            step = up.polygons - v.polygons
            dirs = [h for h in v.adjacent_polygons() if v.add(h) in layer]
            for k in range(len(dirs) + 1):
                for sub in combinations(dirs, k):
                    if k and not _cube_ok(v, sub, layer):
                        continue
                    checked += 1
                    if not _cube_ok(v, tuple(sub) + tuple(step), verts):
                        raise ClaimViolation(f"no cube over {v!r} along {sub} and tau")
        for comp in _components(layer):
            images = [v.tau_step() for v in comp]
            if len(set(images)) != len(images):
                raise ClaimViolation("tau is not injective on a layer component")
        if layers is not None:
            layers.append(RetractLayer(top_ch, len(layer), checked))
        verts -= layer
    return CubeFragment(verts)


def _components(vertices: set[AdmissibleSurface]) -> list[list[AdmissibleSurface]]:
    seen, comps = set(), []
    for v in sorted(vertices, key=lambda s: s.key):
        if v in seen:
            continue
        comp, todo = [], [v]
        seen.add(v)
        while todo:
            x = todo.pop()
            comp.append(x)
            nbrs = [x.add(h) for h in x.adjacent_polygons()]
            nbrs += [x.remove(p) for p in x.polygons if x.is_removable(p)]
            for y in nbrs:
                if y in vertices and y not in seen:
                    seen.add(y)
                    todo.append(y)
        comps.append(comp)
    return comps


# ---------------------------------------------------------------------------
# descending links and counting


@dataclass(frozen=True)
class DescendingLinkParams:
    p: int
    q: int
    r: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1 or self.r < 0:
            raise CubeError(f"invalid parameters {self}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)


def descending_link_params(family: TreeFamily, k: int) -> DescendingLinkParams:
    """Puncture, marked point and separation counts of the descending link
    at a spine vertex of height k."""
    if family.kind != "higman":
        raise UnsupportedError("descending links are described for Higman families only")
    n, m = family.n, family.m
    if k <= m:
        raise HeightTooSmallError(f"height {k} must exceed m = {m}")
    return DescendingLinkParams(k, m + (k - 1) * (n - 1), n - 1)


def spine_sublevel_census(family: TreeFamily, i: int) -> list[tuple[int, int]]:
    """Number of spine vertices of each height 1..i (subtrees through the center)."""
    if i < 1:
        raise CubeError("census height must be >= 1")
    kinds = _all_kinds(family)
    # P_k = x * prod over children (1 + P_child), truncated at degree i;
    # i rounds of substitution from zero fix every coefficient up to i
    gen = {k: [0] * (i + 1) for k in kinds}
    for _ in range(i):
        nxt = {}
        for k in kinds:
            poly = [0, 1] + [0] * (i - 1)
            for child in family.child_kinds(k):
                poly = _mul_trunc(poly, [1] + gen[child][1:], i)
            nxt[k] = poly
        gen = nxt
    c = gen["center"]
    return [(h, c[h]) for h in range(1, i + 1)]


def _all_kinds(family: TreeFamily) -> list[str]:
    seen, todo = set(), ["center"]
    while todo:
        k = todo.pop()
        if k in seen:
            continue
        seen.add(k)
        todo.extend(family.child_kinds(k))
    return sorted(seen)


def _mul_trunc(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def census_by_enumeration(family: TreeFamily, i: int) -> list[tuple[int, int]]:
    return [(h, sum(1 for _ in spine_surfaces(family, h))) for h in range(1, i + 1)]


def skeleton_descending_link(surface: AdmissibleSurface) -> SimplicialComplex:
    """Removable polygons of a spine surface, as a simplicial complex.

    Vertex ids index the surface's polygons in sorted order; a set spans a
    simplex when removing all of it keeps the center and connectivity, with
    every removed polygon adjacent to what remains.
    """
    if not surface.contains_center or surface.height < 2:
        raise CubeError("needs a spine surface of height >= 2")
    polys = sorted(surface.polygons)
    ids = {p: i for i, p in enumerate(polys)}
    cands = [p for p in polys if p and surface.is_removable(p)]
    facets = []
    for k in range(len(cands), 0, -1):
        for sub in combinations(cands, k):
            rest = surface.polygons - set(sub)
            try:
                low = AdmissibleSurface(surface.family, rest)
            except TreeError:
                continue
            if not low.contains_center:
                continue
            adj = set(low.adjacent_polygons())
            if all(p in adj for p in sub):
                facets.append([ids[p] for p in sub])
    return SimplicialComplex(facets)


# ---------------------------------------------------------------------------
# the non-flag configuration in C(R_3)


NONCAT_SQUARES = (
    # three squares through v, pairwise sharing an edge at v; heights 3/2/1
    ("v", "a", "ab", "b"),
    ("v", "b", "bc", "c"),
    ("v", "c", "ca", "a"),
)
NONCAT_HEIGHTS = {"v": 3, "a": 2, "b": 2, "c": 2, "ab": 1, "bc": 1, "ca": 1}


def noncat_link() -> SimplicialComplex:
    """Link of the common vertex of the three squares.

    Vertices of the link are the edges at ``v``; each square contributes
    the simplex on its two edges at ``v``.  A 3-cube would need a vertex
    of height 0, which does not exist, so there is no 2-simplex.
    """
    edge_ids = {"a": 0, "b": 1, "c": 2}
    facets = []
    for sq in NONCAT_SQUARES:
        at_v = [x for x in (sq[1], sq[3])]
        facets.append([edge_ids[x] for x in at_v])
    missing_height = NONCAT_HEIGHTS["v"] - 3
    if missing_height >= 1:
        facets.append([0, 1, 2])
    return SimplicialComplex(facets)


# ---------------------------------------------------------------------------
# checks and random instances


def dimension_bound_violations(fragment: CubeFragment) -> list[tuple[AdmissibleSurface, Cube]]:
    """Cubes whose dimension exceeds the frontier size at one of their vertices."""
    bad = []
    for c in fragment.cubes:
        for v in c.vertices():
            if c.dim > v.frontier_size():
                bad.append((v, c))
    return bad


def random_surface(family: TreeFamily, rng, max_height: int, max_depth: int = 2) -> AdmissibleSurface:
    """A random surface: a root at depth <= max_depth grown downward."""
    root: Address = ()
    for _ in range(rng.randint(0, max_depth)):
        root = root + (rng.randrange(family.num_children(root)),)
    polys = {root}
    target = rng.randint(1, max_height)
    while len(polys) < target:
        front = sorted(c for p in polys for c in family.children(p) if c not in polys)
        polys.add(rng.choice(front))
    return AdmissibleSurface(family, frozenset(polys))


def random_interval(family: TreeFamily, rng, max_height: int = 6, max_sources: int = 3):
    """Random (sources, apex) pair with every source inside the apex."""
    top = random_surface(family, rng, max_height)
    subs = sorted(subsurfaces_within(top), key=lambda s: s.key)
    k = rng.randint(1, max_sources)
    sources = [rng.choice(subs) for _ in range(k)]
    return sorted(set(sources), key=lambda s: s.key), top
