"""Planar trees, polygon addresses and admissible subsurfaces.

A polygon is addressed by the path of child indices leading to it from the
central polygon; the empty path is the central polygon itself.  Children of a
polygon are listed in its planar cyclic order, starting right after the arc
leading back toward the center (the central polygon lists all of its arcs).

Families
--------
``higman(n, m)``
    central vertex of valence m, every other vertex of valence n+1.
``regular(n)``
    alias for ``higman(n, n+1)``.
``star(n)``
    alias for ``higman(1, n)``: n rays glued at their origin.
``lamplighter()``
    a bi-infinite line with a descending ray at each line vertex; the
    central polygon is an (arbitrary) line vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Address = tuple[int, ...]

CENTER: Address = ()

DEFAULT_DEPTH = 32


class TreeError(ValueError):
    pass


class UnsupportedError(TreeError):
    pass


class UndecidedError(RuntimeError):
    """Depth-bounded type comparison ran out of depth."""


@dataclass(frozen=True, order=True)
class TreeFamily:
    kind: str
    n: int = 0
    m: int = 0

    def __post_init__(self):
        if self.kind == "higman":
            if self.n < 1 or self.m < 1:
                raise TreeError(f"higman needs n, m >= 1, got ({self.n}, {self.m})")
        elif self.kind == "lamplighter":
            if self.n or self.m:
                raise TreeError("lamplighter takes no parameters")
        else:
            raise TreeError(f"unknown family kind {self.kind!r}")

    # -- planar structure -------------------------------------------------

    @property
    def is_lamplighter(self) -> bool:
        return self.kind == "lamplighter"

    @property
    def is_regular(self) -> bool:
        return self.kind == "higman" and self.m == self.n + 1

    @property
    def is_star(self) -> bool:
        return self.kind == "higman" and self.n == 1

    def vertex_kind(self, address: Sequence[int]) -> str:
        """State of the vertex: determines its ordered child kinds."""
        if not address:
            return "center"
        if self.kind == "higman":
            return "plain"
        kind = "center"
        for index in address:
            kind = _LAMPLIGHTER_CHILDREN[kind][index]
        return kind

    def child_kinds(self, kind: str) -> tuple[str, ...]:
        if self.kind == "higman":
            return ("plain",) * (self.m if kind == "center" else self.n)
        return _LAMPLIGHTER_CHILDREN[kind]

    def num_children(self, address: Sequence[int]) -> int:
        if self.kind == "higman":
            return self.m if not address else self.n
        return len(_LAMPLIGHTER_CHILDREN[self.vertex_kind(address)])

    def valence(self, address: Sequence[int]) -> int:
        return self.num_children(address) + (1 if address else 0)

    def is_valid(self, address: Sequence[int]) -> bool:
        kind = "center"
        for index in address:
            kids = self.child_kinds(kind)
            if not 0 <= index < len(kids):
                return False
            kind = kids[index]
        return True

    def children(self, address: Address) -> list[Address]:
        return [address + (i,) for i in range(self.num_children(address))]

    def neighbors(self, address: Address) -> list[Address]:
        """Neighbors in planar cyclic order; the parent comes first."""
        kids = self.children(address)
        return kids if not address else [address[:-1]] + kids

    # -- edge collapse ------------------------------------------------------

    def collapse_edge(self) -> "TreeFamily":
        """Family obtained by collapsing an edge at the central vertex.

        Merging the central vertex with a neighbor gives a vertex of valence
        m + (n+1) - 2, all other valences are unchanged.
        """
        if self.kind != "higman":
            raise UnsupportedError("edge collapse is only defined for Higman families")
        return higman(self.n, self.m + self.n - 1)

    # -- serialization ------------------------------------------------------

    def serialize(self) -> str:
        if self.kind == "lamplighter":
            return "lamplighter"
        return f"higman {self.n} {self.m}"

    def flag(self) -> str:
        if self.kind == "lamplighter":
            return "lamplighter"
        return f"higman:{self.n}:{self.m}"

    def __str__(self) -> str:
        if self.kind == "lamplighter":
            return "Lamplighter"
        return f"Higman({self.n},{self.m})"


# ordered child kinds of lamplighter vertices; cyclic order at a line vertex
# is (left, right, down)
_LAMPLIGHTER_CHILDREN = {
    "center": ("west", "east", "ray"),
    "west": ("ray", "west"),  # parent on the right: down, then left
    "east": ("east", "ray"),  # parent on the left: right, then down
    "ray": ("ray",),
}


def higman(n: int, m: int) -> TreeFamily:
    return TreeFamily("higman", n, m)


def regular(n: int) -> TreeFamily:
    if n < 2:
        raise TreeError("regular(n) needs n >= 2")
    return TreeFamily("higman", n, n + 1)


def star(n: int) -> TreeFamily:
    if n < 1:
        raise TreeError("star(n) needs n >= 1")
    return TreeFamily("higman", 1, n)


def lamplighter() -> TreeFamily:
    return TreeFamily("lamplighter")


def parse_family(text: str) -> TreeFamily:
    """Parse ``higman:n:m``, ``regular:n``, ``star:n``, ``lamplighter``.

    Whitespace-separated forms (``higman n m``) are accepted too.
    """
    parts = text.replace(":", " ").split()
    if not parts:
        raise TreeError("empty family description")
    kind, args = parts[0].lower(), parts[1:]
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise TreeError(f"bad family description {text!r}") from None
    builders = {"higman": (higman, 2), "regular": (regular, 1), "star": (star, 1),
                "lamplighter": (lamplighter, 0)}
    if kind not in builders or len(nums) != builders[kind][1]:
        raise TreeError(f"bad family description {text!r}")
    return builders[kind][0](*nums)


# ---------------------------------------------------------------------------
# lamplighter geometry


def lamplighter_coords(address: Sequence[int]) -> tuple[int, int]:
    """(x, y) position: line vertices have y = 0, rays go down (y > 0)."""
    x = y = 0
    kind = "center"
    for index in address:
        kind = _LAMPLIGHTER_CHILDREN[kind][index]
        if kind == "west":
            x -= 1
        elif kind == "east":
            x += 1
        else:
            y += 1
    return x, y


# ---------------------------------------------------------------------------
# admissible subsurfaces


def format_address(address: Sequence[int]) -> str:
    return "/".join(str(i) for i in address)


def parse_address(text: str) -> Address:
    text = text.strip()
    return tuple(int(p) for p in text.split("/")) if text else ()


@dataclass(frozen=True)
class FrontierArc:
    owner: Address
    slot: int  # child index, or -1 for the arc toward the center
    cyclic_position: int

    @property
    def target(self) -> Address:
        return self.owner[:-1] if self.slot < 0 else self.owner + (self.slot,)

    @property
    def toward_center(self) -> bool:
        return self.slot < 0


@dataclass(frozen=True)
class AdmissibleSurface:
    family: TreeFamily
    polygons: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        polys = frozenset(tuple(p) for p in self.polygons)
        object.__setattr__(self, "polygons", polys)
        if not polys:
            raise TreeError("an admissible surface is nonempty")
        for p in polys:
            if not self.family.is_valid(p):
                raise TreeError(f"address {format_address(p)!r} is not a polygon of {self.family}")
        roots = [p for p in polys if not p or p[:-1] not in polys]
        if len(roots) != 1:
            raise TreeError("polygons do not form a connected subtree")

    @classmethod
    def of(cls, family: TreeFamily, polygons: Iterable[Sequence[int] | str]) -> "AdmissibleSurface":
        addrs = [parse_address(p) if isinstance(p, str) else tuple(p) for p in polygons]
        return cls(family, frozenset(addrs))

    # -- basic invariants ---------------------------------------------------

    @property
    def height(self) -> int:
        return len(self.polygons)

    @cached_property
    def root(self) -> Address:
        """The polygon of the surface closest to the central polygon."""
        return min(self.polygons, key=len)

    @property
    def contains_center(self) -> bool:
        return CENTER in self.polygons

    @property
    def central_height(self) -> int:
        return len(self.root)

    @cached_property
    def key(self) -> tuple[str, ...]:
        return tuple(sorted(format_address(p) for p in self.polygons))

    def serialize(self) -> str:
        return "\n".join(format_address(p) for p in sorted(self.polygons))

    def __lt__(self, other: "AdmissibleSurface") -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return f"Surface({self.family}, {{{', '.join(repr(k) for k in self.key)}}})"

    # -- neighborhood -------------------------------------------------------

    def adjacent_polygons(self) -> list[Address]:
        """Polygons outside the surface sharing a frontier arc with it."""
        return [arc.target for arc in self.frontier_arcs()]

    def add(self, *polygons: Address) -> "AdmissibleSurface":
        return AdmissibleSurface(self.family, self.polygons | frozenset(polygons))

    def remove(self, *polygons: Address) -> "AdmissibleSurface":
        return AdmissibleSurface(self.family, self.polygons - frozenset(polygons))

    def is_removable(self, polygon: Address) -> bool:
        """True when dropping the polygon leaves an admissible surface."""
        if polygon not in self.polygons or self.height == 1:
            return False
        rest = self.polygons - {polygon}
        return len([p for p in rest if not p or p[:-1] not in rest]) == 1

    @cached_property
    def _frontier(self) -> tuple[FrontierArc, ...]:
        fam, polys = self.family, self.polygons
        arcs: list[tuple[Address, int]] = []
        # iterative Euler tour: each frame is (polygon, remaining neighbor list)
        root = self.root
        stack = [(root, iter(fam.neighbors(root)))]
        while stack:
            poly, it = stack[-1]
            for nb in it:
                is_parent = len(nb) < len(poly)
                if nb in polys and not is_parent:
                    stack.append((nb, iter(fam.children(nb))))
                    break
                if nb not in polys:
                    arcs.append((poly, -1 if is_parent else nb[-1]))
            else:
                stack.pop()
        start = min(range(len(arcs)), key=lambda i: arcs[i])
        ordered = arcs[start:] + arcs[:start]
        return tuple(FrontierArc(o, s, i) for i, (o, s) in enumerate(ordered))

    def frontier_arcs(self) -> list[FrontierArc]:
        """Frontier arcs in boundary-walk order, starting at the least arc."""
        return list(self._frontier)

    def frontier_size(self) -> int:
        return len(self._frontier)

    def tau_step(self) -> "AdmissibleSurface":
        """Add the adjacent polygon closest to the center."""
        if self.contains_center:
            return self
        return self.add(self.root[:-1])

    # -- rotations ------------------------------------------------------------

    def component_types(self, depth: int = DEFAULT_DEPTH) -> list[int]:
        """Class index of each complement component, in frontier order.

        Two frontier arcs get the same index iff the complementary arboreal
        surfaces behind them are isomorphic as rooted planar trees.
        """
        arcs = self._frontier
        if self.family.kind == "higman":
            if self.family.is_regular:
                return [0] * len(arcs)
            # only the component holding the central vertex differs
            return [1 if a.toward_center else 0 for a in arcs]
        reps: list[tuple[Address, Address]] = []
        out = []
        for a in arcs:
            edge = (a.owner, a.target)
            for i, rep in enumerate(reps):
                if same_branch_type(self.family, rep, edge, depth):
                    out.append(i)
                    break
            else:
                reps.append(edge)
                out.append(len(reps) - 1)
        return out

    def rotation_order(self, depth: int = DEFAULT_DEPTH) -> int:
        """Order of the group of frontier rotations preserving the complement.

        Reported as 0 when only the trivial rotation survives.
        """
        return rotation_group_order(self.component_types(depth))


def rotation_group_order(word: Sequence) -> int:
    """Number of cyclic shifts fixing the word, or 0 if only the identity does."""
    c = len(word)
    for period in range(1, c + 1):
        if c % period == 0 and all(word[i] == word[(i + period) % c] for i in range(c)):
            order = c // period
            return order if order > 1 else 0
    return 0


def center_surface(family: TreeFamily) -> AdmissibleSurface:
    return AdmissibleSurface(family, frozenset([CENTER]))


def height(surface: AdmissibleSurface) -> int:
    return surface.height


def frontier_arcs(surface: AdmissibleSurface) -> list[FrontierArc]:
    return surface.frontier_arcs()


def rotation_order(surface: AdmissibleSurface, depth: int = DEFAULT_DEPTH) -> int:
    return surface.rotation_order(depth)


def central_height(surface: AdmissibleSurface) -> int:
    return surface.central_height


def tau_step(surface: AdmissibleSurface) -> AdmissibleSurface:
    return surface.tau_step()


def collapse_edge(family: TreeFamily) -> TreeFamily:
    return family.collapse_edge()


# ---------------------------------------------------------------------------
# rooted planar branch comparison


def branch_children(family: TreeFamily, edge: tuple[Address, Address]) -> list[tuple[Address, Address]]:
    """Ordered children of the branch behind the directed edge ``frm -> to``."""
    frm, to = edge
    nbrs = family.neighbors(to)
    i = nbrs.index(frm)
    rest = nbrs[i + 1:] + nbrs[:i]
    return [(to, w) for w in rest]


def branch_key(family: TreeFamily, edge: tuple[Address, Address]):
    """Hashable label; equal labels guarantee isomorphic branches."""
    frm, to = edge
    if family.kind == "higman":
        if family.is_regular or len(to) > len(frm):
            return "pure"
        return edge
    (fx, fy), (tx, ty) = lamplighter_coords(frm), lamplighter_coords(to)
    if ty > fy:
        return "down"
    if ty < fy:
        return ("up", ty)
    return "west" if tx < fx else "east"


def same_branch_type(family: TreeFamily, a, b, depth: int = DEFAULT_DEPTH) -> bool:
    """Lazy isomorphism test of two rooted planar branches.

    Pairs of labels already under comparison are assumed equal (a
    coinductive argument: labels determine the ordered child labels), so
    recurring patterns certify equality.  Raises UndecidedError when neither
    a difference nor a recurrence shows up within ``depth`` levels.
    """
    assumed: set = set()

    def rec(x, y, level):
        kx, ky = branch_key(family, x), branch_key(family, y)
        if kx == ky:
            return True
        pair = (kx, ky) if repr(kx) <= repr(ky) else (ky, kx)
        if pair in assumed:
            return True
        cx, cy = branch_children(family, x), branch_children(family, y)
        if len(cx) != len(cy):
            return False
        if level >= depth:
            raise UndecidedError(f"branches agree to depth {depth}")
        assumed.add(pair)
        return all(rec(u, v, level + 1) for u, v in zip(cx, cy))

    return rec(a, b, 0)


# ---------------------------------------------------------------------------
# enumeration


def spine_surfaces(family: TreeFamily, h: int) -> Iterator[AdmissibleSurface]:
    """All subtrees of exactly h polygons containing the central polygon."""
    for polys in _grow(family, frozenset([CENTER]), h):
        yield AdmissibleSurface(family, polys)


def _grow(family: TreeFamily, start: frozenset, h: int) -> Iterator[frozenset]:
    # canonical extension: only add frontier polygons later than the last pick
    def frontier(polys):
        out = []
        for p in polys:
            for c in family.children(p):
                if c not in polys:
                    out.append(c)
        return sorted(out)

    def rec(polys, candidates):
        if len(polys) == h:
            yield polys
            return
        for i, c in enumerate(candidates):
            new = polys | {c}
            nxt = candidates[i + 1:] + family.children(c)
            yield from rec(new, nxt)

    if len(start) > h:
        return
    yield from rec(start, frontier(start))


def subsurfaces_within(surface: AdmissibleSurface) -> list[AdmissibleSurface]:
    """Every admissible surface contained in the given one."""
    polys = sorted(surface.polygons)
    out = []
    for mask in range(1, 1 << len(polys)):
        chosen = frozenset(p for i, p in enumerate(polys) if mask >> i & 1)
        if len([p for p in chosen if not p or p[:-1] not in chosen]) == 1:
            out.append(AdmissibleSurface(surface.family, chosen))
    return out
