"""Orders of periodic elements and the finite-order spectra of the groups."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from math import gcd, lcm
from typing import Iterable

from .trees import (
    CENTER,
    AdmissibleSurface,
    TreeFamily,
    UnsupportedError,
)

INFINITE = float("inf")


class TorsionError(ValueError):
    pass


class Kind(str, Enum):
    EPSILON = "epsilon"
    DELTA = "delta"


EPSILON, DELTA = Kind.EPSILON, Kind.DELTA


@dataclass(frozen=True)
class PeriodicElement:
    """The element rho^t * eps^s (or rho^t * delta^s) at a surface."""

    t: int
    s: int
    kind: Kind
    h: int
    r: int

    def __post_init__(self):
        if self.h < 1 or self.r < 0:
            raise TorsionError("need h >= 1 and r >= 0")
        object.__setattr__(self, "kind", Kind(self.kind))

    @property
    def cycle_length(self) -> int:
        """Number of punctures permuted by eps (h) or delta (h - 1)."""
        return self.h if self.kind is EPSILON else self.h - 1

    def normalized(self) -> "PeriodicElement":
        if self.t < 0:
            return PeriodicElement(-self.t, -self.s, self.kind, self.h, self.r)
        return self


def element_order(e: PeriodicElement) -> int | float:
    e = e.normalized()
    t, s, r = e.t, e.s, e.r
    if e.h == 1:
        if r == 0:
            return 1 if t == 0 else INFINITE
        return r // gcd(t, r)
    if t == 0 and s == 0:
        return 1
    if t == 0 or s == 0:
        return INFINITE
    c = e.cycle_length
    if c == 0 or t * c + s * r != 0:
        return INFINITE
    return lcm(lcm(t, r) // t, lcm(abs(s), c) // abs(s))


def quotient_order(e: PeriodicElement) -> int | float:
    """Order of (t, s) in Z^2 / <(r, -c)> found by search.

    Both rho^r and eps^h (or delta^(h-1)) equal the full twist.  Valid for
    h >= 2 and r >= 1; h = 1 is the cyclic group Z_r.
    """
    if e.h == 1:
        if e.r == 0:
            return 1 if e.t == 0 else INFINITE
        n = 1
        while (n * e.t) % e.r:
            n += 1
        return n
    c = e.cycle_length
    if e.r < 1 or c < 1:
        raise TorsionError("search model needs r >= 1 and a nonempty cycle")
    for n in range(1, e.r * c + 1):
        nt, ns = n * e.t, n * e.s
        if nt % e.r == 0 and ns == -(nt // e.r) * c:
            return n
    return INFINITE


def lcm_claim_set(a: int, b: int, bound: int) -> set[int]:
    if a < 1 or b < 1 or bound < max(a, b):
        raise TorsionError("need a, b >= 1 and bound >= max(a, b)")
    out = set()
    for t in range(1, bound + 1):
        if (t * b) % a:
            continue
        s = t * b // a
        if s > bound:
            break
        out.add(lcm(lcm(t, a) // t, lcm(s, b) // s))
    return out


def divisors(n: int) -> set[int]:
    if n < 1:
        raise TorsionError("divisors of a positive integer only")
    return {d for d in range(1, n + 1) if n % d == 0}


# ---------------------------------------------------------------------------
# spectra


@dataclass
class OrderSpectrum:
    orders: frozenset = frozenset({1})
    unbounded: bool = False
    witnesses: dict = field(default_factory=dict)  # order -> (h, r, gcd)

    def __contains__(self, k: int) -> bool:
        return k >= 1 and (self.unbounded or k in self.orders)

    @classmethod
    def from_generators(cls, gens: Iterable[int], witnesses: dict | None = None) -> "OrderSpectrum":
        orders = {1}
        for g in gens:
            orders |= divisors(g)
        return cls(frozenset(orders), False, dict(witnesses or {}))

    @classmethod
    def everything(cls) -> "OrderSpectrum":
        return cls(frozenset({1}), True)

    def is_divisor_closed(self) -> bool:
        return self.unbounded or all(divisors(k) <= self.orders for k in self.orders)

    def same_as(self, other: "OrderSpectrum") -> bool:
        if self.unbounded or other.unbounded:
            return self.unbounded == other.unbounded
        return self.orders == other.orders

    def to_dict(self) -> dict:
        d = {"unbounded": self.unbounded,
             "orders": None if self.unbounded else sorted(self.orders)}
        d["witnesses"] = {str(k): list(v) for k, v in sorted(self.witnesses.items())}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __str__(self) -> str:
        return "all positive integers" if self.unbounded else "{" + ", ".join(map(str, sorted(self.orders))) + "}"


def _seeds(family: TreeFamily, h_max: int) -> list[AdmissibleSurface]:
    if family.kind == "lamplighter":
        ray = family.child_kinds("center").index("ray")
        addrs = [CENTER] + [(ray,) + (0,) * d for d in range(h_max - 1)]
    else:
        addrs = [(0,) * d for d in range(h_max)]
    return [AdmissibleSurface(family, frozenset([a])) for a in addrs]


def _canonical_word(word: list[int]) -> tuple:
    if not word:
        return ()
    return min(tuple(word[i:] + word[:i]) for i in range(len(word)))


def surface_representatives(family: TreeFamily, h_max: int, depth: int = 32) -> list[AdmissibleSurface]:
    """Surfaces up to height h_max, one per (height, central height, pattern).

    The pattern is the cyclic word of complement types read along the
    frontier, up to rotation; it determines r.
    """
    seen: dict[tuple, AdmissibleSurface] = {}
    layer: list[AdmissibleSurface] = []
    for s in _seeds(family, h_max):
        key = (s.height, s.central_height, _canonical_word(s.component_types(depth)))
        if key not in seen:
            seen[key] = s
            layer.append(s)
    while layer:
        nxt = []
        for s in layer:
            if s.height >= h_max:
                continue
            for p in s.adjacent_polygons():
                t = s.add(p)
                key = (t.height, t.central_height, _canonical_word(t.component_types(depth)))
                if key not in seen:
                    seen[key] = t
                    nxt.append(t)
        layer = sorted(nxt, key=lambda x: (x.height, x.key))
    return sorted(seen.values(), key=lambda x: (x.height, x.central_height, x.key))


def spectrum_enumerated(family: TreeFamily, h_max: int, depth: int = 32) -> OrderSpectrum:
    if h_max < 1:
        raise TorsionError("h_max must be >= 1")
    gens, wit = [], {}
    for s in surface_representatives(family, h_max, depth):
        r = s.rotation_order(depth)
        if r == 0:
            continue
        for g in (gcd(r, s.height), gcd(r, s.height - 1)):
            gens.append(g)
            if g not in wit:
                wit[g] = (s.height, r, g)
    return OrderSpectrum.from_generators(gens, wit)


def spectrum_closed_form(family: TreeFamily) -> OrderSpectrum:
    if family.kind != "higman":
        raise UnsupportedError("no closed form for this family")
    n, m = family.n, family.m
    if n == 1:
        return OrderSpectrum.from_generators([m])
    if m == n + 1:
        return OrderSpectrum.from_generators([2, n + 1])
    if m == n - 1:
        return OrderSpectrum.everything()
    return OrderSpectrum.from_generators([m, abs(m - n + 1)])


class Verdict(str, Enum):
    DISTINGUISHED = "DISTINGUISHED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class DistinguishReport:
    verdict: Verdict
    order: int | None
    spectra: tuple[OrderSpectrum, OrderSpectrum]
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "order": self.order,
            "spectra": [s.to_dict() for s in self.spectra],
            "note": self.note,
        }


def _first_missing(spec: OrderSpectrum) -> int:
    k = 1
    while k in spec.orders:
        k += 1
    return k


def _open_pair(f1: TreeFamily, f2: TreeFamily) -> bool:
    # brT_{6k-1} against brT_{6k-2,6k}
    for a, b in ((f1, f2), (f2, f1)):
        if a.kind == b.kind == "higman" and a.is_regular and a.n % 6 == 5:
            if (b.n, b.m) == (a.n - 1, a.n + 1):
                return True
    return False


def distinguish(f1: TreeFamily, f2: TreeFamily) -> DistinguishReport:
    """Separate two groups by an order of torsion present in only one."""
    s1, s2 = spectrum_closed_form(f1), spectrum_closed_form(f2)
    order = None
    if s1.unbounded != s2.unbounded:
        order = _first_missing(s2 if s1.unbounded else s1)
    elif not s1.unbounded:
        only2, only1 = s2.orders - s1.orders, s1.orders - s2.orders
        if only2 or only1:
            order = min(only2) if only2 else min(only1)
    if order is not None:
        return DistinguishReport(Verdict.DISTINGUISHED, order, (s1, s2))
    note = "torsion spectra agree; this says nothing about isomorphism"
    if _open_pair(f1, f2):
        note += "; the isomorphism question for this pair is open"
    return DistinguishReport(Verdict.INCONCLUSIVE, None, (s1, s2), note)
