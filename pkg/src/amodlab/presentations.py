"""Group presentations checked against finitary permutations of Z with a shift."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

Letter = tuple[str, int]  # (generator, +1 or -1)
Word = tuple[Letter, ...]


class PresentationError(ValueError):
    pass


class UnassignedGeneratorError(PresentationError):
    pass


def free_reduce(word: Sequence[Letter]) -> Word:
    out: list[Letter] = []
    for g, e in word:
        if e not in (1, -1):
            raise PresentationError(f"exponent must be +-1, got {e}")
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def inverse_word(word: Sequence[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def power(word: Sequence[Letter], n: int) -> Word:
    base = tuple(word) if n >= 0 else inverse_word(word)
    return base * abs(n)


def conjugate(a: Sequence[Letter], b: Sequence[Letter]) -> Word:
    """a^b = b a b^-1."""
    return tuple(b) + tuple(a) + inverse_word(b)


def commutator(a: Sequence[Letter], b: Sequence[Letter]) -> Word:
    """[a, b] = a b a^-1 b^-1."""
    return tuple(a) + tuple(b) + inverse_word(a) + inverse_word(b)


def format_word(word: Sequence[Letter]) -> str:
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in word)


def parse_word(text: str) -> Word:
    out = []
    for tok in text.split():
        if tok.endswith("^-1"):
            out.append((tok[:-3], -1))
        else:
            out.append((tok, 1))
        if not out[-1][0]:
            raise PresentationError(f"bad token {tok!r}")
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("generator names must be unique")
        gens = set(self.generators)
        rels = []
        for w in self.relators:
            for g, _ in w:
                if g not in gens:
                    raise PresentationError(f"unknown generator {g!r}")
            rels.append(free_reduce(w))
        object.__setattr__(self, "relators", tuple(rels))

    def to_text(self) -> str:
        head = "# generators: " + " ".join(self.generators) + "\n"
        return head + "".join(format_word(w) + "\n" for w in self.relators)

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        gens: list[str] = []
        rels = []
        for line in text.splitlines():
            line = line.strip()
            if line.startswith("# generators:"):
                gens = line.split(":", 1)[1].split()
            elif line and not line.startswith("#"):
                rels.append(parse_word(line))
        return cls(tuple(gens), tuple(rels))


T, TAU = "t", "tau"


def brH2_presentation(n_max: int) -> Presentation:
    """Braid relator tau tau^t tau = tau^t tau tau^t and [tau, tau^(t^n)], 2 <= |n| <= n_max."""
    if n_max < 2:
        raise PresentationError("n_max must be >= 2")
    t, tau = ((T, 1),), ((TAU, 1),)
    tau_t = conjugate(tau, t)
    lhs = tau + tau_t + tau
    rhs = tau_t + tau + tau_t
    rels = [lhs + inverse_word(rhs)]
    for k in range(2, n_max + 1):
        for n in (k, -k):
            rels.append(commutator(tau, conjugate(tau, power(t, n))))
    return Presentation((T, TAU), tuple(rels))


# ---------------------------------------------------------------------------
# Sym_fin(Z) semidirect Z


class ShiftPermutation:
    """(perm, shift) acting by x -> perm(x + shift); product (s,a)(p,b) = (s . c_a(p), a+b)
    with c_a(p)(x) = p(x - a) + a."""

    __slots__ = ("perm", "shift")

    def __init__(self, perm: Mapping[int, int] | None = None, shift: int = 0):
        p = {int(k): int(v) for k, v in (perm or {}).items() if k != v}
        if set(p) != set(p.values()):
            raise PresentationError("not a finitely supported bijection")
        self.perm = p
        self.shift = int(shift)

    @classmethod
    def identity(cls) -> "ShiftPermutation":
        return cls()

    @classmethod
    def transposition(cls, a: int, b: int) -> "ShiftPermutation":
        return cls({a: b, b: a})

    @classmethod
    def translation(cls, k: int = 1) -> "ShiftPermutation":
        return cls({}, k)

    def apply_perm(self, x: int) -> int:
        return self.perm.get(x, x)

    def __mul__(self, other: "ShiftPermutation") -> "ShiftPermutation":
        a = self.shift
        moved = {x + a: other.apply_perm(x) + a for x in other.perm}
        out = {}
        for x in set(moved) | set(self.perm):
            out[x] = self.apply_perm(moved.get(x, x))
        return ShiftPermutation(out, a + other.shift)

    def inverse(self) -> "ShiftPermutation":
        a = self.shift
        inv = {v: k for k, v in self.perm.items()}
        return ShiftPermutation({x - a: inv[x] - a for x in inv}, -a)

    def is_identity(self) -> bool:
        return not self.perm and self.shift == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, ShiftPermutation) and self.perm == other.perm and self.shift == other.shift

    def __hash__(self) -> int:
        return hash((frozenset(self.perm.items()), self.shift))

    def __repr__(self) -> str:
        return f"ShiftPermutation({dict(sorted(self.perm.items()))}, {self.shift})"

    def support(self) -> list[int]:
        return sorted(self.perm)

    def to_dict(self) -> dict:
        return {"perm": [[k, v] for k, v in sorted(self.perm.items())], "shift": self.shift}


def evaluate_word(word: Sequence[Letter], assignment: Mapping[str, ShiftPermutation]) -> ShiftPermutation:
    acc = ShiftPermutation.identity()
    inverses: dict[str, ShiftPermutation] = {}
    for g, e in word:
        if g not in assignment:
            raise UnassignedGeneratorError(f"generator {g!r} has no image")
        if e == 1:
            x = assignment[g]
        else:
            if g not in inverses:
                inverses[g] = assignment[g].inverse()
            x = inverses[g]
        acc = acc * x
    return acc


def standard_assignment() -> dict[str, ShiftPermutation]:
    """t -> translation by 1, tau -> transposition (0 1)."""
    return {T: ShiftPermutation.translation(1), TAU: ShiftPermutation.transposition(0, 1)}


@dataclass
class RelatorReport:
    results: list[tuple[str, bool]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.results)

    def failures(self) -> list[str]:
        return [w for w, ok in self.results if not ok]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "relators": len(self.results),
            "failures": self.failures(),
        }


def check_relators(pres: Presentation, assignment: Mapping[str, ShiftPermutation]) -> RelatorReport:
    missing = [g for g in pres.generators if g not in assignment]
    if missing:
        raise UnassignedGeneratorError(f"generators without image: {missing}")
    return RelatorReport([(format_word(w), evaluate_word(w, assignment).is_identity())
                          for w in pres.relators])


def degree_map(assignment: Mapping[str, ShiftPermutation]) -> dict[str, int]:
    """Image of each generator under the projection onto Z."""
    return {g: x.shift for g, x in assignment.items()}
