"""The acceptance criteria as runnable checks.

Each criterion returns a CriterionResult; ``run_criteria`` runs a selection,
possibly on several threads, and returns the results in criterion order.
"""
from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from math import gcd
from pathlib import Path
from typing import Callable

from . import arcs, cubes, presentations, simplicial, torsion
from .snf import rank, rational_rank
from .trees import higman, parse_family, star

DEFAULT_SEED = 0


@dataclass
class CriterionResult:
    number: int
    name: str
    group: str
    passed: bool
    detail: str
    seconds: float = 0.0
    limit: float | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name} ({self.seconds:.2f}s): {self.detail}"

    def to_dict(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "group": self.group,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


class GoldenError(ValueError):
    pass


def default_golden_path() -> Path:
    return Path(str(resources.files("amodlab") / "data" / "golden.json"))


def load_golden(path: str | Path | None = None) -> dict:
    """Parsed golden values; an unreadable file yields {} so that each
    criterion depending on it fails on its own."""
    p = Path(path) if path is not None else default_golden_path()
    try:
        data = json.loads(p.read_text())
    except (OSError, json.JSONDecodeError):
        return {}
    return data if isinstance(data, dict) else {}


def _golden(golden: dict, *keys):
    cur = golden
    for k in keys:
        if not isinstance(cur, dict) or k not in cur:
            raise GoldenError("golden entry missing: " + "/".join(keys))
        cur = cur[k]
    return cur


# ---------------------------------------------------------------------------
# criteria


def c01_torsion_spectra(golden: dict, seed: int) -> tuple[bool, str]:
    problems = []
    slowest = 0.0
    for key in ("higman:2:3", "higman:2:4", "higman:3:2"):
        expect = _golden(golden, "torsion", key)
        t0 = time.perf_counter()
        spec = torsion.spectrum_closed_form(parse_family(key))
        slowest = max(slowest, time.perf_counter() - t0)
        got = "unbounded" if spec.unbounded else sorted(spec.orders)
        if got != expect:
            problems.append(f"{key}: {got} != {expect}")
    d = torsion.distinguish(higman(2, 3), higman(2, 4))
    if d.verdict is not torsion.Verdict.DISTINGUISHED:
        problems.append("T-sharp and T-star not separated")
    for n in range(1, 13):
        want = torsion.divisors(n)
        t0 = time.perf_counter()
        enum = torsion.spectrum_enumerated(star(n), n + 2)
        slowest = max(slowest, time.perf_counter() - t0)
        if torsion.spectrum_closed_form(star(n)).orders != want or enum.orders != want:
            problems.append(f"star {n}: {sorted(enum.orders)}")
    cells = 0
    for n in range(2, 6):
        for m in range(1, 9):
            h_max = max(m + 1, abs(m - n + 1), n + 2)
            t0 = time.perf_counter()
            enum = torsion.spectrum_enumerated(higman(n, m), h_max)
            slowest = max(slowest, time.perf_counter() - t0)
            closed = torsion.spectrum_closed_form(higman(n, m))
            if closed.unbounded:
                ok = set(range(1, h_max + 1)) <= enum.orders
            else:
                ok = enum.orders == closed.orders
            cells += 1
            if not ok:
                problems.append(f"higman {n},{m}: {sorted(enum.orders)} vs {closed}")
    if slowest >= 1.0:
        problems.append(f"slowest spectrum took {slowest:.2f}s")
    return not problems, "; ".join(problems) or f"{cells} grid cells and 12 stars agree, slowest {slowest:.2f}s"


def c02_lcm_claim(golden: dict, seed: int) -> tuple[bool, str]:
    bad = [(a, b) for a in range(1, 31) for b in range(1, 31)
           if torsion.lcm_claim_set(a, b, 200) != torsion.divisors(gcd(a, b))]
    return not bad, f"mismatches at {bad[:5]}" if bad else "900 pairs equal the divisor sets"


def c03_nu_formula(golden: dict, seed: int) -> tuple[bool, str]:
    checked, bad = 0, []
    for kind in (torsion.EPSILON, torsion.DELTA):
        for h in range(1, 9):
            for r in range(0 if h == 1 else 1, 13):
                for t in range(-12, 13):
                    for s in range(-12, 13):
                        e = torsion.PeriodicElement(t, s, kind, h, r)
                        if torsion.element_order(e) != torsion.quotient_order(e.normalized()):
                            bad.append((t, s, kind.value, h, r))
                        checked += 1
    return not bad, f"disagreements {bad[:5]}" if bad else f"{checked} elements agree"


def c04_min_related(golden: dict, seed: int) -> tuple[bool, str]:
    bad_min = []
    for q in range(1, 17):
        for r in range(0, 7):
            got = arcs.min_related(arcs.SeparationRelation.separation(q, r))
            if got != arcs.separation_min_formula(q, r):
                bad_min.append((q, r, got))
    bad_bound = 0
    for q in range(1, 21):
        for r in range(0, 7):
            rel = arcs.SeparationRelation.separation(q, r)
            for p in range(2, 21):
                if arcs.general_bound(p, rel) != arcs.connectivity_bound(p, q, r):
                    bad_bound += 1
    ok = not bad_min and not bad_bound
    proper = [b for b in bad_min if b[0] > b[1]]
    detail = (f"identity fails on {len(bad_min)}/112 cells, {len(proper)} of them with q > r "
              f"(q,r,min: {proper[:3]}); bounds disagree on {bad_bound} cells"
              ) if not ok else "identity and bounds agree everywhere"
    return ok, detail


def c05_dlink_params(golden: dict, seed: int) -> tuple[bool, str]:
    problems = []
    for key in ("1:3:5", "2:3:4"):
        n, m, k = map(int, key.split(":"))
        got = list(cubes.descending_link_params(higman(n, m), k).as_tuple())
        if got != _golden(golden, "dlink_params", key):
            problems.append(f"{key} -> {got}")
    return not problems, "; ".join(problems) or "(5,3,0) and (4,6,1)"


def c06_sphere_witness(golden: dict, seed: int) -> tuple[bool, str]:
    problems = []
    for k in range(1, 7):
        rep = simplicial.reduced_homology(arcs.sphere_witness(k, 1))
        want = [0] * (k - 1) + [1]
        if rep.betti != want or rep.torsion:
            problems.append(f"k={k}: {rep.to_dict()}")
        for j in range(1, 11):
            if not arcs.witness_disjointness(k, j, j + 2):
                problems.append(f"S_{j} meets S_{j + 2}")
        if arcs.puncture_budget(k) != 2 * k:
            problems.append(f"budget {k}")
    return not problems, "; ".join(problems) or "spheres S^0..S^5, disjointness and budgets"


def c07_fundamental_domains(golden: dict, seed: int) -> tuple[bool, str]:
    problems = []
    for key in ("5:1", "6:2"):
        q, r = map(int, key.split(":"))
        rep = simplicial.reduced_homology(arcs.fundamental_domain(q, r))
        if rep.betti != _golden(golden, "fundamental_domain_betti", key) or rep.torsion:
            problems.append(f"Ind(C_{q}, r={r}) -> {rep.to_dict()}")
    bad = []
    for q in range(1, 17):
        for r in range(0, 7):
            dim = arcs.fundamental_domain(q, r).dimension
            if dim != q // (r + 1) - 1:
                bad.append((q, r, dim))
    if bad:
        problems.append(f"dimension formula fails on {len(bad)}/112 cells, all with q <= r (e.g. {bad[:3]})"
                        if all(q <= r for q, r, _ in bad) else f"dimension formula fails on {bad[:5]}")
    return not problems, "; ".join(problems) or "Betti numbers and all dimensions match"


MORSE_FAMILIES = ("higman:2:3", "higman:2:4", "star:3")


def _fragments(seed: int, count: int = 50):
    for key in MORSE_FAMILIES:
        fam = parse_family(key)
        rng = random.Random(f"{seed}:{key}")
        for _ in range(count):
            sources, top = cubes.random_interval(fam, rng, max_height=6)
            yield key, sources, top, cubes.build_interval(sources, top)


def c08_morse(golden: dict, seed: int) -> tuple[bool, str]:
    problems, n = [], 0
    for key, sources, top, frag in _fragments(seed):
        n += 1
        if not frag.homology().is_trivial():
            problems.append(f"{key}: nontrivial homology under {top!r}")
        try:
            cubes.morse_collapse(frag, top, sources)
        except cubes.ClaimViolation as exc:
            problems.append(f"{key}: {exc}")
        out = cubes.spine_retract(frag)
        if not all(v.contains_center for v in out.vertices):
            problems.append(f"{key}: retraction left the spine")
        if not cubes.tau_closure(frag).homology().same_groups(out.homology()):
            problems.append(f"{key}: retraction changed homology")
    return not problems, "; ".join(problems[:3]) or f"{n} fragments contractible, collapsed and retracted"


def c09_dimension_bound(golden: dict, seed: int) -> tuple[bool, str]:
    n_cubes, bad = 0, 0
    for _, _, _, frag in _fragments(seed):
        for f in (frag, cubes.tau_closure(frag)):
            n_cubes += len(f.cubes)
            bad += len(cubes.dimension_bound_violations(f))
    return not bad, f"{bad} violations" if bad else f"{n_cubes} maximal cubes within the frontier bound"


def c10_census(golden: dict, seed: int) -> tuple[bool, str]:
    fam = higman(2, 3)
    dp = [c for _, c in cubes.spine_sublevel_census(fam, 6)]
    oracle = [c for _, c in cubes.census_by_enumeration(fam, 6)]
    frozen = _golden(golden, "census", "higman:2:3")
    ok = dp == oracle == frozen
    return ok, f"counts {dp}" + ("" if ok else f", oracle {oracle}, frozen {frozen}")


def c11_non_flag(golden: dict, seed: int) -> tuple[bool, str]:
    lk = cubes.noncat_link()
    flag = simplicial.is_flag(lk)
    return not flag, f"link {sorted(lk.facets)} is {'flag' if flag else 'not flag'}"


def c12_presentation(golden: dict, seed: int) -> tuple[bool, str]:
    assignment = presentations.standard_assignment()
    rep = presentations.check_relators(presentations.brH2_presentation(200), assignment)
    deg = presentations.degree_map(assignment)
    ok = rep.passed and deg == _golden(golden, "degree_map")
    return ok, f"{len(rep.results)} relators, {len(rep.failures())} failing, degrees {deg}"


def homology_corpus() -> list[tuple[str, simplicial.SimplicialComplex]]:
    corpus = [
        ("simplex3_boundary", simplicial.sphere_boundary(4)),
        ("torus7", simplicial.torus7()),
        ("octahedron", simplicial.octahedron()),
        ("pentagon", simplicial.cycle(5)),
        ("rp2", rp2()),
        ("noncat_link", cubes.noncat_link()),
    ]
    for q in range(1, 11):
        for r in range(0, 4):
            corpus.append((f"fdomain_{q}_{r}", arcs.fundamental_domain(q, r)))
    for k in range(1, 5):
        corpus.append((f"witness_{k}", arcs.sphere_witness(k, 1)))
    for i, (_, _, _, frag) in enumerate(_fragments(DEFAULT_SEED, 5)):
        corpus.append((f"fragment_{i}", frag.to_simplicial()))
    return corpus


def rp2() -> simplicial.SimplicialComplex:
    """Six-vertex real projective plane."""
    return simplicial.SimplicialComplex([
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
        (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
    ])


def c13_homology(golden: dict, seed: int) -> tuple[bool, str]:
    problems = []
    for key in ("simplex3_boundary", "torus7"):
        K = simplicial.sphere_boundary(4) if key == "simplex3_boundary" else simplicial.torus7()
        rep = simplicial.reduced_homology(K)
        if rep.betti != _golden(golden, "homology_betti", key) or rep.torsion:
            problems.append(f"{key} -> {rep.to_dict()}")
    matrices = 0
    for name, K in homology_corpus():
        for d in range(0, K.dimension + 1):
            m = K.boundary_matrix(d)
            matrices += 1
            if rank(m) != rational_rank(m.to_dense()):
                problems.append(f"rank mismatch in {name} degree {d}")
    return not problems, "; ".join(problems) or f"reference spheres and tori, {matrices} boundary ranks agree"


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    group: str
    limit: float | None
    check: Callable[[dict, int], tuple[bool, str]]


CRITERIA = (
    Criterion(1, "torsion spectra", "torsion", None, c01_torsion_spectra),
    Criterion(2, "gcd/lcm claim", "torsion", 10.0, c02_lcm_claim),
    Criterion(3, "order formula cross-check", "torsion", 10.0, c03_nu_formula),
    Criterion(4, "min related identity", "arcs", 5.0, c04_min_related),
    Criterion(5, "descending link parameters", "cubes", None, c05_dlink_params),
    Criterion(6, "sphere witnesses", "arcs", 5.0, c06_sphere_witness),
    Criterion(7, "fundamental domains", "arcs", 30.0, c07_fundamental_domains),
    Criterion(8, "morse machinery", "cubes", 60.0, c08_morse),
    Criterion(9, "dimension bound", "cubes", None, c09_dimension_bound),
    Criterion(10, "cocompactness census", "cubes", None, c10_census),
    Criterion(11, "flagness counterexample", "cubes", None, c11_non_flag),
    Criterion(12, "presentation check", "presentations", 5.0, c12_presentation),
    Criterion(13, "homology engine", "simplicial", None, c13_homology),
)


def select(filter_text: str | None = None) -> list[Criterion]:
    if not filter_text:
        return list(CRITERIA)
    f = filter_text.lower()
    return [c for c in CRITERIA if f in c.group or f in c.name or f == str(c.number)]


def run_criterion(c: Criterion, golden: dict, seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        ok, detail = c.check(golden, seed)
    except (GoldenError, AssertionError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if c.limit is not None and dt >= c.limit:
        ok, detail = False, f"{detail}; took {dt:.1f}s, limit {c.limit:.0f}s"
    return CriterionResult(c.number, c.name, c.group, ok, detail, dt, c.limit)


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("AMODLAB_THREADS", "1")))
    except ValueError:
        return 1


def run_criteria(selected: list[Criterion], golden: dict, seed: int = DEFAULT_SEED,
                 threads: int | None = None) -> list[CriterionResult]:
    threads = thread_count() if threads is None else threads
    if threads <= 1:
        return [run_criterion(c, golden, seed) for c in selected]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda c: run_criterion(c, golden, seed), selected))
