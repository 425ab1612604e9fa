"""Command-line entry point ``amodlab``.

Exit codes: 0 success, 1 a checked claim or assertion failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from math import gcd
from typing import Sequence

from . import __version__, acceptance, arcs, cubes, presentations, simplicial, torsion
from .trees import AdmissibleSurface, TreeError, TreeFamily, parse_family

EXIT_OK, EXIT_CLAIM, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _family(text: str) -> TreeFamily:
    try:
        return parse_family(text)
    except TreeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _surface(family: TreeFamily, text: str) -> AdmissibleSurface:
    """Polygons separated by commas; '.' is the central polygon, '0/1' a grandchild."""
    polys = []
    for tok in text.split(","):
        tok = tok.strip()
        polys.append("" if tok == "." else tok)
    try:
        return AdmissibleSurface.of(family, polys)
    except (TreeError, ValueError) as exc:
        raise UsageError(f"--vertex {text!r}: {exc}") from None


def _surface_text(s: AdmissibleSurface) -> str:
    return ",".join(k or "." for k in s.key)


def _emit(args, payload: dict, text: str | None = None) -> None:
    if args.format == "json" or text is None:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _homology_dict(K: simplicial.SimplicialComplex) -> dict:
    return simplicial.reduced_homology(K).to_dict()


# ---------------------------------------------------------------------------
# subcommands


def cmd_retract(args) -> int:
    fam = args.family
    frag = cubes.CubeFragment(_surface(fam, v) for v in args.vertex)
    closure = cubes.tau_closure(frag)
    layers: list = []
    try:
        out = cubes.spine_retract(frag, layers)
    except cubes.ClaimViolation as exc:
        print(f"claim violation: {exc}", file=sys.stderr)
        return EXIT_CLAIM
    before, after = closure.homology(), out.homology()
    payload = {
        "family": fam.flag(),
        "closure_vertices": [_surface_text(v) for v in closure.ordered_vertices()],
        "spine_vertices": [_surface_text(v) for v in out.ordered_vertices()],
        "layers": [list(layer) for layer in layers],
        "homology_before": before.to_dict(),
        "homology_after": after.to_dict(),
        "preserved": before.same_groups(after),
    }
    _emit(args, payload, out.serialize())
    return EXIT_OK if payload["preserved"] else EXIT_CLAIM


def cmd_census(args) -> int:
    counts = cubes.spine_sublevel_census(args.family, args.height)
    payload = {"family": args.family.flag(), "counts": [list(c) for c in counts]}
    code = EXIT_OK
    if args.oracle:
        oracle = cubes.census_by_enumeration(args.family, args.height)
        payload["oracle"] = [list(c) for c in oracle]
        payload["agree"] = oracle == counts
        code = EXIT_OK if payload["agree"] else EXIT_CLAIM
    _emit(args, payload, "\n".join(f"{h} {c}" for h, c in counts))
    return code


def cmd_dlink_params(args) -> int:
    p = cubes.descending_link_params(args.family, args.height)
    payload = {"family": args.family.flag(), "height": args.height, "p": p.p, "q": p.q, "r": p.r}
    _emit(args, payload, f"{p.p} {p.q} {p.r}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    rel = arcs.SeparationRelation.separation(args.q, args.r)
    payload = {
        "p": args.p, "q": args.q, "r": args.r,
        "bound": arcs.connectivity_bound(args.p, args.q, args.r),
        "general_bound": arcs.general_bound(args.p, rel),
        "min_related": arcs.min_related(rel),
        "min_related_formula": arcs.separation_min_formula(args.q, args.r),
        "conjectured_dimension": arcs.conjectured_bouquet_dimension(args.p, rel),
    }
    _emit(args, payload, str(payload["bound"]))
    return EXIT_OK


def _complex_output(args, K: simplicial.SimplicialComplex, extra: dict) -> int:
    payload = dict(extra)
    payload["facets"] = [list(f) for f in sorted(K.facets)]
    payload["dimension"] = K.dimension
    if args.homology:
        payload["homology"] = _homology_dict(K)
    text = K.to_text().rstrip("\n")
    if args.homology:
        text += "\n# homology " + json.dumps(payload["homology"], sort_keys=True)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_fdomain(args) -> int:
    K = arcs.fundamental_domain(args.q, args.r, args.cap)
    return _complex_output(args, K, {"q": args.q, "r": args.r, "cap": args.cap})


def cmd_witness(args) -> int:
    K = arcs.sphere_witness(args.k, args.j)
    return _complex_output(args, K, {"k": args.k, "j": args.j})


def cmd_torsion(args) -> int:
    fam = args.family
    if args.hmax is not None:
        spec = torsion.spectrum_enumerated(fam, args.hmax)
        source = "enumerated"
    else:
        spec = torsion.spectrum_closed_form(fam)
        source = "closed_form"
    payload = {"family": fam.flag(), "source": source, "hmax": args.hmax}
    payload.update(spec.to_dict())
    _emit(args, payload, str(spec))
    return EXIT_OK


def cmd_distinguish(args) -> int:
    rep = torsion.distinguish(args.f1, args.f2)
    payload = {"families": [args.f1.flag(), args.f2.flag()]}
    payload.update(rep.to_dict())
    text = rep.verdict.value + (f" by order {rep.order}" if rep.order else "")
    if rep.note:
        text += f" ({rep.note})"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_lcm_claim(args) -> int:
    got = torsion.lcm_claim_set(args.a, args.b, args.bound)
    want = torsion.divisors(gcd(args.a, args.b))
    payload = {"a": args.a, "b": args.b, "bound": args.bound,
               "set": sorted(got), "divisors_of_gcd": sorted(want), "equal": got == want}
    _emit(args, payload, " ".join(map(str, sorted(got))))
    return EXIT_OK if got == want else EXIT_CLAIM


def cmd_check_presentation(args) -> int:
    pres = presentations.brH2_presentation(args.nmax)
    if args.print:
        print(pres.to_text(), end="")
        return EXIT_OK
    assignment = presentations.standard_assignment()
    rep = presentations.check_relators(pres, assignment)
    payload = {"presentation": args.name, "nmax": args.nmax,
               "degrees": presentations.degree_map(assignment)}
    payload.update(rep.to_dict())
    _emit(args, payload, "pass" if rep.passed else "fail: " + "; ".join(rep.failures()))
    return EXIT_OK if rep.passed else EXIT_CLAIM


def cmd_reproduce(args) -> int:
    selected = acceptance.select(args.filter)
    if not selected:
        raise UsageError(f"--filter {args.filter!r} matches no criterion")
    golden = acceptance.load_golden(args.golden)
    results = acceptance.run_criteria(selected, golden, args.seed)
    if args.format == "json":
        rows = [r.to_dict() for r in results]
        if args.no_timing:
            for row in rows:
                row.pop("seconds")
        print(json.dumps({"results": rows, "passed": all(r.passed for r in results)}, sort_keys=True))
    else:
        for r in results:
            line = r.line()
            if args.no_timing:
                line = line.replace(f" ({r.seconds:.2f}s)", "")
            print(line)
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CLAIM


# ---------------------------------------------------------------------------
# parser


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _common_options(default_format: str) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=default_format)
    common.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED,
                        help="seed for randomized suites (default 0)")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="amodlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"amodlab {__version__}")
    common = _common_options("json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("retract", parents=[common], help="retract a fragment onto the spine")
    p.add_argument("--family", type=_family, required=True)
    p.add_argument("--vertex", action="append", required=True,
                   help="surface as comma-separated polygons, '.' for the center")
    p.set_defaults(func=cmd_retract)

    p = sub.add_parser("census", parents=[common], help="spine vertices per height")
    p.add_argument("--family", type=_family, required=True)
    p.add_argument("--height", type=_pos, required=True)
    p.add_argument("--oracle", action="store_true", help="also count by exhaustive enumeration")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("dlink-params", parents=[common], help="descending link parameters")
    p.add_argument("--family", type=_family, required=True)
    p.add_argument("--height", type=_pos, required=True)
    p.set_defaults(func=cmd_dlink_params)

    p = sub.add_parser("bounds", parents=[common], help="connectivity bounds of the arc complex")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=_pos, required=True)
    p.add_argument("--r", type=_nonneg, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("fdomain", parents=[common], help="fundamental domain complex")
    p.add_argument("q", type=_pos)
    p.add_argument("r", type=_nonneg)
    p.add_argument("--cap", type=_pos)
    p.add_argument("--homology", action="store_true")
    p.set_defaults(func=cmd_fdomain)

    p = sub.add_parser("witness", parents=[common], help="sphere witness complex")
    p.add_argument("k", type=_pos)
    p.add_argument("j", type=_pos)
    p.add_argument("--homology", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("torsion", parents=[common], help="orders of finite-order elements")
    p.add_argument("--family", type=_family, required=True)
    p.add_argument("--hmax", type=_pos, help="enumerate surfaces up to this height")
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("distinguish", parents=[common], help="compare two groups by torsion")
    p.add_argument("f1", type=_family)
    p.add_argument("f2", type=_family)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("lcm-claim", parents=[common], help="check the gcd/lcm divisor claim")
    p.add_argument("a", type=_pos)
    p.add_argument("b", type=_pos)
    p.add_argument("bound", type=_pos)
    p.set_defaults(func=cmd_lcm_claim)

    p = sub.add_parser("check-presentation", parents=[common], help="verify relators in Sym_fin(Z) x Z")
    p.add_argument("name", choices=("brh2",))
    p.add_argument("--nmax", type=int, default=50)
    p.add_argument("--print", action="store_true", help="print the relators instead")
    p.set_defaults(func=cmd_check_presentation)

    p = sub.add_parser("reproduce", parents=[_common_options("text")], help="run the acceptance criteria")
    p.add_argument("--filter", help="criterion number, group or name fragment")
    p.add_argument("--golden", help="alternative golden file")
    p.add_argument("--no-timing", action="store_true", help="omit timings for byte-stable output")
    p.set_defaults(func=cmd_reproduce)
    return parser


DOMAIN_ERRORS = (TreeError, cubes.CubeError, arcs.ArcError, torsion.TorsionError,
                 presentations.PresentationError, simplicial.SimplicialError)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except DOMAIN_ERRORS as exc:
        print(f"amodlab {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"amodlab {args.command}: assertion failed: {exc}", file=sys.stderr)
        return EXIT_CLAIM
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
