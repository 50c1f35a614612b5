"""Command-line front end.

Commands: analyze, certify, polytope, mconvex, lorentzian, rank,
probe-smoothable.  Polynomials are read inline or from a .poly file; the
variable order is declared with --vars.  Every JSON payload carries
"schema": "omegalab/1".

certify exit codes: 0 smooth-toric, 1 criterion-fails, 2 not-applicable,
3 undecided, 64 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import SCHEMA
from .certify import (
    certify_smooth,
    is_lorentzian,
    is_mconvex,
    smoothable_probe,
)
from .derivatives import derivative_space, projection_centre
from .groebner import DEFAULT_MAX_PAIRS
from .guards import ResourceLimit
from .poly import ParseError, Polynomial, parse_polynomial
from .polytope import (
    DEFAULT_SCAN_CELLS,
    base_polytope,
    faces,
    is_simple,
    is_smooth,
)
from .polytope import independence_polytope as build_independence
from .setfunc import (
    SetFunction,
    ZeroRestrictionError,
    hyperbolic_rank,
    is_polymatroid,
    mask_to_set,
    rank_from_support,
    truncation_sum,
)

EXIT_SMOOTH = 0
EXIT_FAILS = 1
EXIT_NOT_APPLICABLE = 2
EXIT_UNDECIDED = 3
EXIT_USAGE = 64

VERDICT_EXIT_CODES = {
    "smooth-toric": EXIT_SMOOTH,
    "criterion-fails": EXIT_FAILS,
    "not-applicable": EXIT_NOT_APPLICABLE,
    "undecided": EXIT_UNDECIDED,
}


class UsageError(Exception):
    pass


def _add_common(parser: argparse.ArgumentParser, needs_poly: bool = True) -> None:
    if needs_poly:
        parser.add_argument("polynomial", nargs="?", help="inline polynomial text")
        parser.add_argument("--file", help="read the polynomial from this .poly file")
        parser.add_argument(
            "--vars", help="comma-separated variable order, e.g. --vars x,y,z,w"
        )
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    parser.add_argument(
        "--max-pairs",
        type=int,
        default=DEFAULT_MAX_PAIRS,
        help="Groebner pair-queue cap before reporting undecided",
    )
    parser.add_argument(
        "--max-lattice-scan",
        type=int,
        default=DEFAULT_SCAN_CELLS,
        help="lattice-point scan cell cap",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="worker cap (reserved; the current engine is sequential)",
    )


def _read_polynomial(args) -> tuple[Polynomial, list[str], str]:
    if not args.vars:
        raise UsageError("--vars is required")
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    if not names:
        raise UsageError("--vars must list at least one variable")
    sources = [s for s in (args.polynomial, args.file) if s]
    if len(sources) != 1:
        raise UsageError("give exactly one input: inline text or --file")
    if args.file:
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                text = fh.read().strip()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc}")
    else:
        text = args.polynomial
    return parse_polynomial(text, names), names, text


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _cmd_certify(args) -> int:
    h, names, text = _read_polynomial(args)
    cert = certify_smooth(h, text=text, max_pairs=args.max_pairs)
    payload = {"command": "certify", **cert.to_json_dict()}
    lines = [
        f"polynomial: {cert.polynomial}",
        f"variables:  {', '.join(names)}",
        f"degree {cert.degree} in {cert.nvars} variables",
        f"M-convex support: {cert.mconvex}",
    ]
    if cert.lorentzian is not None:
        lines.append(f"Lorentzian: {cert.lorentzian.is_lorentzian}")
    for report in cert.k_reports:
        line = (
            f"k={report.k}: span dim {report.span_dim}, "
            f"{report.num_monomials} monomials, centre dim {report.centre_dim}, "
            f"disjoint={report.disjoint}"
        )
        if report.witness_face:
            line += f", witness face vertices {[list(v) for v in report.witness_face]}"
        lines.append(line)
    lines.append(f"verdict: {cert.verdict}")
    if cert.polytope is not None:
        lines.append(
            f"toric polytope: {len(cert.polytope.vertices)} vertices, dim {cert.polytope.dim}"
        )
        lines.append(f"vertices: {[list(v) for v in cert.polytope.vertices]}")
    _emit(args, payload, lines)
    return VERDICT_EXIT_CODES[cert.verdict]


def _cmd_analyze(args) -> int:
    h, names, text = _read_polynomial(args)
    if h.is_zero or not h.is_homogeneous or h.total_degree < 1:
        raise UsageError("analyze needs a nonzero homogeneous polynomial of degree >= 1")
    supp = sorted(h.support())
    mcx, witness = is_mconvex(supp)
    rho = rank_from_support(supp)
    payload: dict = {
        "command": "analyze",
        "polynomial": text,
        "n": h.nvars,
        "d": h.total_degree,
        "support": [list(e) for e in supp],
        "mconvex": mcx,
        "rho": json.loads(rho.to_json()),
    }
    lines = [
        f"polynomial: {text}",
        f"degree {h.total_degree} in {h.nvars} variables, {len(supp)} terms",
        f"support: {[list(e) for e in supp]}",
        f"M-convex: {mcx}" + ("" if mcx else f" (witness {witness})"),
    ]
    rho_table = {
        ",".join(map(str, mask_to_set(mask))) or "{}": rho.values[mask]
        for mask in range(1 << h.nvars)
    }
    lines.append(f"rank table: {rho_table}")
    if h.total_degree >= 2:
        lor = is_lorentzian(h)
        payload["lorentzian"] = lor.to_json_dict()
        lines.append(f"Lorentzian: {lor.is_lorentzian}")
    per_k = []
    for k in range(1, max(h.total_degree, 1)):
        space = derivative_space(h, k)
        centre = projection_centre(space)
        per_k.append(
            {
                "k": k,
                "m_k": space.span_dimension,
                "num_monomials": len(space.columns),
                "centre_dim": len(centre),
                "basis": [p.to_string(names) for p in space.basis],
            }
        )
        lines.append(
            f"k={k}: span dim {space.span_dimension}, {len(space.columns)} monomials, "
            f"centre dim {len(centre)}"
        )
        for p in space.basis:
            lines.append(f"    {p.to_string(names)}")
    payload["k_spaces"] = per_k
    _emit(args, payload, lines)
    return 0


def _parse_setfunction_arg(args) -> SetFunction:
    if args.matroid:
        chunks = [c.strip() for c in args.matroid.split(",") if c.strip()]
        bases = []
        for chunk in chunks:
            try:
                bases.append([int(ch) for ch in chunk])
            except ValueError:
                raise UsageError(f"bad basis {chunk!r}; write e.g. 12,13,14,23,24,34")
        n = args.ground_set or max(max(b) for b in bases)
        f = SetFunction.from_bases(n, bases)
    elif args.setfunction:
        try:
            f = SetFunction.from_json(args.setfunction)
        except (ValueError, KeyError) as exc:
            raise UsageError(f"bad set function JSON: {exc}")
    else:
        raise UsageError("give --matroid or --setfunction")
    report = is_polymatroid(f)
    if not report.ok:
        s, t = report.violating_pair
        raise UsageError(
            f"not a polymatroid: violating pair S={mask_to_set(s)}, T={mask_to_set(t)}"
        )
    return f


def _cmd_polytope(args) -> int:
    if args.matroid or args.setfunction:
        f = _parse_setfunction_arg(args)
    elif args.polynomial or args.file:
        h, _, _ = _read_polynomial(args)
        if h.is_zero or not h.is_homogeneous:
            raise UsageError("polynomial input must be nonzero homogeneous")
        f = rank_from_support(h.support())
    else:
        raise UsageError("give --matroid, --setfunction, or a polynomial")
    if args.function == "bar":
        f = truncation_sum(f)
        body = base_polytope(f)
    elif args.function == "base":
        body = base_polytope(f)
    else:
        body = build_independence(f)
    face_list = faces(body, max_cells=args.max_lattice_scan)
    simple, _ = is_simple(body, face_list)
    smooth, _ = is_smooth(body, face_list)
    payload = {
        "command": "polytope",
        "function": args.function,
        **body.to_json_dict(),
        "simple": simple,
        "smooth": smooth,
    }
    lines = [
        f"{args.function} polytope: dim {body.dim}, {len(body.vertices)} vertices, "
        f"{len(body.inequalities)} facets",
        f"vertices: {[list(v) for v in body.vertices]}",
        f"simple: {simple}",
        f"smooth: {smooth}",
    ]
    _emit(args, payload, lines)
    return 0


def _cmd_mconvex(args) -> int:
    h, _, text = _read_polynomial(args)
    if h.is_zero or not h.is_homogeneous:
        raise UsageError("mconvex needs a nonzero homogeneous polynomial")
    mcx, witness = is_mconvex(h.support())
    payload = {
        "command": "mconvex",
        "polynomial": text,
        "mconvex": mcx,
        "witness": [list(w) if isinstance(w, tuple) else w for w in witness]
        if witness
        else None,
    }
    lines = [f"M-convex: {mcx}"]
    if witness:
        x, y, i = witness
        lines.append(f"witness: x={list(x)}, y={list(y)}, index {i + 1} has no exchange")
    _emit(args, payload, lines)
    return 0


def _cmd_lorentzian(args) -> int:
    h, _, text = _read_polynomial(args)
    report = is_lorentzian(h)
    payload = {"command": "lorentzian", "polynomial": text, **report.to_json_dict()}
    lines = [
        f"nonnegative coefficients: {report.nonneg_coeffs}",
        f"M-convex support: {report.mconvex}",
        f"Hessian failures: {[list(m) for m in report.hessian_failures]}",
        f"Lorentzian: {report.is_lorentzian}",
    ]
    _emit(args, payload, lines)
    return 0


def _parse_point(text: str, n: int, what: str) -> list[Fraction]:
    try:
        values = [Fraction(ch.strip()) for ch in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad {what} {text!r}; write e.g. 1,1,1")
    if len(values) != n:
        raise UsageError(f"{what} needs {n} coordinates")
    return values


def _cmd_rank(args) -> int:
    h, _, text = _read_polynomial(args)
    base = _parse_point(args.at, h.nvars, "--at point")
    direction = _parse_point(args.direction, h.nvars, "--dir point")
    try:
        value = hyperbolic_rank(h, base, direction)
    except ZeroRestrictionError as exc:
        raise UsageError(str(exc))
    payload = {"command": "rank", "polynomial": text, "rank": value}
    _emit(args, payload, [f"rank: {value}"])
    return 0


def _cmd_probe(args) -> int:
    h, _, text = _read_polynomial(args)
    if h.is_zero or not h.is_homogeneous:
        raise UsageError("probe-smoothable needs a nonzero homogeneous polynomial")
    report = smoothable_probe(
        h.support(), trials=args.trials, seed=args.seed, max_pairs=args.max_pairs
    )
    payload = {"command": "probe-smoothable", "polynomial": text, **report.to_json_dict()}
    lines = [
        f"trials: {report.trials} (seed {report.seed})",
        f"counts: {report.counts}",
    ]
    _emit(args, payload, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omegalab",
        description="Exact smoothness certificates for gradient-map resolutions.",
    )
    sub = parser.add_subparsers(dest="command")

    p_certify = sub.add_parser("certify", help="run the full smoothness criterion")
    _add_common(p_certify)
    p_certify.set_defaults(func=_cmd_certify)

    p_analyze = sub.add_parser("analyze", help="support, rank table, Lorentzian, spans")
    _add_common(p_analyze)
    p_analyze.set_defaults(func=_cmd_analyze)

    p_polytope = sub.add_parser("polytope", help="base/independence polytopes")
    _add_common(p_polytope)
    p_polytope.add_argument(
        "--function", choices=("base", "independence", "bar"), default="base"
    )
    p_polytope.add_argument(
        "--matroid", help='basis list, e.g. --matroid "12,13,14,23,24,34"'
    )
    p_polytope.add_argument("--setfunction", help='JSON {"n": ..., "values": [...]}')
    p_polytope.add_argument("--ground-set", type=int, help="ground-set size for --matroid")
    p_polytope.set_defaults(func=_cmd_polytope)

    p_mconvex = sub.add_parser("mconvex", help="exchange-axiom check of the support")
    _add_common(p_mconvex)
    p_mconvex.set_defaults(func=_cmd_mconvex)

    p_lorentzian = sub.add_parser("lorentzian", help="exact Lorentzian signature test")
    _add_common(p_lorentzian)
    p_lorentzian.set_defaults(func=_cmd_lorentzian)

    p_rank = sub.add_parser("rank", help="line degree at a base point and direction")
    _add_common(p_rank)
    p_rank.add_argument("--at", required=True, help="base point, e.g. --at 1,1,1")
    p_rank.add_argument("--dir", dest="direction", required=True, help="direction")
    p_rank.set_defaults(func=_cmd_rank)

    p_probe = sub.add_parser(
        "probe-smoothable", help="random-coefficient probe over a fixed support"
    )
    _add_common(p_probe)
    p_probe.add_argument("--trials", type=int, default=5)
    p_probe.add_argument("--seed", type=int, default=0)
    p_probe.set_defaults(func=_cmd_probe)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
