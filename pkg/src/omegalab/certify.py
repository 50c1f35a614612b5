"""Smoothness certification pipeline.

Given a homogeneous polynomial with rational coefficients this module gates
on M-convexity of the support, runs the exact Lorentzian signature test, and
decides for every derivative order k whether the centre of the projection
from monomial coordinates meets the toric variety of the truncated base
polytope.  Disjointness for all orders certifies that the associated
resolution is the smooth toric variety of the summed-truncation polytope,
which is emitted with the certificate.

The per-order test decomposes the toric variety into torus orbits indexed by
the faces of the truncation polytope and decides torus feasibility of each
face-restricted derivative system.  An independent Groebner oracle (toric
ideal plus centre forms, checked chart by chart) is provided for
cross-validation on small instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from . import linalg
from .derivatives import all_partials, derivative_space
from .groebner import (
    DEFAULT_MAX_PAIRS,
    buchberger_intdicts,
    is_unit_ideal,
    poly_to_intdict,
    toric_ideal,
    torus_feasible,
)
from .poly import Exponent, Polynomial, grevlex_key
from .polytope import LatticePolytope, base_polytope, faces, is_smooth, lattice_points
from .setfunc import rank_from_support, truncate, truncation_sum

VERDICT_SMOOTH = "smooth-toric"
VERDICT_FAILS = "criterion-fails"
VERDICT_NOT_APPLICABLE = "not-applicable"
VERDICT_UNDECIDED = "undecided"


# -- M-convexity ---------------------------------------------------------------------


def is_mconvex(
    points: Iterable[Exponent],
) -> tuple[bool, tuple[Exponent, Exponent, int] | None]:
    """Brute-force exchange-axiom check.

    Returns (True, None) or (False, (x, y, i)) for the first exchange
    direction with no valid completion, in deterministic scan order.
    """
    pts = sorted({tuple(int(v) for v in p) for p in points})
    if not pts:
        raise ValueError("M-convexity is defined for nonempty point sets")
    if len({sum(p) for p in pts}) != 1:
        raise ValueError("points must have equal coordinate sums")
    if any(v < 0 for p in pts for v in p):
        raise ValueError("points must be nonnegative")
    index = set(pts)
    n = len(pts[0])
    for x in pts:
        for y in pts:
            for i in range(n):
                if x[i] <= y[i]:
                    continue
                ok = False
                for j in range(n):
                    if x[j] >= y[j]:
                        continue
                    xx = list(x)
                    xx[i] -= 1
                    xx[j] += 1
                    yy = list(y)
                    yy[i] += 1
                    yy[j] -= 1
                    if tuple(xx) in index and tuple(yy) in index:
                        ok = True
                        break
                if not ok:
                    return False, (x, y, i)
    return True, None


# -- Lorentzian test -----------------------------------------------------------------


@dataclass(frozen=True)
class LorentzianReport:
    mconvex: bool
    nonneg_coeffs: bool
    hessian_failures: tuple[tuple[int, ...], ...]
    is_lorentzian: bool

    def to_json_dict(self) -> dict:
        return {
            "mconvex": self.mconvex,
            "nonneg_coeffs": self.nonneg_coeffs,
            "hessian_failures": [list(m) for m in self.hessian_failures],
            "is_lorentzian": self.is_lorentzian,
        }


def _quadratic_hessian(q: Polynomial) -> list[list[Fraction]]:
    n = q.nvars
    h = [[Fraction(0)] * n for _ in range(n)]
    for exponent, coeff in q.items():
        live = [i for i, e in enumerate(exponent) if e]
        if len(live) == 1:
            i = live[0]
            h[i][i] = 2 * coeff
        else:
            i, j = live
            h[i][j] = coeff
            h[j][i] = coeff
    return h


def positive_eigenvalue_count(matrix: Sequence[Sequence[Fraction]]) -> int:
    """Exact count for a symmetric rational matrix via its characteristic polynomial.

    The matrix is real symmetric, hence real rooted, so the count equals the
    number of sign changes in the characteristic coefficient sequence.
    """
    return linalg.descartes_positive_roots(linalg.char_poly(matrix))


def is_lorentzian(h: Polynomial) -> LorentzianReport:
    """Nonnegative coefficients, M-convex support, and every iterated Hessian
    with at most one positive eigenvalue."""
    if h.is_zero or not h.is_homogeneous:
        raise ValueError("polynomial must be nonzero and homogeneous")
    d = h.total_degree
    if d < 2:
        raise ValueError("Lorentzian test needs degree at least 2")
    nonneg = all(c > 0 for c in h.terms.values())
    mcx, _ = is_mconvex(h.support())
    failures = []
    for multi in combinations_with_replacement(range(h.nvars), d - 2):
        g = h
        for i in multi:
            g = g.partial_derivative(i)
        if g.is_zero:
            continue
        count = positive_eigenvalue_count(_quadratic_hessian(g))
        if count > 1:
            failures.append(multi)
    return LorentzianReport(
        mconvex=mcx,
        nonneg_coeffs=nonneg,
        hessian_failures=tuple(failures),
        is_lorentzian=nonneg and mcx and not failures,
    )


# -- per-order disjointness -----------------------------------------------------------


@dataclass(frozen=True)
class OrderReport:
    """Disjointness verdict of one derivative order."""

    k: int
    span_dim: int  # m_k
    num_monomials: int  # |B_k|
    centre_dim: int
    disjoint: str  # yes | no | undecided
    witness_face: tuple[Exponent, ...] | None = None
    detail: str | None = None

    def to_json_dict(self) -> dict:
        out = {
            "k": self.k,
            "m_k": self.span_dim,
            "num_monomials": self.num_monomials,
            "centre_dim": self.centre_dim,
            "disjoint": self.disjoint,
        }
        if self.witness_face is not None:
            out["witness_face"] = [list(v) for v in self.witness_face]
        if self.detail:
            out["detail"] = self.detail
        return out


def _restrict(p: Polynomial, allowed: frozenset[Exponent] | set[Exponent]) -> Polynomial:
    return Polynomial(p.nvars, {e: c for e, c in p.items() if e in allowed})


def centre_disjoint(
    h: Polynomial, k: int, max_pairs: int = DEFAULT_MAX_PAIRS
) -> OrderReport:
    """Decide whether the order-k projection centre misses the toric variety.

    Enumerates all faces of the base polytope of the k-th truncation of the
    support rank function; the centre meets the variety iff some face's
    restricted derivative system has a torus zero.  The first feasible face
    in the deterministic face order is reported as witness.
    """
    space = derivative_space(h, k)
    rho = rank_from_support(h.support())
    body = base_polytope(truncate(rho, k))
    face_list = faces(body)
    partials = [g for g in all_partials(h, k) if not g.is_zero]

    centre_dim = len(space.columns) - space.span_dimension
    witness = None
    detail = None
    undecided = False
    for face in face_list:
        allowed = frozenset(face.lattice_points)
        gens = [r for r in (_restrict(g, allowed) for g in partials) if not r.is_zero]
        verdict = torus_feasible(gens, nvars=h.nvars, max_pairs=max_pairs)
        if verdict.is_feasible:
            witness = face.vertices
            detail = f"torus point on the face orbit ({verdict.method})"
            break
        if verdict.status == "undecided":
            undecided = True
    if witness is not None:
        disjoint = "no"
    elif undecided:
        disjoint = "undecided"
    else:
        disjoint = "yes"
    return OrderReport(
        k=k,
        span_dim=space.span_dimension,
        num_monomials=len(space.columns),
        centre_dim=centre_dim,
        disjoint=disjoint,
        witness_face=witness,
        detail=detail,
    )


def oracle_centre_disjoint(
    h: Polynomial, k: int, max_pairs: int = DEFAULT_MAX_PAIRS
) -> str:
    """Independent disjointness decision via the toric ideal.

    Builds the toric ideal of the truncation polytope's lattice points, adds
    the centre's defining linear forms, and tests projective emptiness by
    saturation on each affine chart.  Returns "yes" (disjoint) or "no".
    """
    space = derivative_space(h, k)
    rho = rank_from_support(h.support())
    body = base_polytope(truncate(rho, k))
    pts = sorted(lattice_points(body), key=grevlex_key, reverse=True)
    if set(pts) != set(space.columns):
        raise ValueError(
            "oracle requires the derivative support to fill the truncation polytope"
        )
    ideal = toric_ideal(pts, max_pairs)
    nz = len(pts)
    centre_rows: list[dict] = []
    for row in space.matrix:
        form = {}
        for i, c in enumerate(row):
            if c:
                e = [0] * nz
                e[i] = 1
                form[tuple(e)] = c
        centre_rows.append(form)
    base_gens = [poly_to_intdict(g) for g in ideal.generators]
    base_gens += [
        poly_to_intdict(Polynomial(nz, form)) for form in centre_rows if form
    ]
    for chart in range(nz):
        substituted = []
        for g in base_gens:
            acc: dict = {}
            for m, c in g.items():
                mm = list(m)
                mm[chart] = 0
                key = tuple(mm)
                acc[key] = acc.get(key, 0) + c
            acc = {m: c for m, c in acc.items() if c}
            if acc:
                substituted.append(acc)
        gb = buchberger_intdicts(substituted, grevlex_key, max_pairs)
        if not is_unit_ideal(gb):
            return "no"
    return "yes"


# -- full certificate -----------------------------------------------------------------


@dataclass(frozen=True)
class SmoothnessCertificate:
    polynomial: str
    nvars: int
    degree: int
    mconvex: bool
    mconvex_witness: tuple | None
    lorentzian: LorentzianReport | None
    k_reports: tuple[OrderReport, ...]
    verdict: str
    polytope: LatticePolytope | None

    def to_json_dict(self) -> dict:
        return {
            "polynomial": self.polynomial,
            "n": self.nvars,
            "d": self.degree,
            "mconvex": self.mconvex,
            "lorentzian": self.lorentzian.to_json_dict() if self.lorentzian else None,
            "k_reports": [r.to_json_dict() for r in self.k_reports],
            "verdict": self.verdict,
            "polytope": self.polytope.to_json_dict() if self.polytope else None,
        }


def certify_smooth(
    h: Polynomial,
    text: str | None = None,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    with_lorentzian: bool = True,
) -> SmoothnessCertificate:
    """Run the full sufficiency pipeline on a homogeneous polynomial.

    Verdicts: "smooth-toric" when the support is M-convex and every order's
    centre is disjoint (the emitted polytope is then the summed-truncation
    base polytope, asserted smooth); "criterion-fails" on any intersection
    (sufficiency only: this does not prove singularity); "not-applicable"
    for non-M-convex support; "undecided" when a resource guard fired.
    """
    if h.is_zero:
        raise ValueError("polynomial must be nonzero")
    if not h.is_homogeneous:
        raise ValueError("polynomial must be homogeneous")
    d = h.total_degree
    if d < 2:
        raise ValueError("degree must be at least 2")
    for i in range(h.nvars):
        if all(e[i] == 0 for e in h.support()):
            raise ValueError(f"variable index {i} does not occur in the polynomial")
    echo = text if text is not None else h.to_string([f"x{i+1}" for i in range(h.nvars)])

    mcx, mcx_witness = is_mconvex(h.support())
    lorentzian = is_lorentzian(h) if with_lorentzian else None

    if not mcx:
        return SmoothnessCertificate(
            echo, h.nvars, d, False, mcx_witness, lorentzian, (), VERDICT_NOT_APPLICABLE, None
        )

    reports = tuple(centre_disjoint(h, k, max_pairs) for k in range(1, d))
    if any(r.disjoint == "no" for r in reports):
        verdict = VERDICT_FAILS
        body = None
    elif any(r.disjoint == "undecided" for r in reports):
        verdict = VERDICT_UNDECIDED
        body = None
    else:
        verdict = VERDICT_SMOOTH
        rho = rank_from_support(h.support())
        body = base_polytope(truncation_sum(rho, 1))
        smooth, witness = is_smooth(body)
        if not smooth:
            raise AssertionError(
                f"summed-truncation polytope unexpectedly not smooth at {witness}"
            )
    return SmoothnessCertificate(
        echo, h.nvars, d, True, None, lorentzian, reports, verdict, body
    )


# -- generic-coefficient probe ---------------------------------------------------------


@dataclass(frozen=True)
class ProbeReport:
    trials: int
    seed: int
    verdicts: tuple[str, ...]
    counts: dict

    def to_json_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "verdicts": list(self.verdicts),
            "counts": dict(self.counts),
        }


def smoothable_probe(
    support: Iterable[Exponent],
    trials: int,
    seed: int = 0,
    max_coeff: int = 1000,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> ProbeReport:
    """Sample random positive-coefficient polynomials with the given support.

    A sampling probe for generic behavior over a fixed M-convex support, not
    a decision procedure.  Coefficients are uniform integers in 1..max_coeff
    from a seeded generator.
    """
    pts = sorted({tuple(int(x) for x in p) for p in support})
    mcx, witness = is_mconvex(pts)
    if not mcx:
        raise ValueError(f"support is not M-convex, witness {witness}")
    nvars = len(pts[0]) if pts else 0
    for i in range(nvars):
        if all(p[i] == 0 for p in pts):
            raise ValueError(f"variable index {i} does not occur in the support")
    rng = random.Random(seed)
    verdicts = []
    for _ in range(trials):
        terms = {p: Fraction(rng.randint(1, max_coeff)) for p in pts}
        cert = certify_smooth(
            Polynomial(nvars, terms), max_pairs=max_pairs, with_lorentzian=False
        )
        verdicts.append(cert.verdict)
    counts: dict[str, int] = {}
    for v in verdicts:
        counts[v] = counts.get(v, 0) + 1
    return ProbeReport(trials, seed, tuple(verdicts), counts)
