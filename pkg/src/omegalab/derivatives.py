"""Spans of higher-order partial derivatives and their monomial data.

For a homogeneous polynomial and an order k this module computes all k-th
order partials, the union of their supports, a canonical echelon basis of
their span, and the coefficient matrix of that basis over the support
monomials (the matrix of the linear projection from monomial coordinates to
the derivative span).  The kernel of that matrix is the projection centre.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb

from . import linalg
from .poly import Exponent, Polynomial, grevlex_key
from .polytope import base_polytope, lattice_points
from .setfunc import rank_from_support, truncate


@dataclass(frozen=True)
class DerivativeSpace:
    """Echelon basis of the span of all order-k partials of one polynomial."""

    order: int
    nvars: int
    basis: tuple[Polynomial, ...]
    support_union: frozenset[Exponent]
    columns: tuple[Exponent, ...]  # support_union sorted descending grevlex
    matrix: tuple[tuple[Fraction, ...], ...]  # len(basis) x len(columns)

    @property
    def span_dimension(self) -> int:
        return len(self.basis)

    def to_json_dict(self) -> dict:
        return {
            "k": self.order,
            "m_k": self.span_dimension,
            "monomials": [list(c) for c in self.columns],
            "matrix": [[str(x) for x in row] for row in self.matrix],
        }


def all_partials(h: Polynomial, k: int) -> list[Polynomial]:
    """Every order-k partial derivative, one per multiset of variable indices."""
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    out = []
    for multi in combinations_with_replacement(range(h.nvars), k):
        g = h
        for i in multi:
            g = g.partial_derivative(i)
        out.append(g)
    return out


def derivative_support(h: Polynomial, k: int) -> frozenset[Exponent]:
    """Union of the supports of all order-k partials."""
    acc: set[Exponent] = set()
    for g in all_partials(h, k):
        acc |= g.support()
    return frozenset(acc)


def derivative_space(h: Polynomial, k: int) -> DerivativeSpace:
    """Canonical derivative-span data for 1 <= k < deg(h), h homogeneous."""
    if h.is_zero or not h.is_homogeneous:
        raise ValueError("polynomial must be nonzero and homogeneous")
    if not 1 <= k < h.total_degree:
        raise ValueError(f"order {k} out of range 1..{h.total_degree - 1}")
    partials = [g for g in all_partials(h, k) if not g.is_zero]
    support: set[Exponent] = set()
    for g in partials:
        support |= g.support()
    columns = tuple(sorted(support, key=grevlex_key, reverse=True))
    column_index = {c: i for i, c in enumerate(columns)}
    rows = []
    for g in partials:
        row = [Fraction(0)] * len(columns)
        for exponent, coeff in g.items():
            row[column_index[exponent]] = coeff
        rows.append(row)
    reduced, _ = linalg.rref(rows, len(columns))

    basis = []
    matrix = []
    for row in reduced:
        scaled = linalg.clear_denominators(row)
        matrix.append(tuple(Fraction(x) for x in scaled))
        basis.append(
            Polynomial(
                h.nvars,
                {columns[i]: Fraction(x) for i, x in enumerate(scaled) if x},
            )
        )
    return DerivativeSpace(
        order=k,
        nvars=h.nvars,
        basis=tuple(basis),
        support_union=frozenset(support),
        columns=columns,
        matrix=tuple(matrix),
    )


def projection_centre(space: DerivativeSpace) -> list[list[Fraction]]:
    """Canonical kernel basis of the projection matrix (echelon form)."""
    return linalg.kernel_basis([list(row) for row in space.matrix], len(space.columns))


def span_contains(space: DerivativeSpace, p: Polynomial) -> bool:
    """True iff p lies in the rational span of the order-k partials."""
    if p.is_zero:
        return True
    if not p.support() <= set(space.columns):
        return False
    column_index = {c: i for i, c in enumerate(space.columns)}
    vector = [Fraction(0)] * len(space.columns)
    for exponent, coeff in p.items():
        vector[column_index[exponent]] = coeff
    return linalg.in_row_space([list(row) for row in space.matrix], vector)


def check_derivative_supports(h: Polynomial) -> list[int]:
    """Orders k where the derivative support differs from the truncation polytope.

    Compares, for every 0 <= k <= deg(h), the union of order-k partial
    supports with the lattice points of the base polytope of the k-th
    truncation of the support rank function.  Expected empty for M-convex
    support; reported literally otherwise.
    """
    if h.is_zero or not h.is_homogeneous:
        raise ValueError("polynomial must be nonzero and homogeneous")
    rho = rank_from_support(h.support())
    failures = []
    for k in range(h.total_degree + 1):
        expected = set(lattice_points(base_polytope(truncate(rho, k))))
        if set(derivative_support(h, k)) != expected:
            failures.append(k)
    return failures


def elementary_symmetric(degree: int, nvars: int) -> Polynomial:
    """Sum of all squarefree degree-d monomials in n variables."""
    if not 1 <= degree <= nvars:
        raise ValueError("need 1 <= degree <= nvars")
    terms = {}
    for subset in combinations(range(nvars), degree):
        exponent = [0] * nvars
        for i in subset:
            exponent[i] = 1
        terms[tuple(exponent)] = Fraction(1)
    return Polynomial(nvars, terms)


@dataclass(frozen=True)
class SubsetIdentityReport:
    holds: bool
    coefficient: int
    both_sides_zero: bool


def binomial_identity_report(n: int, d: int, k: int) -> SubsetIdentityReport:
    """Check the scaled hyperplane-sum identity in subset coordinates.

    Coordinates z_S are indexed by subsets S of [n] of size d - k.  For each
    ground element i the claim is

        C(n+k-1-d, n-d) * sum(z_S : S avoids i)
            == sum over T avoiding i, |T| = n-k, of sum(z_S : S inside T),

    verified symbolically as an equality of linear forms.
    """
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    if not 1 <= k < d:
        raise ValueError("need 1 <= k < d")
    size = d - k
    coefficient = comb(n + k - 1 - d, n - d)
    holds = True
    nonzero_seen = False
    for i in range(n):
        others = [j for j in range(n) if j != i]
        lhs: dict[frozenset, int] = {}
        for s in combinations(others, size):
            lhs[frozenset(s)] = coefficient
        rhs: dict[frozenset, int] = {}
        for t in combinations(others, n - k):
            for s in combinations(t, size):
                key = frozenset(s)
                rhs[key] = rhs.get(key, 0) + 1
        lhs = {s: c for s, c in lhs.items() if c}
        rhs = {s: c for s, c in rhs.items() if c}
        if lhs or rhs:
            nonzero_seen = True
        if lhs != rhs:
            holds = False
    return SubsetIdentityReport(holds, coefficient, not nonzero_seen)


def binomial_identity_check(n: int, d: int, k: int) -> bool:
    return binomial_identity_report(n, d, k).holds
