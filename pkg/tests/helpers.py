"""Seeded random generators shared by the property and acceptance tests.

Every generated object is validated against the exhaustive axiom checkers
before being handed to a test, so generator bugs fail loudly instead of
weakening the suite.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from omegalab import (
    Polynomial,
    SetFunction,
    base_polytope,
    is_matroid,
    is_mconvex,
    is_polymatroid,
    lattice_points,
)

SINGULAR_CUBIC_TEXT = (
    "8*w*x^2 + 20*w*x*y + 8*w*y^2 + 42*w*x*z + 42*w*y*z + 49*w*z^2"
    " + x^3 + 11*x^2*y + 11*x*y^2 + y^3 + 15*x^2*z + 46*x*y*z + 15*y^2*z"
    " + 37*x*z^2 + 37*y*z^2 + 21*z^3"
)

SMOOTH_CUBIC_TEXT = (
    "x^3 + 11*x^2*y + 11*x*y^2 + y^3 + 15*x^2*z + 46*x*y*z + 15*y^2*z"
    " + 37*x*z^2 + 37*y*z^2 + 21*z^3"
    " + 29*w*x^2 + 90*w*x*y + 29*w*y^2 + 150*w*x*z + 150*w*y*z + 137*w*z^2"
)

PLANE_CUBIC_TEXT = "x1^2*x2 + x1*x2^2 + x1^2*x3 + x1*x2*x3 + x2^2*x3"

WXYZ = ["w", "x", "y", "z"]
X123 = ["x1", "x2", "x3"]


def random_polymatroid(rng: random.Random, n: int, max_rank: int) -> SetFunction:
    """Random sum of truncated weighted coverage pieces, validated exhaustively."""
    values = [0] * (1 << n)
    remaining = rng.randint(0, max_rank)
    pieces = rng.randint(1, 3)
    for _ in range(pieces):
        if remaining == 0:
            break
        cap = rng.randint(0, remaining)
        weights = [rng.randint(0, 3) for _ in range(n)]
        if sum(weights) < cap:
            weights[rng.randrange(n)] += cap - sum(weights)
        for mask in range(1 << n):
            total = sum(weights[i] for i in range(n) if mask >> i & 1)
            values[mask] += min(cap, total)
        remaining -= cap
    f = SetFunction(n, values)
    assert is_polymatroid(f).ok
    return f


def random_matroid(rng: random.Random, n: int, max_rank: int) -> SetFunction:
    """Random linear matroid over the rationals from a small integer matrix."""
    d = rng.randint(0, min(max_rank, n))
    columns = [[Fraction(rng.randint(-2, 2)) for _ in range(d)] for _ in range(n)]
    values = []
    for mask in range(1 << n):
        chosen = [columns[i] for i in range(n) if mask >> i & 1]
        values.append(_rank_of_columns(chosen, d))
    f = SetFunction(n, values)
    assert is_matroid(f)
    return f


def _rank_of_columns(columns: list[list[Fraction]], height: int) -> int:
    from omegalab.linalg import rank

    if not columns or height == 0:
        return 0
    return rank([[col[i] for col in columns] for i in range(height)])


def random_mconvex_support(rng: random.Random, n: int, degree: int) -> list[tuple[int, ...]]:
    """Integer points of a random base polytope with the requested rank."""
    while True:
        f = random_polymatroid(rng, n, degree)
        if f.rank != degree:
            continue
        points = lattice_points(base_polytope(f))
        ok, _ = is_mconvex(points)
        assert ok
        return points


def random_positive_polynomial(
    rng: random.Random, support: list[tuple[int, ...]], max_coeff: int = 50
) -> Polynomial:
    nvars = len(support[0])
    return Polynomial(
        nvars, {p: Fraction(rng.randint(1, max_coeff)) for p in support}
    )


def random_product_of_linear_forms(rng: random.Random, n: int, degree: int) -> Polynomial:
    """Product of linear forms with positive coefficients: stable, so Lorentzian."""
    h = Polynomial.constant(n, 1)
    for _ in range(degree):
        coeffs = [rng.randint(0, 4) for _ in range(n)]
        if not any(coeffs):
            coeffs[rng.randrange(n)] = 1
        form = Polynomial(
            n, {tuple(1 if j == i else 0 for j in range(n)): Fraction(c)
                for i, c in enumerate(coeffs) if c}
        )
        h = h * form
    return h


def random_sparse_polynomial(rng: random.Random, nvars: int, max_deg: int, terms: int) -> Polynomial:
    acc = {}
    for _ in range(terms):
        exponent = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        if sum(exponent) > max_deg:
            continue
        acc[exponent] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return Polynomial(nvars, acc)


def all_mconvex_sets(n: int, degree: int) -> list[frozenset]:
    """Every M-convex subset of the degree-d monomial grid (tiny n only)."""
    grid = [
        p
        for p in _compositions(degree, n)
    ]
    out = []
    for size in range(1, len(grid) + 1):
        for subset in combinations(grid, size):
            ok, _ = is_mconvex(subset)
            if ok:
                out.append(frozenset(subset))
    return out


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out
