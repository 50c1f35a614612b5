"""Exact linear algebra over the rationals and the integers.

Rational routines work on lists of Fraction rows; integer routines keep
everything in arbitrary-precision ints.  Smith normal form returns the
divisor matrix together with the unimodular transforms, which is what the
lattice-smoothness test and integer kernels are built on.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]


def _to_fractions(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot column indices)."""
    mat = _to_fractions(rows)
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                factor = mat[i][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def kernel_basis(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Canonical basis of {v : M v = 0}, one vector per free column of the RREF."""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis


def in_row_space(rows: Sequence[Sequence], vector: Sequence) -> bool:
    """True iff `vector` is a rational combination of the rows."""
    base = _to_fractions(rows)
    r0 = rank(base)
    return rank(base + [[Fraction(x) for x in vector]]) == r0


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One exact solution of M x = b, or None if inconsistent.

    Free variables are set to zero.
    """
    mat = _to_fractions(rows)
    if not mat:
        return [] if all(Fraction(b) == 0 for b in rhs) else None
    ncols = len(mat[0])
    augmented = [row + [Fraction(b)] for row, b in zip(mat, rhs)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[ncols]
    return x


def char_poly(matrix: Sequence[Sequence]) -> list[Fraction]:
    """Characteristic polynomial coefficients [c_n, ..., c_1, c_0] of det(tI - M).

    Uses the Faddeev-LeVerrier recurrence; exact for rational matrices.
    Returned list starts with the leading coefficient 1.
    """
    mat = _to_fractions(matrix)
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("matrix must be square")
    coeffs = [Fraction(1)]
    aux = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    prod = mat
    for k in range(1, n + 1):
        if k > 1:
            prod = _mat_mul(mat, aux)
        trace = sum(prod[i][i] for i in range(n))
        ck = -trace / k
        coeffs.append(ck)
        aux = [[prod[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            aik = a[i][k]
            if not aik:
                continue
            row_b = b[k]
            row_o = out[i]
            for j in range(p):
                row_o[j] += aik * row_b[j]
    return out


def descartes_positive_roots(coeffs: Sequence[Fraction]) -> int:
    """Number of sign changes in a coefficient sequence (zeros skipped).

    For a polynomial known to have only real roots this equals the number of
    strictly positive roots counted with multiplicity.
    """
    signs = [1 if c > 0 else -1 for c in coeffs if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


# -- integer routines -----------------------------------------------------------


def primitive_vector(vec: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (zero vector unchanged)."""
    g = 0
    for x in vec:
        g = gcd(g, abs(int(x)))
    if g <= 1:
        return tuple(int(x) for x in vec)
    return tuple(int(x) // g for x in vec)


def clear_denominators(vec: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (direction only)."""
    fracs = [Fraction(x) for x in vec]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fracs]
    return primitive_vector(ints)


def smith_normal_form(
    matrix: Sequence[Sequence[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form: returns (D, U, V) with U @ M @ V = D.

    D is diagonal with nonnegative elementary divisors d_1 | d_2 | ...;
    U and V are unimodular.  Exact over the integers.
    """
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, factor):
        a[dst] = [x + factor * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + factor * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, factor):
        for row in a:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # locate a nonzero pivot with minimal absolute value
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    best = x
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        if a[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                add_row(t, i, -q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                add_col(t, j, -q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot must divide every remaining entry; otherwise fold one in and redo
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        t += 1

    return a, u, v


def snf_divisors(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero elementary divisors d_1 | d_2 | ... of an integer matrix."""
    d, _, _ = smith_normal_form(matrix)
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        if d[i][i]:
            out.append(d[i][i])
    return out


def integer_kernel_basis(matrix: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of the saturated lattice {v in Z^ncols : M v = 0}."""
    rows = [list(row) for row in matrix]
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    d, _, v = smith_normal_form(rows)
    r = len(snf_divisors(rows))
    basis = []
    for j in range(r, ncols):
        basis.append(tuple(v[i][j] for i in range(ncols)))
    return basis


def integer_lattice_coordinates(
    basis: Sequence[Sequence[int]], vector: Sequence[int]
) -> list[int] | None:
    """Express `vector` in the given integer lattice basis; None if impossible."""
    rows = [[Fraction(b[i]) for b in basis] for i in range(len(vector))]
    sol = solve(rows, vector)
    if sol is None:
        return None
    if any(c.denominator != 1 for c in sol):
        return None
    return [int(c) for c in sol]
