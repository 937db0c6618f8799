"""Exact linear algebra over Q and Z.

Matrices are lists of rows. Rational entries are ``fractions.Fraction``;
integer routines (Smith normal form, integer kernels) work on ``int``.
Everything here is dense and written for the small sizes that occur in
this package (at most a few dozen rows).
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

Matrix = list  # list of rows


def to_fraction_matrix(A) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in A]


def identity(n: int, one=1) -> list[list]:
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(A) -> list[list]:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def matmul(A, B) -> list[list]:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), 0) for col in Bt] for row in A]


def matvec(A, v) -> list:
    return [sum((a * x for a, x in zip(row, v)), 0) for row in A]


def submatrix(A, rows: Sequence[int], cols: Sequence[int]) -> list[list]:
    return [[A[i][j] for j in cols] for i in rows]


def rref(A) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (R, pivot columns)."""
    R = to_fraction_matrix(A)
    nrows = len(R)
    ncols = len(R[0]) if R else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        R[r] = [x / piv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return R, pivots


def rank(A) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def det(A) -> Fraction:
    """Determinant by fraction elimination; the 0x0 determinant is 1."""
    M = to_fraction_matrix(A)
    n = len(M)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            result = -result
        piv = M[c][c]
        result *= piv
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / piv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return result


def inverse(A) -> list[list[Fraction]]:
    n = len(A)
    if n == 0:
        return []
    aug = [list(row) + e for row, e in zip(to_fraction_matrix(A), identity(n, Fraction(1)))]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def nullspace(A, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel {x : A x = 0} over Q."""
    if not A:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    ncols = len(A[0])
    R, pivots = rref(A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -R[r][f]
        basis.append(x)
    return basis


def solve(A, b) -> list[Fraction] | None:
    """One solution of A x = b, or None if inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = R[r][ncols]
    return x


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def primitive_vector(v) -> tuple[int, ...]:
    """Scale a nonzero rational vector by a positive factor to a primitive integer vector."""
    v = [Fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


# -- integer matrices -------------------------------------------------------


def smith_normal_form(A) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form ``U A V = D`` with ``U``, ``V`` unimodular.

    Uses only elementary integer row and column operations. The nonzero
    diagonal entries of ``D`` are positive and each divides the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [[int(x) for x in row] for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        for M in (D, V):
            for row in M:
                row[dst] += k * row[src]

    def neg_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(t, i, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(t, j, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility: the pivot must divide every remaining entry
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            neg_row(t)
        t += 1
    return U, D, V


def elementary_divisors(A) -> list[int]:
    _, D, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def integer_kernel(A, ncols: int | None = None) -> list[list[int]]:
    """Z-basis of {x in Z^n : A x = 0}."""
    if not A:
        n = ncols or 0
        return identity(n)
    _, D, V = smith_normal_form(A)
    r = len([1 for i in range(min(len(D), len(D[0]))) if D[i][i]])
    n = len(A[0])
    return [[V[row][c] for row in range(n)] for c in range(r, n)]


def integer_rank(A) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    M = [[int(x) for x in row] for row in A]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    r = 0
    prev = 1
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(r + 1, nrows):
            M[i] = [(piv * x - M[i][c] * y) // prev for x, y in zip(M[i], M[r])]
        prev = piv
        r += 1
        if r == nrows:
            break
    return r


def integer_det(A) -> int:
    d = det(A)
    assert d.denominator == 1
    return int(d)
