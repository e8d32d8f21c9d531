"""Exact linear algebra over the rationals, and matrices over coefficient rings.

The rational routines (rref, solve, rank, inverse) work on lists of lists of
Fractions/ints.  ``Mat`` is a thin wrapper for matrices whose entries live in
any of the package's coefficient rings (Fraction, DiffPoly, DiffFrac,
monomial-extension elements); it only assumes ``+``, ``*``, unary ``-`` and,
for ``derivative``, an entrywise ``derivative()`` with rational constants
mapping to 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from .diffpoly.core import RATS as _RATS


# ------------------------------------------------------------ rational part

def rref(rows: Sequence[Sequence[Fraction]]):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    A = [[Fraction(x) for x in row] for row in rows]
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A, pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def solve_exact(A, b) -> List[Fraction]:
    """Solve a square nonsingular rational system."""
    n = len(A)
    aug = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    R, piv = rref(aug)
    if piv != list(range(n)):
        raise ValueError("matrix is singular")
    return [R[i][n] for i in range(n)]


def inverse_rational(A) -> List[List[Fraction]]:
    n = len(A)
    aug = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i in range(n)]
    R, piv = rref(aug)
    if piv != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def particular_solver(A, free_zero: bool = True):
    """For a rational matrix A of full row rank, return a rational matrix S
    with A @ (S @ b) == b for every b, assigning zero to the free variables.

    Raises when A does not have full row rank.
    """
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(1) if i == j else Fraction(0) for j in range(nrows)]
           for i, row in enumerate(A)]
    R, piv = rref(aug)
    piv = [c for c in piv if c < ncols]
    if len(piv) != nrows:
        raise ValueError("matrix does not have full row rank")
    S = [[Fraction(0)] * nrows for _ in range(ncols)]
    for r, c in enumerate(piv):
        for j in range(nrows):
            S[c][j] = R[r][ncols + j]
    return S


def mat_mul_rational(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


# --------------------------------------------------------- generic matrices

def scalar_derivative(x):
    if isinstance(x, _RATS):
        return 0
    return x.derivative()


def scalar_is_zero(x) -> bool:
    if isinstance(x, _RATS):
        return x == 0
    if hasattr(x, "is_zero"):
        z = x.is_zero
        return z() if callable(z) else bool(z)
    return not bool(x)


class Mat:
    """Matrix over a coefficient ring; rows stored as lists."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(n: int, m: Optional[int] = None) -> "Mat":
        m = n if m is None else m
        return Mat([[0] * m for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "Mat") -> "Mat":
        k = len(other.rows)
        m = len(other.rows[0])
        out = []
        for i in range(self.n):
            row = []
            for j in range(m):
                acc = self.rows[i][0] * other.rows[0][j]
                for s in range(1, k):
                    acc = acc + self.rows[i][s] * other.rows[s][j]
                row.append(acc)
            out.append(row)
        return Mat(out)

    def __add__(self, other: "Mat") -> "Mat":
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Mat":
        return Mat([[c * a for a in r] for r in self.rows])

    def derivative(self) -> "Mat":
        return Mat([[scalar_derivative(a) for a in r] for r in self.rows])

    def is_zero(self) -> bool:
        return all(scalar_is_zero(a) for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        return f"Mat({self.rows!r})"
