"""Fraction-free (Bareiss) elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError


def leading_minors(matrix) -> list[Fraction]:
    """Leading principal minors ``det(A[:k, :k])`` for k = 1..n, stopping early.

    Runs Bareiss elimination without row exchanges; the k-th pivot is the
    k-th leading minor.  If a minor vanishes the later ones cannot be read
    off this way and the list is truncated after the zero.
    """
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    minors: list[Fraction] = []
    prev = Fraction(1)
    for k in range(n):
        piv = a[k][k]
        minors.append(piv)
        if piv == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) / prev
        prev = piv
    return minors


def solve(matrix, rhs) -> list[list[Fraction]]:
    """Solve ``A X = B`` exactly; ``rhs`` is a list of columns, one solution per column."""
    n = len(matrix)
    if n == 0:
        return [[] for _ in rhs]
    m = len(rhs)
    a = [[Fraction(x) for x in matrix[i]] + [Fraction(col[i]) for col in rhs] for i in range(n)]
    width = n + m
    prev = Fraction(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            raise PreconditionError("singular linear system")
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, width):
                a[i][j] = (a[i][j] * piv - aik * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = piv
    out = []
    for c in range(m):
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            s = a[i][n + c]
            for j in range(i + 1, n):
                s -= a[i][j] * x[j]
            x[i] = s / a[i][i]
        out.append(x)
    return out


def quad_form(matrix, v) -> Fraction:
    n = len(v)
    return sum((v[i] * matrix[i][j] * v[j] for i in range(n) for j in range(n)), Fraction(0))
