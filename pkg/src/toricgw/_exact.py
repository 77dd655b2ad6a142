"""Small exact linear algebra over the integers and rationals.

Matrices are lists of rows. Everything here is pure Python so that results are
exact; the matrices in this package never exceed 14x14.
"""
from fractions import Fraction
from typing import List, Sequence

Matrix = List[List[int]]


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss fraction-free elimination)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> List[Fraction]:
    """Solve the square system ``rows @ x = rhs`` exactly; raises if singular."""
    n = len(rows)
    a = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [vi - f * vc for vi, vc in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


def solve_int(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> List[int]:
    """Like :func:`solve` but insists on an integral solution."""
    x = solve(rows, rhs)
    if any(v.denominator != 1 for v in x):
        raise ValueError(f"system has no integral solution: {x}")
    return [int(v) for v in x]


def transpose(rows: Sequence[Sequence[int]]) -> Matrix:
    return [list(c) for c in zip(*rows)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(x * y for x, y in zip(r, v)) for r in a]


def inverse_int(rows: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    n = len(rows)
    cols = [solve_int(rows, [int(i == j) for i in range(n)]) for j in range(n)]
    return transpose(cols)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]
