"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`. Elimination always
picks the smallest available pivot column, so every result is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence


def to_matrix(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = to_matrix(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``, one vector per free column in increasing order."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def transpose(rows, nrows: int | None = None, ncols: int | None = None) -> list[list[Fraction]]:
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*rows)]


def matvec(rows, vec) -> list:
    return [sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in rows]


def solve(rows, rhs, ncols: int) -> list[Fraction] | None:
    """One exact solution of ``A x = b`` (free variables set to zero), or None."""
    sol = solve_module(rows, list(rhs), ncols, zero=Fraction(0))
    return sol


def solve_module(rows: Sequence[Sequence], rhs: Sequence, ncols: int, zero,
                 is_zero: Callable | None = None) -> list | None:
    """Solve ``A x = b`` with rational ``A`` and ``b`` in any rational module.

    ``b`` entries only need ``+``, ``-`` and multiplication by a Fraction
    (ExpPoly, forms, Fractions). Free variables are set to ``zero``. Returns
    None when the system is inconsistent.
    """
    is_zero = is_zero or (lambda v: not v)
    m = to_matrix(rows)
    b = list(rhs)
    if len(b) != len(m):
        raise ValueError("right-hand side length does not match the number of rows")
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        b[r], b[pivot] = b[pivot], b[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        b[r] = b[r] * inv
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * p for a, p in zip(m[i], m[r])]
                b[i] = b[i] - b[r] * f
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    if any(not is_zero(b[i]) for i in range(r, len(m))):
        return None
    x = [zero] * ncols
    for i, p in enumerate(pivots):
        x[p] = b[i]
    return x


def same_span(a: list, b: list, ncols: int) -> bool:
    """Whether two lists of row vectors span the same subspace."""
    ra, rb = rank(a, ncols) if a else 0, rank(b, ncols) if b else 0
    both = rank(list(a) + list(b), ncols) if (a or b) else 0
    return ra == rb == both
