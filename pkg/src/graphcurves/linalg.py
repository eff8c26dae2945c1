"""Exact linear algebra over the rationals.

Matrices are plain lists of rows, entries Fraction (ints are accepted and
coerced).  Elimination is fraction free: every row is scaled to integers
once, and the pivoting arithmetic stays in Z following Bareiss, so
intermediate entries are bounded by minors of the input instead of
compounding denominators.  Back substitution returns Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _row_lcm(row):
    den = 1
    for x in row:
        d = Fraction(x).denominator
        den = den * d // gcd(den, d)
    return den


def _int_matrix(rows):
    """Scale each row to integers; returns (int rows, per-row scale factors)."""
    out, scales = [], []
    for row in rows:
        den = _row_lcm(row)
        out.append([int(Fraction(x) * den) for x in row])
        scales.append(den)
    return out, scales


def _bareiss_echelon(rows):
    """In-place fraction-free echelon form of an integer matrix.

    Returns (pivot_cols, pivot_rows, swap_sign).  After the call, row i of
    the echelon (for i < rank) has its leading nonzero entry in column
    pivot_cols[i]; rows below the rank are zero.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    piv_cols = []
    sign = 1
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            sign = -sign
        pc = rows[r][c]
        for i in range(r + 1, m):
            ric = rows[i][c]
            row_i, row_r = rows[i], rows[r]
            for j in range(c + 1, n):
                row_i[j] = (row_i[j] * pc - ric * row_r[j]) // prev
            row_i[c] = 0
        prev = pc
        piv_cols.append(c)
        r += 1
    return piv_cols, sign


def rank(mat) -> int:
    if not mat:
        return 0
    rows, _ = _int_matrix(mat)
    piv, _ = _bareiss_echelon(rows)
    return len(piv)


def det(mat) -> Fraction:
    """Determinant of a square matrix, exact."""
    n = len(mat)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in mat):
        raise ValueError("det needs a square matrix")
    rows, scales = _int_matrix(mat)
    piv, sign = _bareiss_echelon(rows)
    if len(piv) < n:
        return Fraction(0)
    value = Fraction(sign * rows[n - 1][n - 1])
    for s in scales:
        value /= s
    return value


def _back_substitute(rows, piv_cols, values, n):
    """Fill pivot coordinates of a vector so every echelon row dots to zero.

    values: preset coordinates (free columns and the right-hand side column
    handled by the caller).  Mutates and returns values.
    """
    for i in range(len(piv_cols) - 1, -1, -1):
        c = piv_cols[i]
        s = Fraction(0)
        row = rows[i]
        for j in range(c + 1, n):
            if row[j] and values[j]:
                s += row[j] * values[j]
        values[c] = -s / row[c]
    return values


def kernel(mat, ncols=None):
    """Basis of the right kernel, one vector per free column.

    The empty matrix (no rows) has full kernel; ncols must then be given.
    """
    if not mat:
        if ncols is None:
            raise ValueError("kernel of empty matrix needs ncols")
        return [[Fraction(i == j) for i in range(ncols)] for j in range(ncols)]
    n = len(mat[0])
    rows, _ = _int_matrix(mat)
    piv, _ = _bareiss_echelon(rows)
    pivset = set(piv)
    basis = []
    for fc in range(n):
        if fc in pivset:
            continue
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        basis.append(_back_substitute(rows, [c for c in piv if c < fc], v, n))
    return basis


def solve(mat, b):
    """One exact solution of mat*x = b, or None when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if not mat:
        return None if any(x != 0 for x in b) else []
    n = len(mat[0])
    aug = [list(row) + [b[i]] for i, row in enumerate(mat)]
    rows, _ = _int_matrix(aug)
    piv, _ = _bareiss_echelon(rows)
    if piv and piv[-1] == n:
        return None
    v = [Fraction(0)] * (n + 1)
    v[n] = Fraction(-1)
    _back_substitute(rows, piv, v, n + 1)
    return v[:n]


def rref(mat):
    """Reduced row echelon form over Fraction; returns (rows, pivot_cols).

    Slower than the Bareiss routines but yields the canonical monic form,
    used where reproducible echelon bases are wanted.
    """
    rows = [[Fraction(x) for x in row] for row in mat]
    m = len(rows)
    n = len(rows[0]) if m else 0
    piv_cols = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    return rows[:r], piv_cols


def mat_vec(mat, v):
    return [sum((Fraction(a) * x for a, x in zip(row, v)), Fraction(0)) for row in mat]


def vec_is_zero(v):
    return all(x == 0 for x in v)
