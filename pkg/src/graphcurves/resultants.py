"""Macaulay resultant of three ternary forms, exact.

The classical construction: with t = d1+d2+d3-2, each degree-t monomial is
assigned to the first form whose pure power divides it, giving a square
matrix M over the degree-t monomials.  det(M) factors as the resultant
times the determinant of the submatrix M'' indexed by monomials divisible
by at least two of the pure powers, with a global sign fixed by the
(deterministic) monomial order.  Both determinants are computed
fraction-free, over Q or over Q[eps].
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .mpoly import MPoly, monomials, mono_mul
from .unipoly import UniPoly, det_unipoly


class DegenerateResultant(ArithmeticError):
    """The extraneous minor vanished; the Macaulay quotient is undefined."""


def _macaulay_support(d1, d2, d3):
    t = d1 + d2 + d3 - 2
    monos = monomials(3, t)
    rows = []
    for m in monos:
        if m[0] >= d1:
            rows.append((0, (m[0] - d1, m[1], m[2])))
        elif m[1] >= d2:
            rows.append((1, (m[0], m[1] - d2, m[2])))
        else:
            rows.append((2, (m[0], m[1], m[2] - d3)))
    degs = (d1, d2, d3)
    minor = [k for k, m in enumerate(monos)
             if sum(m[i] >= degs[i] for i in range(3)) >= 2]
    return monos, rows, minor


def _macaulay_matrix(forms, zero):
    """Rows of the Macaulay matrix; entries produced by terms of the forms.

    forms are dicts exponent tuple -> coefficient (coefficients in any
    commutative ring); zero is the ring zero.
    """
    degs = []
    for f in forms:
        d = {sum(m) for m in f}
        if len(d) != 1:
            raise ValueError("Macaulay resultant needs nonzero homogeneous forms")
        degs.append(d.pop())
    monos, rows, minor = _macaulay_support(*degs)
    index = {m: i for i, m in enumerate(monos)}
    mat = []
    for which, shift in rows:
        row = [zero] * len(monos)
        for mono, coeff in forms[which].items():
            row[index[mono_mul(mono, shift)]] = coeff
        mat.append(row)
    return mat, minor


def macaulay_resultant(f1: MPoly, f2: MPoly, f3: MPoly) -> Fraction:
    """Resultant of three ternary forms over Q.

    Raises DegenerateResultant when the extraneous minor vanishes (callers
    retry at a different specialization or after a unimodular change).
    """
    mat, minor = _macaulay_matrix([f.terms for f in (f1, f2, f3)], Fraction(0))
    big = linalg.det(mat)
    small = linalg.det([[mat[i][j] for j in minor] for i in minor])
    if small == 0:
        raise DegenerateResultant("extraneous Macaulay minor is singular")
    return big / small


def macaulay_resultant_eps(forms_eps) -> UniPoly:
    """Resultant of three ternary forms with UniPoly (Q[eps]) coefficients.

    forms_eps: three dicts exponent tuple -> UniPoly.  The division of the
    big determinant by the extraneous minor is exact in Q[eps].
    """
    mat, minor = _macaulay_matrix(forms_eps, UniPoly())
    big = det_unipoly(mat)
    small = det_unipoly([[mat[i][j] for j in minor] for i in minor])
    if small.is_zero():
        raise DegenerateResultant("extraneous Macaulay minor is singular over Q[eps]")
    quotient, remainder = divmod(big, small)
    if remainder:
        raise ArithmeticError("Macaulay division not exact; invariant violated")
    return quotient
