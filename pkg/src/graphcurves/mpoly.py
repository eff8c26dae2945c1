"""Sparse multivariate polynomials over Q.

A polynomial is a dict mapping exponent tuples to Fraction coefficients;
zero coefficients are never stored.  The term order used everywhere is
graded lexicographic with x0 largest, fixed once so that echelon bases,
normal forms and rendered output are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

Mono = tuple


def grlex_key(mono):
    return (sum(mono), mono)


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int):
    """All exponent tuples of the given total degree, grlex descending."""
    if nvars == 0:
        return ((),) if degree == 0 else ()

    def gen(nv, d):
        if nv == 1:
            yield (d,)
            return
        for first in range(d, -1, -1):
            for rest in gen(nv - 1, d - first):
                yield (first,) + rest

    out = sorted(gen(nvars, degree), key=grlex_key, reverse=True)
    return tuple(out)


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    if len(mono) != nvars:
                        raise ValueError("exponent tuple has wrong length")
                    clean[mono] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, value):
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars, idx):
        exp = [0] * nvars
        exp[idx] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        return MPoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = out.get(mono, Fraction(0)) + coeff
            if c:
                out[mono] = c
            else:
                out.pop(mono, None)
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = Fraction(other)
            return MPoly(self.nvars, {m: c * v for m, v in self.terms.items()})
        if other.nvars != self.nvars:
            raise ValueError("mixed variable counts")
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = out.get(m, Fraction(0)) + c1 * c2
                if c:
                    out[m] = c
                else:
                    del out[m]
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("nonnegative integer powers only")
        result = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def total_degree(self):
        """Max total degree, or -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_components(self):
        """Dict degree -> homogeneous part."""
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {d: MPoly(self.nvars, t) for d, t in sorted(parts.items())}

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), Fraction(0))

    def eval(self, point):
        """Exact evaluation at a vector of Fractions."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            v = coeff
            for x, e in zip(point, mono):
                if e:
                    v *= x ** e
            total += v
        return total

    def partial(self, idx):
        out = {}
        for mono, coeff in self.terms.items():
            e = mono[idx]
            if e:
                m = list(mono)
                m[idx] = e - 1
                m = tuple(m)
                out[m] = out.get(m, Fraction(0)) + coeff * e
        return MPoly(self.nvars, out)

    def substitute_linear(self, matrix):
        """Compose with a linear change of variables: x_i -> sum_j M[i][j] x_j.

        matrix must be square g x g and invertible; degree is preserved.
        """
        from . import linalg

        g = self.nvars
        if len(matrix) != g or any(len(r) != g for r in matrix):
            raise ValueError("substitution matrix has wrong shape")
        if linalg.det(matrix) == 0:
            raise ValueError("substitution matrix is singular")
        images = [linear_form(g, matrix[i]) for i in range(g)]
        out = MPoly.zero(g)
        powcache = [dict() for _ in range(g)]
        for mono, coeff in self.terms.items():
            term = MPoly.const(g, coeff)
            for i, e in enumerate(mono):
                if not e:
                    continue
                if e not in powcache[i]:
                    powcache[i][e] = images[i] ** e
                term = term * powcache[i][e]
            out = out + term
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_monomial(self):
        if not self.terms:
            return None
        return max(self.terms, key=grlex_key)

    def primitive(self):
        """Scale to integer coprime coefficients with positive leading term."""
        if not self.terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        nums = [abs(c.numerator * den // c.denominator) for c in self.terms.values()]
        g = 0
        for n in nums:
            g = gcd(g, n)
        scale = Fraction(den, g)
        if self.terms[self.leading_monomial()] < 0:
            scale = -scale
        return self * scale

    def __repr__(self):
        from .polyio import render_poly

        return f"MPoly({render_poly(self)})"


def to_vector(p: MPoly, monos):
    """Coefficient vector of p along an ordered monomial list."""
    return [p.terms.get(m, Fraction(0)) for m in monos]


def from_vector(nvars, monos, vec):
    return MPoly(nvars, {m: c for m, c in zip(monos, vec) if c})


def linear_form(nvars, coeffs):
    """The linear form sum_i coeffs[i] * x_i."""
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            exp = [0] * nvars
            exp[i] = 1
            terms[tuple(exp)] = Fraction(c)
    return MPoly(nvars, terms)


def linear_coefficients(p: MPoly):
    """Coefficient vector of a linear form (degree <= 1, no constant)."""
    out = [Fraction(0)] * p.nvars
    for mono, coeff in p.terms.items():
        if sum(mono) != 1:
            raise ValueError("not a linear form")
        out[mono.index(1)] = coeff
    return out
