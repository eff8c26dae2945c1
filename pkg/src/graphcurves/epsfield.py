"""The ordered valued field Q(eps).

eps is an infinitesimal: positive but smaller than every positive rational.
Elements are reduced fractions of rational univariate polynomials in eps.
The valuation is the eps-adic order and the sign of a nonzero element is
the sign of the lowest-order coefficient of its reduced representation.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .unipoly import UniPoly, gcd


class EpsScalar:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, UniPoly):
            num = UniPoly.const(num) if not isinstance(num, (list, tuple)) else UniPoly(num)
        if den is None:
            den = UniPoly.const(1)
        elif not isinstance(den, UniPoly):
            den = UniPoly.const(den) if not isinstance(den, (list, tuple)) else UniPoly(den)
        if den.is_zero():
            raise ZeroDivisionError("EpsScalar with zero denominator")
        if num.is_zero():
            self.num, self.den = UniPoly(), UniPoly.const(1)
            return
        g = gcd(num, den)
        if g.degree() > 0:
            num, den = num // g, den // g
        # Normalize so the lowest-order coefficient of den is positive;
        # the sign of the element is then read off the numerator.
        low = den.coeffs[den.valuation()]
        num = num * (1 / low)
        den = den * (1 / low)
        self.num, self.den = num, den

    @classmethod
    def eps(cls):
        return cls(UniPoly([0, 1]))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _coerce(other)
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _coerce(other)
        return EpsScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return EpsScalar(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return EpsScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero EpsScalar")
        return EpsScalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return EpsScalar(self.den, self.num) ** (-k)
        return EpsScalar(self.num ** k, self.den ** k)

    def valuation(self):
        """eps-adic valuation; math.inf for zero."""
        if self.is_zero():
            return math.inf
        return self.num.valuation() - self.den.valuation()

    def sign(self):
        """Sign in the order where eps is a positive infinitesimal."""
        if self.is_zero():
            return 0
        low = self.num.coeffs[self.num.valuation()]
        return 1 if low > 0 else -1

    def substitute(self, value):
        """Exact value at eps = value (a Fraction); denominator must not vanish."""
        d = self.den.eval(value)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the given eps")
        return self.num.eval(value) / d

    def __repr__(self):
        if self.den == UniPoly.const(1):
            return f"EpsScalar({self.num!r})"
        return f"EpsScalar({self.num!r} / {self.den!r})"


def _coerce(x):
    if isinstance(x, EpsScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return EpsScalar(UniPoly.const(x))
    if isinstance(x, UniPoly):
        return EpsScalar(x)
    raise TypeError(f"cannot coerce {type(x)} to EpsScalar")


def eps_val(x) -> float | int:
    return _coerce(x).valuation()


def eps_sign(x) -> int:
    return _coerce(x).sign()
