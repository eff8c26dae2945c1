"""Univariate polynomials over Q and exact real root isolation.

Coefficients are stored ascending by degree.  Root isolation works on the
square-free part and combines a Cauchy bound with Sturm-count bisection, so
every returned interval provably contains exactly one root.
"""

from __future__ import annotations

from fractions import Fraction


class UniPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, value):
        return cls([Fraction(value)])

    @classmethod
    def monomial(cls, coeff, power):
        return cls([0] * power + [coeff])

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def degree(self):
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([Fraction(other)])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([
            (self.coeffs[i] if i < len(self.coeffs) else 0)
            + (other.coeffs[i] if i < len(other.coeffs) else 0)
            for i in range(n)
        ])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = Fraction(other)
            return UniPoly([c * x for x in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = UniPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree()
        lc = other.coeffs[-1]
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i]:
                f = rem[i] / lc
                q[i - d] = f
                for j, b in enumerate(other.coeffs):
                    rem[i - d + j] -= f * b
        return UniPoly(q), UniPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def eval(self, x):
        x = Fraction(x)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return UniPoly([c / lc for c in self.coeffs])

    def shift_up(self, k):
        """Multiply by t^k."""
        return UniPoly([Fraction(0)] * k + list(self.coeffs))

    def valuation(self):
        """Order of vanishing at 0, or None for the zero polynomial."""
        if not self.coeffs:
            return None
        return next(i for i, c in enumerate(self.coeffs) if c)

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}*t^{i}" if i else f"{c}")
        return "UniPoly(" + " + ".join(parts) + ")"


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd via Euclid."""
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree() <= 0:
        return p
    g = gcd(p, p.derivative())
    if g.degree() <= 0:
        return p
    return (p // g)


def sturm_chain(p: UniPoly):
    chain = [p, p.derivative()]
    while chain[-1]:
        chain.append(-(chain[-2] % chain[-1]))
    chain.pop()
    return chain


def _sign_variations(values):
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: UniPoly, a, b, chain=None):
    """Number of distinct real roots in the half-open interval (a, b].

    p must be square free and nonzero at a conceptually; Sturm's theorem
    counts correctly as long as p(a) != 0.
    """
    chain = chain or sturm_chain(p)
    va = _sign_variations([q.eval(a) for q in chain])
    vb = _sign_variations([q.eval(b) for q in chain])
    return va - vb


def cauchy_bound(p: UniPoly) -> Fraction:
    """Strict upper bound for the absolute value of all real roots."""
    lc = abs(p.coeffs[-1])
    m = max((abs(c) for c in p.coeffs[:-1]), default=Fraction(0))
    return 1 + m / lc + 1


def isolate_min_positive_root(p: UniPoly):
    """Isolating interval (lo, hi) for the smallest positive real root.

    Guarantees: 0 < lo < root < hi, the interval contains exactly one root
    of p, and p has no root in (0, lo].  Returns None when p has no
    positive real root.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    q = squarefree_part(p)
    if q.degree() <= 0:
        return None
    chain = sturm_chain(q)
    bound = cauchy_bound(q)
    if q.eval(bound) == 0:
        bound += 1
    lo, hi = Fraction(0), bound
    if count_roots(q, lo, hi, chain) == 0:
        return None
    # Invariant: no roots in (0, lo], at least one in (lo, hi].
    while True:
        mid = (lo + hi) / 2
        if q.eval(mid) == 0:
            # Exact rational root hit; it is minimal iff nothing lives in
            # (lo, mid).  Shrink a bracket strictly around mid.
            if count_roots(q, lo, mid, chain) == 1:
                # mid is the minimal positive root; (lo, mid) is root free,
                # so squeezing both endpoints toward mid is always safe.
                a, b = lo, hi
                while not (a > 0 and count_roots(q, a, b, chain) == 1):
                    a = (a + mid) / 2
                    b = (mid + b) / 2
                return (a, b)
            hi = mid
            continue
        left = count_roots(q, lo, mid, chain)
        if left == 0:
            lo = mid
        elif left == 1:
            if lo > 0:
                return (lo, mid)
            hi = mid
        else:
            hi = mid


def refine_interval(p: UniPoly, lo, hi, width):
    """Shrink an isolating interval of a square-free p to the given width."""
    q = squarefree_part(p)
    chain = sturm_chain(q)
    lo, hi = Fraction(lo), Fraction(hi)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if q.eval(mid) == 0:
            quarter = (hi - lo) / 4
            return (mid - min(quarter, width / 2), mid + min(quarter, width / 2))
        if count_roots(q, lo, mid, chain) == 1:
            hi = mid
        else:
            lo = mid
    return (lo, hi)


def lagrange_interpolate(points):
    """UniPoly through the given (x, y) pairs with distinct x, exact."""
    result = UniPoly()
    xs = [Fraction(x) for x, _ in points]
    for i, (xi, yi) in enumerate(points):
        num = UniPoly.const(yi)
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                num = num * UniPoly([-xj, 1])
                den *= Fraction(xi) - xj
        result = result + num * (1 / den)
    return result


def restrict_to_ray(poly, base, direction):
    """Restrict an MPoly to the line t -> base + t*direction, as a UniPoly."""
    lines = [UniPoly([Fraction(b), Fraction(d)]) for b, d in zip(base, direction)]
    caches = [dict() for _ in lines]
    total = UniPoly()
    for mono, coeff in poly.terms.items():
        term = UniPoly.const(coeff)
        for i, e in enumerate(mono):
            if e:
                if e not in caches[i]:
                    caches[i][e] = lines[i] ** e
                term = term * caches[i][e]
        total = total + term
    return total


def det_unipoly(mat):
    """Determinant of a square matrix of UniPoly, fraction-free Bareiss.

    Divisions are exact in Q[t] by the Bareiss identity.
    """
    n = len(mat)
    rows = [list(r) for r in mat]
    sign = 1
    prev = UniPoly.const(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return UniPoly()
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        pc = rows[c][c]
        for i in range(c + 1, n):
            ric = rows[i][c]
            for j in range(c + 1, n):
                num = rows[i][j] * pc - ric * rows[c][j]
                q, r = divmod(num, prev)
                if r:
                    raise ArithmeticError("inexact Bareiss division")
                rows[i][j] = q
            rows[i][c] = UniPoly()
        prev = pc
    result = rows[n - 1][n - 1]
    return result if sign > 0 else -result
