"""Minimal Buchberger Groebner engine, lex order, desk scale.

Experimental: intended for small elimination and inconsistency checks
(few variables, low degree), not as a general-purpose engine.
"""

from __future__ import annotations

from fractions import Fraction

from .mpoly import MPoly


def lex_key(mono):
    return mono


def grevlex_key(mono):
    return (sum(mono), tuple(-e for e in reversed(mono)))


def leading(p: MPoly, key):
    return max(p.terms, key=key)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def reduce_poly(p: MPoly, basis, key):
    """Full normal form of p against basis (leading terms by key)."""
    rem = MPoly.zero(p.nvars)
    work = p
    lts = [(leading(g, key), g) for g in basis if g]
    while work:
        m = leading(work, key)
        c = work.terms[m]
        for lt, g in lts:
            if _divides(lt, m):
                q = MPoly(p.nvars, {_mono_div(m, lt): c / g.terms[lt]})
                work = work - q * g
                break
        else:
            t = MPoly(p.nvars, {m: c})
            rem = rem + t
            work = work - t
    return rem


def buchberger(polys, order="lex"):
    """Reduced Groebner basis (monic) of the given polynomials."""
    key = lex_key if order == "lex" else grevlex_key
    basis = []
    for p in polys:
        if p:
            r = reduce_poly(p, basis, key)
            if r:
                basis.append(r * (1 / r.terms[leading(r, key)]))
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    while pairs:
        i, j = pairs.pop()
        gi, gj = basis[i], basis[j]
        li, lj = leading(gi, key), leading(gj, key)
        lcm = _mono_lcm(li, lj)
        # Buchberger's first criterion: coprime leading terms reduce to 0.
        if all(a + b == c for a, b, c in zip(li, lj, lcm)):
            continue
        s = (MPoly(gi.nvars, {_mono_div(lcm, li): Fraction(1)}) * gi
             - MPoly(gi.nvars, {_mono_div(lcm, lj): Fraction(1)}) * gj)
        r = reduce_poly(s, basis, key)
        if r:
            r = r * (1 / r.terms[leading(r, key)])
            basis.append(r)
            pairs.extend((len(basis) - 1, k) for k in range(len(basis) - 1))
    # Reduce each element against the others for a canonical basis.
    reduced = []
    for i, g in enumerate(basis):
        others = [h for k, h in enumerate(basis) if k != i
                  and not (k < i and leading(h, key) == leading(g, key))]
        r = reduce_poly(g, others, key)
        if r:
            reduced.append(r * (1 / r.terms[leading(r, key)]))
    unique = []
    seen = set()
    for g in sorted(reduced, key=lambda p: leading(p, key)):
        lt = leading(g, key)
        if not any(_divides(o, lt) for o in seen):
            unique.append(g)
            seen.add(lt)
    return unique


def contains_one(basis):
    return any(g.total_degree() == 0 for g in basis)


def eliminate_linear(polys, nvars):
    """Substitute away variables with a linear (degree-1, affine) pivot.

    Returns (new polys, kept variable indices).  Used to shrink systems
    before Buchberger; substitution is exact and repeated to a fixed point.
    """
    polys = [p for p in polys if p]
    kept = list(range(nvars))
    changed = True
    while changed:
        changed = False
        for idx, p in enumerate(polys):
            if p.total_degree() != 1:
                continue
            mono_var = next((m for m in p.terms if sum(m) == 1), None)
            if mono_var is None:
                continue
            var = mono_var.index(1)
            c = p.terms[mono_var]
            rest = (p - MPoly(p.nvars, {mono_var: c})) * (-1 / c)
            new = []
            for q in polys:
                if q is p:
                    continue
                new.append(_substitute_var(q, var, rest))
            polys = [q for q in new if q]
            if var in kept:
                kept.remove(var)
            changed = True
            break
    return polys, kept


def _substitute_var(p: MPoly, var, value: MPoly):
    out = MPoly.zero(p.nvars)
    powers = {0: MPoly.const(p.nvars, 1)}
    for mono, coeff in p.terms.items():
        e = mono[var]
        if e not in powers:
            powers[e] = value ** e
        rest = list(mono)
        rest[var] = 0
        out = out + MPoly(p.nvars, {tuple(rest): coeff}) * powers[e]
    return out
