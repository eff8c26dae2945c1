"""Maximal-Mumford certification: cone membership, emitted deformations,
spot smoothness checks, and the genus-3 family discriminant.

A first-order deformation with every edge coefficient positive lifts to a
curve that is simultaneously maximal and Mumford; the certificate records
the face pairing, its cycle count, and the coefficients.  Smoothness is
checked only at sampled slices or points (an honest partial certificate,
guarding implementation bugs rather than re-proving the theory).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .graphs import cover_graph
from .groebner import buchberger, contains_one, eliminate_linear
from .mpoly import MPoly
from .resultants import DegenerateResultant, macaulay_resultant
from .tangent import AdaptedBasis, TangentVector, decompose, zero_vector
from .unipoly import UniPoly, lagrange_interpolate


class NonPositiveCoefficient(ValueError):
    pass


class DegenerateFamily(RuntimeError):
    pass


@dataclass
class MMCertificate:
    graph: object
    pairing: object
    cycle_count: int
    lam: dict                    # edge id -> positive Fraction
    basis_rank: int


def mm_deformation(model, basis: AdaptedBasis, lam=None):
    """First-order generators f + eps * sum_e lam_e eta_e(f), plus certificate.

    lam defaults to all ones (the interior point the algorithm outputs);
    every coefficient must be strictly positive.
    """
    edge_ids = sorted(basis.edge_vectors)
    if lam is None:
        lam = {e: Fraction(1) for e in edge_ids}
    for e in edge_ids:
        if e not in lam or Fraction(lam[e]) <= 0:
            raise NonPositiveCoefficient(f"coefficient at edge {e} must be > 0")
    total = zero_vector(model)
    for e in edge_ids:
        total = total + basis.edge_vectors[e].scale(Fraction(lam[e]))
    gens_eps = []
    for gen, img in zip(model.ideal_gens, total.images):
        parts = {0: gen}
        if img and not img.is_zero():
            parts[1] = img
        gens_eps.append(parts)
    r = len(cover_graph(model.graph, basis.pairing).cycles)
    cert = MMCertificate(model.graph, basis.pairing, r,
                         {e: Fraction(lam[e]) for e in edge_ids}, basis.rank())
    return gens_eps, cert


def specialize_eps(gens_eps, value):
    """Generators at a rational eps value, as plain polynomials."""
    value = Fraction(value)
    out = []
    for parts in gens_eps:
        nv = next(iter(parts.values())).nvars
        total = MPoly.zero(nv)
        for k, p in parts.items():
            total = total + p * (value ** k)
        out.append(total)
    return out


def mm_cone_check(basis: AdaptedBasis, eta: TangentVector):
    """(verdict, edges): InCone, OnBoundary(zero edges) or Outside(negative edges)."""
    _, lam = decompose(basis, eta)
    negative = sorted(e for e, v in lam.items() if v < 0)
    zero = sorted(e for e, v in lam.items() if v == 0)
    if negative:
        return "Outside", negative
    if zero:
        return "OnBoundary", zero
    return "InCone", []


def _jacobian(gens, nvars):
    return [[gen.partial(j) for j in range(nvars)] for gen in gens]


def _poly_det(mat):
    n = len(mat)
    nv = mat[0][0].nvars
    total = MPoly.zero(nv)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = MPoly.const(nv, sign)
        for i in range(n):
            term = term * mat[i][perm[i]]
        total = total + term
    return total


def jacobian_rank_at(gens, point):
    jac = [[gen.partial(j).eval(point) for j in range(len(point))] for gen in gens]
    return linalg.rank(jac)


@dataclass
class SmoothnessRecord:
    kind: str          # "point" or "slice"
    detail: str
    ok: bool


@dataclass
class SmoothnessReport:
    expected_rank: int
    records: list

    @property
    def all_smooth(self):
        return all(r.ok for r in self.records)


def spot_smoothness(gens, nvars, sample_points=None, slices=2, seed=1) -> SmoothnessReport:
    """Check Jacobian rank g-2 at sample points, or on random hyperplane slices.

    Explicit points are checked directly.  In slice mode, a random
    hyperplane and affine chart cut out finitely many points, and the
    system augmented with all (g-2)-minors of the Jacobian must be
    infeasible (Groebner basis contains 1): that certifies full rank at
    every sliced point without solving for the points themselves.
    Explicitly NOT a global smoothness certificate.
    """
    expected = nvars - 2
    records = []
    if sample_points is not None:
        for pt in sample_points:
            on_curve = all(g.eval(pt) == 0 for g in gens)
            rank = jacobian_rank_at(gens, pt)
            ok = on_curve and rank == expected
            records.append(SmoothnessRecord(
                "point", f"point {tuple(str(x) for x in pt)}: rank {rank}", ok))
        return SmoothnessReport(expected, records)

    rng = random.Random(seed)
    jac = _jacobian(gens, nvars)
    minors = []
    for rows in itertools.combinations(range(len(gens)), expected):
        for cols in itertools.combinations(range(nvars), expected):
            minors.append(_poly_det([[jac[r][c] for c in cols] for r in rows]))
    done = 0
    attempts = 0
    while done < slices and attempts < 8 * slices:
        attempts += 1
        hyper = MPoly(nvars, {tuple(int(i == j) for i in range(nvars)): rng.randint(-5, 5)
                              for j in range(nvars)})
        chart_coeffs = [rng.randint(1, 4) for _ in range(nvars)]
        chart = MPoly(nvars, {tuple(int(i == j) for i in range(nvars)): chart_coeffs[j]
                              for j in range(nvars)}) - MPoly.const(nvars, 1)
        if hyper.is_zero():
            continue
        base_system = list(gens) + [hyper, chart]
        base_reduced, _ = eliminate_linear(base_system, nvars)
        base_gb = buchberger(base_reduced, order="lex")
        if contains_one(base_gb):
            continue  # empty slice, try another hyperplane
        system = base_system + minors
        reduced, _ = eliminate_linear(system, nvars)
        gb = buchberger(reduced, order="lex")
        ok = contains_one(gb)
        records.append(SmoothnessRecord(
            "slice", f"hyperplane #{attempts}: rank-drop locus empty = {ok}", ok))
        done += 1
    if done < slices:
        raise DegenerateFamily("could not find nonempty slices")
    return SmoothnessReport(expected, records)


def quartic_family_discriminant(base: MPoly, trailing: MPoly, extra_checks=True) -> UniPoly:
    """Discriminant of the quartic family base + eps*trailing, as UniPoly in eps.

    Computed by evaluation at 28 rational eps values and exact Lagrange
    interpolation (the discriminant of plane quartics has degree 27 in the
    coefficients).  Evaluations use the Macaulay resultant of the three
    partial derivatives, with unimodular substitutions when the extraneous
    minor degenerates.
    """
    if base.nvars != 3 or trailing.nvars != 3:
        raise DegenerateFamily("plane quartic family needs 3 variables")
    needed = 28
    points = []
    t = 0
    while len(points) < needed + (1 if extra_checks else 0):
        t += 1
        if t > 6 * needed:
            raise DegenerateFamily("Macaulay evaluations kept degenerating")
        q = base + trailing * Fraction(t)
        value = _discriminant_quartic_value(q)
        if value is None:
            continue
        points.append((Fraction(t), value))
    disc = lagrange_interpolate(points[:needed])
    if disc.degree() > 27:
        raise DegenerateFamily("interpolated discriminant exceeds degree 27")
    if extra_checks:
        t, v = points[needed]
        if disc.eval(t) != v:
            raise DegenerateFamily("interpolation failed the holdout check")
    return disc


_UNIMODULAR_3 = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
    [[1, 1, 0], [0, 1, 1], [0, 0, 1]],
    [[1, 0, 1], [1, 1, 1], [1, 1, 2]],
    [[1, 2, 0], [0, 1, 2], [1, 2, 1]],
    [[1, 3, 1], [1, 2, 1], [1, 1, 2]],
]


def _discriminant_quartic_value(q: MPoly):
    """Exact discriminant of one plane quartic; None when all substitutions fail."""
    for mat in _UNIMODULAR_3:
        sub = q.substitute_linear(mat)
        parts = [sub.partial(i) for i in range(3)]
        if any(p.is_zero() for p in parts):
            return Fraction(0)
        try:
            return macaulay_resultant(*parts)
        except DegenerateResultant:
            continue
    return None
