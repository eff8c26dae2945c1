"""Tangent space of the Hilbert scheme at a graph curve.

Tangent vectors are tuples of generator images in normal form modulo the
ideal.  The adapted basis consists of the g^2-1 vectors induced by the
x_i d/dx_j operators plus one node-smoothing vector per edge, scaled by
the segment-sign rule so that the positive orthant of the edge part is
exactly the cone of deformations that smooth every node the planar way.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .graphs import EdgePairing, face_double_cover
from .model import (EdgeLocalData, GraphCurveModel, edge_local_data,
                    express_in_ideal)
from .mpoly import MPoly, monomials, to_vector, from_vector
from .unipoly import (count_roots, isolate_min_positive_root,
                      restrict_to_ray, squarefree_part, sturm_chain)


class InconsistentDeformation(RuntimeError):
    pass


class DimensionMismatch(RuntimeError):
    pass


class ZeroPairing(RuntimeError):
    pass


class NotInSpan(ValueError):
    pass


class NoFirstOrderLift(ValueError):
    pass


class NoPositiveRootError(RuntimeError):
    pass


@dataclass(frozen=True)
class TangentVector:
    """Images of the minimal generators, in normal form modulo the ideal."""

    images: tuple

    def __add__(self, other):
        return TangentVector(tuple(a + b for a, b in zip(self.images, other.images)))

    def __sub__(self, other):
        return TangentVector(tuple(a - b for a, b in zip(self.images, other.images)))

    def scale(self, c):
        return TangentVector(tuple(img * c for img in self.images))

    def is_zero(self):
        return all(img.is_zero() for img in self.images)


def zero_vector(model) -> TangentVector:
    return TangentVector(tuple(MPoly.zero(model.nvars) for _ in model.ideal_gens))


def normalize_vector(model, images) -> TangentVector:
    return TangentVector(tuple(model.normal_form(img) for img in images))


def flatten(model, tv: TangentVector):
    """Coordinates over the quotient monomial bases, concatenated."""
    out = []
    for gen, img in zip(model.ideal_gens, tv.images):
        dd = model.degree_piece(gen.total_degree())
        out.extend(to_vector(img, dd.quotient_monos))
    return out


def unflatten(model, coords) -> TangentVector:
    images = []
    k = 0
    for gen in model.ideal_gens:
        dd = model.degree_piece(gen.total_degree())
        n = len(dd.quotient_monos)
        images.append(from_vector(model.nvars, dd.quotient_monos, coords[k:k + n]))
        k += n
    return TangentVector(tuple(images))


def flat_dim(model):
    return sum(len(model.degree_piece(g.total_degree()).quotient_monos) for g in model.ideal_gens)


def pgl_basis(model) -> list:
    """The g^2 - 1 vectors from x_i d/dx_j, omitting the last Euler partner.

    Ordering: j outer, i inner; the omitted operator is x_{g-1} d/dx_{g-1}.
    The Euler identity sum_i x_i df/dx_i = deg(f) * f is asserted.
    """
    g = model.nvars
    for gen in model.ideal_gens:
        euler = MPoly.zero(g)
        for i in range(g):
            euler = euler + MPoly.variable(g, i) * gen.partial(i)
        if euler != gen * gen.total_degree():
            raise RuntimeError("Euler identity failed; generators not homogeneous")
    out = []
    for j in range(g):
        for i in range(g):
            if (i, j) == (g - 1, g - 1):
                continue
            images = [model.normal_form(MPoly.variable(g, i) * gen.partial(j))
                      for gen in model.ideal_gens]
            out.append(TangentVector(tuple(images)))
    return out


def tangent_value(model, tv: TangentVector, F: MPoly, point, multipliers=None):
    """eta(F)(point) for a point on the curve, via a membership certificate.

    Any representative of eta(F) works because the ideal vanishes at curve
    points; the certificate F = sum m_j gen_j is computed once if not given.
    """
    if multipliers is None:
        multipliers = express_in_ideal(model, F)
        if multipliers is None:
            raise NotInSpan("polynomial is not in the ideal up to the solved degree")
    total = Fraction(0)
    for m, img in zip(multipliers, tv.images):
        if m and img:
            total += m.eval(point) * img.eval(point)
    return total


def _local_multipliers(ld: EdgeLocalData, model):
    if ld.F_multipliers is None:
        ld.F_multipliers = express_in_ideal(model, ld.F)
        if ld.F_multipliers is None:
            raise InconsistentDeformation("F = f*l1*l2 is not visibly in the ideal")
    return ld.F_multipliers


def _conic_membership(model, ld, poly):
    """Multipliers (A0, [B0_i]) with poly = A0*l1*l2 + sum B0_i*q_i."""
    g = model.nvars
    d = poly.total_degree()
    l1l2 = ld.l1 * ld.l2
    cols = []
    blocks = []
    monos_d = monomials(g, d)
    a_monos = monomials(g, d - 2) if d >= 2 else ()
    blocks.append(a_monos)
    for m in a_monos:
        cols.append(to_vector(MPoly(g, {m: 1}) * l1l2, monos_d))
    b_monos = monomials(g, d - 1) if d >= 1 else ()
    for q in ld.q_forms:
        blocks.append(b_monos)
        for m in b_monos:
            cols.append(to_vector(MPoly(g, {m: 1}) * q, monos_d))
    mat = [[cols[c][r] for c in range(len(cols))] for r in range(len(monos_d))]
    sol = linalg.solve(mat, to_vector(poly, monos_d))
    if sol is None:
        raise InconsistentDeformation("generator not in the local conic ideal")
    k = 0
    polys = []
    for monos in blocks:
        terms = {}
        for m in monos:
            if sol[k]:
                terms[m] = sol[k]
            k += 1
        polys.append(MPoly(g, terms))
    return polys[0], polys[1:]


def eta_edge(model, eid, pairing=None, local=None) -> TangentVector:
    """Node-smoothing tangent vector, unnormalized (deformed-conic method).

    For each generator f, solves for y of the same degree such that f + t*y
    vanishes to first order on the deformed curve: y vanishes on the 2g-4
    untouched lines and f + t*y sits in <q_i, l1*l2 + t*l1'*l2'> mod t^2.
    """
    if local is None:
        if pairing is None:
            pairing = require_face_pairing(model)
        local = edge_local_data(model, eid, pairing)
    g = model.nvars
    l1l2 = local.l1 * local.l2
    l1pl2p = local.l1p * local.l2p
    images = []
    for gen in model.ideal_gens:
        d = gen.total_degree()
        a0, _ = _conic_membership(model, local, gen)
        rhs_poly = a0 * l1pl2p
        # Unknowns: A1 (degree d-2) and B1_i (degree d-1); equations say
        # A0*l1'*l2' + A1*l1*l2 + sum B1_i*q_i vanishes on untouched lines.
        a_monos = monomials(g, d - 2) if d >= 2 else ()
        b_monos = monomials(g, d - 1) if d >= 1 else ()
        points = []
        for w in local.untouched:
            points.extend(model.line_points(w, d + 1))
        rows = []
        rhs = []
        for pt in points:
            row = [_eval_mono(m, pt) * l1l2.eval(pt) for m in a_monos]
            for q in local.q_forms:
                qv = q.eval(pt)
                row.extend(_eval_mono(m, pt) * qv for m in b_monos)
            rows.append(row)
            rhs.append(-rhs_poly.eval(pt))
        sol = linalg.solve(rows, rhs)
        if sol is None:
            raise InconsistentDeformation(f"no first-order smoothing for edge {eid}")
        k = 0
        a1_terms = {}
        for m in a_monos:
            if sol[k]:
                a1_terms[m] = sol[k]
            k += 1
        y = rhs_poly + MPoly(g, a1_terms) * l1l2
        for q in local.q_forms:
            b_terms = {}
            for m in b_monos:
                if sol[k]:
                    b_terms[m] = sol[k]
                k += 1
            y = y + MPoly(g, b_terms) * q
        images.append(model.normal_form(y))
    return TangentVector(tuple(images))


def _eval_mono(mono, point):
    v = Fraction(1)
    for x, e in zip(point, mono):
        if e:
            v *= Fraction(x) ** e
    return v


def hom_space(model) -> list:
    """Basis of Hom(I, S/I)_0 as TangentVectors; dimension must be g^2+3g-4.

    Syzygy constraints are imposed in degrees up to maxGenDeg + 1; the
    dimension check turns an insufficient cap into a loud failure.
    """
    g = model.nvars
    gens = model.ideal_gens
    degs = [p.total_degree() for p in gens]
    max_deg = max(degs)
    n = flat_dim(model)
    offsets = []
    k = 0
    for gen in gens:
        dd = model.degree_piece(gen.total_degree())
        offsets.append((k, dd.quotient_monos))
        k += len(dd.quotient_monos)

    constraints = []
    for D in range(min(degs) + 1, max_deg + 2):
        # Syzygies in degree D: kernel of (s_1..s_m) -> sum s_j gen_j.
        monos_D = monomials(g, D)
        cols = []
        layout = []
        for j, gen in enumerate(gens):
            md = D - degs[j]
            if md < 0:
                layout.append((j, ()))
                continue
            mm = monomials(g, md)
            layout.append((j, mm))
            for m in mm:
                cols.append(to_vector(MPoly(g, {m: 1}) * gen, monos_D))
        if not cols:
            continue
        mat = [[cols[c][r] for c in range(len(cols))] for r in range(len(monos_D))]
        syzygies = linalg.kernel(mat, ncols=len(cols))
        if not syzygies:
            continue
        dd_D = model.degree_piece(D)
        for syz in syzygies:
            mults = []
            k2 = 0
            for j, mm in layout:
                terms = {}
                for m in mm:
                    if syz[k2]:
                        terms[m] = syz[k2]
                    k2 += 1
                mults.append(MPoly(g, terms))
            # Constraint: sum_j mult_j * y_j = 0 in (S/I)_D, linear in the
            # flat coordinates of (y_1..y_m).
            rows_for_syzygy = {}
            for j, (off, qmonos) in enumerate(offsets):
                if mults[j].is_zero():
                    continue
                for t, qm in enumerate(qmonos):
                    contrib = model.normal_form(mults[j] * MPoly(g, {qm: 1}))
                    vec = to_vector(contrib, dd_D.quotient_monos)
                    for r, val in enumerate(vec):
                        if val:
                            rows_for_syzygy.setdefault(r, [Fraction(0)] * n)[off + t] = val
            constraints.extend(rows_for_syzygy.values())
    basis_coords = linalg.kernel(constraints, ncols=n) if constraints else \
        [[Fraction(i == j) for i in range(n)] for j in range(n)]
    expected = g * g + 3 * g - 4
    if len(basis_coords) != expected:
        raise DimensionMismatch(
            f"Hom(I,S/I)_0 has computed dimension {len(basis_coords)}, expected {expected}")
    return [unflatten(model, c) for c in basis_coords]


def eta_edge_method2(model, eid, hom_basis, pairing=None, pgl=None) -> TangentVector:
    """Independent route: solve eta(F_e')(P_e') = 0 for all e' != e inside Hom.

    Returns a solution outside the PGL subspace, unique up to scalar and
    PGL; used to cross-validate eta_edge.
    """
    if pairing is None:
        pairing = require_face_pairing(model)
    if pgl is None:
        pgl = pgl_basis(model)
    locals_ = {e: edge_local_data(model, e, pairing) for e in range(model.graph.edge_count)}
    rows = []
    for ep in range(model.graph.edge_count):
        if ep == eid:
            continue
        ld = locals_[ep]
        mult = _local_multipliers(ld, model)
        rows.append([tangent_value(model, hv, ld.F, ld.P_e, mult) for hv in hom_basis])
    sols = linalg.kernel(rows, ncols=len(hom_basis))
    if not sols:
        raise InconsistentDeformation(f"no method-2 solution at edge {eid}")
    pgl_flat = [flatten(model, t) for t in pgl]
    base_rank = linalg.rank(pgl_flat)
    for c in sols:
        cand = zero_vector(model)
        for coeff, hv in zip(c, hom_basis):
            if coeff:
                cand = cand + hv.scale(coeff)
        if linalg.rank(pgl_flat + [flatten(model, cand)]) > base_rank:
            return cand
    raise InconsistentDeformation(f"method-2 solutions all lie in the PGL span at edge {eid}")


@dataclass(frozen=True)
class SignData:
    t0_lo: Fraction | None
    t0_hi: Fraction | None
    segment_sign: int
    t0_on_first_ray: bool


def sign_data(model, ld: EdgeLocalData) -> SignData:
    """t0 bracket and the sign of F on the first ray before t0.

    t0 is the smallest positive root of f along either companion ray; the
    segment sign is evaluated at a rational point strictly inside (0, t0).
    When f has no positive root on either ray the minimum is over an empty
    set, t0 = +infinity (bracket stored as None) and the sign is constant
    on the whole open ray.  When t0 is attained on the first ray itself, F
    vanishes exactly at t0 and the closed-endpoint reading would differ;
    the flag records this.
    """
    ray1_dir = [a + b for a, b in zip(ld.P_e1, ld.P_e2)]
    ray2_dir = [a + b for a, b in zip(ld.P_e1p, ld.P_e2p)]
    p1 = restrict_to_ray(ld.f, ld.P_e, ray1_dir)
    p2 = restrict_to_ray(ld.f, ld.P_e, ray2_dir)
    prod = p1 * p2
    if prod.is_zero():
        raise NoPositiveRootError("f vanishes along a companion ray")
    bracket = isolate_min_positive_root(prod)
    if bracket is None:
        lo = hi = None
        tstar = Fraction(1)
        on_ray1 = False
    else:
        lo, hi = bracket
        tstar = lo / 2
        sq1 = squarefree_part(p1)
        on_ray1 = (sq1.degree() > 0 and
                   count_roots(sq1, lo, hi, sturm_chain(sq1)) > 0)
    F_ray = restrict_to_ray(ld.F, ld.P_e, ray1_dir)
    val = F_ray.eval(tstar)
    if val == 0:
        raise NoPositiveRootError("segment sign degenerated to zero")
    return SignData(lo, hi, 1 if val > 0 else -1, on_ray1)


def normalize_eta(model, eta: TangentVector, sdata: SignData, ld: EdgeLocalData) -> tuple:
    """Scale eta so eta(F)(P_e) = -segment_sign; returns (eta, achieved value)."""
    mult = _local_multipliers(ld, model)
    value = tangent_value(model, eta, ld.F, ld.P_e, mult)
    if value == 0:
        raise ZeroPairing("eta pairs to zero against its own node")
    target = Fraction(-sdata.segment_sign)
    return eta.scale(target / value), target


@dataclass(frozen=True)
class SignCertificate:
    t0_lo: Fraction | None
    t0_hi: Fraction | None
    segment_sign: int
    value: Fraction
    t0_on_first_ray: bool


@dataclass
class AdaptedBasis:
    model: GraphCurveModel
    pairing: EdgePairing
    pgl: list                    # g^2 - 1 TangentVectors
    edge_vectors: dict           # edge id -> normalized TangentVector
    certificates: dict           # edge id -> SignCertificate
    local_data: dict             # edge id -> EdgeLocalData

    def rank(self):
        flats = [flatten(self.model, t) for t in self.pgl]
        flats += [flatten(self.model, self.edge_vectors[e]) for e in sorted(self.edge_vectors)]
        return linalg.rank(flats)


def require_face_pairing(model) -> EdgePairing:
    pairing = face_double_cover(model.graph)
    if pairing is None:
        raise ValueError("graph is not planar; no face pairing exists")
    return pairing


def adapted_basis(model, pairing=None) -> AdaptedBasis:
    if pairing is None:
        pairing = require_face_pairing(model)
    pgl = pgl_basis(model)
    edge_vectors = {}
    certificates = {}
    local_data = {}
    for eid in range(model.graph.edge_count):
        ld = edge_local_data(model, eid, pairing)
        raw = eta_edge(model, eid, local=ld)
        sdata = sign_data(model, ld)
        eta, value = normalize_eta(model, raw, sdata, ld)
        edge_vectors[eid] = eta
        certificates[eid] = SignCertificate(sdata.t0_lo, sdata.t0_hi,
                                            sdata.segment_sign, value,
                                            sdata.t0_on_first_ray)
        local_data[eid] = ld
    basis = AdaptedBasis(model, pairing, pgl, edge_vectors, certificates, local_data)
    g = model.nvars
    if basis.rank() != g * g + 3 * g - 4:
        raise DimensionMismatch("adapted basis does not have full rank")
    return basis


def decompose(basis: AdaptedBasis, eta: TangentVector):
    """Exact coefficients of eta over the adapted basis.

    Returns (pgl_coeffs, lambda) with lambda keyed by edge id.  Raises
    NotInSpan when eta lies outside the tangent space.
    """
    model = basis.model
    cols = [flatten(model, t) for t in basis.pgl]
    edge_ids = sorted(basis.edge_vectors)
    cols += [flatten(model, basis.edge_vectors[e]) for e in edge_ids]
    target = flatten(model, eta)
    mat = [[cols[c][r] for c in range(len(cols))] for r in range(len(target))]
    sol = linalg.solve(mat, target)
    if sol is None:
        raise NotInSpan("tangent vector outside the computed tangent space")
    npgl = len(basis.pgl)
    lam = {e: sol[npgl + i] for i, e in enumerate(edge_ids)}
    return sol[:npgl], lam


def family_tangent(model, gens_eps, max_shift=2) -> TangentVector:
    """Tangent vector of a family given by generators over Q[eps].

    gens_eps: one dict {eps power: MPoly} per generator, homogeneous in x
    of a fixed degree each.  For every minimal generator f of the ideal,
    multipliers are sought with sum m_j G_j = eps^k (f + eps*y) modulo
    eps^(k+2); k (the saturation shift) is raised from 0 up to max_shift.
    """
    g = model.nvars
    for parts in gens_eps:
        degset = {p.total_degree() for p in parts.values() if not p.is_zero()}
        if len(degset) > 1 or any(not p.is_homogeneous() for p in parts.values()):
            raise NoFirstOrderLift("family generators must be homogeneous in x")
    base_deg = [max(p.total_degree() for p in parts.values()) for parts in gens_eps]
    images = []
    for gen in model.ideal_gens:
        d = gen.total_degree()
        y = None
        for k in range(max_shift + 1):
            y = _lift_with_shift(model, gens_eps, base_deg, gen, d, k)
            if y is not None:
                break
        if y is None:
            raise NoFirstOrderLift(
                f"no eps-lift for a degree-{d} generator within shift {max_shift}")
        images.append(model.normal_form(y))
    return TangentVector(tuple(images))


def _lift_with_shift(model, gens_eps, base_deg, gen, d, k):
    """Solve sum_j m_j G_j = eps^k*gen + eps^(k+1)*y; returns y or None.

    m_j carries eps powers 0..k; the eps^(k+1) part of the combination is
    y (plus ideal elements handled by the normal form downstream).
    """
    g = model.nvars
    unknowns = []   # (gen index, eps power, monomial list)
    cols = []       # column: dict eps power t -> coefficient vector in S_{...}
    monos_cache = {}

    def monos_of(degree):
        if degree not in monos_cache:
            monos_cache[degree] = monomials(g, degree)
        return monos_cache[degree]

    for j, parts in enumerate(gens_eps):
        md = d - base_deg[j]
        if md < 0:
            continue
        mm = monos_of(md)
        for t in range(k + 1):
            for m in mm:
                unknowns.append((j, t, m))
    if not unknowns:
        return None
    # Equations: eps^s coefficient of sum m_j G_j equals 0 for s < k and
    # gen for s = k.  Each is a vector equation in S_d.
    monos_d = monos_of(d)
    rows = []
    rhs = []
    for s in range(k + 1):
        target = gen if s == k else MPoly.zero(g)
        row_block = [[Fraction(0)] * len(unknowns) for _ in monos_d]
        for col, (j, t, m) in enumerate(unknowns):
            part = gens_eps[j].get(s - t)
            if part is None or t > s:
                continue
            vec = to_vector(MPoly(g, {m: 1}) * part, monos_d)
            for r, val in enumerate(vec):
                if val:
                    row_block[r][col] = val
        rows.extend(row_block)
        rhs.extend(to_vector(target, monos_d))
    sol = linalg.solve(rows, rhs)
    if sol is None:
        return None
    # y = eps^(k+1) coefficient of the combination.
    y = MPoly.zero(g)
    for col, (j, t, m) in enumerate(unknowns):
        if sol[col]:
            part = gens_eps[j].get(k + 1 - t)
            if part is not None:
                y = y + MPoly(g, {m: sol[col]}) * part
    return y


def from_generator_images(model, gens, images) -> TangentVector:
    """Tangent vector given by its images on an alternative generating set.

    gens must generate the ideal in the degrees of the model's minimal
    generators; the images must come from a genuine module homomorphism.
    """
    from .model import express_in_ideal as _express

    out = []
    for f in model.ideal_gens:
        mult = _express(model, f, gens)
        if mult is None:
            raise NotInSpan("model generator not expressible over the given set")
        img = MPoly.zero(model.nvars)
        for m, y in zip(mult, images):
            if m and y:
                img = img + m * y
        out.append(model.normal_form(img))
    return TangentVector(tuple(out))


def proportional_mod_pgl(model, pgl, tv_a: TangentVector, tv_b: TangentVector):
    """Scalar c with tv_a = c*tv_b modulo the PGL span, or None.

    Returns a Fraction (possibly zero when tv_a itself is in the span).
    """
    cols = [flatten(model, tv_b)] + [flatten(model, t) for t in pgl]
    target = flatten(model, tv_a)
    mat = [[cols[c][r] for c in range(len(cols))] for r in range(len(target))]
    sol = linalg.solve(mat, target)
    return None if sol is None else sol[0]


def hyperplane_functionals(model, basis: AdaptedBasis, eta: TangentVector):
    """lambda_e of eta via the pairing value against F_e, one per edge.

    Equals the decomposition coefficients; cheaper and usable as a cross
    check because PGL vectors pair to zero.
    """
    out = {}
    for eid in sorted(basis.edge_vectors):
        ld = basis.local_data[eid]
        mult = _local_multipliers(ld, model)
        value = tangent_value(model, eta, ld.F, ld.P_e, mult)
        own = basis.certificates[eid].value
        out[eid] = value / own
    return out


def hyperplanes_on_family(model, basis: AdaptedBasis, base_gens, param_eps_parts):
    """Linear forms (per edge) in the parameters of a first-order family.

    base_gens: the generators at eps = 0, one MPoly per family generator.
    param_eps_parts: dict param name -> list of MPoly, the eps-linear part
    contributed by that parameter to each family generator.  Returns
    {edge id: {param: Fraction}}, oriented so positivity selects the
    maximal-Mumford pairing.
    """
    edge_ids = sorted(basis.edge_vectors)
    forms = {e: {} for e in edge_ids}
    for name in sorted(param_eps_parts):
        parts = param_eps_parts[name]
        gens_eps = []
        for base, lin in zip(base_gens, parts):
            d = {0: base}
            if lin and not lin.is_zero():
                d[1] = lin
            gens_eps.append(d)
        eta = family_tangent(model, gens_eps)
        lam = hyperplane_functionals(model, basis, eta)
        for e in edge_ids:
            if lam[e]:
                forms[e][name] = lam[e]
    return forms
