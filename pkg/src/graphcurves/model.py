"""Canonical graph curves: node vectors, lines, ideal, per-edge local data.

The built-in coordinates realize each node as the signed incidence vector
of its edge against a fixed oriented cycle basis; flow conservation at a
trivalent vertex then makes the three nodes of a vertex span a plane, and
the 2g-2 vertex planes are the lines of the curve in P^{g-1}.  Models can
also be ingested from explicit line ideals, in which case the graph is
recovered from the intersection pattern.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .graphs import TrivalentGraph, EdgePairing, validate, cycle_basis, cycle_incidence_vector
from .mpoly import MPoly, monomials, to_vector, from_vector, linear_form, linear_coefficients


class DegenerateConfiguration(ValueError):
    pass


class NotAGraphCurve(ValueError):
    pass


class GenerationCheckFailed(RuntimeError):
    pass


@dataclass
class DegreeData:
    monos: tuple
    basis: list          # RREF rows (coefficient vectors) spanning I_d
    pivots: list         # pivot column per basis row
    quotient_monos: tuple  # monomials spanning (S/I)_d


@dataclass
class GraphCurveModel:
    graph: TrivalentGraph
    nvars: int
    var_names: tuple
    node_vectors: tuple        # per edge id, a vector in Q^g
    line_basis: tuple          # per vertex, two spanning vectors of its plane
    ideal_gens: tuple = ()
    degree_data: dict = field(default_factory=dict)

    @property
    def genus(self):
        return self.graph.genus

    def line_points(self, vertex, count):
        """count distinct points on the line of a vertex: lam*P + mu*Q."""
        p, q = self.line_basis[vertex]
        ratios = [(1, 0), (0, 1)] + [(1, k) for k in range(1, count - 1)]
        return [[Fraction(l * a + m * b) for a, b in zip(p, q)] for l, m in ratios[:count]]

    def degree_piece(self, d) -> DegreeData:
        if d not in self.degree_data:
            self.degree_data[d] = _interpolate_degree(self, d)
        return self.degree_data[d]

    def normal_form(self, p: MPoly) -> MPoly:
        """Canonical representative of p modulo I, for homogeneous p."""
        if p.is_zero():
            return p
        if not p.is_homogeneous():
            raise ValueError("normal form needs a homogeneous polynomial")
        d = p.total_degree()
        if d < 2:
            return p
        dd = self.degree_piece(d)
        vec = to_vector(p, dd.monos)
        for row, piv in zip(dd.basis, dd.pivots):
            c = vec[piv]
            if c:
                vec = [a - c * b for a, b in zip(vec, row)]
        return from_vector(self.nvars, dd.monos, vec)

    def dim_ideal(self, d):
        return len(self.degree_piece(d).basis)

    def dim_quotient(self, d):
        return len(self.degree_piece(d).quotient_monos)


def _span_contains(vectors, target):
    mat = [list(v) for v in vectors]
    return linalg.rank(mat) == linalg.rank(mat + [list(target)])


def _check_model(model: GraphCurveModel):
    g = model.graph
    nodes = model.node_vectors
    for eid, vec in enumerate(nodes):
        if all(x == 0 for x in vec):
            raise DegenerateConfiguration(f"zero node vector at edge {eid}")
    # Nodes pairwise projectively distinct.
    for i, j in itertools.combinations(range(len(nodes)), 2):
        if linalg.rank([list(nodes[i]), list(nodes[j])]) < 2:
            raise DegenerateConfiguration(f"nodes {i} and {j} are proportional")
    # Each vertex plane is 2-dimensional and contains its three nodes.
    for v in range(g.vertex_count):
        incident = [nodes[e] for e in g.edges_at(v)]
        if linalg.rank([list(x) for x in incident]) != 2:
            raise DegenerateConfiguration(f"nodes at vertex {v} do not span a plane")
    # Adjacent lines meet in exactly the shared node; others are disjoint.
    for u, v in itertools.combinations(range(g.vertex_count), 2):
        bu, bv = model.line_basis[u], model.line_basis[v]
        r = linalg.rank([list(bu[0]), list(bu[1]), list(bv[0]), list(bv[1])])
        adjacent = any({a, b} == {u, v} for a, b in g.edges)
        if adjacent and r != 3:
            raise DegenerateConfiguration(f"lines {u},{v} do not meet in one point")
        if not adjacent and r != 4:
            raise DegenerateConfiguration(f"lines {u},{v} of non-adjacent vertices meet")
    if linalg.rank([list(x) for x in nodes]) != model.nvars:
        raise DegenerateConfiguration("nodes do not span the ambient space")


def build_model(graph: TrivalentGraph, var_names=None) -> GraphCurveModel:
    """Model with node vectors from the oriented cycle basis."""
    g = validate(graph)
    cycles = cycle_basis(graph)
    incidence = [cycle_incidence_vector(graph, c) for c in cycles]
    nodes = tuple(
        tuple(incidence[i][eid] for i in range(g)) for eid in range(graph.edge_count)
    )
    # Flow conservation: the vertex relation has coefficients +-1.
    for v in range(graph.vertex_count):
        total = [Fraction(0)] * g
        for eid in graph.edges_at(v):
            sign = 1 if graph.edges[eid][0] == v else -1
            total = [t + sign * x for t, x in zip(total, nodes[eid])]
        if any(x != 0 for x in total):
            raise DegenerateConfiguration(f"flow relation fails at vertex {v}")
    line_basis = tuple(
        (nodes[graph.edges_at(v)[0]], nodes[graph.edges_at(v)[1]]) for v in range(graph.vertex_count)
    )
    names = tuple(var_names) if var_names else tuple(f"x{i}" for i in range(g))
    model = GraphCurveModel(graph, g, names, nodes, line_basis)
    _check_model(model)
    interpolate_ideal(model)
    return model


def _kernel_vector(rows, nvars):
    """A 1-dimensional kernel, as a primitive integer vector."""
    ker = linalg.kernel([list(r) for r in rows], ncols=nvars)
    if len(ker) != 1:
        return None
    from math import gcd, lcm

    v = ker[0]
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    lead = next((x for x in ints if x), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


def ingest_model(line_descriptions, var_names=None):
    """Model from explicit lines; recovers the graph from intersections.

    Each line is either a list of g-2 independent linear forms (its prime)
    or a pair of spanning point vectors.  Returns (model, graph); vertex i
    of the graph is the i-th input line.
    """
    spans = []
    nvars = None
    for desc in line_descriptions:
        if desc and isinstance(desc[0], MPoly):
            forms = desc
            nvars = forms[0].nvars
            mat = [linear_coefficients(f) for f in forms]
            if linalg.rank(mat) != nvars - 2:
                raise NotAGraphCurve("prime does not cut out a line")
            span = linalg.kernel(mat, ncols=nvars)
            if len(span) != 2:
                raise NotAGraphCurve("prime does not cut out a line")
            spans.append([tuple(v) for v in span])
        else:
            p, q = desc
            nvars = len(p)
            if linalg.rank([list(p), list(q)]) != 2:
                raise NotAGraphCurve("spanning points are proportional")
            spans.append([tuple(Fraction(x) for x in p), tuple(Fraction(x) for x in q)])
    nlines = len(spans)
    edges = []
    node_for_edge = []
    for i, j in itertools.combinations(range(nlines), 2):
        stacked = [list(spans[i][0]), list(spans[i][1]), list(spans[j][0]), list(spans[j][1])]
        r = linalg.rank(stacked)
        if r == 2:
            raise NotAGraphCurve(f"lines {i} and {j} coincide")
        if r == 3:
            # One intersection point: common solution of both primes.
            rows = []
            for line in (i, j):
                rows.extend(linalg.kernel([list(v) for v in spans[line]], ncols=nvars))
            node = _kernel_vector(rows, nvars)
            if node is None:
                raise NotAGraphCurve(f"lines {i} and {j} meet in more than a point")
            edges.append((i, j))
            node_for_edge.append(node)
    graph = TrivalentGraph.from_edges(nlines, edges)
    try:
        validate(graph)
    except ValueError as exc:
        raise NotAGraphCurve(f"intersection pattern invalid: {exc}") from None
    names = tuple(var_names) if var_names else tuple(f"x{i}" for i in range(nvars))
    model = GraphCurveModel(graph, nvars, names, tuple(node_for_edge),
                            tuple((s[0], s[1]) for s in spans))
    # Prefer node vectors as line basis when possible for determinism.
    line_basis = tuple(
        (model.node_vectors[graph.edges_at(v)[0]], model.node_vectors[graph.edges_at(v)[1]])
        for v in range(graph.vertex_count)
    )
    model.line_basis = line_basis
    _check_model(model)
    interpolate_ideal(model)
    return model, graph


def _interpolate_degree(model: GraphCurveModel, d) -> DegreeData:
    monos = monomials(model.nvars, d)
    rows = []
    for v in range(model.graph.vertex_count):
        for point in model.line_points(v, d + 1):
            rows.append([_mono_eval(m, point) for m in monos])
    ker = linalg.kernel(rows, ncols=len(monos))
    basis, pivots = linalg.rref(ker) if ker else ([], [])
    quotient = tuple(m for k, m in enumerate(monos) if k not in set(pivots))
    return DegreeData(monos, basis, pivots, quotient)


def _mono_eval(mono, point):
    v = Fraction(1)
    for x, e in zip(point, mono):
        if e:
            v *= Fraction(x) ** e
    return v


def _product_span_dim(model, basis_polys, d):
    """dim of S_1 * span(basis_polys) inside degree d+1."""
    monos = monomials(model.nvars, d + 1)
    rows = []
    for p in basis_polys:
        for i in range(model.nvars):
            rows.append(to_vector(MPoly.variable(model.nvars, i) * p, monos))
    return linalg.rank(rows), rows, monos


def interpolate_ideal(model: GraphCurveModel):
    """Minimal generators of the curve ideal, with a generation guard.

    Quadrics are the full degree-2 piece; cubic generators complement
    S_1*I_2 inside I_3.  Genus 3 has a single quartic generator.  Raises
    GenerationCheckFailed when generators in degree <= D fail to generate
    I_{D+1} (D = 4 for genus 3, else 3).
    """
    g = model.genus
    expected_quadrics = (g - 2) * (g - 3) // 2
    d2 = model.degree_piece(2)
    if len(d2.basis) != expected_quadrics:
        raise DegenerateConfiguration(
            f"dim I_2 = {len(d2.basis)}, expected {expected_quadrics}")
    gens = []
    if g == 3:
        d4 = model.degree_piece(4)
        if len(d4.basis) != 1:
            raise DegenerateConfiguration("genus 3 curve needs a single quartic")
        gens = [from_vector(model.nvars, d4.monos, d4.basis[0])]
        top = 4
    else:
        quads = [from_vector(model.nvars, d2.monos, row) for row in d2.basis]
        gens.extend(quads)
        d3 = model.degree_piece(3)
        _, prod_rows, monos3 = _product_span_dim(model, quads, 2)
        prod_rref, prod_pivots = linalg.rref(prod_rows) if prod_rows else ([], [])
        for row in d3.basis:
            vec = list(row)
            for prow, piv in zip(prod_rref, prod_pivots):
                c = vec[piv]
                if c:
                    vec = [a - c * b for a, b in zip(vec, prow)]
            if any(x != 0 for x in vec):
                cubic = from_vector(model.nvars, monos3, vec)
                gens.append(cubic)
                prod_rows.append(vec)
                prod_rref, prod_pivots = linalg.rref(prod_rows)
        top = 3
    # Generation guard: degree-(top) piece spans the next degree.
    dtop = model.degree_piece(top)
    top_polys = [from_vector(model.nvars, dtop.monos, row) for row in dtop.basis]
    span_dim, _, _ = _product_span_dim(model, top_polys, top)
    next_dim = model.dim_ideal(top + 1)
    if span_dim != next_dim:
        raise GenerationCheckFailed(
            f"S_1*I_{top} has dim {span_dim}, I_{top + 1} has dim {next_dim}")
    model.ideal_gens = tuple(p.primitive() for p in gens)


def hilbert_check(model: GraphCurveModel, degrees=(2, 3)):
    """dim (S/I)_d must be (2g-2)d - g + 1; returns the checked dict."""
    g = model.genus
    out = {}
    for d in degrees:
        expected = (2 * g - 2) * d - g + 1
        actual = model.dim_quotient(d)
        out[d] = (actual, expected)
        if actual != expected:
            raise DegenerateConfiguration(
                f"Hilbert function fails in degree {d}: {actual} != {expected}")
    return out


def express_in_ideal(model: GraphCurveModel, poly: MPoly, gens=None):
    """Multipliers m_j with sum m_j * gen_j = poly, exact; None if impossible.

    gens defaults to the model's minimal generators.  Deterministic: free
    coefficients are zero.
    """
    if gens is None:
        gens = model.ideal_gens
    if poly.is_zero():
        return [MPoly.zero(model.nvars) for _ in gens]
    if not poly.is_homogeneous():
        raise ValueError("ideal membership for homogeneous polynomials only")
    d = poly.total_degree()
    monos_d = monomials(model.nvars, d)
    cols = []
    layout = []
    for j, gen in enumerate(gens):
        dg = gen.total_degree()
        md = d - dg
        if md < 0:
            layout.append((j, dg, ()))
            continue
        mult_monos = monomials(model.nvars, md)
        layout.append((j, dg, mult_monos))
        for m in mult_monos:
            cols.append(to_vector(MPoly(model.nvars, {m: 1}) * gen, monos_d))
    if not cols:
        return None
    mat = [[cols[c][r] for c in range(len(cols))] for r in range(len(monos_d))]
    sol = linalg.solve(mat, to_vector(poly, monos_d))
    if sol is None:
        return None
    out = []
    k = 0
    for j, dg, mult_monos in layout:
        terms = {}
        for m in mult_monos:
            if sol[k]:
                terms[m] = sol[k]
            k += 1
        out.append(MPoly(model.nvars, terms))
    return out


@dataclass
class EdgeLocalData:
    """Geometry at one node: plane cutters, line forms, and f with F = f*l1*l2.

    Companion labels follow the chosen edge pairing: e1 (at u) is paired
    with e2 (at v).  Representatives satisfy P_e = P_e1 + P_e1p = P_e2 + P_e2p.
    Sign normalization: f(P_e) > 0, l1(P_e2) > 0, l2(P_e1) > 0.
    """

    edge_id: int
    u: int
    v: int
    e1: int
    e1p: int
    e2: int
    e2p: int
    P_e: tuple
    P_e1: tuple
    P_e1p: tuple
    P_e2: tuple
    P_e2p: tuple
    q_forms: list
    l1: MPoly
    l2: MPoly
    l1p: MPoly
    l2p: MPoly
    f: MPoly
    F: MPoly
    untouched: list          # vertex ids of the 2g-4 unaffected lines
    F_multipliers: list | None = None


def _forms_vanishing_on(model, vectors):
    """Basis of linear forms vanishing at all given vectors."""
    ker = linalg.kernel([list(v) for v in vectors], ncols=model.nvars)
    return [linear_form(model.nvars, v) for v in ker]


def _form_nonzero_at(forms, point):
    """Deterministic element of span(forms) not vanishing at point."""
    for f in forms:
        if f.eval(point) != 0:
            return f
    acc = MPoly.zero(forms[0].nvars) if forms else None
    for f in forms:
        acc = acc + f
        if acc.eval(point) != 0:
            return acc
    return None


def _companion_representatives(model, eid, vertex, first, second):
    """Scale the two companion nodes at vertex so P_e = a*P_first + b*P_second.

    Returns the scaled representatives (a*P_first, b*P_second).
    """
    pe = model.node_vectors[eid]
    p1 = model.node_vectors[first]
    p2 = model.node_vectors[second]
    mat = [[p1[i], p2[i]] for i in range(model.nvars)]
    sol = linalg.solve(mat, list(pe))
    if sol is None:
        raise DegenerateConfiguration(f"no vertex relation at vertex {vertex}")
    a, b = sol
    if a == 0 or b == 0:
        raise DegenerateConfiguration(f"degenerate vertex relation at vertex {vertex}")
    return tuple(a * x for x in p1), tuple(b * x for x in p2)


def edge_local_data(model: GraphCurveModel, eid: int, pairing: EdgePairing) -> EdgeLocalData:
    graph = model.graph
    u, v = graph.edges[eid]
    at_u = [e for e in graph.edges_at(u) if e != eid]
    at_v = [e for e in graph.edges_at(v) if e != eid]
    # Label companions so that {e1, e2} is a pair of the chosen pairing.
    pair = next(p for p in pairing.pairs(eid) if at_u[0] in p)
    e1 = at_u[0]
    e2 = next(iter(pair - {e1}))
    e1p = at_u[1]
    e2p = next(e for e in at_v if e != e2)
    P_e = model.node_vectors[eid]
    P_e1, P_e1p = _companion_representatives(model, eid, u, e1, e1p)
    P_e2, P_e2p = _companion_representatives(model, eid, v, e2, e2p)

    q_forms = _forms_vanishing_on(model, [P_e, P_e1, P_e2])
    if len(q_forms) != model.nvars - 3:
        raise DegenerateConfiguration(f"W_e at edge {eid} is not a plane")

    l1_space = _forms_vanishing_on(model, [P_e, P_e1])
    l1 = _form_nonzero_at(l1_space, P_e2)
    l2_space = _forms_vanishing_on(model, [P_e, P_e2])
    l2 = _form_nonzero_at(l2_space, P_e1)
    l1p_space = _forms_vanishing_on(model, [P_e1, P_e2])
    l1p = _form_nonzero_at(l1p_space, P_e)
    l2p_space = _forms_vanishing_on(model, [P_e1p, P_e2p])
    l2p = _form_nonzero_at(l2p_space, P_e)
    if l1 is None or l2 is None or l1p is None or l2p is None:
        raise DegenerateConfiguration(f"cannot cut lines at edge {eid}")
    # Normalization: l1 positive on the e2 side, l2 positive on the e1 side.
    if l1.eval(P_e2) < 0:
        l1 = -l1
    if l2.eval(P_e1) < 0:
        l2 = -l2

    untouched = [w for w in range(graph.vertex_count) if w not in (u, v)]
    f = _greedy_cover_form(model, eid, untouched, P_e)
    if f.eval(P_e) < 0:
        f = -f
    F = f * l1 * l2
    return EdgeLocalData(eid, u, v, e1, e1p, e2, e2p, P_e, P_e1, P_e1p, P_e2, P_e2p,
                         q_forms, l1, l2, l1p, l2p, f, F, untouched)


def _greedy_cover_form(model, eid, untouched, P_e):
    """Product of linear forms vanishing on all untouched lines, not at P_e.

    Greedy: each factor kills as many still-uncovered lines as the span
    constraint (P_e outside) allows.
    """
    remaining = list(untouched)
    factors = []
    while remaining:
        seed = remaining[0]
        chosen = [seed]
        span = [list(x) for x in model.line_basis[seed]]
        for w in remaining[1:]:
            trial = span + [list(x) for x in model.line_basis[w]]
            if not _span_contains(trial, P_e):
                chosen.append(w)
                span = trial
        forms = _forms_vanishing_on(model, [tuple(r) for r in span])
        h = _form_nonzero_at(forms, P_e)
        if h is None:
            raise DegenerateConfiguration(f"cover form vanishes at node {eid}")
        factors.append(h)
        remaining = [w for w in remaining
                     if any(h.eval(pt) != 0 for pt in model.line_points(w, 2))]
    f = MPoly.const(model.nvars, 1)
    for h in factors:
        f = f * h
    return f


def poly_vanishes_on_line(model, poly, vertex):
    d = max(poly.total_degree(), 0)
    return all(poly.eval(pt) == 0 for pt in model.line_points(vertex, d + 1))


def in_ideal(model, poly):
    """Membership test by evaluation on every line."""
    return all(poly_vanishes_on_line(model, poly, v) for v in range(model.graph.vertex_count))
