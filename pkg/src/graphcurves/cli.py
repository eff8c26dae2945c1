"""Command-line surface.

Exit codes: 0 success, 1 input error, 2 negative mathematical result
(e.g. a non-planar graph), 3 internal guard tripped (dimension or
generation check failures).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import graphs as graphmod
from . import polyio
from .certify import (NonPositiveCoefficient, mm_cone_check, mm_deformation,
                      specialize_eps)
from .cubics import SingularCubic, TernaryCubic, cubic_invariants, genus1_mm_test
from .graphs import SearchBudgetExceeded
from .model import (GenerationCheckFailed, DegenerateConfiguration,
                    NotAGraphCurve, build_model, ingest_model)
from .tangent import (DimensionMismatch, NotInSpan, adapted_basis, decompose,
                      family_tangent)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NEGATIVE = 2
EXIT_GUARD = 3


class InputError(Exception):
    pass


def _load_graph(path):
    try:
        graph = polyio.load_graph(path)
        graphmod.validate(graph)
        return graph
    except (OSError, json.JSONDecodeError, polyio.ParseError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _emit(data, args):
    out = json.dumps(data, indent=2, sort_keys=True)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def cmd_graph(args):
    graph = _load_graph(args.graph)
    g = graph.genus
    report = {
        "vertices": graph.vertex_count,
        "edges": len(graph.edges),
        "genus": g,
        "pairing_count": graphmod.pairing_count(graph),
    }
    faces = None
    if args.faces:
        try:
            faces = polyio.load_faces(args.faces)
        except (OSError, json.JSONDecodeError, polyio.ParseError) as exc:
            raise InputError(str(exc)) from None
    if faces is not None:
        pairing = graphmod.face_cover_from_faces(graph, faces)
    else:
        try:
            pairing = graphmod.face_double_cover(graph, args.budget)
        except SearchBudgetExceeded as exc:
            raise InputError(f"{exc}; supply --faces or raise the budget") from None
    if pairing is None:
        report["planar"] = False
        _emit(report, args)
        return EXIT_NEGATIVE
    report["planar"] = True
    cover = graphmod.cover_graph(graph, pairing)
    a, chi = graphmod.orientability(graph, pairing)
    report["face_cover"] = {
        "cycles": len(cover.cycles),
        "orientability_a": a,
        "euler_characteristic": chi,
        "pairing": {
            f"{graph.edges[eid][0]}-{graph.edges[eid][1]}": [sorted(p) for p in
                                                             sorted(pairing.pairs(eid), key=sorted)]
            for eid in range(graph.edge_count)
        },
    }
    _emit(report, args)
    return EXIT_OK


def _model_from_args(args):
    if getattr(args, "lines", None):
        try:
            names, lines = polyio.load_lines_file(args.lines)
        except (OSError, polyio.ParseError) as exc:
            raise InputError(str(exc)) from None
        model, _ = ingest_model(lines, names)
        return model
    graph = _load_graph(args.graph)
    return build_model(graph)


def cmd_curve(args):
    model = _model_from_args(args)
    if args.m2:
        text = polyio.m2_export(model)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            print(text, end="")
        return EXIT_OK
    _emit(polyio.model_to_json(model), args)
    return EXIT_OK


def _basis_for(args):
    model = _model_from_args(args)
    pairing = graphmod.face_double_cover(model.graph, getattr(args, "budget", None))
    if pairing is None:
        raise InputError("graph is not planar; no adapted basis exists")
    return model, adapted_basis(model, pairing)


def cmd_basis(args):
    model, basis = _basis_for(args)
    if args.text:
        text = polyio.basis_to_text(basis, model)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            print(text, end="")
        return EXIT_OK
    _emit(polyio.basis_to_json(basis, model), args)
    return EXIT_OK


def _parse_lambda(path, model):
    with open(path) as fh:
        raw = json.load(fh)
    lam = {}
    for key, value in raw.items():
        u, v = key.split("-")
        lam[model.graph.edge_id(int(u), int(v))] = Fraction(value)
    return lam


def cmd_deform(args):
    model, basis = _basis_for(args)
    lam = _parse_lambda(args.coefficients, model) if args.coefficients else None
    gens_eps, cert = mm_deformation(model, basis, lam)
    data = polyio.deformed_ideal_to_json(gens_eps, model.var_names)
    data["certificate"] = {
        "cycles": cert.cycle_count,
        "lambda": {f"{model.graph.edges[e][0]}-{model.graph.edges[e][1]}": polyio.frac_str(v)
                   for e, v in sorted(cert.lam.items())},
        "basis_rank": cert.basis_rank,
    }
    if args.eps is not None:
        gens = specialize_eps(gens_eps, Fraction(args.eps))
        data["specialized"] = {
            "eps": args.eps,
            "generators": [polyio.render_poly(p, model.var_names) for p in gens],
        }
    _emit(data, args)
    return EXIT_OK


def cmd_decompose(args):
    model, basis = _basis_for(args)
    try:
        _, fam = polyio.load_family_file(args.family, list(model.var_names))
    except (OSError, polyio.ParseError) as exc:
        raise InputError(str(exc)) from None
    eta = family_tangent(model, fam)
    try:
        pgl_coeffs, lam = decompose(basis, eta)
    except NotInSpan as exc:
        raise InputError(str(exc)) from None
    verdict, edges = mm_cone_check(basis, eta)
    data = {
        "lambda": {f"{model.graph.edges[e][0]}-{model.graph.edges[e][1]}": polyio.frac_str(v)
                   for e, v in sorted(lam.items())},
        "pgl_coefficients": [polyio.frac_str(v) for v in pgl_coeffs],
        "cone": verdict,
        "cone_edges": [f"{model.graph.edges[e][0]}-{model.graph.edges[e][1]}" for e in edges],
    }
    _emit(data, args)
    return EXIT_OK


def cmd_cubic(args):
    try:
        with open(args.cubic) as fh:
            rows = [ln.strip() for ln in fh]
        rows = [ln for ln in rows if ln and not ln.startswith("#")]
        names = ["x", "y", "z"]
        if rows and rows[0].lower().startswith("vars:"):
            names = [n.strip() for n in rows[0].split(":", 1)[1].split(",")]
            rows = rows[1:]
        if len(rows) != 1:
            raise InputError("cubic file must contain exactly one polynomial")
        parts = polyio.parse_poly_eps(rows[0], names)
    except (OSError, polyio.ParseError) as exc:
        raise InputError(str(exc)) from None
    cubic = TernaryCubic.from_poly_eps(parts)
    try:
        verdict, (sign, val) = genus1_mm_test(cubic)
    except SingularCubic:
        raise InputError("the cubic is singular (discriminant zero)") from None
    delta, aron, j = cubic_invariants(cubic)
    data = {
        "verdict": verdict,
        "discriminant_sign": sign,
        "j_valuation": None if val is None else (str(val) if val != float("inf") else "inf"),
        "maximal": sign > 0,
        "mumford": val < 0,
    }
    _emit(data, args)
    return EXIT_OK if verdict == "MM" else EXIT_NEGATIVE if args.require_mm else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="graphcurves",
        description="Exact graph curves and maximal-Mumford first-order deformations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", help="validate a graph, find its face double cover")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("--faces", help="faces JSON file (list of vertex cycles)")
    p.add_argument("--budget", type=int, default=None,
                   help="pairing search budget (default MM_SEARCH_BUDGET or 2^24)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("curve", help="build the graph curve model and its ideal")
    p.add_argument("graph", nargs="?", help="graph JSON file")
    p.add_argument("--lines", help="explicit line primes file instead of a graph")
    p.add_argument("--m2", action="store_true", help="emit a Macaulay2 ideal definition")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("basis", help="adapted tangent basis with sign certificates")
    p.add_argument("graph", nargs="?")
    p.add_argument("--lines")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--text", action="store_true",
                   help="plain-text export, one polynomial tuple per line")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("deform", help="first-order maximal-Mumford deformation")
    p.add_argument("graph", nargs="?")
    p.add_argument("--lines")
    p.add_argument("--coefficients", help="JSON file edge->lambda (default all ones)")
    p.add_argument("--eps", help="also specialize eps to this rational value")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("decompose", help="decompose an eps-family over the adapted basis")
    p.add_argument("family", help="family file (generators over Q[eps])")
    p.add_argument("graph", nargs="?")
    p.add_argument("--lines")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("cubic", help="genus-one maximal-Mumford verdict over Q(eps)")
    p.add_argument("cubic", help="file with one ternary cubic over Q[eps]")
    p.add_argument("--require-mm", action="store_true",
                   help="exit 2 unless the verdict is MM")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_cubic)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("curve", "basis", "deform", "decompose"):
        if not getattr(args, "lines", None) and not getattr(args, "graph", None):
            parser.error(f"{args.command}: needs a graph file or --lines")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NonPositiveCoefficient as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotAGraphCurve, graphmod.GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DimensionMismatch, GenerationCheckFailed, DegenerateConfiguration) as exc:
        print(f"internal guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
