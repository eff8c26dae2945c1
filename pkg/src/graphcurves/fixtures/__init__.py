"""Bundled graphs and reference curve data used by the CLI and tests."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from ..mpoly import MPoly
from ..polyio import graph_from_json, parse_poly, parse_poly_eps


def _path(*parts):
    return resources.files(__package__).joinpath(*parts)


def fixture_path(*parts) -> str:
    return str(_path(*parts))


def load_graph(name):
    with _path("graphs", f"{name}.json").open() as fh:
        return graph_from_json(json.load(fh))


def load_faces(name):
    with _path("graphs", f"{name}.json").open() as fh:
        return json.load(fh)


def _read_rows(relpath):
    with _path(*relpath.split("/")).open() as fh:
        rows = [ln.strip() for ln in fh]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    names = [n.strip() for n in rows[0].split(":", 1)[1].split(",")]
    return names, rows[1:]


def load_lines(name):
    """(var names, list of primes) from curves/<name>_lines.txt."""
    names, rows = _read_rows(f"curves/{name}_lines.txt")
    return names, [[parse_poly(part, names) for part in ln.split(",")] for ln in rows]


def load_ideal(name):
    names, rows = _read_rows(f"curves/{name}_ideal.txt")
    return names, [parse_poly(ln, names) for ln in rows]


def load_eta_table(name):
    """(var names, dict edge label -> list of generator images)."""
    names, rows = _read_rows(f"curves/{name}_eta.txt")
    table = {}
    for ln in rows:
        parts = [p.strip() for p in ln.split(";")]
        table[parts[0]] = [parse_poly(p, names) for p in parts[1:]]
    return names, table


def load_family(name):
    """(var names, list of {eps power: MPoly}) from families/<name>.txt."""
    names, rows = _read_rows(f"families/{name}.txt")
    return names, [parse_poly_eps(ln, names) for ln in rows]


def load_poly_list(relpath):
    names, rows = _read_rows(relpath)
    return names, [parse_poly(ln, names) for ln in rows]


def load_nodes(name):
    with _path("curves", f"{name}_nodes.json").open() as fh:
        raw = json.load(fh)
    return {label: [Fraction(x) for x in vec] for label, vec in raw.items()}
