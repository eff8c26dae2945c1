"""Text and JSON formats.

Polynomial grammar: rational coefficients, explicit "*", "^" powers,
"+"/"-", and parentheses; variables are x0..x{g-1} or an alias list such
as a,b,c,d,e.  The name "eps" is reserved for the deformation parameter in
family files.  Output is deterministic: terms in graded lex order.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .graphs import TrivalentGraph
from .mpoly import MPoly, grlex_key


class ParseError(ValueError):
    def __init__(self, message, position=None):
        self.position = position
        super().__init__(message if position is None else f"{message} (at offset {position})")


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("num"):
            out.append(("num", int(m.group("num")), m.start()))
        elif m.group("name"):
            out.append(("name", m.group("name"), m.start()))
        else:
            out.append(("op", m.group("op"), m.start()))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, tokens, var_index, nvars):
        self.tokens = tokens
        self.i = 0
        self.var_index = var_index
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self):
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        p = self.term()
        if negate:
            p = -p
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p - q if val == "-" else p + q
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                q = self.factor()
                if val == "*":
                    p = p * q
                else:
                    if q.total_degree() > 0:
                        raise ParseError("division only by constants", pos)
                    c = q.coefficient((0,) * self.nvars)
                    if c == 0:
                        raise ParseError("division by zero", pos)
                    p = p * (1 / c)
            else:
                return p

    def factor(self):
        p = self.base()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "^":
                self.take()
                kind2, val2, pos2 = self.take()
                if kind2 != "num":
                    raise ParseError("exponent must be an integer", pos2)
                p = p ** val2
            else:
                return p

    def base(self):
        kind, val, pos = self.take()
        if kind == "num":
            return MPoly.const(self.nvars, val)
        if kind == "name":
            if val not in self.var_index:
                raise ParseError(f"unknown variable {val!r}", pos)
            return MPoly.variable(self.nvars, self.var_index[val])
        if kind == "op" and val == "(":
            p = self.expr()
            kind2, val2, pos2 = self.take()
            if not (kind2 == "op" and val2 == ")"):
                raise ParseError("expected ')'", pos2)
            return p
        if kind == "op" and val == "-":
            return -self.base()
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_poly(text, names) -> MPoly:
    """Parse a polynomial over the given variable names."""
    names = list(names)
    var_index = {n: i for i, n in enumerate(names)}
    parser = _Parser(_tokenize(text), var_index, len(names))
    p = parser.expr()
    kind, _, pos = parser.peek()
    if kind != "end":
        raise ParseError("trailing input", pos)
    return p


def parse_poly_eps(text, names):
    """Parse a polynomial in the variables plus eps; returns {eps power: MPoly}."""
    names = list(names)
    if "eps" in names:
        raise ParseError("'eps' clashes with a variable name")
    full = parse_poly(text, names + ["eps"])
    nv = len(names)
    out = {}
    for mono, coeff in full.terms.items():
        k = mono[nv]
        base = mono[:nv]
        out.setdefault(k, {})[base] = coeff
    return {k: MPoly(nv, t) for k, t in sorted(out.items())}


def default_names(nvars):
    return [f"x{i}" for i in range(nvars)]


def _render_mono(mono, names):
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render_poly(p: MPoly, names=None) -> str:
    names = list(names) if names else default_names(p.nvars)
    if not p.terms:
        return "0"
    chunks = []
    for mono, coeff in sorted(p.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True):
        mono_str = _render_mono(mono, names)
        mag = abs(coeff)
        if mono_str and mag == 1:
            body = mono_str
        elif mono_str:
            body = f"{mag}*{mono_str}"
        else:
            body = f"{mag}"
        if not chunks:
            chunks.append(body if coeff > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(chunks)


def render_poly_eps(parts, names) -> str:
    """Render {eps power: MPoly} deterministically."""
    chunks = []
    for k in sorted(parts):
        p = parts[k]
        if p.is_zero():
            continue
        body = render_poly(p, names)
        if k == 0:
            chunks.append(body)
        else:
            epspow = "eps" if k == 1 else f"eps^{k}"
            chunks.append(f"{epspow}*({body})")
    return " + ".join(chunks) if chunks else "0"


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(s)


def graph_to_json(graph: TrivalentGraph) -> dict:
    return {"vertices": graph.vertex_count, "edges": [list(e) for e in graph.edges]}


def graph_from_json(data) -> TrivalentGraph:
    try:
        return TrivalentGraph.from_edges(int(data["vertices"]), data["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph JSON: {exc}") from None


def graph_from_dot(text) -> TrivalentGraph:
    """Minimal DOT-lite reader: integer vertices, 'u -- v' edge statements."""
    edges = []
    seen = set()
    for match in re.finditer(r"(\d+)\s*--\s*(\d+)", text):
        u, v = int(match.group(1)), int(match.group(2))
        edges.append((u, v))
        seen.update((u, v))
    if not edges:
        raise ParseError("no 'u -- v' edge statements found")
    return TrivalentGraph.from_edges(max(seen) + 1, edges)


def load_graph(path) -> TrivalentGraph:
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return graph_from_json(json.loads(text))
    return graph_from_dot(text)


def load_faces(path):
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ParseError("faces JSON must be a list of vertex cycles")
    return [list(map(int, face)) for face in data]


def load_lines_file(path):
    """Line descriptions for model ingestion.

    Format: first line "vars: a,b,c,..."; afterwards one curve line per
    text line, given by its prime as comma-separated linear forms.
    Blank lines and lines starting with '#' are ignored.
    """
    with open(path) as fh:
        raw = [ln.strip() for ln in fh]
    rows = [ln for ln in raw if ln and not ln.startswith("#")]
    if not rows or not rows[0].lower().startswith("vars:"):
        raise ParseError("lines file must start with 'vars: ...'")
    names = [n.strip() for n in rows[0].split(":", 1)[1].split(",")]
    lines = []
    for ln in rows[1:]:
        forms = [parse_poly(part, names) for part in ln.split(",")]
        lines.append(forms)
    return names, lines


def load_family_file(path, names):
    """Generators over Q[eps]: one per non-comment line; returns list of dicts."""
    with open(path) as fh:
        raw = [ln.strip() for ln in fh]
    rows = [ln for ln in raw if ln and not ln.startswith("#")]
    if rows and rows[0].lower().startswith("vars:"):
        names = [n.strip() for n in rows[0].split(":", 1)[1].split(",")]
        rows = rows[1:]
    return names, [parse_poly_eps(ln, names) for ln in rows]


def model_to_json(model) -> dict:
    return {
        "variables": list(model.var_names),
        "graph": graph_to_json(model.graph),
        "nodes": {
            f"{u}-{v}": [frac_str(x) for x in model.node_vectors[eid]]
            for eid, (u, v) in enumerate(model.graph.edges)
        },
        "ideal": [render_poly(p, model.var_names) for p in model.ideal_gens],
    }


def basis_to_json(basis, model) -> dict:
    names = model.var_names
    data = {
        "pgl": [[render_poly(img, names) for img in tv.images] for tv in basis.pgl],
        "edges": {},
    }
    for eid in sorted(basis.edge_vectors):
        u, v = model.graph.edges[eid]
        cert = basis.certificates[eid]
        bracket = None if cert.t0_lo is None else [frac_str(cert.t0_lo), frac_str(cert.t0_hi)]
        data["edges"][f"{u}-{v}"] = {
            "images": [render_poly(img, names) for img in basis.edge_vectors[eid].images],
            "t0_bracket": bracket,
            "segment_sign": cert.segment_sign,
            "value_at_node": frac_str(cert.value),
            "t0_on_first_ray": cert.t0_on_first_ray,
        }
    return data


def basis_to_text(basis, model) -> str:
    """Plain-text export: one tangent vector per line, images ; separated."""
    names = model.var_names
    lines = [f"# variables: {','.join(names)}"]
    for k, tv in enumerate(basis.pgl):
        imgs = "; ".join(render_poly(img, names) for img in tv.images)
        lines.append(f"pgl{k}; {imgs}")
    for eid in sorted(basis.edge_vectors):
        u, v = model.graph.edges[eid]
        imgs = "; ".join(render_poly(img, names)
                         for img in basis.edge_vectors[eid].images)
        lines.append(f"eta{u}-{v}; {imgs}")
    return "\n".join(lines) + "\n"


def deformed_ideal_to_json(gens_eps, names) -> dict:
    return {"generators": [render_poly_eps(g, names) for g in gens_eps]}


def m2_export(model) -> str:
    """Macaulay2-readable ideal definition."""
    names = ",".join(model.var_names)
    gens = ",\n  ".join(render_poly(p, model.var_names).replace("^", "^") for p in model.ideal_gens)
    return f"R = QQ[{names}];\nI = ideal(\n  {gens}\n);\n"
