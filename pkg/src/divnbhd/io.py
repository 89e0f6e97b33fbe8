"""JSON graph documents, report rendering and Graphviz export."""
import json
from fractions import Fraction
from importlib import resources

import jsonschema

from .graph import GraphError, Vertex, WeightedDualGraph

_ID = {"type": "string", "minLength": 1, "maxLength": 64}

GRAPH_SCHEMA = {
    "type": "object",
    "required": ["vertices", "edges"],
    "additionalProperties": False,
    "properties": {
        "vertices": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id", "e"],
                "additionalProperties": False,
                "properties": {
                    "id": _ID,
                    "e": {"type": "integer"},
                    "marked": {"type": "boolean"},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2},
        },
        "glue": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2},
        "name": {"type": "string"},
    },
}

GOLDEN = ("example1", "example2", "example3", "example4", "semistable", "nonnormal")


class DocumentError(ValueError):
    """A graph document failed to parse or validate. ``str()`` is the
    diagnostic."""


def _where(err):
    path = "/".join(str(p) for p in err.absolute_path)
    return path or "<root>"


def graph_from_dict(doc):
    errors = sorted(jsonschema.Draft202012Validator(GRAPH_SCHEMA).iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        raise DocumentError("; ".join(f"{_where(e)}: {e.message}" for e in errors))
    verts = tuple(Vertex(v["id"], v["e"], v.get("marked", False)) for v in doc["vertices"])
    edges = tuple(tuple(e) for e in doc["edges"])
    glue = tuple(doc["glue"]) if "glue" in doc else None
    try:
        return WeightedDualGraph(verts, edges, glue)
    except GraphError as exc:
        raise DocumentError(str(exc)) from exc


def parse_graph(text):
    """Parse a graph document from JSON text."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return graph_from_dict(doc)


def load_graph(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from exc
    return parse_graph(text)


def graph_to_dict(g):
    doc = {
        "vertices": [{"id": v.id, "e": v.e, "marked": v.marked} for v in g.vertices],
        "edges": [list(e) for e in g.edges],
    }
    if g.glue is not None:
        doc["glue"] = list(g.glue)
    return doc


def serialize_graph(g):
    return json.dumps(graph_to_dict(g), indent=2)


def load_golden(name):
    """One of the bundled example germs (see :data:`GOLDEN`)."""
    if name not in GOLDEN:
        raise KeyError(name)
    text = resources.files("divnbhd").joinpath("golden", f"{name}.json").read_text(encoding="utf-8")
    return parse_graph(text)


# -- reports ------------------------------------------------------------------


def jsonable(value):
    """Recursively convert to JSON types; Fractions become ``"p/q"`` strings."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {_key(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


def _key(k):
    return ",".join(map(str, k)) if isinstance(k, tuple) else str(k)


def analysis_to_dict(analysis):
    return {
        "singular_points": [
            {
                "quotient": str(p.quotient),
                "curves": list(p.vertices),
                "attached": list(p.attached),
                "readings": {c: str(q) for c, q in p.readings.items()},
            }
            for p in analysis.singular_points
        ],
        "discrepancies": analysis.discrepancies,
        "pullback": analysis.pullback,
        "kz_dot": analysis.kz_dot,
        "self_int": analysis.self_int,
        "cross_int": analysis.cross_int,
    }


def verdict_to_dict(v):
    return {
        "class": v.class_tag,
        "passed": v.passed,
        "conditions": {tag: c.holds for tag, c in v.conditions.items()},
        "witnesses": {tag: c.witness for tag, c in v.conditions.items()},
        "index_n": v.index_n,
        "multiplicity_mu": v.multiplicity_mu,
        "target_d": v.target_d,
        "target_type": v.target_type,
        "s_position": v.s_position,
        "extras": v.extras,
    }


def report_dict(g, analysis, verdict, source=None):
    from . import __version__

    return jsonable(
        {
            "input": graph_to_dict(g),
            "analysis": analysis_to_dict(analysis),
            "verdict": verdict_to_dict(verdict),
            "provenance": {
                "tool": "divnbhd",
                "version": __version__,
                "source": source,
                "theorems": sorted(verdict.conditions),
            },
        }
    )


def report_text(g, analysis, verdict):
    lines = [f"curves: {len(g.vertices)}, marked: {', '.join(g.marked)}"]
    if g.glue:
        lines.append(f"glued: {g.glue[0]} ~ {g.glue[1]}")
    lines.append("singular points:")
    for p in analysis.singular_points:
        on = ", ".join(p.attached) or "-"
        lines.append(f"  {p.quotient}  curves {' '.join(p.vertices)}  on {on}")
    for c in g.marked:
        lines.append(f"K.{c} = {analysis.kz_dot[c]}   {c}^2 = {analysis.self_int[c]}")
    for (c, d), val in analysis.cross_int.items():
        if c < d:
            lines.append(f"{c}.{d} = {val}")
    lines.append(f"class: {verdict.class_tag}")
    for tag, cond in verdict.conditions.items():
        mark = "PASS" if cond.holds else "FAIL"
        wit = ", ".join(f"{k}={jsonable(x)}" for k, x in cond.witness.items())
        lines.append(f"  [{mark}] {tag}" + (f"  ({wit})" if wit else ""))
    if verdict.index_n is not None:
        lines.append(f"index n = {verdict.index_n}")
    if verdict.multiplicity_mu is not None:
        lines.append(f"multiplicity = {verdict.multiplicity_mu}")
    if verdict.target_type:
        lines.append(f"X: {verdict.target_type}")
    lines.append("verdict: " + ("pass" if verdict.passed else "fail"))
    return "\n".join(lines)


def to_dot(g):
    """Graphviz source: marked curves filled, labels are self-intersections,
    the glue pair joined by a dashed edge."""
    out = ["graph germ {", "  node [shape=circle];"]
    for v in g.vertices:
        style = ", style=filled, fillcolor=black, fontcolor=white" if v.marked else ""
        out.append(f'  "{v.id}" [label="{v.e}", xlabel="{v.id}"{style}];')
    for u, w in g.edges:
        out.append(f'  "{u}" -- "{w}";')
    if g.glue:
        out.append(f'  "{g.glue[0]}" -- "{g.glue[1]}" [style=dashed, constraint=false];')
    out.append("}")
    return "\n".join(out) + "\n"
