"""JSON model and dual-graph files.

Both formats carry ``"schema": 1``. Integers are arbitrary precision;
floating-point literals are rejected. Errors come in three layers:
:class:`ParseError` (not JSON), :class:`SchemaError` (wrong shape) and
:class:`SemanticError` (well-formed but violates an invariant).
"""

from __future__ import annotations

import json
from typing import Optional, Union

import jsonschema

from .dualgraph import DualGraph, Vertex, strata_model
from .errors import ParseError, SchemaError, SemanticError, TamelogError
from .fan import Chart, FanPoint, KatoFan
from .model import LogModel, StratumData
from .monoid import AffineMonoid, Face

SCHEMA_VERSION = 1

_INT = {"type": "integer"}
_INT_VECTOR = {"type": "array", "items": _INT}
_PAIR = {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}

CHART_SCHEMA = {
    "type": "object",
    "required": ["gens", "v1"],
    "additionalProperties": False,
    "properties": {
        "gens": {"type": "array", "items": _INT_VECTOR},
        "v1": _INT_VECTOR,
        "face": _INT_VECTOR,
        "etale": {"type": "boolean"},
        "saturated": {"type": "boolean"},
    },
}

MODEL_SCHEMA = {
    "type": "object",
    "required": ["schema", "p", "points"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "kind": {"const": "model"},
        "p": _INT,
        "log_smooth_claimed": {"type": "boolean"},
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "codim", "msharp", "dim_closed"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "codim": _INT,
                    "msharp": _INT,
                    "chi_open": {"type": ["integer", "null"]},
                    "dim_closed": _INT,
                    "genus": _INT,
                    "chart": CHART_SCHEMA,
                },
            },
        },
        "specializations": {"type": "array", "items": _PAIR},
    },
}

GRAPH_SCHEMA = {
    "type": "object",
    "required": ["schema", "vertices"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "kind": {"const": "graph"},
        "p": _INT,
        "strict_fibre": {"type": "boolean"},
        "allow_loops": {"type": "boolean"},
        "log_smooth_claimed": {"type": "boolean"},
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "mult", "genus", "self"],
                "additionalProperties": False,
                "properties": {"id": {"type": "string"}, "mult": _INT, "genus": _INT, "self": _INT},
            },
        },
        "edges": {"type": "array", "items": _PAIR},
    },
}


def _reject_float(literal: str):
    raise SchemaError(f"floating-point literal {literal} is not allowed; use integers")


def _reject_constant(literal: str):
    raise SchemaError(f"non-finite literal {literal} is not allowed")


def load_json(data: Union[bytes, str]) -> dict:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from exc
    try:
        obj = json.loads(data, parse_float=_reject_float, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise SchemaError("top level must be a JSON object")
    return obj


def _path(err: jsonschema.ValidationError) -> str:
    out = "$"
    for part in err.absolute_path:
        out += f"[{part}]" if isinstance(part, int) else f".{part}"
    return out


def _check_schema(obj: dict, schema: dict) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(obj), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        raise SchemaError("; ".join(f"{_path(e)}: {e.message}" for e in errors))


def file_kind(obj: dict) -> str:
    kind = obj.get("kind")
    if kind in ("model", "graph"):
        return kind
    if "vertices" in obj:
        return "graph"
    if "points" in obj:
        return "model"
    raise SchemaError("cannot tell a model file (points) from a graph file (vertices)")


def _semantic(fn):
    try:
        return fn()
    except (SchemaError, SemanticError):
        raise
    except (TamelogError, ValueError) as exc:
        raise SemanticError(str(exc)) from exc


def _chart_from(d: dict) -> Chart:
    gens = tuple(tuple(g) for g in d["gens"])
    dim = len(gens[0]) if gens else len(d["v1"])
    monoid = AffineMonoid(gens, ambient_dim=dim, saturated=d.get("saturated", False))
    return Chart(monoid, tuple(d["v1"]), Face(frozenset(d.get("face", []))), d.get("etale", False))


def model_from_obj(obj: dict) -> LogModel:
    _check_schema(obj, MODEL_SCHEMA)

    def build():
        points, strata = [], {}
        for d in obj["points"]:
            chart = _chart_from(d["chart"]) if "chart" in d else None
            points.append(FanPoint(d["id"], d["codim"], d["msharp"], chart))
            strata[d["id"]] = StratumData(d["id"], d.get("chi_open"), d["dim_closed"], d.get("genus"))
        if len(strata) != len(points):
            raise SemanticError("point ids must be unique")
        fan = KatoFan(tuple(points), tuple(tuple(s) for s in obj.get("specializations", [])))
        return LogModel(fan, strata, obj["p"], obj.get("log_smooth_claimed", False))

    return _semantic(build)


def graph_from_obj(obj: dict) -> DualGraph:
    _check_schema(obj, GRAPH_SCHEMA)

    def build():
        vertices = tuple(Vertex(d["id"], d["mult"], d["genus"], d["self"]) for d in obj["vertices"])
        return DualGraph(
            vertices,
            tuple(tuple(e) for e in obj.get("edges", [])),
            strict_fibre=obj.get("strict_fibre", False),
            allow_loops=obj.get("allow_loops", False),
        )

    return _semantic(build)


def parse_model(data: Union[bytes, str]) -> LogModel:
    return model_from_obj(load_json(data))


def parse_graph(data: Union[bytes, str]) -> DualGraph:
    return graph_from_obj(load_json(data))


def render_model(model: LogModel) -> dict:
    points = []
    for pt in model.fan.points:
        s = model.strata[pt.id]
        d = {"id": pt.id, "codim": pt.codim, "msharp": pt.msharp, "chi_open": s.chi_open, "dim_closed": s.dim_closed}
        if s.genus is not None:
            d["genus"] = s.genus
        if pt.chart is not None:
            c = pt.chart
            d["chart"] = {
                "gens": [list(g) for g in c.monoid.generators],
                "v1": list(c.v1),
                "face": sorted(c.face.generator_indices),
                "etale": c.etale_marked,
                "saturated": c.monoid.saturated,
            }
        points.append(d)
    return {
        "schema": SCHEMA_VERSION,
        "kind": "model",
        "p": model.p,
        "log_smooth_claimed": model.log_smooth_claimed,
        "points": points,
        "specializations": [list(s) for s in model.fan.specializations],
    }


def render_graph(g: DualGraph, p: Optional[int] = None, log_smooth_claimed: bool = False) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "kind": "graph",
        "strict_fibre": g.strict_fibre,
        "allow_loops": g.allow_loops,
        "vertices": [{"id": v.id, "mult": v.mult, "genus": v.genus, "self": v.self_int} for v in g.vertices],
        "edges": [list(e) for e in g.edges],
    }
    if p is not None:
        out["p"] = p
    if log_smooth_claimed:
        out["log_smooth_claimed"] = True
    return out


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_any(data: Union[bytes, str], p: Optional[int] = None):
    """Parse either file kind. Returns ``(kind, obj, model, graph)``; a graph
    file also yields its strata model when a prime is known."""
    obj = load_json(data)
    kind = file_kind(obj)
    if kind == "model":
        if p is not None:
            obj = dict(obj, p=p)
        return kind, obj, model_from_obj(obj), None
    g = graph_from_obj(obj)
    prime = p if p is not None else obj.get("p")
    model = None
    if prime is not None:
        model = _semantic(lambda: strata_model(g, prime, obj.get("log_smooth_claimed", False)))
    return kind, obj, model, g
