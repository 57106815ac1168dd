"""Scenario files: schema, loading, and the task pipeline.

A scenario bundles a curve, an exponent, named piecewise-constant
coefficients, an operator expression, per-point spectral data (explicit
overrides beat numerical estimation), and a task list. Tasks write their
artifacts into the output directory:

    verdict.json     criterion / symbol / finite-section reports, merged
    spirality.json   estimated indices per requested point
    leaf_<t>.svg     leaf plot per requested point
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import jsonschema
import numpy as np

from . import curves, exponents, fredholm, operators, symbols
from .errors import ConfigurationError, LeafspecError, ResolutionError
from .leaves import Leaf, leaf_boundary_sample
from .svg import emit_leaf_svg

TASKS = ("spirality", "leaf_plot", "fredholm", "symbol_test", "verify")

_COMPLEX = {"oneOf": [{"type": "number"},
                      {"type": "array", "items": {"type": "number"},
                       "minItems": 2, "maxItems": 2}]}

SCENARIO_SCHEMA = {
    "type": "object",
    "required": ["v", "curve", "tasks"],
    "additionalProperties": False,
    "properties": {
        "v": {"const": 1},
        "n": {"type": "integer", "minimum": 16},
        "curve": {
            "type": "object",
            "required": ["family"],
            "properties": {
                "family": {"enum": ["circle", "ellipse", "log_spiral",
                                    "oscillating_spiral", "polyline"]},
                "radius": {"type": "number"},
                "center": _COMPLEX,
                "axes": {"type": "array", "items": {"type": "number"},
                         "minItems": 2, "maxItems": 2},
                "delta": {"type": "number"},
                "delta_minus": {"type": "number"},
                "delta_plus": {"type": "number"},
                "omega": {"type": "number"},
                "r_outer": {"type": "number"},
                "r_inner": {"type": "number"},
                "points": {"type": "array", "items": _COMPLEX},
                "ccw": {"type": "boolean"},
                "marks": {"type": "object",
                          "additionalProperties": {"type": "number"}},
            },
        },
        "exponent": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["constant", "formula", "sampled"]},
                "p": {"type": "number"},
                "name": {"type": "string"},
                "params": {"type": "object"},
                "values": {"type": "array", "items": {"type": "number"}},
            },
        },
        "coefficients": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["pieces"],
                "properties": {
                    "size": {"type": "integer", "minimum": 1},
                    "pieces": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "required": ["start", "value"],
                            "properties": {"start": {"type": "string"},
                                           "value": {}},
                        },
                    },
                },
            },
        },
        "expression": {"type": "object"},
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["t"],
                "properties": {
                    "t": {"type": "string"},
                    "p_t": {"type": "number"},
                    "delta_minus": {"type": "number"},
                    "delta_plus": {"type": "number"},
                },
            },
        },
        "tasks": {"type": "array", "items": {"enum": list(TASKS)}},
        "sizes": {"type": "array", "items": {"type": "integer"}},
        "z_samples": {"type": "integer", "minimum": 256},
        "seed": {"type": "integer"},
    },
}


class SchemaError(ConfigurationError):
    """Scenario file does not match the schema."""


def _to_complex(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    return complex(v[0], v[1])


def _find_line(text: str, key: str) -> int:
    """Best-effort line anchor: first occurrence of the offending key."""
    needle = f'"{key}"'
    for lineno, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return lineno
    return 1


def _parse_curve_spec(obj: dict) -> curves.CurveSpec:
    fam = obj["family"]
    kw = {}
    if "center" in obj:
        kw["center"] = _to_complex(obj["center"])
    if "ccw" in obj:
        kw["ccw"] = obj["ccw"]
    if fam == "circle":
        return curves.CurveSpec.circle(radius=obj.get("radius", 1.0),
                                       marks=obj.get("marks"), **kw)
    if fam == "ellipse":
        a, b = obj["axes"]
        return curves.CurveSpec.ellipse(a, b, marks=obj.get("marks"), **kw)
    if fam == "log_spiral":
        extra = {k: obj[k] for k in ("r_outer", "r_inner") if k in obj}
        return curves.CurveSpec.log_spiral(obj["delta"], **extra, **kw)
    if fam == "oscillating_spiral":
        extra = {k: obj[k] for k in ("omega", "r_outer", "r_inner") if k in obj}
        return curves.CurveSpec.oscillating_spiral(
            obj["delta_minus"], obj["delta_plus"], **extra, **kw)
    if fam == "polyline":
        pts = [_to_complex(p) for p in obj["points"]]
        return curves.CurveSpec.polyline(pts, ccw=obj.get("ccw", True))
    raise SchemaError(f"unknown curve family {fam!r}")


def _resolve_exponent(obj: Optional[dict],
                      curve: curves.DiscretizedCurve) -> exponents.Exponent:
    if obj is None:
        return exponents.Exponent.constant(2.0)
    kind = obj["kind"]
    if kind == "constant":
        return exponents.Exponent.constant(obj["p"])
    if kind == "sampled":
        return exponents.Exponent.sampled(np.asarray(obj["values"], float))
    if kind == "formula":
        name = obj.get("name")
        params = dict(obj.get("params", {}))
        anchor = params.pop("anchor", "t")
        if name == "log_perturbation":
            return exponents.log_perturbation(curve, anchor, **params)
        if name == "holder_perturbation":
            return exponents.holder_perturbation(curve, anchor, **params)
        raise SchemaError(f"unknown exponent formula {name!r}")
    raise SchemaError(f"unknown exponent kind {kind!r}")


def _coefficient_value(value, size: int):
    if size == 1:
        return _to_complex(value)
    mat = np.empty((size, size), dtype=complex)
    for i in range(size):
        for j in range(size):
            mat[i, j] = _to_complex(value[i][j])
    return mat


@dataclass(frozen=True, eq=False)
class Scenario:
    """Validated scenario, ready to run."""

    curve_spec: curves.CurveSpec
    n: int
    exponent_obj: Optional[dict]
    coefficient_objs: dict
    expression_obj: Optional[dict]
    point_objs: tuple
    tasks: tuple[str, ...]
    sizes: tuple[int, ...]
    z_samples: int


def load_scenario(path) -> Scenario:
    path = Path(path)
    text = path.read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)
    errors = sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        key = str(err.absolute_path[-1]) if err.absolute_path else "v"
        line = _find_line(text, key)
        where = "$" + "".join(f"[{p!r}]" for p in err.absolute_path)
        raise SchemaError(f"{path}:{line}: {where}: {err.message}")
    return Scenario(
        curve_spec=_parse_curve_spec(raw["curve"]),
        n=raw.get("n", 1024),
        exponent_obj=raw.get("exponent"),
        coefficient_objs=raw.get("coefficients", {}),
        expression_obj=raw.get("expression"),
        point_objs=tuple(raw.get("points", [])),
        tasks=tuple(raw["tasks"]),
        sizes=tuple(raw.get("sizes", (64, 128, 256))),
        z_samples=raw.get("z_samples", 256),
    )


@dataclass(eq=False)
class _Runtime:
    curve: curves.DiscretizedCurve
    exponent: exponents.Exponent
    coefficients: dict[str, symbols.PCCoefficient]
    expression: Optional[symbols.OperatorExpr]
    point_data: dict[str, tuple[float, float, float]] = field(default_factory=dict)
    estimates: dict[str, curves.SpiralityData] = field(default_factory=dict)


def _prepare(scn: Scenario) -> _Runtime:
    curve = curves.build_curve(scn.curve_spec, scn.n)
    exponent = _resolve_exponent(scn.exponent_obj, curve)
    coeffs = {}
    for name, spec in scn.coefficient_objs.items():
        size = spec.get("size", 1)
        pieces = [(pc["start"], _coefficient_value(pc["value"], size))
                  for pc in spec["pieces"]]
        coeff = (symbols.PCCoefficient.scalar(pieces) if size == 1
                 else symbols.PCCoefficient.matrix(size, pieces))
        coeff.start_indices(curve)   # label resolution + ordering check
        coeffs[name] = coeff
    expr = (symbols.parse_expression(scn.expression_obj)
            if scn.expression_obj is not None else None)
    if expr is not None:
        for name in symbols.collect_coefficients(expr):
            if name not in coeffs:
                raise ConfigurationError(f"expression references unknown "
                                         f"coefficient {name!r}")
    return _Runtime(curve=curve, exponent=exponent, coefficients=coeffs,
                    expression=expr)


def _point_labels(scn: Scenario, rt: _Runtime) -> list[str]:
    labels = [p["t"] for p in scn.point_objs]
    if rt.expression is not None:
        for name in sorted(symbols.collect_coefficients(rt.expression)):
            for lab in rt.coefficients[name].boundary_labels():
                if lab not in labels:
                    labels.append(lab)
    return labels


def _resolve_point(scn: Scenario, rt: _Runtime, label: str) -> tuple[float, float, float]:
    """(p_t, delta_minus, delta_plus): overrides beat estimates."""
    if label in rt.point_data:
        return rt.point_data[label]
    override = next((p for p in scn.point_objs if p["t"] == label), {})
    p_t = override.get("p_t", rt.exponent.at(rt.curve, label))
    dm = override.get("delta_minus")
    dp = override.get("delta_plus")
    if dm is None or dp is None:
        est = rt.estimates.get(label)
        if est is None:
            est = curves.spirality_indices(rt.curve, label)
            rt.estimates[label] = est
        dm = est.delta_minus if dm is None else dm
        dp = est.delta_plus if dp is None else dp
    data = (float(p_t), float(dm), float(dp))
    rt.point_data[label] = data
    return data


def _jsonable(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def run_scenario(path, out_dir) -> int:
    """Execute the scenario's tasks; returns the process exit code
    (0 success, 2 configuration error, 3 numerical-resolution error)."""
    out = Path(out_dir)
    try:
        scn = load_scenario(path)
        out.mkdir(parents=True, exist_ok=True)
        rt = _prepare(scn)
        verdict: dict = {"v": 1}
        for task in scn.tasks:
            if task == "spirality":
                report = {}
                for lab in _point_labels(scn, rt):
                    est = rt.estimates.get(lab)
                    if est is None:
                        est = curves.spirality_indices(rt.curve, lab)
                        rt.estimates[lab] = est
                    report[lab] = {
                        "delta_minus": est.delta_minus,
                        "delta_plus": est.delta_plus,
                        "fit_residual_minus": est.fit_residual_minus,
                        "fit_residual_plus": est.fit_residual_plus,
                    }
                (out / "spirality.json").write_text(
                    json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n")
            elif task == "leaf_plot":
                for lab in _point_labels(scn, rt):
                    p_t, dm, dp = _resolve_point(scn, rt, lab)
                    leaf = Leaf(0.0, 1.0, p_t, dm, dp)
                    samples = leaf_boundary_sample(leaf, 256)
                    emit_leaf_svg(leaf, samples, out / f"leaf_{lab}.svg")
            elif task == "fredholm":
                if rt.expression is None:
                    raise ConfigurationError("fredholm task needs an expression")
                name = symbols.match_scalar_apq(rt.expression)
                if name is None or rt.coefficients[name].size != 1:
                    raise ConfigurationError(
                        "the scalar criterion applies to aP + Q with a scalar "
                        "coefficient; use the symbol_test task otherwise")
                coeff = rt.coefficients[name]
                jumps = []
                for lab in coeff.boundary_labels():
                    p_t, dm, dp = _resolve_point(scn, rt, lab)
                    am, ap = coeff.one_sided_limits(rt.curve, lab)
                    jumps.append(fredholm.JumpDatum(
                        t_label=lab, a_minus=complex(am[0, 0]),
                        a_plus=complex(ap[0, 0]), p_t=p_t,
                        delta_minus=dm, delta_plus=dp))
                rep = fredholm.is_fredholm_scalar(jumps)
                verdict["criterion"] = {
                    "fredholm": rep.fredholm,
                    "per_point": [{
                        "t_label": v.t_label,
                        "interval_low": v.interval_low,
                        "interval_high": v.interval_high,
                        "blocking_integer": v.blocking_integer,
                        "degenerate": v.degenerate,
                    } for v in rep.per_point],
                }
            elif task == "symbol_test":
                if rt.expression is None:
                    raise ConfigurationError("symbol_test task needs an expression")
                for name in sorted(symbols.collect_coefficients(rt.expression)):
                    for lab in rt.coefficients[name].boundary_labels():
                        _resolve_point(scn, rt, lab)
                ctx = symbols.SymbolContext(curve=rt.curve,
                                            coefficients=rt.coefficients,
                                            point_data=rt.point_data)
                sv = symbols.bundle_fredholm_test(rt.expression, ctx,
                                                  z_samples_per_leaf=scn.z_samples)
                verdict["symbol"] = {
                    "fredholm": sv.fredholm,
                    "min_abs_det": sv.min_abs_det,
                    "witness": None if sv.witness is None else
                        {"t_label": sv.witness[0], "z": _jsonable(sv.witness[1])},
                    "method": sv.method,
                }
            elif task == "verify":
                if rt.expression is None:
                    raise ConfigurationError("verify task needs an expression")
                rep = operators.finite_section_trend(
                    rt.expression, rt.curve.spec, rt.coefficients, scn.sizes)
                verdict["trend"] = rep.to_json_dict()
        if any(t in scn.tasks for t in ("fredholm", "symbol_test", "verify")):
            (out / "verdict.json").write_text(
                json.dumps(_jsonable(verdict), indent=2, sort_keys=True) + "\n")
        return 0
    except ResolutionError as exc:
        print(f"resolution error: {exc}")
        return 3
    except (LeafspecError, jsonschema.ValidationError) as exc:
        print(f"configuration error: {exc}")
        return 2
