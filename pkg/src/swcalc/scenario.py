"""Scenario files: load, validate and run them into deterministic reports."""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from . import adjunction as adj
from .blowdown import CpConfig, Lifter, LiftNotFound, allowed_restrictions, descend_element
from .lattice import (
    ClassTable,
    Lattice,
    LatticeError,
    format_class,
    is_characteristic,
    orthogonal_check,
    pair,
    parse_class_expression,
    standard_lattice,
)
from .ring import (
    AlexanderPolynomial,
    ManifoldInvariantRecord,
    SWElement,
    SWFraction,
    blowup,
    describe_h1,
    dimension,
    knot_surgery,
    sewn_up_h1,
    skein_E1L,
    torus_surgery,
    wall_cross,
)

BUILTIN = ["r8-q-xn", "r7-basic-classes", "r6-basic-classes", "r5-family"]

_INT = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+$"}]}
_LABELS = {"type": "array", "items": {"type": "string"}}

SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["name", "lattice", "classes", "constraints", "config", "axioms", "pipeline"],
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "description": {"type": "string"},
        "lattice": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["name", "standard"],
                    "properties": {"name": {"type": "string"}, "standard": {"type": "integer", "minimum": 0}},
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "required": ["name", "gram", "basis"],
                    "properties": {
                        "name": {"type": "string"},
                        "gram": {"type": "array", "items": {"type": "array", "items": _INT}},
                        "basis": _LABELS,
                    },
                    "additionalProperties": False,
                },
            ]
        },
        "lattice_check": {"type": "string"},
        "classes": {
            "type": "object",
            "additionalProperties": {"anyOf": [{"type": "string"}, {"type": "array", "items": _INT}]},
        },
        "constraints": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["class", "genus"],
                "properties": {"class": {"type": "string"}, "genus": {"type": "integer", "minimum": 0}},
                "additionalProperties": False,
            },
        },
        "config": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["p", "classes"],
                    "properties": {"p": {"type": "integer", "minimum": 2}, "classes": _LABELS},
                    "additionalProperties": False,
                },
            ]
        },
        "axioms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "axiom", "vars"],
                "properties": {
                    "name": {"type": "string"},
                    "axiom": {"enum": ["positive-scalar-curvature", "positive-sphere"]},
                    "vars": _LABELS,
                    "b_plus": {"type": "integer"},
                    "b_minus": {"type": "integer"},
                },
                "additionalProperties": False,
            },
        },
        "enumeration": {
            "type": "object",
            "required": ["b_minus", "stages"],
            "properties": {
                "b_minus": {"type": "integer", "minimum": 0},
                "stages": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "required": ["label", "constraints"],
                        "properties": {"label": {"type": "string"}, "constraints": _LABELS},
                        "additionalProperties": False,
                    },
                },
            },
            "additionalProperties": False,
        },
        "verification": {
            "type": "object",
            "required": ["stage", "lift_generators", "reference_class"],
            "properties": {
                "stage": {"type": "string"},
                "lift_generators": _LABELS,
                "reference_class": {"type": "string"},
                "period_point": {"type": "string"},
                "manifold": {"type": "string"},
            },
            "additionalProperties": False,
        },
        "lift_check": {
            "type": "object",
            "required": ["generators", "class"],
            "properties": {"generators": _LABELS, "class": {"type": "string"}},
            "additionalProperties": False,
        },
        "pipeline": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "op"],
                "properties": {
                    "id": {"type": "string"},
                    "op": {
                        "enum": [
                            "element",
                            "fraction",
                            "axiom",
                            "knot_surgery",
                            "blowup",
                            "skein_E1L",
                            "descend",
                            "embed",
                            "mul",
                            "add",
                            "torus_surgery",
                            "family",
                            "sewn_up_h1",
                            "dimension",
                            "wall_cross",
                        ]
                    },
                },
            },
        },
        "amendments": {
            "type": "object",
            "properties": {"note": {"type": "string"}, "classes": {"type": "object"}},
            "additionalProperties": False,
        },
        "expect": {"type": "object"},
    },
    "additionalProperties": False,
}


class ScenarioError(ValueError):
    pass


@dataclass
class Options:
    n: int = 3
    strict_integrality: bool = False
    sphere_bound: int = 0
    amended: bool = False

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "strict_integrality": self.strict_integrality,
            "sphere_bound": self.sphere_bound,
            "amended": self.amended,
        }


# -- loading / validation ---------------------------------------------------


def list_scenarios() -> list[str]:
    return list(BUILTIN)


def builtin_path(name: str) -> Path:
    return Path(str(resources.files("swcalc") / "scenarios" / f"{name}.json"))


def load(source: str | Path) -> dict:
    """Load a built-in scenario by name, or a scenario file by path."""
    if isinstance(source, str) and source in BUILTIN:
        path = builtin_path(source)
    else:
        path = Path(source)
    with open(path) as fh:
        return json.load(fh)


def _path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def validate_data(data: Any) -> list[str]:
    """Diagnostics for a parsed scenario; empty when it is well formed."""
    validator = jsonschema.Draft7Validator(SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        return [f"{_path(e.absolute_path)}: {e.message}"]
    return _semantic_check(data)


def validate(path: str | Path) -> list[str]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        return [f"{path}: cannot read ({exc.strerror})"]
    except json.JSONDecodeError as exc:
        return [f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"]
    return validate_data(data)


def _semantic_check(data: dict) -> list[str]:
    diags: list[str] = []
    lat = data["lattice"]
    if lat is None:
        if data["classes"] or data["constraints"] or data["config"]:
            diags.append("$.lattice: classes, constraints or config given without a lattice")
            return diags
        defined: set[str] = set()
    else:
        try:
            lattice = _build_lattice(lat)
        except (LatticeError, ValueError) as exc:
            return [f"$.lattice: {exc}"]
        defined = set(lattice.basis_labels)
        for label, spec in data["classes"].items():
            if isinstance(spec, str):
                try:
                    terms = parse_class_expression(spec)
                except LatticeError as exc:
                    diags.append(f"$.classes.{label}: {exc}")
                    continue
                for _, ref in terms:
                    if ref not in defined:
                        diags.append(f"$.classes.{label}: undefined class label {ref!r}")
            elif len(spec) != lattice.rank:
                diags.append(f"$.classes.{label}: expected {lattice.rank} coordinates, got {len(spec)}")
            defined.add(label)

    def need(label, where):
        if label not in defined:
            diags.append(f"{where}: undefined class label {label!r}")

    for i, c in enumerate(data["constraints"]):
        need(c["class"], f"$.constraints[{i}].class")
    constrained = {c["class"] for c in data["constraints"]}
    if data["config"] is not None:
        for i, lab in enumerate(data["config"]["classes"]):
            need(lab, f"$.config.classes[{i}]")
    enum = data.get("enumeration")
    stage_labels = set()
    if enum:
        for si, st in enumerate(enum["stages"]):
            stage_labels.add(st["label"])
            for i, lab in enumerate(st["constraints"]):
                if lab not in constrained:
                    diags.append(f"$.enumeration.stages[{si}].constraints[{i}]: {lab!r} has no constraint entry")
    ver = data.get("verification")
    if ver:
        if ver["stage"] not in stage_labels:
            diags.append(f"$.verification.stage: unknown stage {ver['stage']!r}")
        for i, lab in enumerate(ver["lift_generators"]):
            need(lab, f"$.verification.lift_generators[{i}]")
        need(ver["reference_class"], "$.verification.reference_class")
        if "period_point" in ver:
            need(ver["period_point"], "$.verification.period_point")
        if data["config"] is None:
            diags.append("$.verification: needs a config")
    lc = data.get("lift_check")
    if lc:
        for i, lab in enumerate(lc["generators"]):
            need(lab, f"$.lift_check.generators[{i}]")
        need(lc["class"], "$.lift_check.class")
    axioms = {a["name"] for a in data["axioms"]}
    ids: set[str] = set()
    refs = {
        "knot_surgery": ["sw"],
        "blowup": ["sw"],
        "skein_E1L": ["unlink", "minus_unknot"],
        "descend": ["sw"],
        "embed": ["sw"],
        "torus_surgery": ["R", "Q"],
        "family": ["R", "Q"],
    }
    for i, step in enumerate(data["pipeline"]):
        where = f"$.pipeline[{i}]"
        for key in refs.get(step["op"], []):
            if key not in step:
                diags.append(f"{where}: missing {key!r}")
            elif step[key] not in ids:
                diags.append(f"{where}.{key}: undefined step id {step[key]!r}")
        if step["op"] in ("mul", "add"):
            for j, ref in enumerate(step.get("args", [])):
                if ref not in ids:
                    diags.append(f"{where}.args[{j}]: undefined step id {ref!r}")
        if step["op"] == "axiom" and step.get("name") not in axioms:
            diags.append(f"{where}.name: undefined axiom record {step.get('name')!r}")
        if step["op"] == "descend":
            if data["config"] is None:
                diags.append(f"{where}: descend needs a config")
            for var, lab in step.get("var_classes", {}).items():
                need(lab, f"{where}.var_classes.{var}")
            for var, lab in step.get("targets", {}).items():
                need(lab, f"{where}.targets.{var}")
        if step["op"] == "dimension" and "class" in step:
            need(step["class"], f"{where}.class")
        if step["id"] in ids:
            diags.append(f"{where}.id: duplicate step id {step['id']!r}")
        ids.add(step["id"])
    return diags


def _build_lattice(spec: dict) -> Lattice:
    if "standard" in spec:
        lat = standard_lattice(int(spec["standard"]))
        if spec["name"] != lat.name:
            lat = Lattice(spec["name"], lat.gram, lat.basis_labels)
        return lat
    return Lattice(spec["name"], [[int(x) for x in row] for row in spec["gram"]], spec["basis"])


# -- running ----------------------------------------------------------------


@dataclass
class Context:
    data: dict
    options: Options
    lattice: Lattice | None = None
    table: ClassTable | None = None
    config: CpConfig | None = None
    values: dict[str, Any] = field(default_factory=dict)
    records: dict[str, ManifoldInvariantRecord] = field(default_factory=dict)


def _sw_json(x) -> Any:
    if isinstance(x, SWFraction):
        return x.to_json()
    return x.to_json()


def _parse_ring(spec, variables):
    if isinstance(spec, str):
        return SWElement.parse(spec, variables)
    return SWElement.from_json(spec, variables)


def _class_json(k) -> dict:
    return {"class": format_class(k), "coords": list(k.coords)}


def run(scenario: str | Path | dict, options: Options | None = None) -> dict:
    """Run every stage of a scenario and return the report as plain data."""
    options = options or Options()
    data = scenario if isinstance(scenario, dict) else load(scenario)
    diags = validate_data(data)
    if diags:
        raise ScenarioError("; ".join(diags))
    data = copy.deepcopy(data)
    if options.amended and "amendments" in data:
        data["classes"].update(data["amendments"].get("classes", {}))
    ctx = Context(data, options)
    report: dict[str, Any] = {
        "scenario": data["name"],
        "options": options.as_dict(),
        "amendment_note": data.get("amendments", {}).get("note") if options.amended else None,
    }
    stages = [
        ("lattice", _stage_lattice),
        ("axioms", _stage_axioms),
        ("config", _stage_config),
        ("enumeration", _stage_enumeration),
        ("verification", _stage_verification),
        ("lift_check", _stage_lift_check),
        ("pipeline", _stage_pipeline),
    ]
    errors = []
    for index, (name, fn) in enumerate(stages):
        try:
            out = fn(ctx)
        except Exception as exc:  # recorded per stage, reported with its index
            errors.append({"stage": index, "name": name, "error": f"{type(exc).__name__}: {exc}"})
            break
        if out is not None:
            report[name] = out
    report["verdicts"] = _verdicts(ctx, report)
    report["errors"] = errors
    report["expectations"] = _check_expectations(ctx, report)
    return report


def _stage_lattice(ctx: Context):
    spec = ctx.data["lattice"]
    if spec is None:
        return {"available": False, "note": ctx.data.get("lattice_check", "no lattice")}
    ctx.lattice = _build_lattice(spec)
    ctx.table = ClassTable(ctx.lattice, ctx.data["classes"])
    return {
        "available": True,
        "name": ctx.lattice.name,
        "rank": ctx.lattice.rank,
        "classes": {
            lab: {"class": format_class(ctx.table[lab]), "square": ctx.table[lab].square()} for lab in ctx.table.names()
        },
    }


def _stage_axioms(ctx: Context):
    out = []
    for a in ctx.data["axioms"]:
        rec = ManifoldInvariantRecord(
            a["name"], a.get("b_plus"), a.get("b_minus"), SWElement.zero(a["vars"]), a["axiom"]
        )
        ctx.records[rec.name] = rec
        out.append({"name": rec.name, "b_plus": rec.b_plus, "b_minus": rec.b_minus, "axiom": rec.vanishing_axiom, "sw": "0"})
    return out


def _stage_config(ctx: Context):
    spec = ctx.data["config"]
    if spec is None:
        return None
    classes = [ctx.table[lab] for lab in spec["classes"]]
    ctx.config = CpConfig(spec["p"], classes)
    orth = {c["class"]: orthogonal_check(ctx.table[c["class"]], classes) for c in ctx.data["constraints"]}
    if "verification" in ctx.data and "period_point" in ctx.data["verification"]:
        pp = ctx.data["verification"]["period_point"]
        orth[pp] = orthogonal_check(ctx.table[pp], classes)
    return {
        "p": ctx.config.p,
        "classes": spec["classes"],
        "gram": ctx.config.gram,
        "boundary": str(ctx.config.boundary),
        "orthogonal_to_config": orth,
        "allowed_restrictions": [list(v) for v in allowed_restrictions(ctx.config.p)],
    }


def _constraint(ctx: Context, label: str) -> adj.SurfaceConstraint:
    for c in ctx.data["constraints"]:
        if c["class"] == label:
            return adj.SurfaceConstraint.of(label, ctx.table[label], c["genus"], ctx.options.sphere_bound)
    raise ScenarioError(f"no constraint for {label!r}")


def _stage_enumeration(ctx: Context):
    spec = ctx.data.get("enumeration")
    if spec is None:
        return None
    out = []
    ctx.values["_candidates"] = {}
    for st in spec["stages"]:
        cons = [_constraint(ctx, lab) for lab in st["constraints"]]
        default = adj.enumerate_candidates(cons, spec["b_minus"], strict=False)
        strict = [c for c in default if c.integral]
        chosen = strict if ctx.options.strict_integrality else default
        ctx.values["_candidates"][st["label"]] = (st["constraints"], chosen)
        out.append(
            {
                "label": st["label"],
                "constraints": st["constraints"],
                "square_floor": adj.square_floor(1, spec["b_minus"]),
                "count": len(chosen),
                "count_default": len(default),
                "count_strict": len(strict),
                "pm_orbits": adj.orbit_count(chosen),
                "candidates": [
                    {"pairings": list(c.pairings), "square": c.square, "dimension": c.dimension, "integral": c.integral}
                    for c in chosen
                ],
            }
        )
    return out


def _stage_verification(ctx: Context):
    spec = ctx.data.get("verification")
    if spec is None:
        return None
    labels, cands = ctx.values["_candidates"][spec["stage"]]
    gens = spec["lift_generators"]
    idx = [labels.index(g) for g in gens]
    lifter = Lifter(ctx.lattice, ctx.config, [ctx.table[g] for g in gens])
    H = ctx.table[spec["reference_class"]]
    restricted = [tuple(c.pairings[i] for i in idx) for c in cands]
    lifts = []
    for v in restricted:
        try:
            lifts.append(lifter.lift(v))
        except LiftNotFound:
            pass
    out: dict[str, Any] = {"stage": spec["stage"], "manifold": spec.get("manifold")}
    period = None
    if "period_point" in spec:
        label = spec["period_point"]
        stated = ctx.table[label]
        info = {
            "label": label,
            "class": format_class(stated),
            "square": stated.square(),
            "dot_reference": pair(stated, H),
            "orthogonal_to_config": orthogonal_check(stated, ctx.config.classes),
        }
        info["valid"] = info["square"] > 0 and info["dot_reference"] > 0 and info["orthogonal_to_config"]
        out["stated_period_point"] = info
        if info["valid"]:
            period = stated
            out["period_point_source"] = "stated"
        else:
            found = adj.find_period_point([ctx.table[g] for g in gens], H, lifts)
            if found is not None:
                coeffs, period = found
                out["period_point_source"] = "searched"
                out["searched_period_point"] = {
                    "coefficients": dict(zip(gens, coeffs)),
                    "class": format_class(period),
                    "square": period.square(),
                    "dot_reference": pair(period, H),
                }
    if cands and period is None:
        if "period_point_source" not in out:
            out["period_point_source"] = "none"
        raise ScenarioError("no usable period point for a nonempty candidate list")
    if period is None:
        report = adj.VanishingReport([])
    else:
        report = adj.verify_vanishing(restricted, lifter.lift, H, period)
    rows = []
    for r in report.rows:
        row = {"pairings": list(r.pairings), "status": r.status}
        if r.lift is not None:
            row["lift"] = format_class(r.lift)
            row["restriction"] = list(ctx.config.pairings(r.lift))
            row["k_dot_reference"] = r.k_dot_H
            row["k_dot_period"] = r.k_dot_period
            row["lift_count"] = len(lifter.lifts(r.pairings))
        rows.append(row)
    out["rows"] = rows
    out["counts"] = report.counts()
    out["verdict"] = report.verdict
    ctx.values["_verdict"] = (spec.get("manifold"), report.verdict)
    return out


def _stage_lift_check(ctx: Context):
    spec = ctx.data.get("lift_check")
    if spec is None:
        return None
    gens = [ctx.table[g] for g in spec["generators"]]
    k = ctx.table[spec["class"]]
    v = [pair(k, g) for g in gens]
    lifter = Lifter(ctx.lattice, ctx.config, gens)
    found = lifter.lifts(v)
    return {
        "class": spec["class"],
        "pairings": v,
        "candidate_square": str(lifter.candidate_square(v)),
        "lifts": [
            {"class": format_class(x), "restriction": list(ctx.config.pairings(x)), "square": x.square(),
             "characteristic": is_characteristic(x)}
            for x in found
        ],
    }


def _resolve_n(value, ctx: Context) -> int:
    if value == "$n":
        return ctx.options.n
    return int(value)


def _stage_pipeline(ctx: Context):
    out = []
    vals = ctx.values
    for step in ctx.data["pipeline"]:
        op = step["op"]
        entry: dict[str, Any] = {"id": step["id"], "op": op}
        if op == "element":
            res = _parse_ring(step["value"], step["vars"])
        elif op == "fraction":
            res = SWFraction(_parse_ring(step["num"], step["vars"]), _parse_ring(step["den"], step["vars"]))
        elif op == "axiom":
            rec = ctx.records[step["name"]]
            entry["axiom"] = rec.vanishing_axiom
            res = rec.sw
        elif op == "knot_surgery":
            res = knot_surgery(vals[step["sw"]], AlexanderPolynomial(step["alexander"]), step["torus_var"])
        elif op == "blowup":
            res = blowup(vals[step["sw"]], step["var"])
        elif op == "skein_E1L":
            res = skein_E1L(vals[step["unlink"]], vals[step["minus_unknot"]], step["torus_var"])
        elif op == "descend":
            var_classes = {v: ctx.table[lab] for v, lab in step["var_classes"].items()}
            targets = {v: ctx.table[lab] for v, lab in step["targets"].items()}
            res, rows = descend_element(vals[step["sw"]], var_classes, ctx.config, targets)
            entry["basic_classes"] = [
                {
                    "class": format_class(r.ambient_class),
                    "coefficient": r.coefficient,
                    "pairings": list(r.pairings),
                    "descends": r.descends,
                }
                for r in rows
            ]
        elif op == "embed":
            src = vals[step["sw"]]
            res = _embed(src, step["vars"])
        elif op in ("mul", "add"):
            args = [vals[a] for a in step["args"]]
            res = args[0]
            for a in args[1:]:
                res = res * a if op == "mul" else res + a
        elif op == "torus_surgery":
            n = _resolve_n(step["n"], ctx)
            entry["n"] = n
            res = torus_surgery(vals[step["R"]], vals[step["Q"]], n, step["collapse"])
        elif op == "family":
            members = {}
            for n in step["n_values"]:
                members[n] = torus_surgery(vals[step["R"]], vals[step["Q"]], int(n), step["collapse"])
            distinct = len(set(members.values())) == len(members)
            entry["members"] = [{"n": n, "sw": _sw_json(x), "text": str(x)} for n, x in members.items()]
            entry["pairwise_distinct"] = distinct
            vals[step["id"]] = members
            out.append(entry)
            continue
        elif op == "sewn_up_h1":
            free, tors = sewn_up_h1(step["n"], step["linking"])
            res = [free, tors]
            entry["value"] = res
            entry["text"] = describe_h1(free, tors)
            vals[step["id"]] = res
            out.append(entry)
            continue
        elif op == "dimension":
            if "class" in step:
                ksq = ctx.table[step["class"]].square()
            else:
                ksq = int(step["k_square"])
            bp, bm = step["b_plus"], step["b_minus"]
            res = dimension(ksq, bp - bm, 2 + bp + bm)
            entry.update({"k_square": ksq, "value": res, "text": str(res)})
            vals[step["id"]] = res
            out.append(entry)
            continue
        elif op == "wall_cross":
            res = wall_cross(int(step["value"]), int(step["d"]))
            entry.update({"value": res, "text": str(res)})
            vals[step["id"]] = res
            out.append(entry)
            continue
        else:  # pragma: no cover - schema rejects unknown ops
            raise ScenarioError(f"unknown op {op!r}")
        vals[step["id"]] = res
        entry["vars"] = list(res.variables)
        entry["sw"] = _sw_json(res)
        entry["text"] = str(res)
        out.append(entry)
    return out


def _embed(x, variables):
    if isinstance(x, SWFraction):
        return x.map(lambda y: y.embed(variables))
    return x.embed(variables)


def _verdicts(ctx: Context, report: dict) -> dict:
    out = {}
    if "_verdict" in ctx.values:
        name, verdict = ctx.values["_verdict"]
        out[name or "blowdown"] = verdict
    for rec in ctx.records.values():
        out.setdefault(rec.name, "SW = 0 (" + rec.vanishing_axiom + ")")
    return dict(sorted(out.items()))


def _check_expectations(ctx: Context, report: dict) -> dict:
    exp = ctx.data.get("expect", {})
    checks = []

    def add(what, expected, actual):
        checks.append({"what": what, "expected": expected, "actual": actual, "ok": expected == actual})

    if report.get("errors"):
        add("errors", [], [e["error"] for e in report["errors"]])
    counts = {s["label"]: s["count"] for s in report.get("enumeration", [])}
    for label, n in exp.get("counts", {}).items():
        add(f"count {label}", n, counts.get(label))
    if "verdict" in exp:
        ver = report.get("verification", {})
        add("verdict", exp["verdict"], ver.get("verdict"))
    vals = ctx.values
    for sid, spec in exp.get("sw", {}).items():
        if sid not in vals:
            add(f"sw {sid}", spec, None)
            continue
        got = vals[sid]
        variables = got.variables
        if isinstance(spec, dict) and "n_times" in spec:
            want = _parse_ring(spec["n_times"], variables) * ctx.options.n
        elif isinstance(spec, dict) and "num" in spec:
            want = SWFraction(_parse_ring(spec["num"], variables), _parse_ring(spec["den"], variables))
        else:
            want = _parse_ring(spec, variables)
        ok = want == got
        checks.append({"what": f"sw {sid}", "expected": str(want), "actual": str(got), "ok": bool(ok)})
    for sid, want in exp.get("values", {}).items():
        add(f"value {sid}", want, vals.get(sid))
    for sid in exp.get("distinct", []):
        step = next((s for s in report.get("pipeline", []) if s["id"] == sid), None)
        add(f"distinct {sid}", True, None if step is None else step["pairwise_distinct"])
    return {"ok": all(c["ok"] for c in checks), "checks": checks}


# -- rendering --------------------------------------------------------------


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def to_table(report: dict) -> str:
    lines = [f"scenario: {report['scenario']}"]
    opts = report["options"]
    lines.append(
        "options: n={n} strict_integrality={strict_integrality} sphere_bound={sphere_bound} amended={amended}".format(**opts)
    )
    if report.get("amendment_note"):
        lines.append(f"amendment: {report['amendment_note']}")
    lat = report.get("lattice")
    if lat:
        if lat["available"]:
            lines.append(f"lattice: {lat['name']} (rank {lat['rank']})")
            for lab, info in lat["classes"].items():
                lines.append(f"  {lab:>6} = {info['class']}   square {info['square']}")
        else:
            lines.append(f"lattice: {lat['note']}")
    cfg = report.get("config")
    if cfg:
        lines.append(f"config: C_{cfg['p']} on {', '.join(cfg['classes'])}, boundary {cfg['boundary']}")
        bad = [k for k, v in cfg["orthogonal_to_config"].items() if not v]
        lines.append("  orthogonal to config: " + ("all" if not bad else "NOT " + ", ".join(bad)))
        lines.append(f"  allowed restrictions: {len(cfg['allowed_restrictions'])}")
    for st in report.get("enumeration", []):
        lines.append(
            f"enumeration {st['label']}: {st['count']} candidates "
            f"(default {st['count_default']}, strict {st['count_strict']}, +- orbits {st['pm_orbits']}), "
            f"k^2 >= {st['square_floor']}"
        )
        for c in st["candidates"]:
            lines.append(
                "  " + " ".join(f"{x:>3}" for x in c["pairings"]) + f"   k^2={c['square']} d={c['dimension']}"
                + ("" if c["integral"] else "  (non-integral dual)")
            )
    ver = report.get("verification")
    if ver:
        pp = ver.get("stated_period_point")
        if pp:
            lines.append(
                f"period point {pp['label']} = {pp['class']}: square {pp['square']}, "
                f"dot H {pp['dot_reference']}, {'valid' if pp['valid'] else 'INVALID'}"
            )
        sp = ver.get("searched_period_point")
        if sp:
            lines.append(f"  searched replacement {sp['class']}: square {sp['square']}, dot H {sp['dot_reference']}")
        for r in ver["rows"]:
            extra = ""
            if "lift" in r:
                extra = f"  lift {r['lift']}  k.H={r['k_dot_reference']} k.P={r['k_dot_period']}"
            lines.append("  " + " ".join(f"{x:>3}" for x in r["pairings"]) + f"  {r['status']}{extra}")
        lines.append(f"verification: {ver['counts']} -> {ver['manifold']}: {ver['verdict']}")
    lc = report.get("lift_check")
    if lc:
        lines.append(f"lift check {lc['class']}: pairings {lc['pairings']}, square {lc['candidate_square']}")
        for x in lc["lifts"]:
            lines.append(f"  lift {x['class']} restriction {x['restriction']} square {x['square']}")
    for step in report.get("pipeline", []):
        if step["op"] == "family":
            lines.append(f"{step['id']}: pairwise distinct = {step['pairwise_distinct']}")
            for m in step["members"]:
                lines.append(f"  n={m['n']}: {m['text']}")
            continue
        lines.append(f"{step['id']} [{step['op']}] = {step['text']}")
        for b in step.get("basic_classes", []):
            lines.append(
                f"  {b['class']:>12} coeff {b['coefficient']:>2} pairings {b['pairings']} "
                + ("descends" if b["descends"] else "does not descend")
            )
    for name, verdict in report.get("verdicts", {}).items():
        lines.append(f"verdict {name}: {verdict}")
    for e in report.get("errors", []):
        lines.append(f"ERROR in stage {e['stage']} ({e['name']}): {e['error']}")
    exp = report["expectations"]
    for c in exp["checks"]:
        lines.append(f"expect {c['what']}: {'ok' if c['ok'] else 'MISMATCH'} (expected {c['expected']}, got {c['actual']})")
    lines.append("expectations: " + ("all met" if exp["ok"] else "MISMATCH"))
    return "\n".join(lines) + "\n"
