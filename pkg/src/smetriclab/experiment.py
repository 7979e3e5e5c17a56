"""Experiment files: schema, validation, and loading.

An experiment is a JSON document declaring a space, an optional self-map,
optional contraction parameters and gauges, and an ordered list of named
checks.  Numbers are read as exact decimals (0.01 means 1/100), which is
what makes downstream verdicts and reports reproducible bit for bit.

Validation failures raise :class:`ConfigError` whose message starts with
the JSON path of the offending field, for example
``space.step: grid step must be positive``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .contraction import ContractionParams, GaugeSpec
from .expr import ExprError, Formula
from .mapping import FormulaMapping, Mapping, TableMapping
from .numeric import DEFAULT_TOL, to_fraction
from .space import (
    FormulaMetric,
    FormulaSMetric,
    Metric,
    MetricAxiomError,
    Point,
    SMetric,
    Space,
    SpaceError,
    TableMetric,
    TableSMetric,
    s_from_metric,
)

CHECK_NAMES = (
    "axioms",
    "symmetry",
    "triangle",
    "generated",
    "xi",
    "phi_gauge",
    "condition_i",
    "condition_ii",
    "solve",
    "solve_power",
    "fix_set",
    "discontinuity",
    "zamfirescu",
    "fixed_circle",
)

#: Which subcommand runs which checks.
CHECK_FAMILIES = {
    "axioms": ("axioms", "symmetry", "triangle", "generated"),
    "verify": ("xi", "phi_gauge", "condition_i", "condition_ii"),
    "solve": ("solve", "solve_power", "fix_set", "discontinuity"),
    "circle": ("zamfirescu", "fixed_circle"),
}


class ConfigError(Exception):
    """Invalid experiment file; the message names the JSON path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message


@dataclass
class SequenceSpec:
    """An approach sequence: explicit values or a formula in n."""

    values: list[Fraction] | None = None
    expr: Formula | None = None
    n_from: int = 1
    n_to: int = 1

    def expand(self) -> list[Fraction]:
        if self.values is not None:
            return list(self.values)
        assert self.expr is not None
        return [self.expr(n) for n in range(self.n_from, self.n_to + 1)]

    def describe(self) -> dict:
        if self.values is not None:
            return {"values": [float(v) for v in self.values]}
        assert self.expr is not None
        return {
            "expr": self.expr.pretty(),
            "n_from": self.n_from,
            "n_to": self.n_to,
        }


@dataclass
class CheckSpec:
    name: str
    label: str
    options: dict = field(default_factory=dict)


@dataclass
class ExperimentSpec:
    name: str
    tolerance: Fraction
    space: Space
    mapping: Mapping | None
    metric: Metric | None
    params: ContractionParams | None
    gauge: GaugeSpec | None
    checks: list[CheckSpec]
    echo: dict
    digest: str


def load_experiment(path: str | Path) -> ExperimentSpec:
    """Read and validate an experiment file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(str(path), f"cannot read file: {e}") from None
    try:
        doc = json.loads(
            text,
            parse_float=Fraction,
            parse_constant=_reject_constant,
        )
    except ValueError as e:
        raise ConfigError(str(path), f"invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ConfigError(str(path), "top level must be an object")
    return build_experiment(doc, default_name=path.stem)


def _reject_constant(name: str) -> None:
    raise ValueError(f"non-finite number {name!r} is not allowed")


def build_experiment(doc: dict, default_name: str = "experiment") -> ExperimentSpec:
    """Validate a parsed document and assemble the runnable spec."""
    known = {"name", "tolerance", "space", "map", "params", "gauge", "checks"}
    for key in doc:
        if key not in known:
            raise ConfigError(key, "unknown field")

    name = doc.get("name", default_name)
    if not isinstance(name, str) or not name:
        raise ConfigError("name", "must be a nonempty string")

    tolerance = _number(doc.get("tolerance", DEFAULT_TOL), "tolerance")
    if tolerance <= 0:
        raise ConfigError("tolerance", "must be positive")

    if "space" not in doc:
        raise ConfigError("space", "is required")
    space, metric = _build_space(doc["space"])

    mapping = None
    if "map" in doc:
        mapping = _build_mapping(doc["map"], space)

    params = None
    if "params" in doc:
        params = _build_params(doc["params"])

    gauge = None
    if "gauge" in doc:
        gauge = _build_gauge(doc["gauge"])

    raw_checks = doc.get("checks", [])
    if not isinstance(raw_checks, list):
        raise ConfigError("checks", "must be a list")
    checks = []
    for i, entry in enumerate(raw_checks):
        checks.append(
            _build_check(entry, f"checks[{i}]", space, mapping, params, gauge)
        )
    _disambiguate_labels(checks)

    echo = _echo(name, tolerance, doc, space, mapping, params, gauge, checks)
    digest = hashlib.sha256(
        json.dumps(echo, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()
    return ExperimentSpec(
        name, tolerance, space, mapping, metric, params, gauge, checks,
        echo, digest,
    )


def _number(value: object, path: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise ConfigError(path, "must be a number")
    return to_fraction(value)


def _build_space(node: object) -> tuple[Space, Metric | None]:
    if not isinstance(node, dict):
        raise ConfigError("space", "must be an object")
    kind = node.get("kind")
    if kind not in ("finite", "real_grid"):
        raise ConfigError("space.kind", "must be 'finite' or 'real_grid'")
    if "smetric" not in node:
        raise ConfigError("space.smetric", "is required")

    if kind == "finite":
        pts = node.get("points")
        if not isinstance(pts, list) or not pts:
            raise ConfigError("space.points", "must be a nonempty list")
        points = []
        for i, p in enumerate(pts):
            if isinstance(p, str):
                points.append(p)
            elif isinstance(p, bool):
                raise ConfigError(f"space.points[{i}]", "must be a number or string")
            elif isinstance(p, (int, Fraction)):
                points.append(to_fraction(p))
            else:
                raise ConfigError(f"space.points[{i}]", "must be a number or string")
        smetric, metric = _build_smetric(node["smetric"], points, kind)
        try:
            space = Space.finite(points, smetric)
        except ValueError as e:
            raise ConfigError("space.points", str(e)) from None
    else:
        for key in ("lo", "hi", "step"):
            if key not in node:
                raise ConfigError(f"space.{key}", "is required for a grid")
        lo = _number(node["lo"], "space.lo")
        hi = _number(node["hi"], "space.hi")
        step = _number(node["step"], "space.step")
        if step <= 0:
            raise ConfigError("space.step", "grid step must be positive")
        if hi < lo:
            raise ConfigError("space.hi", "must be at least lo")
        # validate a generated metric on a thin, evenly spaced subsample;
        # the full grid would make the triangle sweep cubic in 10^3+ points
        span = (hi - lo) / step
        count = span.numerator // span.denominator
        stride = max(1, count // 24)
        probe = [lo + i * step for i in range(0, count + 1, stride)]
        smetric, metric = _build_smetric(node["smetric"], probe, kind)
        space = Space.real_grid(lo, hi, step, smetric)
    return space, metric


def _build_smetric(
    node: object, points: list | None, kind: str
) -> tuple[SMetric, Metric | None]:
    path = "space.smetric"
    if not isinstance(node, dict):
        raise ConfigError(path, "must be an object")
    skind = node.get("kind")
    if skind == "formula":
        formula = _formula(node.get("expr"), ("x", "y", "z"), f"{path}.expr")
        if points is not None and any(isinstance(p, str) for p in points):
            raise ConfigError(
                "space.points", "a formula S-metric needs numeric points"
            )
        return FormulaSMetric(formula), None
    if skind == "table":
        if kind != "finite":
            raise ConfigError(path, "a table S-metric needs a finite space")
        assert points is not None
        entries = _table_entries(node.get("entries"), f"{path}.entries", 3)
        labels = [_label_of(p) for p in points]
        table: dict[tuple[str, str, str], Fraction] = {}
        for i, (refs, value) in enumerate(entries):
            triple = tuple(refs)
            for r in triple:
                if r not in labels:
                    raise ConfigError(
                        f"{path}.entries[{i}]", f"unknown point label {r!r}"
                    )
            table[triple] = value
        for x in labels:
            for y in labels:
                for z in labels:
                    if (x, y, z) not in table:
                        raise ConfigError(
                            f"{path}.entries",
                            f"missing entry for ({x}, {y}, {z})",
                        )
        return TableSMetric(table), None
    if skind == "generated":
        metric = _build_metric(node.get("metric"), f"{path}.metric", points, kind)
        sample = points if points is not None else None
        try:
            generated = s_from_metric(metric, sample)
        except (MetricAxiomError, ValueError) as e:
            raise ConfigError(f"{path}.metric", str(e)) from None
        return generated, metric
    raise ConfigError(
        f"{path}.kind", "must be 'formula', 'table', or 'generated'"
    )


def _build_metric(
    node: object, path: str, points: list | None, kind: str
) -> Metric:
    if not isinstance(node, dict):
        raise ConfigError(path, "must be an object")
    mkind = node.get("kind")
    if mkind == "formula":
        formula = _formula(node.get("expr"), ("x", "y"), f"{path}.expr")
        if points is not None and any(isinstance(p, str) for p in points):
            raise ConfigError(
                "space.points", "a formula metric needs numeric points"
            )
        return FormulaMetric(formula)
    if mkind == "table":
        if kind != "finite":
            raise ConfigError(path, "a table metric needs a finite space")
        entries = _table_entries(node.get("entries"), f"{path}.entries", 2)
        labels = {_label_of(p) for p in points or []}
        table: dict[tuple[str, str], Fraction] = {}
        for i, (refs, value) in enumerate(entries):
            pair = tuple(refs)
            for r in pair:
                if labels and r not in labels:
                    raise ConfigError(
                        f"{path}.entries[{i}]", f"unknown point label {r!r}"
                    )
            table[pair] = value
        return TableMetric(table)
    raise ConfigError(f"{path}.kind", "must be 'formula' or 'table'")


def _label_of(p: object) -> str:
    from .space import as_point

    return p if isinstance(p, str) else as_point(p).label


def _table_entries(
    node: object, path: str, arity: int
) -> list[tuple[list[str], Fraction]]:
    if not isinstance(node, list) or not node:
        raise ConfigError(path, "must be a nonempty list")
    rows = []
    for i, row in enumerate(node):
        if not isinstance(row, list) or len(row) != arity + 1:
            raise ConfigError(
                f"{path}[{i}]", f"must be a list of {arity} points and a value"
            )
        refs = [_label_of(_point_literal(r, f"{path}[{i}]")) for r in row[:arity]]
        value = _number(row[arity], f"{path}[{i}]")
        rows.append((refs, value))
    return rows


def _point_literal(ref: object, path: str) -> object:
    if isinstance(ref, str):
        return ref
    if isinstance(ref, bool) or not isinstance(ref, (int, Fraction)):
        raise ConfigError(path, "point references must be numbers or strings")
    return to_fraction(ref)


def _formula(text: object, variables: tuple[str, ...], path: str) -> Formula:
    if not isinstance(text, str):
        raise ConfigError(path, "must be an expression string")
    try:
        return Formula.parse(text, variables)
    except ExprError as e:
        raise ConfigError(path, str(e)) from None


def _build_mapping(node: object, space: Space) -> Mapping:
    if not isinstance(node, dict):
        raise ConfigError("map", "must be an object")
    kind = node.get("kind")
    if kind == "formula":
        formula = _formula(node.get("expr"), ("x",), "map.expr")
        if any(p.value is None for p in space.points):
            raise ConfigError("map.expr", "a formula map needs numeric points")
        return FormulaMapping(formula)
    if kind == "table":
        entries = node.get("entries")
        if not isinstance(entries, dict) or not entries:
            raise ConfigError("map.entries", "must be a nonempty object")
        for src, dst in entries.items():
            if src not in space:
                raise ConfigError(
                    "map.entries", f"unknown point label {src!r}"
                )
            if not isinstance(dst, str) or dst not in space:
                raise ConfigError(
                    "map.entries", f"image of {src!r} is not a universe label"
                )
        missing = [p.label for p in space.points if p.label not in entries]
        if missing:
            raise ConfigError(
                "map.entries", f"no entry for point {missing[0]!r}"
            )
        return TableMapping(entries)
    raise ConfigError("map.kind", "must be 'formula' or 'table'")


def _build_params(node: object) -> ContractionParams:
    if not isinstance(node, dict):
        raise ConfigError("params", "must be an object")
    for key in node:
        if key not in ("a", "b", "c"):
            raise ConfigError(f"params.{key}", "unknown field")
    try:
        return ContractionParams(
            _number(node.get("a", 0), "params.a"),
            _number(node.get("b", 0), "params.b"),
            _number(node.get("c", 0), "params.c"),
        )
    except ValueError as e:
        raise ConfigError("params", str(e)) from None


def _build_gauge(node: object) -> GaugeSpec:
    if not isinstance(node, dict):
        raise ConfigError("gauge", "must be an object")
    for key in node:
        if key not in ("phi", "delta"):
            raise ConfigError(f"gauge.{key}", "unknown field")
    phi = delta = None
    if "phi" in node:
        phi = _formula(node["phi"], ("t",), "gauge.phi")
    if "delta" in node:
        delta = _formula(node["delta"], ("eps",), "gauge.delta")
    return GaugeSpec(phi, delta)


def _resolve_point(space: Space, ref: object, path: str) -> Point:
    literal = _point_literal(ref, path)
    try:
        return space.resolve(literal)
    except SpaceError as e:
        raise ConfigError(path, str(e)) from None


def _sample_option(
    node: dict, space: Space, path: str
) -> list[Point] | None:
    if "sample" not in node:
        return None
    raw = node["sample"]
    if not isinstance(raw, list) or not raw:
        raise ConfigError(f"{path}.sample", "must be a nonempty list")
    return [
        _resolve_point(space, r, f"{path}.sample[{i}]")
        for i, r in enumerate(raw)
    ]


def _pairs_option(
    node: dict, space: Space, path: str
) -> list[tuple[Point, Point]] | None:
    if "pairs" not in node:
        return None
    raw = node["pairs"]
    if not isinstance(raw, list) or not raw:
        raise ConfigError(f"{path}.pairs", "must be a nonempty list")
    pairs = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != 2:
            raise ConfigError(f"{path}.pairs[{i}]", "must be a two-point pair")
        pairs.append(
            (
                _resolve_point(space, row[0], f"{path}.pairs[{i}]"),
                _resolve_point(space, row[1], f"{path}.pairs[{i}]"),
            )
        )
    return pairs


def _require(condition: object, path: str, message: str) -> None:
    if not condition:
        raise ConfigError(path, message)


def _build_check(
    entry: object,
    path: str,
    space: Space,
    mapping: Mapping | None,
    params: ContractionParams | None,
    gauge: GaugeSpec | None,
) -> CheckSpec:
    if not isinstance(entry, dict):
        raise ConfigError(path, "must be an object")
    name = entry.get("check")
    if name not in CHECK_NAMES:
        raise ConfigError(f"{path}.check", f"unknown check {name!r}")

    known_options = {
        "axioms": {"sample"},
        "symmetry": {"sample"},
        "triangle": {"sample"},
        "generated": {"sample", "expect"},
        "xi": set(),
        "phi_gauge": {"t_values"},
        "condition_i": {"mode", "pairs", "sample"},
        "condition_ii": {"eps", "pairs", "sample"},
        "solve": {"x0", "max_iter", "tol"},
        "solve_power": {"m", "x0", "max_iter", "tol"},
        "fix_set": {"expect"},
        "discontinuity": {
            "u", "sequences", "limit_tol", "conv_tol",
            "tail_start", "window", "expect",
        },
        "zamfirescu": {"x0", "a", "b", "sample"},
        "fixed_circle": {
            "x0", "a", "b", "sample", "tol_circle",
            "expect_circle_fixed", "expect_disc_fixed",
        },
    }[name]
    for key in entry:
        if key != "check" and key not in known_options:
            raise ConfigError(f"{path}.{key}", "unknown option")

    options: dict = {}
    label = name

    if name in ("axioms", "symmetry", "triangle", "generated"):
        options["sample"] = _sample_option(entry, space, path)
        if name == "generated" and "expect" in entry:
            _require(
                isinstance(entry["expect"], bool), f"{path}.expect",
                "must be a boolean",
            )
            options["expect"] = entry["expect"]
    elif name == "xi":
        _require(params is not None, path, "xi needs params")
    elif name == "phi_gauge":
        _require(gauge is not None and gauge.phi is not None, path,
                 "phi_gauge needs gauge.phi")
        raw = entry.get("t_values")
        _require(isinstance(raw, list) and raw, f"{path}.t_values",
                 "must be a nonempty list")
        options["t_values"] = [
            _number(t, f"{path}.t_values[{i}]") for i, t in enumerate(raw)
        ]
    elif name == "condition_i":
        mode = entry.get("mode", "full")
        _require(mode in ("full", "simple", "strict"), f"{path}.mode",
                 "must be 'full', 'simple', or 'strict'")
        _require(mapping is not None, path, "condition_i needs a map")
        _require(params is not None, path, "condition_i needs params")
        if mode in ("full", "simple"):
            _require(gauge is not None and gauge.phi is not None, path,
                     f"mode {mode!r} needs gauge.phi")
        options["mode"] = mode
        options["pairs"] = _pairs_option(entry, space, path)
        options["sample"] = _sample_option(entry, space, path)
        label = f"condition_i[{mode}]"
    elif name == "condition_ii":
        _require(mapping is not None, path, "condition_ii needs a map")
        _require(params is not None, path, "condition_ii needs params")
        _require(gauge is not None and gauge.delta is not None, path,
                 "condition_ii needs gauge.delta")
        if "eps" in entry:
            raw = entry["eps"]
            _require(isinstance(raw, list) and raw, f"{path}.eps",
                     "must be a nonempty list")
            options["eps"] = [
                _number(e, f"{path}.eps[{i}]") for i, e in enumerate(raw)
            ]
        else:
            options["eps"] = None
        options["pairs"] = _pairs_option(entry, space, path)
        options["sample"] = _sample_option(entry, space, path)
    elif name in ("solve", "solve_power"):
        _require(mapping is not None, path, f"{name} needs a map")
        _require("x0" in entry, f"{path}.x0", "is required")
        options["x0"] = _resolve_point(space, entry["x0"], f"{path}.x0")
        max_iter = entry.get("max_iter", 1000)
        _require(
            isinstance(max_iter, int) and not isinstance(max_iter, bool)
            and max_iter >= 1,
            f"{path}.max_iter", "must be a positive integer",
        )
        options["max_iter"] = max_iter
        options["tol"] = (
            _number(entry["tol"], f"{path}.tol") if "tol" in entry else None
        )
        if name == "solve_power":
            m = entry.get("m")
            _require(
                isinstance(m, int) and not isinstance(m, bool) and m >= 1,
                f"{path}.m", "must be a positive integer",
            )
            options["m"] = m
            label = f"solve_power[m={m}, x0={options['x0'].label}]"
        else:
            label = f"solve[x0={options['x0'].label}]"
    elif name == "fix_set":
        _require(mapping is not None, path, "fix_set needs a map")
        if "expect" in entry:
            raw = entry["expect"]
            _require(isinstance(raw, list), f"{path}.expect", "must be a list")
            options["expect"] = [
                _resolve_point(space, r, f"{path}.expect[{i}]")
                for i, r in enumerate(raw)
            ]
    elif name == "discontinuity":
        _require(mapping is not None, path, "discontinuity needs a map")
        _require(params is not None, path, "discontinuity needs params")
        _require("u" in entry, f"{path}.u", "is required")
        options["u"] = _resolve_point(space, entry["u"], f"{path}.u")
        raw = entry.get("sequences")
        _require(isinstance(raw, list) and raw, f"{path}.sequences",
                 "must be a nonempty list")
        options["sequences"] = [
            _build_sequence(s, f"{path}.sequences[{i}]")
            for i, s in enumerate(raw)
        ]
        options["limit_tol"] = (
            _number(entry["limit_tol"], f"{path}.limit_tol")
            if "limit_tol" in entry else None
        )
        options["conv_tol"] = (
            _number(entry["conv_tol"], f"{path}.conv_tol")
            if "conv_tol" in entry else None
        )
        for key in ("tail_start", "window"):
            if key in entry:
                _require(
                    isinstance(entry[key], int)
                    and not isinstance(entry[key], bool) and entry[key] >= 1,
                    f"{path}.{key}", "must be a positive integer",
                )
                options[key] = entry[key]
            else:
                options[key] = None
        if "expect" in entry:
            _require(
                entry["expect"] in (
                    "continuous_at_u", "discontinuous_at_u", "inconclusive"
                ),
                f"{path}.expect", "is not a known classification",
            )
            options["expect"] = entry["expect"]
        label = f"discontinuity[u={options['u'].label}]"
    elif name in ("zamfirescu", "fixed_circle"):
        _require(mapping is not None, path, f"{name} needs a map")
        _require("x0" in entry, f"{path}.x0", "is required")
        options["x0"] = _resolve_point(space, entry["x0"], f"{path}.x0")
        for coeff in ("a", "b"):
            if coeff in entry:
                options[coeff] = _number(entry[coeff], f"{path}.{coeff}")
            elif params is not None:
                options[coeff] = getattr(params, coeff)
            else:
                raise ConfigError(
                    f"{path}.{coeff}", "is required when no params are declared"
                )
            _require(0 <= options[coeff] < 1, f"{path}.{coeff}",
                     "must lie in [0, 1)")
        options["sample"] = _sample_option(entry, space, path)
        if name == "fixed_circle":
            options["tol_circle"] = (
                _number(entry["tol_circle"], f"{path}.tol_circle")
                if "tol_circle" in entry else None
            )
            for key in ("expect_circle_fixed", "expect_disc_fixed"):
                if key in entry:
                    _require(isinstance(entry[key], bool), f"{path}.{key}",
                             "must be a boolean")
                    options[key] = entry[key]
        label = f"{name}[x0={options['x0'].label}]"

    return CheckSpec(name, label, options)


def _build_sequence(node: object, path: str) -> SequenceSpec:
    if isinstance(node, list):
        if not node:
            raise ConfigError(path, "must not be empty")
        return SequenceSpec(
            values=[_number(v, f"{path}[{i}]") for i, v in enumerate(node)]
        )
    if isinstance(node, dict):
        if "values" in node:
            raw = node["values"]
            _require(isinstance(raw, list) and raw, f"{path}.values",
                     "must be a nonempty list")
            return SequenceSpec(
                values=[
                    _number(v, f"{path}.values[{i}]") for i, v in enumerate(raw)
                ]
            )
        formula = _formula(node.get("expr"), ("n",), f"{path}.expr")
        n_from = node.get("n_from", 1)
        n_to = node.get("n_to")
        for key, value in (("n_from", n_from), ("n_to", n_to)):
            _require(
                isinstance(value, int) and not isinstance(value, bool),
                f"{path}.{key}", "must be an integer",
            )
        _require(n_from <= n_to, f"{path}.n_to", "must be at least n_from")
        return SequenceSpec(expr=formula, n_from=n_from, n_to=n_to)
    raise ConfigError(path, "must be a list of values or an object")


def _disambiguate_labels(checks: list[CheckSpec]) -> None:
    seen: dict[str, int] = {}
    for check in checks:
        count = seen.get(check.label, 0)
        seen[check.label] = count + 1
        if count:
            check.label = f"{check.label}#{count + 1}"


def _echo(
    name: str,
    tolerance: Fraction,
    doc: dict,
    space: Space,
    mapping: Mapping | None,
    params: ContractionParams | None,
    gauge: GaugeSpec | None,
    checks: list[CheckSpec],
) -> dict:
    """JSON-ready resolved configuration (defaults applied, forms canonical)."""
    out: dict = {"name": name, "tolerance": float(tolerance)}

    snode: dict = {"kind": space.kind}
    if space.kind == "finite":
        snode["points"] = [p.label for p in space.points]
    else:
        snode["lo"] = float(space.lo or 0)
        snode["hi"] = float(space.hi or 0)
        snode["step"] = float(space.step or 0)
    snode["smetric"] = _describe_smetric(space.smetric)
    out["space"] = snode

    if mapping is not None:
        out["map"] = _describe_mapping(mapping)
    if params is not None:
        out["params"] = {
            "a": float(params.a), "b": float(params.b), "c": float(params.c)
        }
    if gauge is not None:
        gnode = {}
        if gauge.phi is not None:
            gnode["phi"] = gauge.phi.pretty()
        if gauge.delta is not None:
            gnode["delta"] = gauge.delta.pretty()
        out["gauge"] = gnode

    out["checks"] = [
        {"check": c.name, "label": c.label, **_describe_options(c.options)}
        for c in checks
    ]
    return out


def _describe_smetric(smetric: SMetric) -> dict:
    from .space import FormulaSMetric, GeneratedSMetric, TableSMetric

    if isinstance(smetric, FormulaSMetric):
        return {"kind": "formula", "expr": smetric.formula.pretty()}
    if isinstance(smetric, TableSMetric):
        return {
            "kind": "table",
            "entries": [
                [x, y, z, float(v)]
                for (x, y, z), v in sorted(smetric.entries.items())
            ],
        }
    if isinstance(smetric, GeneratedSMetric):
        metric = smetric.metric
        if isinstance(metric, FormulaMetric):
            inner: dict = {"kind": "formula", "expr": metric.formula.pretty()}
        else:
            assert isinstance(metric, TableMetric)
            inner = {
                "kind": "table",
                "entries": [
                    [x, y, float(v)]
                    for (x, y), v in sorted(metric.entries.items())
                ],
            }
        return {"kind": "generated", "metric": inner}
    raise TypeError(f"cannot describe {smetric!r}")


def _describe_mapping(mapping: Mapping) -> dict:
    if isinstance(mapping, FormulaMapping):
        return {"kind": "formula", "expr": mapping.formula.pretty()}
    assert isinstance(mapping, TableMapping)
    return {"kind": "table", "entries": dict(sorted(mapping.entries.items()))}


def _describe_options(options: dict) -> dict:
    def convert(value: object) -> object:
        if isinstance(value, Point):
            return value.label
        if isinstance(value, bool) or value is None:
            return value
        if isinstance(value, (int, Fraction, float)):
            return float(value)
        if isinstance(value, SequenceSpec):
            return value.describe()
        if isinstance(value, tuple):
            return [convert(v) for v in value]
        if isinstance(value, list):
            return [convert(v) for v in value]
        return value

    return {
        key: convert(value)
        for key, value in options.items()
        if value is not None
    }
