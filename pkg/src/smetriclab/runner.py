"""Check execution and report assembly.

``run`` executes the declared checks in order.  A failing check never
stops the run; only an evaluation or configuration error does, in which
case the partial report is kept and marked aborted.  Reports are plain
dicts ready for ``json.dumps`` and are deterministic except for the
top-level ``timing`` block: running the same experiment twice must give
byte-identical output once that block is dropped.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

from .circles import check_fixed_circle, verify_zamfirescu_x0
from .contraction import (
    GaugeDomainError,
    condition_ii_probe,
    verify_condition_i,
    verify_phi_gauge,
    xi,
)
from .experiment import CheckSpec, ConfigError, ExperimentSpec
from .expr import ExprError
from .numeric import to_fraction
from .solver import discontinuity_criterion, fix_set, picard, solve_power
from .space import (
    Point,
    SpaceError,
    UnsupportedSpaceError,
    check_axioms,
    check_symmetry,
    check_triangle,
    generating_metric_check,
)
from .version import __version__

_EXIT_BY_STATUS = {"pass": 0, "fail": 1, "aborted": 2}


@dataclass
class RunReport:
    report: dict
    status: str  # "pass" | "fail" | "aborted"

    @property
    def exit_code(self) -> int:
        return _EXIT_BY_STATUS[self.status]


def run(
    spec: ExperimentSpec,
    only: tuple[str, ...] | None = None,
    tolerance: object | None = None,
) -> RunReport:
    """Execute the experiment's checks, optionally filtered by name."""
    tol = spec.tolerance if tolerance is None else to_fraction(tolerance)
    selected = [c for c in spec.checks if only is None or c.name in only]

    started = time.perf_counter()
    records = []
    counts = {"pass": 0, "fail": 0, "unsupported": 0, "aborted": 0}
    aborted = False
    for check in selected:
        try:
            verdict, details = _dispatch(spec, check, tol)
        except UnsupportedSpaceError as e:
            verdict, details = "unsupported", {"reason": str(e)}
        except (ExprError, SpaceError, GaugeDomainError, ConfigError,
                ValueError, ZeroDivisionError, OverflowError) as e:
            records.append(
                {
                    "check": check.name,
                    "label": check.label,
                    "verdict": "aborted",
                    "error": f"{type(e).__name__}: {e}",
                }
            )
            counts["aborted"] += 1
            aborted = True
            break
        records.append(
            {"check": check.name, "label": check.label, "verdict": verdict,
             **details}
        )
        counts[verdict] += 1
    elapsed = time.perf_counter() - started

    if aborted:
        status = "aborted"
    elif counts["fail"] or counts["unsupported"]:
        status = "fail"
    else:
        status = "pass"

    report = {
        "tool": {"name": "smetriclab", "version": __version__},
        "experiment": {"name": spec.name, "hash": spec.digest},
        "tolerance": float(tol),
        "config": spec.echo,
        "checks": records,
        "summary": {
            "total": len(selected),
            "passed": counts["pass"],
            "failed": counts["fail"],
            "unsupported": counts["unsupported"],
            "aborted": counts["aborted"],
            "status": status,
        },
        "timing": {"elapsed_seconds": elapsed},
    }
    return RunReport(report, status)


def _dispatch(
    spec: ExperimentSpec, check: CheckSpec, tol: Fraction
) -> tuple[str, dict]:
    handler = _HANDLERS[check.name]
    return handler(spec, check.options, tol)


def _labels(points: list[Point]) -> list[str]:
    return [p.label for p in points]


def _run_axioms(spec, options, tol):
    report = check_axioms(spec.space, options.get("sample"), tol)
    details = {
        "s1_violations": [
            {"triple": _labels(list(t)), "value": float(v)}
            for t, v in report.s1_violations
        ],
        "s2_violations": [
            {"quadruple": _labels(list(q)), "lhs": float(l), "rhs": float(r)}
            for q, l, r in report.s2_violations
        ],
        "triples_checked": report.triples_checked,
        "quadruples_checked": report.quadruples_checked,
    }
    return ("pass" if report.passed else "fail"), details


def _run_symmetry(spec, options, tol):
    bad = check_symmetry(spec.space, options.get("sample"), tol)
    details = {
        "violations": [
            {
                "x": x.label, "y": y.label,
                "forward": float(f), "backward": float(b),
            }
            for (x, y), f, b in bad
        ]
    }
    return ("pass" if not bad else "fail"), details


def _run_triangle(spec, options, tol):
    report = check_triangle(spec.space, options.get("sample"), tol)
    details = {
        "violations": [
            {"triple": _labels(list(t)), "lhs": float(l), "rhs": float(r)}
            for t, l, r in report.violations
        ],
        "triples_checked": report.triples_checked,
    }
    return ("pass" if report.passed else "fail"), details


def _run_generated(spec, options, tol):
    report = generating_metric_check(spec.space, options.get("sample"), tol)
    witness = None
    if report.witness is not None:
        triple, actual, expected = report.witness
        witness = {
            "triple": _labels(list(triple)),
            "s_value": float(actual),
            "candidate_value": float(expected),
        }
    details = {
        "generated": report.generated,
        "witness": witness,
        "triples_checked": report.triples_checked,
    }
    expect = options.get("expect")
    if expect is None:
        return "pass", details
    details["expect"] = expect
    return ("pass" if report.generated == expect else "fail"), details


def _run_xi(spec, options, tol):
    value = xi(spec.params)
    details = {
        "xi": float(value),
        "a": float(spec.params.a),
        "b": float(spec.params.b),
        "c": float(spec.params.c),
    }
    return ("pass" if value < 1 else "fail"), details


def _run_phi_gauge(spec, options, tol):
    bad = verify_phi_gauge(spec.gauge, options["t_values"], tol)
    details = {
        "t_values": [float(t) for t in options["t_values"]],
        "violations": [
            {"t": float(t), "phi": float(p)} for t, p in bad
        ],
    }
    return ("pass" if not bad else "fail"), details


def _explicit_pairs(spec, options):
    pairs = options.get("pairs")
    if pairs is not None:
        return pairs
    sample = options.get("sample")
    if sample is not None:
        return list(itertools.product(sample, repeat=2))
    return None


def _run_condition_i(spec, options, tol):
    pairs = _explicit_pairs(spec, options)
    violations = verify_condition_i(
        spec.space, spec.mapping, spec.params, spec.gauge,
        pairs, options["mode"], tol,
    )
    checked = len(pairs) if pairs is not None else len(spec.space) ** 2
    details = {
        "mode": options["mode"],
        "pairs_checked": checked,
        "violations": [
            {
                "x": v.x.label, "y": v.y.label,
                "m": float(v.m_value), "s_t": float(v.s_t_value),
            }
            for v in violations
        ],
    }
    return ("pass" if not violations else "fail"), details


def _run_condition_ii(spec, options, tol):
    pairs = _explicit_pairs(spec, options)
    grid, violations = condition_ii_probe(
        spec.space, spec.mapping, spec.params, spec.gauge,
        pairs, options.get("eps"), tol,
    )
    checked = len(pairs) if pairs is not None else len(spec.space) ** 2
    details = {
        "pairs_checked": checked,
        "eps_grid": [float(e) for e in grid],
        "violations": [
            {
                "x": v.x.label, "y": v.y.label, "eps": float(v.eps),
                "m": float(v.m_value), "s_t": float(v.s_t_value),
            }
            for v in violations
        ],
    }
    return ("pass" if not violations else "fail"), details


def _trace_details(trace):
    outcome = {
        "status": trace.outcome.status,
        "u": trace.outcome.u.label if trace.outcome.u else None,
        "steps": trace.outcome.steps,
        "period": trace.outcome.period,
    }
    return {
        "points": _labels(trace.points),
        "alphas": [float(a) for a in trace.alphas],
        "outcome": outcome,
    }


def _run_solve(spec, options, tol):
    local = tol if options["tol"] is None else options["tol"]
    trace = picard(
        spec.space, spec.mapping, options["x0"], options["max_iter"], local
    )
    details = {"x0": options["x0"].label, **_trace_details(trace)}
    return (
        "pass" if trace.outcome.status == "converged" else "fail"
    ), details


def _run_solve_power(spec, options, tol):
    local = tol if options["tol"] is None else options["tol"]
    result = solve_power(
        spec.space, spec.mapping, options["m"], options["x0"],
        options["max_iter"], local,
    )
    details = {
        "x0": options["x0"].label,
        "m": options["m"],
        **_trace_details(result.trace),
        "fixed_by_base": result.fixed_by_base,
    }
    ok = (
        result.trace.outcome.status == "converged"
        and result.fixed_by_base is True
    )
    return ("pass" if ok else "fail"), details


def _run_fix_set(spec, options, tol):
    fixed = fix_set(spec.space, spec.mapping)
    details = {"fixed": _labels(fixed)}
    expect = options.get("expect")
    if expect is None:
        return "pass", details
    details["expect"] = _labels(expect)
    ok = {p.label for p in fixed} == {p.label for p in expect}
    return ("pass" if ok else "fail"), details


def _run_discontinuity(spec, options, tol):
    sequences = [s.expand() for s in options["sequences"]]
    limit_tol = (
        tol if options["limit_tol"] is None else options["limit_tol"]
    )
    verdict = discontinuity_criterion(
        spec.space, spec.mapping, spec.params, options["u"], sequences,
        limit_tol=limit_tol,
        conv_tol=options["conv_tol"],
        tail_start=options["tail_start"],
        window=options["window"],
        tol=tol,
    )
    details = {
        "u": options["u"].label,
        "classification": verdict.classification,
        "note": verdict.note,
        "overall_limsup": (
            float(verdict.overall_limsup)
            if verdict.overall_limsup is not None else None
        ),
        "sequences": [
            {
                "index": sl.index,
                "estimate": float(sl.estimate),
                "spread": float(sl.spread),
                "conclusive": sl.conclusive,
                "window": sl.window,
            }
            for sl in verdict.per_sequence
        ],
    }
    expect = options.get("expect")
    if expect is None:
        return "pass", details
    details["expect"] = expect
    return ("pass" if verdict.classification == expect else "fail"), details


def _run_zamfirescu(spec, options, tol):
    violations = verify_zamfirescu_x0(
        spec.space, spec.mapping, options["a"], options["b"],
        options["x0"], options.get("sample"), tol,
    )
    sample = options.get("sample")
    details = {
        "x0": options["x0"].label,
        "a": float(options["a"]),
        "b": float(options["b"]),
        "points_checked": len(sample) if sample else len(spec.space),
        "violations": [
            {"x": p.label, "lhs": float(l), "rhs": float(r)}
            for p, l, r in violations
        ],
    }
    return ("pass" if not violations else "fail"), details


def _run_fixed_circle(spec, options, tol):
    report = check_fixed_circle(
        spec.space, spec.mapping, options["a"], options["b"],
        options["x0"], options.get("sample"), tol, options.get("tol_circle"),
    )
    details = {
        "x0": options["x0"].label,
        "a": float(options["a"]),
        "b": float(options["b"]),
        "rho": float(report.rho),
        "tol_circle": float(report.tol_circle),
        "circle": _labels(report.circle_points),
        "disc": _labels(report.disc_points),
        "zamfirescu_violations": [
            {"x": p.label, "lhs": float(l), "rhs": float(r)}
            for p, l, r in report.zamfirescu_violations
        ],
        "hypothesis_violations": [
            {"x": p.label, "s_t_x0": float(v)}
            for p, v in report.hypothesis_violations
        ],
        "hypotheses_hold": report.hypotheses_hold,
        "circle_fixed": report.fixed_verdict.circle_fixed,
        "disc_fixed": report.fixed_verdict.disc_fixed,
        "nonfixed_witnesses": _labels(report.fixed_verdict.nonfixed_witnesses),
        "inconsistent": report.inconsistent,
    }
    ok = not report.inconsistent
    for key, actual in (
        ("expect_circle_fixed", report.fixed_verdict.circle_fixed),
        ("expect_disc_fixed", report.fixed_verdict.disc_fixed),
    ):
        if key in options:
            details[key] = options[key]
            ok = ok and options[key] == actual
    return ("pass" if ok else "fail"), details


_HANDLERS = {
    "axioms": _run_axioms,
    "symmetry": _run_symmetry,
    "triangle": _run_triangle,
    "generated": _run_generated,
    "xi": _run_xi,
    "phi_gauge": _run_phi_gauge,
    "condition_i": _run_condition_i,
    "condition_ii": _run_condition_ii,
    "solve": _run_solve,
    "solve_power": _run_solve_power,
    "fix_set": _run_fix_set,
    "discontinuity": _run_discontinuity,
    "zamfirescu": _run_zamfirescu,
    "fixed_circle": _run_fixed_circle,
}


def render_text(report: dict) -> str:
    """Human-oriented plain text rendering of a report."""
    lines = [
        f"experiment {report['experiment']['name']} "
        f"(hash {report['experiment']['hash'][:12]})"
    ]
    for record in report["checks"]:
        verdict = record["verdict"]
        tag = verdict.upper()
        summary = _summarize(record)
        suffix = f": {summary}" if summary else ""
        lines.append(f"[{tag}] {record['label']}{suffix}")
    s = report["summary"]
    lines.append(
        f"status: {s['status']} "
        f"({s['passed']} passed, {s['failed']} failed, "
        f"{s['unsupported']} unsupported, {s['aborted']} aborted)"
    )
    return "\n".join(lines) + "\n"


def _summarize(record: dict) -> str:
    if record["verdict"] == "aborted":
        return record.get("error", "")
    if record["verdict"] == "unsupported":
        return record.get("reason", "")
    name = record["check"]
    if name == "axioms":
        n = len(record["s1_violations"]) + len(record["s2_violations"])
        return f"{n} violations"
    if name in ("symmetry", "triangle", "phi_gauge", "condition_i",
                "condition_ii", "zamfirescu"):
        n = len(record["violations"])
        text = f"{n} violations"
        if n and name == "condition_ii":
            first = record["violations"][0]
            text += (
                f"; first pair ({first['x']}, {first['y']}) "
                f"at eps {first['eps']}"
            )
        return text
    if name == "generated":
        return "generated" if record["generated"] else "not generated"
    if name == "xi":
        return f"xi = {record['xi']}"
    if name in ("solve", "solve_power"):
        outcome = record["outcome"]
        if outcome["status"] == "converged":
            return f"converged to {outcome['u']} in {outcome['steps']} steps"
        return outcome["status"]
    if name == "fix_set":
        return f"{len(record['fixed'])} fixed points"
    if name == "discontinuity":
        note = f" ({record['note']})" if record.get("note") else ""
        return record["classification"] + note
    if name == "fixed_circle":
        return (
            f"rho = {record['rho']}, "
            f"circle {len(record['circle'])} points, "
            f"disc {len(record['disc'])} points"
        )
    return ""
