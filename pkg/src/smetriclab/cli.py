"""Command line front end.

Subcommands select a family of checks from the experiment file:

    axioms   distance-structure checks (axioms, symmetry, triangle, generated)
    verify   contraction checks (xi, phi_gauge, condition_i, condition_ii)
    solve    iteration checks (solve, solve_power, fix_set, discontinuity)
    circle   fixed-circle checks (zamfirescu, fixed_circle)
    run      everything, in declared order

When the file declares no check of the requested family, a sensible
default is synthesized where one exists (axioms and symmetry sweeps, the
contraction conditions, a fixed-point scan); the circle family has no
default because it needs a declared center.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 the
configuration was invalid or evaluation aborted.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

from .experiment import (
    CHECK_FAMILIES,
    CheckSpec,
    ConfigError,
    ExperimentSpec,
    load_experiment,
)
from .runner import RunReport, render_text, run

_SAMPLE_CAP = 24  # synthesized sweeps subsample larger universes


def _tolerance_arg(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smetriclab",
        description="Verification toolkit for fixed points on S-metric spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, text in (
        ("axioms", "check the distance structure"),
        ("verify", "check the contraction conditions"),
        ("solve", "iterate the map and scan for fixed points"),
        ("circle", "check fixed circles and discs"),
        ("run", "run every declared check"),
    ):
        p = sub.add_parser(command, help=text)
        p.add_argument("--input", required=True, type=Path,
                       help="experiment JSON file")
        p.add_argument("--output", type=Path, default=None,
                       help="write the report here instead of stdout")
        p.add_argument("--tolerance", type=_tolerance_arg, default=None,
                       help="override the experiment tolerance")
        p.add_argument("--format", choices=("json", "text"), default="json",
                       help="report format (default json)")
    return parser


def _grid_subsample(spec: ExperimentSpec) -> list | None:
    points = spec.space.points
    if len(points) <= _SAMPLE_CAP:
        return None
    stride = max(1, (len(points) - 1) // (_SAMPLE_CAP - 1))
    sample = list(points[::stride])
    if sample[-1] != points[-1]:
        sample.append(points[-1])
    return sample


def _synthesize(spec: ExperimentSpec, command: str) -> list[CheckSpec]:
    if command == "axioms":
        sample = _grid_subsample(spec)
        return [
            CheckSpec("axioms", "axioms", {"sample": sample}),
            CheckSpec("symmetry", "symmetry", {"sample": sample}),
        ]
    if command == "verify":
        if spec.mapping is None or spec.params is None:
            raise ConfigError(
                "checks", "verify needs a map and params in the experiment"
            )
        sample = _grid_subsample(spec)
        pairs = (
            list(itertools.product(sample, repeat=2))
            if sample is not None else None
        )
        checks = [CheckSpec("xi", "xi", {})]
        has_phi = spec.gauge is not None and spec.gauge.phi is not None
        mode = "full" if has_phi else "strict"
        checks.append(
            CheckSpec(
                "condition_i", f"condition_i[{mode}]",
                {"mode": mode, "pairs": pairs, "sample": None},
            )
        )
        if spec.gauge is not None and spec.gauge.delta is not None:
            checks.append(
                CheckSpec(
                    "condition_ii", "condition_ii",
                    {"eps": None, "pairs": pairs, "sample": None},
                )
            )
        return checks
    if command == "solve":
        if spec.mapping is None:
            raise ConfigError("checks", "solve needs a map in the experiment")
        return [CheckSpec("fix_set", "fix_set", {})]
    raise ConfigError(
        "checks",
        "no circle checks are declared; add a zamfirescu or fixed_circle "
        "check naming its center",
    )


def _execute(args: argparse.Namespace) -> RunReport:
    spec = load_experiment(args.input)
    if args.command == "run":
        return run(spec, tolerance=args.tolerance)
    family = CHECK_FAMILIES[args.command]
    if not any(c.name in family for c in spec.checks):
        spec.checks = _synthesize(spec, args.command)
        return run(spec, tolerance=args.tolerance)
    return run(spec, only=family, tolerance=args.tolerance)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        outcome = _execute(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    if args.format == "json":
        text = json.dumps(outcome.report, indent=2) + "\n"
    else:
        text = render_text(outcome.report)
    if args.output is not None:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
