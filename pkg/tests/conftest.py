"""Shared instance builders for the test suite.

Two instances recur everywhere: a four-point set whose map sends the low
band to 4 and the high point to 2, and a decimal grid on [-10, 10] whose
map shifts everything outside [-3, 3] by one.  Both use the
sum-of-absolute-differences S-metric.
"""

import subprocess
import sys
from fractions import Fraction

import pytest

from smetriclab import (
    ContractionParams,
    Formula,
    FormulaMapping,
    FormulaSMetric,
    GaugeSpec,
    Space,
    TableMetric,
)

SUM_ABS = "abs(x - z) + abs(y - z)"


def sum_abs_smetric():
    return FormulaSMetric(Formula.parse(SUM_ABS, ("x", "y", "z")))


def closure_metric(rng, labels):
    """Random table metric: symmetric positive weights run through a
    shortest-path closure, which forces the triangle inequality."""
    n = len(labels)
    w = {(i, i): Fraction(0) for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            w[(i, j)] = w[(j, i)] = Fraction(
                rng.randint(1, 40), rng.choice((1, 2, 4, 5))
            )
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = w[(i, k)] + w[(k, j)]
                if via < w[(i, j)]:
                    w[(i, j)] = via
    return TableMetric(
        {(labels[i], labels[j]): v for (i, j), v in w.items() if i != j}
    )


def run_cli(*args):
    """Invoke the installed CLI in a subprocess and capture everything."""
    return subprocess.run(
        [sys.executable, "-m", "smetriclab", *args],
        capture_output=True,
        text=True,
    )


@pytest.fixture
def four_space():
    return Space.finite([0, 2, 4, 8], sum_abs_smetric())


@pytest.fixture
def four_map():
    return FormulaMapping(
        Formula.parse("piecewise(x <= 4 : 4, else : 2)", ("x",))
    )


@pytest.fixture
def four_params():
    return ContractionParams(Fraction(3, 4), 0, 0)


@pytest.fixture
def loose_gauge():
    """phi capped at 5 past t = 6; the delta window wrongly reaches M = 6
    for eps just above 3."""
    return GaugeSpec(
        phi=Formula.parse("piecewise(t >= 6 : 5, else : t / 2)", ("t",)),
        delta=Formula.parse(
            "piecewise(eps >= 3 : 6, else : 6 - eps)", ("eps",)
        ),
    )


@pytest.fixture
def tight_gauge():
    """Same phi; the delta window stops short of M = 6 below eps = 4."""
    return GaugeSpec(
        phi=Formula.parse("piecewise(t >= 6 : 5, else : t / 2)", ("t",)),
        delta=Formula.parse(
            "piecewise(eps < 4 : 6 - eps, else : 6)", ("eps",)
        ),
    )


@pytest.fixture
def line_space():
    return Space.real_grid(-10, 10, Fraction(1, 100), sum_abs_smetric())


@pytest.fixture
def tail_shift_map():
    """Identity on [-3, 3], shift by one outside it."""
    return FormulaMapping(
        Formula.parse(
            "piecewise(x < -3 : x + 1, x > 3 : x + 1, else : x)", ("x",)
        )
    )
