"""Orbit iteration, fixed-point sets, powers, and the limit criterion."""

from fractions import Fraction

import pytest

from smetriclab import (
    ContractionParams,
    Formula,
    FormulaMapping,
    MappingRangeError,
    Space,
    TableMapping,
    discontinuity_criterion,
    fix_set,
    identity_mapping,
    picard,
    solve_power,
)

from conftest import sum_abs_smetric


def labels(trace):
    return [p.label for p in trace.points]


@pytest.mark.parametrize(
    ("x0", "expected_labels", "expected_alphas", "steps"),
    [
        (0, ["0", "4", "4"], [8, 0], 1),
        (2, ["2", "4", "4"], [4, 0], 1),
        (8, ["8", "2", "4", "4"], [12, 4, 0], 2),
        (4, ["4", "4"], [0], 0),
    ],
)
def test_band_orbits(
    four_space, four_map, x0, expected_labels, expected_alphas, steps
):
    trace = picard(four_space, four_map, x0)
    assert labels(trace) == expected_labels
    assert trace.alphas == expected_alphas
    assert trace.outcome.status == "converged"
    assert trace.outcome.u == four_space.resolve(4)
    assert trace.outcome.steps == steps


def test_swap_orbit_reports_the_cycle():
    space = Space.finite([0, 1], sum_abs_smetric())
    swap = TableMapping({"0": "1", "1": "0"})
    trace = picard(space, swap, 0)
    assert labels(trace) == ["0", "1", "0"]
    assert trace.alphas == [2, 2]
    assert trace.outcome.status == "cycle_detected"
    assert trace.outcome.period == 2
    assert trace.outcome.u is None


def test_iteration_budget_is_respected():
    space = Space.real_grid(0, 10, 1, sum_abs_smetric())
    shift = FormulaMapping(Formula.parse("x + 1", ("x",)))
    trace = picard(space, shift, 0, max_iter=3)
    assert trace.outcome.status == "max_iter_reached"
    assert labels(trace) == ["0", "1", "2", "3"]


def test_orbit_leaving_the_grid_fails_loudly():
    space = Space.real_grid(0, 10, 1, sum_abs_smetric())
    shift = FormulaMapping(Formula.parse("x + 1", ("x",)))
    with pytest.raises(MappingRangeError, match="leaves the grid"):
        picard(space, shift, 8, max_iter=20)


def test_near_images_snap_to_the_grid():
    space = Space.real_grid(0, 1, Fraction(1, 4), sum_abs_smetric())
    halve = FormulaMapping(Formula.parse("x / 2", ("x",)))
    trace = picard(space, halve, 1)
    assert labels(trace) == ["1", "0.5", "0.25", "0", "0"]
    assert trace.alphas == [1, Fraction(1, 2), Fraction(1, 2), 0]
    assert trace.outcome.status == "converged"
    assert trace.outcome.u == space.resolve(0)
    assert trace.outcome.steps == 3


def test_snapping_cannot_invent_a_fixed_point():
    space = Space.real_grid(0, 5, 1, sum_abs_smetric())
    creep = FormulaMapping(Formula.parse("x + 0.4", ("x",)))
    trace = picard(space, creep, 0)
    # the image 0.4 snaps back onto 0, but 0 is not fixed by the raw map
    assert trace.outcome.status == "cycle_detected"
    assert trace.outcome.period == 1
    assert labels(trace) == ["0", "0"]
    assert trace.alphas == [0]


def test_fix_set_in_universe_order(four_space, four_map):
    assert [p.label for p in fix_set(four_space, four_map)] == ["4"]
    everyone = fix_set(four_space, identity_mapping())
    assert [p.label for p in everyone] == ["0", "2", "4", "8"]


def test_power_orbit_verifies_against_the_base(four_space, four_map):
    result = solve_power(four_space, four_map, 2, 8)
    assert labels(result.trace) == ["8", "4", "4"]
    assert result.trace.outcome.steps == 1
    assert result.fixed_by_base is True


def test_power_fix_need_not_be_a_base_fix():
    space = Space.finite([0, 1], sum_abs_smetric())
    swap = TableMapping({"0": "1", "1": "0"})
    result = solve_power(space, swap, 2, 0)
    assert result.trace.outcome.status == "converged"
    assert result.trace.outcome.steps == 0
    assert result.fixed_by_base is False


@pytest.fixture
def drop_space():
    return Space.real_grid(0, 2, Fraction(1, 100), sum_abs_smetric())


@pytest.fixture
def drop_map():
    return FormulaMapping(
        Formula.parse("piecewise(x <= 1 : 1, else : 0)", ("x",))
    )


@pytest.fixture
def drop_params():
    return ContractionParams(0, Fraction(1, 2), 0)


def approach(sign):
    return [1 + sign * Fraction(1, n) for n in range(1, 1001)]


def test_limit_criterion_flags_the_jump(drop_space, drop_map, drop_params):
    verdict = discontinuity_criterion(
        drop_space,
        drop_map,
        drop_params,
        1,
        [approach(+1), approach(-1)],
        limit_tol=Fraction(1, 100),
        conv_tol=Fraction(1, 50),
        tail_start=200,
    )
    above, below = verdict.per_sequence
    assert (above.window, below.window) == (250, 250)
    assert above.conclusive and below.conclusive
    assert abs(above.estimate - Fraction(1, 2)) < Fraction(1, 100)
    assert below.estimate < Fraction(1, 100)
    assert verdict.overall_limsup == above.estimate
    assert verdict.classification == "discontinuous_at_u"
    assert verdict.note == ""


def test_limit_criterion_requires_a_fixed_center(
    drop_space, drop_map, drop_params
):
    with pytest.raises(ValueError, match="not a fixed point"):
        discontinuity_criterion(
            drop_space, drop_map, drop_params, Fraction(3, 2), [approach(-1)]
        )


def test_limit_criterion_rejects_stray_sequences(
    drop_space, drop_map, drop_params
):
    with pytest.raises(ValueError, match="does not converge"):
        discontinuity_criterion(
            drop_space,
            drop_map,
            drop_params,
            1,
            [[0] * 10],
            limit_tol=Fraction(1, 100),
        )
    with pytest.raises(ValueError, match="is empty"):
        discontinuity_criterion(
            drop_space, drop_map, drop_params, 1, [[]]
        )


def test_limit_criterion_clears_the_identity(drop_space, drop_params):
    verdict = discontinuity_criterion(
        drop_space,
        identity_mapping(),
        drop_params,
        1,
        [approach(+1)],
        limit_tol=Fraction(1, 100),
        conv_tol=Fraction(1, 50),
        tail_start=200,
    )
    assert verdict.classification == "continuous_at_u"
    assert verdict.overall_limsup == 0


def test_finite_universe_never_claims_continuity(
    four_space, four_map, four_params
):
    trivial = discontinuity_criterion(
        four_space, four_map, four_params, 4, [[4, 4, 4]]
    )
    assert trivial.classification == "inconclusive"
    assert trivial.note == "no nontrivial approach sequences"
    assert trivial.overall_limsup == 0

    coarse = discontinuity_criterion(
        four_space,
        four_map,
        four_params,
        4,
        [[2, 2, 2]],
        limit_tol=10,
        conv_tol=4,
    )
    assert coarse.classification == "inconclusive"
    assert coarse.note == "continuity not claimed on a finite universe"
    assert coarse.overall_limsup == 3


def test_unsettled_window_is_inconclusive(drop_space, drop_map, drop_params):
    wobble = [Fraction(3, 2), Fraction(1, 2)] * 50
    verdict = discontinuity_criterion(
        drop_space,
        drop_map,
        drop_params,
        1,
        [wobble],
        limit_tol=Fraction(1, 100),
        conv_tol=1,
        window=20,
    )
    (only,) = verdict.per_sequence
    assert only.conclusive is False
    assert only.estimate == Fraction(1, 2)
    assert verdict.overall_limsup is None
    assert verdict.classification == "inconclusive"
