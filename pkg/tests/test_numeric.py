"""Exact value model: coercions and canonical decimal rendering."""

from fractions import Fraction

import pytest

from smetriclab import DEFAULT_TOL, format_decimal, to_fraction


def test_default_margin_is_exact():
    assert DEFAULT_TOL == Fraction(1, 10**9)


@pytest.mark.parametrize(
    ("value", "expected"),
    [
        (3, Fraction(3)),
        ("0.75", Fraction(3, 4)),
        ("1e-2", Fraction(1, 100)),
        (Fraction(5, 7), Fraction(5, 7)),
    ],
)
def test_to_fraction_exact_paths(value, expected):
    assert to_fraction(value) == expected


def test_to_fraction_float_is_binary_exact():
    assert to_fraction(0.5) == Fraction(1, 2)
    assert to_fraction(0.1) != Fraction(1, 10)  # the double, not the decimal


def test_to_fraction_rejects_non_numbers():
    with pytest.raises(TypeError):
        to_fraction(object())


@pytest.mark.parametrize(
    ("q", "text"),
    [
        (Fraction(0), "0"),
        (Fraction(3), "3"),
        (Fraction(-3), "-3"),
        (Fraction(1, 4), "0.25"),
        (Fraction(-1, 8), "-0.125"),
        (Fraction(301, 100), "3.01"),
        (Fraction(1, 2), "0.5"),
        (Fraction(1, 3), "1/3"),
        (Fraction(-22, 7), "-22/7"),
        (Fraction(1, 10**9), "0.000000001"),
    ],
)
def test_format_decimal(q, text):
    assert format_decimal(q) == text
