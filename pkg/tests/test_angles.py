import math
from fractions import Fraction

import pytest

from gasing_trig.backend.angles import (
    Angle,
    exact_value,
    numeric_sine_cosine,
    signed_sine_cosine,
    special_value,
)
from gasing_trig.backend.exactnum import ExactReal, sqrt_of, to_float
from gasing_trig.backend.exceptions import UndefinedValueException, UnsupportedAngleException

HALF = ExactReal.of(Fraction(1, 2))


def test_special_values():
    assert special_value("sin", 30) == HALF
    assert special_value("sin", 45) == HALF * sqrt_of(2)
    assert special_value("cos", 30) == sqrt_of(3) / 2
    assert special_value("tan", 60) == sqrt_of(3)
    assert special_value("sec", 0) == ExactReal.of(1)


def test_undefined_and_unsupported_values():
    with pytest.raises(UndefinedValueException):
        special_value("tan", 90)
    with pytest.raises(UndefinedValueException):
        special_value("cot", 0)
    with pytest.raises(UnsupportedAngleException):
        special_value("sin", 20)


@pytest.mark.parametrize("fn", ["sin", "cos", "tan", "sec", "csc", "cot"])
@pytest.mark.parametrize("degrees", [30, 45, 60, 120, 135, 150, 210, 225, 240, 300, 315, 330])
def test_exact_values_agree_with_machine_trig(fn, degrees):
    radians = math.radians(degrees)
    expected = {
        "sin": math.sin(radians),
        "cos": math.cos(radians),
        "tan": math.tan(radians),
        "sec": 1 / math.cos(radians),
        "csc": 1 / math.sin(radians),
        "cot": 1 / math.tan(radians),
    }[fn]
    assert to_float(exact_value(fn, degrees)) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize(
    "degrees, angle",
    [(30, Angle(30, 1)), (120, Angle(60, 2)), (210, Angle(30, 3)), (330, Angle(30, 4)), (-30, Angle(30, 4))],
)
def test_from_degrees(degrees, angle):
    assert Angle.from_degrees(degrees) == angle
    assert angle.degrees() == degrees % 360


def test_fourth_quadrant_thirty_degrees():
    sine, cosine = signed_sine_cosine(Angle(30, 4))
    assert cosine == sqrt_of(3) / 2
    assert sine == -HALF


def test_render():
    assert Angle("a", 2).render() == "180deg - a"
    assert Angle(30, 3).render() == "180deg + 30deg"


def test_invalid_angles():
    with pytest.raises(ValueError):
        Angle("a", 5)
    with pytest.raises(ValueError):
        Angle(100, 1)


def test_square_sum_is_one_for_every_whole_degree():
    for degrees in range(360):
        sine, cosine = numeric_sine_cosine(degrees)
        assert sine * sine + cosine * cosine == pytest.approx(1.0, abs=1e-12)
        assert sine == pytest.approx(math.sin(math.radians(degrees)), abs=1e-12)
        assert cosine == pytest.approx(math.cos(math.radians(degrees)), abs=1e-12)
