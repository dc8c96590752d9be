from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, get_args

from gasing_trig.backend.exactnum import ONE, ZERO, ExactReal, sqrt_of
from gasing_trig.backend.exceptions import (
    UndefinedValueException,
    UnsupportedAngleException,
)

TrigName = Literal["sin", "cos", "tan", "sec", "csc", "cot"]
TRIG_NAMES: tuple[str, ...] = get_args(TrigName)

SPECIAL_DEGREES = (0, 30, 45, 60, 90)
# (cos sign, sin sign) of the unit vector in each quadrant
QUADRANT_SIGNS = {1: (1, 1), 2: (-1, 1), 3: (-1, -1), 4: (1, -1)}


@dataclass(frozen=True)
class Angle:
    """An acute reference (symbol name or whole degrees) placed in a quadrant."""

    reference: str | int
    quadrant: int = 1

    def __post_init__(self) -> None:
        if self.quadrant not in QUADRANT_SIGNS:
            raise ValueError(f"quadrant must be 1..4, got {self.quadrant}")
        if isinstance(self.reference, int) and not 0 <= self.reference <= 90:
            raise ValueError(f"reference angle must lie in [0, 90], got {self.reference}")

    @classmethod
    def from_degrees(cls, degrees: int) -> Angle:
        d = degrees % 360
        if d <= 90:
            return cls(d, 1)
        if d <= 180:
            return cls(180 - d, 2)
        if d <= 270:
            return cls(d - 180, 3)
        return cls(360 - d, 4)

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.reference, str)

    @property
    def is_special(self) -> bool:
        return not self.is_symbolic and self.reference in SPECIAL_DEGREES

    @property
    def signs(self) -> tuple[int, int]:
        return QUADRANT_SIGNS[self.quadrant]

    def degrees(self) -> int:
        if not isinstance(self.reference, int):
            raise ValueError(f"angle {self.render()} has no fixed degree value")
        ref = self.reference
        return {1: ref, 2: 180 - ref, 3: 180 + ref, 4: 360 - ref}[self.quadrant]

    def reference_radians(self, angles: dict[str, float] | None = None) -> float:
        if isinstance(self.reference, str):
            return (angles or {})[self.reference]
        return math.radians(self.reference)

    def render(self) -> str:
        ref = self.reference if isinstance(self.reference, str) else f"{self.reference}deg"
        return {
            1: ref,
            2: f"180deg - {ref}",
            3: f"180deg + {ref}",
            4: f"360deg - {ref}",
        }[self.quadrant]


def _acute_sides(degrees: int) -> tuple[ExactReal, ExactReal]:
    """(opposite, adjacent) of the unit-hypotenuse triangle at a special angle."""
    if degrees == 0:
        return ZERO, ONE
    if degrees == 90:
        return ONE, ZERO
    if degrees == 45:
        # isosceles: both legs squared sum to 1
        leg = sqrt_of(Fraction(1, 2))
        return leg, leg
    # half of the equilateral triangle with side 1
    short, long = ExactReal.of(Fraction(1, 2)), sqrt_of(Fraction(3, 4))
    if degrees == 30:
        return short, long
    if degrees == 60:
        return long, short
    raise UnsupportedAngleException(
        f"{degrees}deg has no exact value; use one of {', '.join(map(str, SPECIAL_DEGREES))}"
    )


def _from_sine_cosine(fn: str, sine: ExactReal, cosine: ExactReal, where: str) -> ExactReal:
    if fn == "sin":
        return sine
    if fn == "cos":
        return cosine
    numerator, denominator = {
        "tan": (sine, cosine),
        "sec": (ONE, cosine),
        "csc": (ONE, sine),
        "cot": (cosine, sine),
    }[fn]
    if denominator.is_zero:
        raise UndefinedValueException(f"{fn}({where}) is undefined")
    return numerator / denominator


def special_value(fn: TrigName, degrees: int) -> ExactReal:
    if fn not in TRIG_NAMES:
        raise ValueError(f"unknown trigonometric function {fn!r}")
    if degrees not in SPECIAL_DEGREES:
        raise UnsupportedAngleException(
            f"{degrees}deg has no exact value; use one of {', '.join(map(str, SPECIAL_DEGREES))}"
        )
    sine, cosine = _acute_sides(degrees)
    return _from_sine_cosine(fn, sine, cosine, f"{degrees}deg")


def signed_sine_cosine(angle: Angle) -> tuple[ExactReal, ExactReal]:
    if not angle.is_special:
        raise UnsupportedAngleException(f"{angle.render()} has no exact value")
    assert isinstance(angle.reference, int)
    sine, cosine = _acute_sides(angle.reference)
    cos_sign, sin_sign = angle.signs
    return sine * sin_sign, cosine * cos_sign


def exact_value(fn: TrigName, degrees: int) -> ExactReal:
    """Exact value at any angle whose reference angle is special."""
    angle = Angle.from_degrees(degrees)
    sine, cosine = signed_sine_cosine(angle)
    return _from_sine_cosine(fn, sine, cosine, f"{degrees}deg")


def numeric_sine_cosine(degrees: float) -> tuple[float, float]:
    """Signed sine and cosine from the reference angle by unit-vector projection."""
    d = degrees % 360
    if d <= 90:
        angle, quadrant = d, 1
    elif d <= 180:
        angle, quadrant = 180 - d, 2
    elif d <= 270:
        angle, quadrant = d - 180, 3
    else:
        angle, quadrant = 360 - d, 4
    cos_sign, sin_sign = QUADRANT_SIGNS[quadrant]
    radians = math.radians(angle)
    return sin_sign * math.sin(radians), cos_sign * math.cos(radians)
