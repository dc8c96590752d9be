"""
Exact real numbers of the form q_1*sqrt(m_1) + ... + q_k*sqrt(m_k).

Coefficients are rationals, radicands are squarefree positive integers and
radicand 1 carries the rational part. Every value has exactly one
representation, so structural equality is numeric equality.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterable, Literal

from sympy import factorint

from gasing_trig.backend.exceptions import (
    DivisionByZeroException,
    DomainException,
    PrecisionException,
)

logger = logging.getLogger(__name__)

Rational = Fraction
Operation = Literal["add", "sub", "mul", "div"]

# sign decisions refine from START_BITS up to PRECISION_CAP bits
START_BITS = 64
PRECISION_CAP = 256


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, r) with n = s**2 * r and r squarefree."""
    if n <= 0:
        raise DomainException(f"expected a positive integer, got {n}")
    square, rest = 1, 1
    for prime, exponent in factorint(n).items():
        square *= prime ** (exponent // 2)
        if exponent % 2:
            rest *= prime
    return square, rest


@lru_cache(maxsize=4096)
def _primes_of(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(n)))


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@total_ordering
@dataclass(frozen=True, eq=False)
class ExactReal:
    terms: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[int, Fraction | int]]) -> ExactReal:
        """Build the canonical value of sum(coefficient * sqrt(radicand))."""
        collected: dict[int, Fraction] = {}
        for radicand, coefficient in pairs:
            if radicand < 0:
                raise DomainException(f"square root of negative radicand {radicand}")
            if radicand == 0 or coefficient == 0:
                continue
            square, rest = squarefree_split(radicand)
            collected[rest] = collected.get(rest, Fraction(0)) + Fraction(coefficient) * square
        return cls(tuple(sorted((r, q) for r, q in collected.items() if q != 0)))

    @classmethod
    def of(cls, value: ExactReal | Fraction | int | str) -> ExactReal:
        if isinstance(value, ExactReal):
            return value
        return cls.from_terms([(1, Fraction(value))])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_rational(self) -> bool:
        return all(radicand == 1 for radicand, _ in self.terms)

    @property
    def radicands(self) -> tuple[int, ...]:
        return tuple(radicand for radicand, _ in self.terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainException(f"{self.render()} is not rational")
        return self.terms[0][1] if self.terms else Fraction(0)

    def __add__(self, other: object) -> ExactReal:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return ExactReal.from_terms(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> ExactReal:
        return ExactReal(tuple((r, -q) for r, q in self.terms))

    def __sub__(self, other: object) -> ExactReal:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> ExactReal:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> ExactReal:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return ExactReal.from_terms(
            (m * n, p * q) for m, p in self.terms for n, q in other.terms
        )

    __rmul__ = __mul__

    def inverse(self) -> ExactReal:
        """Rationalize 1/self by conjugating away one prime at a time."""
        if self.is_zero:
            raise DivisionByZeroException("division by zero")
        numerator, denominator = ONE, self
        while not denominator.is_rational:
            prime = max(p for r in denominator.radicands for p in _primes_of(r))
            conjugate = ExactReal(
                tuple((r, -q if r % prime == 0 else q) for r, q in denominator.terms)
            )
            numerator = numerator * conjugate
            denominator = denominator * conjugate
        return numerator * ExactReal.of(1 / denominator.as_fraction())

    def __truediv__(self, other: object) -> ExactReal:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> ExactReal:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> ExactReal:
        if exponent < 0:
            return self.inverse() ** -exponent
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        # equal to its Fraction when rational, so hash like one
        if self.is_rational:
            return hash(self.as_fraction())
        return hash(self.terms)

    def __lt__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return compare(self, other) is Ordering.LESS

    def __bool__(self) -> bool:
        return not self.is_zero

    def __float__(self) -> float:
        return to_float(self)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for index, (radicand, coefficient) in enumerate(self.terms):
            text = _render_term(radicand, abs(coefficient))
            if index == 0:
                parts.append(text if coefficient > 0 else f"-{text}")
            else:
                parts.append(f" + {text}" if coefficient > 0 else f" - {text}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"ExactReal({self.render()!r})"


def _render_term(radicand: int, coefficient: Fraction) -> str:
    num, den = coefficient.numerator, coefficient.denominator
    if radicand == 1:
        return str(num) if den == 1 else f"{num}/{den}"
    body = f"sqrt({radicand})" if num == 1 else f"{num}*sqrt({radicand})"
    return body if den == 1 else f"{body}/{den}"


def _coerce(value: object) -> ExactReal | None:
    if isinstance(value, ExactReal):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return ExactReal.of(value)
    return None


ZERO = ExactReal()
ONE = ExactReal.of(1)


def sqrt_of(n: Fraction | int) -> ExactReal:
    n = Fraction(n)
    if n < 0:
        raise DomainException(f"square root of negative number {n}")
    if n == 0:
        return ZERO
    square, rest = squarefree_split(n.numerator * n.denominator)
    return ExactReal.from_terms([(rest, Fraction(square, n.denominator))])


def _rational_sqrt(value: Fraction) -> Fraction | None:
    num_root = math.isqrt(value.numerator)
    den_root = math.isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        return Fraction(num_root, den_root)
    return None


def sqrt_exact(value: ExactReal) -> ExactReal | None:
    """Square root inside the number domain, or None when it needs a nested radical."""
    if value.is_rational:
        return sqrt_of(value.as_fraction())
    if sign(value) < 0:
        raise DomainException(f"square root of negative number {value.render()}")
    if len(value.terms) == 2 and value.terms[0][0] == 1:
        rational_part = value.terms[0][1]
        radicand, coefficient = value.terms[1]
        discriminant = rational_part**2 - coefficient**2 * radicand
        root = _rational_sqrt(discriminant) if discriminant >= 0 else None
        if root is not None:
            u, v = (rational_part + root) / 2, (rational_part - root) / 2
            if u >= 0 and v >= 0:
                candidate = sqrt_of(u) + (sqrt_of(v) if coefficient > 0 else -sqrt_of(v))
                if candidate * candidate == value:
                    return candidate
    logger.debug("no flat square root for %s", value.render())
    return None


def arith(a: ExactReal, b: ExactReal, op: Operation) -> ExactReal:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def enclose(value: ExactReal, bits: int) -> tuple[Fraction, Fraction]:
    """Rational bounds lo <= value <= hi from integer square roots at 2**-bits."""
    scale = 1 << bits
    low, high = Fraction(0), Fraction(0)
    for radicand, coefficient in value.terms:
        floor_root = math.isqrt(radicand * scale * scale)
        ceil_root = floor_root if floor_root * floor_root == radicand * scale * scale else floor_root + 1
        if coefficient > 0:
            low += coefficient * Fraction(floor_root, scale)
            high += coefficient * Fraction(ceil_root, scale)
        else:
            low += coefficient * Fraction(ceil_root, scale)
            high += coefficient * Fraction(floor_root, scale)
    return low, high


def sign(value: ExactReal) -> int:
    if value.is_zero:
        return 0
    bits = START_BITS
    while bits <= PRECISION_CAP:
        low, high = enclose(value, bits)
        if low > 0:
            return 1
        if high < 0:
            return -1
        logger.debug("sign of %s undecided at %d bits", value.render(), bits)
        bits *= 2
    raise PrecisionException(f"sign of {value.render()} undecided at {PRECISION_CAP} bits")


def compare(a: ExactReal, b: ExactReal) -> Ordering:
    if a == b:
        return Ordering.EQUAL
    return Ordering(sign(a - b))


@lru_cache(maxsize=8192)
def to_float(value: ExactReal) -> float:
    if value.is_rational:
        return float(value.as_fraction())
    low, high = enclose(value, 2 * START_BITS)
    return float((low + high) / 2)
