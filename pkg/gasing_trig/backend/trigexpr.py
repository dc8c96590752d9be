"""
Polynomials and quotients in per-angle indeterminates sin(x), cos(x) plus plain
length symbols, with ExactReal coefficients.

Arithmetic happens in the free ring: cos(x)^2 + sin(x)^2 is never rewritten to 1.
Reduction modulo the relations cos(x)^2 + sin(x)^2 - 1 is a separate, explicit
operation (ideal_reduce) that refuses to run inside free_mode().
"""

from __future__ import annotations

import logging
import math
import threading
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Iterator, Literal, Mapping, NamedTuple

from gasing_trig.backend.exactnum import ONE, ZERO, ExactReal, to_float
from gasing_trig.backend.exceptions import (
    CircularReasoningException,
    DegenerateSeriesException,
    DivisionByZeroException,
    EvaluationException,
)

logger = logging.getLogger(__name__)

Operation = Literal["add", "sub", "mul", "div"]

# |denominator| at or below this is treated as a vanished denominator
EVAL_EPSILON = 1e-12


class Kind(IntEnum):
    COS = 0
    SIN = 1
    LEN = 2


@dataclass(frozen=True, order=True)
class Symbol:
    name: str
    kind: Kind

    def render(self) -> str:
        if self.kind is Kind.LEN:
            return self.name
        return f"{self.kind.name.lower()}({self.name})"


@dataclass(frozen=True)
class TrigMonomial:
    powers: tuple[tuple[Symbol, int], ...] = ()

    @classmethod
    def of(cls, powers: Mapping[Symbol, int]) -> TrigMonomial:
        return cls(tuple(sorted((s, e) for s, e in powers.items() if e)))

    def exponent(self, symbol: Symbol) -> int:
        for s, e in self.powers:
            if s == symbol:
                return e
        return 0

    @property
    def is_unit(self) -> bool:
        return not self.powers

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.powers)

    def __mul__(self, other: TrigMonomial) -> TrigMonomial:
        merged = dict(self.powers)
        for s, e in other.powers:
            merged[s] = merged.get(s, 0) + e
        return TrigMonomial.of(merged)

    def divides(self, other: TrigMonomial) -> bool:
        return all(other.exponent(s) >= e for s, e in self.powers)

    def __truediv__(self, other: TrigMonomial) -> TrigMonomial:
        merged = dict(self.powers)
        for s, e in other.powers:
            merged[s] = merged.get(s, 0) - e
        if any(e < 0 for e in merged.values()):
            raise ValueError("monomial does not divide")
        return TrigMonomial.of(merged)

    def gcd(self, other: TrigMonomial) -> TrigMonomial:
        return TrigMonomial.of({s: min(e, other.exponent(s)) for s, e in self.powers})

    def evaluate(self, values: Mapping[Symbol, float]) -> float:
        result = 1.0
        for s, e in self.powers:
            result *= values[s] ** e
        return result

    def render(self) -> str:
        if not self.powers:
            return "1"
        return "*".join(s.render() if e == 1 else f"{s.render()}^{e}" for s, e in self.powers)


def monomial_cmp(a: TrigMonomial, b: TrigMonomial) -> int:
    """Lexicographic order, symbols by name with cos before sin before lengths."""
    for symbol in sorted({s for s, _ in a.powers} | {s for s, _ in b.powers}):
        ea, eb = a.exponent(symbol), b.exponent(symbol)
        if ea != eb:
            return 1 if ea > eb else -1
    return 0


monomial_key = cmp_to_key(monomial_cmp)

Scalar = ExactReal | Fraction | int


@dataclass(frozen=True)
class TrigPoly:
    # descending monomial order
    terms: tuple[tuple[TrigMonomial, ExactReal], ...] = ()

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[TrigMonomial, Scalar]]) -> TrigPoly:
        collected: dict[TrigMonomial, ExactReal] = {}
        for monomial, coefficient in pairs:
            collected[monomial] = collected.get(monomial, ZERO) + ExactReal.of(coefficient)
        kept = [(m, c) for m, c in collected.items() if not c.is_zero]
        kept.sort(key=lambda term: monomial_key(term[0]), reverse=True)
        return cls(tuple(kept))

    @classmethod
    def constant(cls, value: Scalar) -> TrigPoly:
        return cls.from_terms([(TrigMonomial(), value)])

    @classmethod
    def symbol(cls, symbol: Symbol) -> TrigPoly:
        return cls(((TrigMonomial.of({symbol: 1}), ONE),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(m.is_unit for m, _ in self.terms)

    @property
    def is_atomic(self) -> bool:
        """One term with a one-term coefficient; renders without parentheses."""
        return len(self.terms) == 1 and len(self.terms[0][1].terms) == 1

    def constant_value(self) -> ExactReal:
        if not self.is_constant:
            raise ValueError(f"{self.render()} is not constant")
        return self.terms[0][1] if self.terms else ZERO

    def symbols(self) -> tuple[Symbol, ...]:
        return tuple(sorted({s for m, _ in self.terms for s, _ in m.powers}))

    def leading_term(self) -> tuple[TrigMonomial, ExactReal]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def content(self) -> TrigMonomial:
        """Largest monomial dividing every term."""
        if not self.terms:
            return TrigMonomial()
        result = self.terms[0][0]
        for monomial, _ in self.terms[1:]:
            result = result.gcd(monomial)
        return result

    def __add__(self, other: object) -> TrigPoly:
        other = _poly(other)
        if other is None:
            return NotImplemented
        return TrigPoly.from_terms(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> TrigPoly:
        return TrigPoly(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: object) -> TrigPoly:
        other = _poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> TrigPoly:
        other = _poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> TrigPoly:
        other = _poly(other)
        if other is None:
            return NotImplemented
        return TrigPoly.from_terms(
            (m1 * m2, c1 * c2) for m1, c1 in self.terms for m2, c2 in other.terms
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> TrigPoly:
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = TrigPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, factor: ExactReal) -> TrigPoly:
        return TrigPoly.from_terms((m, c * factor) for m, c in self.terms)

    def divide_monomial(self, monomial: TrigMonomial) -> TrigPoly:
        return TrigPoly.from_terms((m / monomial, c) for m, c in self.terms)

    def substitute(self, mapping: Mapping[Symbol, TrigPoly]) -> TrigPoly:
        result = TrigPoly()
        for monomial, coefficient in self.terms:
            term = TrigPoly.constant(coefficient)
            for s, e in monomial.powers:
                term = term * (mapping[s] ** e if s in mapping else TrigPoly.symbol(s) ** e)
            result = result + term
        return result

    def evaluate(self, values: Mapping[Symbol, float]) -> float:
        return math.fsum(to_float(c) * m.evaluate(values) for m, c in self.terms)

    def __eq__(self, other: object) -> bool:
        other = _poly(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for index, (monomial, coefficient) in enumerate(self.terms):
            negative, text = _render_term(monomial, coefficient)
            if index == 0:
                parts.append(f"-{text}" if negative else text)
            else:
                parts.append(f" - {text}" if negative else f" + {text}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()


def _render_term(monomial: TrigMonomial, coefficient: ExactReal) -> tuple[bool, str]:
    if len(coefficient.terms) > 1:
        if monomial.is_unit:
            return False, f"({coefficient.render()})"
        return False, f"({coefficient.render()})*{monomial.render()}"
    negative = coefficient.terms[0][1] < 0
    magnitude = -coefficient if negative else coefficient
    if monomial.is_unit:
        return negative, magnitude.render()
    if magnitude == ONE:
        return negative, monomial.render()
    return negative, f"{magnitude.render()}*{monomial.render()}"


def _poly(value: object) -> TrigPoly | None:
    if isinstance(value, TrigPoly):
        return value
    if isinstance(value, ExactReal) or (
        isinstance(value, (int, Fraction)) and not isinstance(value, bool)
    ):
        return TrigPoly.constant(value)
    return None


POLY_ONE = TrigPoly.constant(1)


def divide_exact(p: TrigPoly, d: TrigPoly) -> TrigPoly | None:
    """Quotient p/d when d divides p exactly in the free ring, else None."""
    if d.is_zero:
        raise DivisionByZeroException("division by the zero polynomial")
    lead_monomial, lead_coefficient = d.leading_term()
    quotient, rest = TrigPoly(), p
    while not rest.is_zero:
        monomial, coefficient = rest.leading_term()
        if not lead_monomial.divides(monomial):
            return None
        step = TrigPoly(((monomial / lead_monomial, coefficient / lead_coefficient),))
        quotient = quotient + step
        rest = rest - step * d
    return quotient


@dataclass(frozen=True, eq=False)
class TrigRational:
    num: TrigPoly
    den: TrigPoly = POLY_ONE

    def __post_init__(self) -> None:
        if self.den.is_zero:
            raise DivisionByZeroException(f"{self.num.render()} divided by zero")

    @classmethod
    def make(cls, num: TrigPoly, den: TrigPoly = POLY_ONE) -> TrigRational:
        """Build a quotient with cheap normalizations applied."""
        if den.is_zero:
            raise DivisionByZeroException(f"{num.render()} divided by zero")
        if num.is_zero:
            return cls(TrigPoly())
        if den.is_constant:
            return cls(num.scale(den.constant_value().inverse()))
        quotient = divide_exact(num, den)
        if quotient is not None:
            return cls(quotient)
        quotient = divide_exact(den, num)
        if quotient is not None:
            num, den = POLY_ONE, quotient
        common = num.content().gcd(den.content())
        if not common.is_unit:
            num, den = num.divide_monomial(common), den.divide_monomial(common)
        _, lead = den.leading_term()
        if lead != ONE:
            inverse = lead.inverse()
            num, den = num.scale(inverse), den.scale(inverse)
        return cls(num, den)

    @classmethod
    def of(cls, value: object) -> TrigRational:
        result = _rational(value)
        if result is None:
            raise TypeError(f"cannot use {value!r} as an expression")
        return result

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    def constant_value(self) -> ExactReal:
        return self.num.constant_value() / self.den.constant_value()

    def symbols(self) -> tuple[Symbol, ...]:
        return tuple(sorted(set(self.num.symbols()) | set(self.den.symbols())))

    def __add__(self, other: object) -> TrigRational:
        other = _rational(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return TrigRational.make(self.num + other.num, self.den)
        return TrigRational.make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> TrigRational:
        return TrigRational(-self.num, self.den)

    def __sub__(self, other: object) -> TrigRational:
        other = _rational(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> TrigRational:
        other = _rational(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> TrigRational:
        other = _rational(other)
        if other is None:
            return NotImplemented
        return TrigRational.make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> TrigRational:
        other = _rational(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZeroException(f"{self.render()} divided by zero")
        return TrigRational.make(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: object) -> TrigRational:
        other = _rational(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> TrigRational:
        if exponent < 0:
            return TrigRational.of(1) / self ** (-exponent)
        return TrigRational.make(self.num**exponent, self.den**exponent)

    def __eq__(self, other: object) -> bool:
        other = _rational(other)
        if other is None:
            return NotImplemented
        return expr_equals(self, other)

    __hash__ = None  # type: ignore[assignment]

    def substitute(self, mapping: Mapping[Symbol, TrigPoly]) -> TrigRational:
        return TrigRational.make(self.num.substitute(mapping), self.den.substitute(mapping))

    def render(self) -> str:
        if self.den == POLY_ONE:
            return self.num.render()
        num_text = self.num.render() if self.num.is_atomic else f"({self.num.render()})"
        bare = (
            self.den.is_atomic
            and self.den.terms[0][1] == ONE
            and len(self.den.terms[0][0].powers) == 1
        )
        den_text = self.den.render() if bare else f"({self.den.render()})"
        return f"{num_text}/{den_text}"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"TrigRational({self.render()!r})"


def _rational(value: object) -> TrigRational | None:
    if isinstance(value, TrigRational):
        return value
    poly = _poly(value)
    return None if poly is None else TrigRational(poly)


def sin(name: str) -> TrigRational:
    return TrigRational(TrigPoly.symbol(Symbol(name, Kind.SIN)))


def cos(name: str) -> TrigRational:
    return TrigRational(TrigPoly.symbol(Symbol(name, Kind.COS)))


def length(name: str) -> TrigRational:
    return TrigRational(TrigPoly.symbol(Symbol(name, Kind.LEN)))


def const(value: Scalar) -> TrigRational:
    return TrigRational(TrigPoly.constant(value))


def expr_equals(a: TrigRational, b: TrigRational) -> bool:
    return (a.num * b.den - b.num * a.den).is_zero


class ConditionKind(str, Enum):
    NONZERO = "nonzero"
    POSITIVE = "positive"
    LESS_THAN = "less_than"


@dataclass(frozen=True, eq=False)
class SideCondition:
    kind: ConditionKind
    subject: TrigRational
    bound: TrigRational | None = None

    def render(self) -> str:
        if self.kind is ConditionKind.NONZERO:
            return f"{self.subject.render()} != 0"
        if self.kind is ConditionKind.POSITIVE:
            return f"{self.subject.render()} > 0"
        assert self.bound is not None
        return f"{self.subject.render()} < {self.bound.render()}"

    def holds(self, angles: Mapping[str, float], lengths: Mapping[str, float] | None = None, margin: float = 0.0) -> bool:
        value = eval_numeric(self.subject, angles, lengths)
        if self.kind is ConditionKind.NONZERO:
            return abs(value) > margin
        if self.kind is ConditionKind.POSITIVE:
            return value > margin
        assert self.bound is not None
        return value < eval_numeric(self.bound, angles, lengths) - margin

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SideCondition):
            return NotImplemented
        return self.render() == other.render()

    def __hash__(self) -> int:
        return hash(self.render())

    def __str__(self) -> str:
        return self.render()


def nonzero(subject: object) -> SideCondition:
    return SideCondition(ConditionKind.NONZERO, TrigRational.of(subject))


def positive(subject: object) -> SideCondition:
    return SideCondition(ConditionKind.POSITIVE, TrigRational.of(subject))


def less_than(subject: object, bound: object) -> SideCondition:
    return SideCondition(ConditionKind.LESS_THAN, TrigRational.of(subject), TrigRational.of(bound))


def merge_conditions(*groups: Iterable[SideCondition]) -> tuple[SideCondition, ...]:
    """Union of condition groups, first occurrence order kept."""
    seen: dict[str, SideCondition] = {}
    for group in groups:
        for condition in group:
            seen.setdefault(condition.render(), condition)
    return tuple(seen.values())


def nonzero_conditions(poly: TrigPoly) -> tuple[SideCondition, ...]:
    """One condition per symbol of a monomial, one for the whole of anything else."""
    if poly.is_constant:
        return ()
    if len(poly.terms) == 1:
        monomial, _ = poly.terms[0]
        return tuple(nonzero(TrigPoly.symbol(s)) for s, _ in monomial.powers)
    return (nonzero(poly),)


def conditions_of(expr: TrigRational) -> tuple[SideCondition, ...]:
    return nonzero_conditions(expr.den)


def poly_arith(
    a: TrigPoly | TrigRational, b: TrigPoly | TrigRational, op: Operation
) -> tuple[TrigRational, tuple[SideCondition, ...]]:
    left, right = TrigRational.of(a), TrigRational.of(b)
    conditions = merge_conditions(conditions_of(left), conditions_of(right))
    if op == "add":
        return left + right, conditions
    if op == "sub":
        return left - right, conditions
    if op == "mul":
        return left * right, conditions
    if op == "div":
        return left / right, merge_conditions(conditions, nonzero_conditions(right.num))
    raise ValueError(f"unknown operation {op!r}")


# the circularity guard: ideal reduction is refused while a proof runs
_free_mode: ContextVar[bool] = ContextVar("free_mode", default=False)
_reductions = 0
_reductions_lock = threading.Lock()


@contextmanager
def free_mode() -> Iterator[None]:
    token = _free_mode.set(True)
    try:
        yield
    finally:
        _free_mode.reset(token)


def in_free_mode() -> bool:
    return _free_mode.get()


def reduction_count() -> int:
    return _reductions


def pythagorean_generator(angle: str) -> TrigPoly:
    c = TrigPoly.symbol(Symbol(angle, Kind.COS))
    s = TrigPoly.symbol(Symbol(angle, Kind.SIN))
    return c * c + s * s - 1


class Reduction(NamedTuple):
    remainder: TrigPoly
    cofactors: dict[str, TrigPoly]


def ideal_reduce(p: TrigPoly) -> Reduction:
    """Rewrite cos(x)^2 -> 1 - sin(x)^2 until every cosine has degree at most one."""
    global _reductions
    if _free_mode.get():
        raise CircularReasoningException(
            "the Pythagorean relation was requested inside a free-ring derivation"
        )
    with _reductions_lock:
        _reductions += 1
    cofactors: dict[str, TrigPoly] = {}
    kept: list[tuple[TrigMonomial, ExactReal]] = []
    rest = p
    while not rest.is_zero:
        monomial, coefficient = rest.leading_term()
        target = next((s for s, e in monomial.powers if s.kind is Kind.COS and e >= 2), None)
        if target is None:
            kept.append((monomial, coefficient))
            rest = rest - TrigPoly(((monomial, coefficient),))
            continue
        step = TrigPoly(((monomial / TrigMonomial.of({target: 2}), coefficient),))
        cofactors[target.name] = cofactors.get(target.name, TrigPoly()) + step
        rest = rest - step * pythagorean_generator(target.name)
    remainder = TrigPoly.from_terms(kept)
    logger.debug("reduced %s to %s", p.render(), remainder.render())
    return Reduction(remainder, {k: v for k, v in sorted(cofactors.items()) if not v.is_zero})


def recompose(remainder: TrigPoly, cofactors: Mapping[str, TrigPoly]) -> TrigPoly:
    result = remainder
    for angle, cofactor in cofactors.items():
        result = result + cofactor * pythagorean_generator(angle)
    return result


def membership_certificate(p: TrigPoly) -> dict[str, TrigPoly] | None:
    remainder, cofactors = ideal_reduce(p)
    if not remainder.is_zero:
        return None
    return cofactors


def sum_geometric(
    first: TrigRational, ratio: TrigRational
) -> tuple[TrigRational, tuple[SideCondition, ...]]:
    """Closed form first/(1 - ratio) of first + first*ratio + first*ratio^2 + ..."""
    if expr_equals(ratio, const(1)):
        raise DegenerateSeriesException("a series with ratio 1 has no closed form")
    gap = 1 - ratio
    conditions = merge_conditions(
        conditions_of(first),
        conditions_of(ratio),
        nonzero_conditions(gap.num),
        [less_than(ratio, 1)],
    )
    return first / gap, conditions


def partial_sum(first: TrigRational, ratio: TrigRational, count: int) -> TrigRational:
    total, term = const(0), first
    for _ in range(count):
        total = total + term
        term = term * ratio
    return total


def symbol_values(
    symbols: Iterable[Symbol],
    angles: Mapping[str, float],
    lengths: Mapping[str, float] | None = None,
) -> dict[Symbol, float]:
    lengths = lengths or {}
    values: dict[Symbol, float] = {}
    for symbol in symbols:
        if symbol.kind is Kind.LEN:
            if symbol.name not in lengths:
                raise EvaluationException(f"no value given for length {symbol.name}")
            values[symbol] = lengths[symbol.name]
        else:
            if symbol.name not in angles:
                raise EvaluationException(f"no value given for angle {symbol.name}")
            function = math.cos if symbol.kind is Kind.COS else math.sin
            values[symbol] = function(angles[symbol.name])
    return values


def eval_numeric(
    e: TrigRational,
    angles: Mapping[str, float],
    lengths: Mapping[str, float] | None = None,
) -> float:
    values = symbol_values(e.symbols(), angles, lengths)
    denominator = e.den.evaluate(values)
    if abs(denominator) <= EVAL_EPSILON:
        violated = ", ".join(c.render() for c in conditions_of(e)) or f"{e.den.render()} != 0"
        raise EvaluationException(f"denominator vanishes, violating {violated}")
    return e.num.evaluate(values) / denominator
