"""
Word problems solved the way the derivations work: build the Gasing
triangle, scale it, read the answer off a side.

Every solution carries a checked trace. The figure readings are premises;
the scalings and the special values enter as factor and substitution
steps, so DerivationTrace.check() confirms the arithmetic that led to the
answer.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping

from gasing_trig.backend.angles import TRIG_NAMES, TrigName, exact_value
from gasing_trig.backend.construction import Construction
from gasing_trig.backend.derive import cosine_rule, sine_rule
from gasing_trig.backend.exactnum import ONE, ZERO, ExactReal, Ordering, compare, enclose, sqrt_exact
from gasing_trig.backend.exceptions import (
    DegenerateProblemException,
    DomainException,
    InconsistentDerivationException,
    InsufficientGivensException,
    UndefinedValueException,
    UnknownFunctionException,
    UnsupportedAngleException,
)
from gasing_trig.backend.figures import (
    csc_cot_figure,
    extended_base_figure,
    primary_figure,
    sec_tan_figure,
    sine_cosine_rule_figure,
    two_sightline_figure,
)
from gasing_trig.backend.trace import DerivationTrace, TraceRecorder
from gasing_trig.backend.trigexpr import (
    Kind,
    Symbol,
    TrigPoly,
    TrigRational,
    const,
    cos,
    expr_equals,
    length,
    sin,
)

logger = logging.getLogger(__name__)

# angles whose sine and cosine lie in the number domain
SOLVER_DEGREES = (30, 45, 60, 90, 120, 135, 150)
ACUTE_DEGREES = (30, 45, 60)
APPROX_BITS = 64


class ProblemKind(str, Enum):
    RATIO = "ratio_conversion"
    ASA = "asa_shared_altitude"
    SAS_OBTUSE = "sas_obtuse"
    SIGHTLINES = "two_sightlines"
    SINE_RULE = "generic_sine_rule"
    COSINE_RULE = "generic_cosine_rule"


@dataclass(frozen=True)
class ProblemInstance:
    kind: ProblemKind
    givens: Mapping[str, object]


def root_bracket(squared: ExactReal, bits: int = APPROX_BITS) -> tuple[Fraction, Fraction]:
    """Rational lo <= sqrt(squared) <= hi from integer square roots."""
    low, high = enclose(squared, bits)
    scale = 1 << bits
    lo = Fraction(math.isqrt(max(0, math.floor(low * scale * scale))), scale)
    top = max(0, math.ceil(high * scale * scale))
    root = math.isqrt(top)
    if root * root < top:
        root += 1
    return lo, Fraction(root, scale)


@dataclass(frozen=True, eq=False)
class Solution:
    name: str
    value: ExactReal | None
    squared: ExactReal
    bracket: tuple[Fraction, Fraction]
    trace: DerivationTrace
    construction: Construction
    # values that lay the construction out at this solution
    angles: Mapping[str, float] = field(default_factory=dict)
    lengths: Mapping[str, float] | None = None

    @property
    def exact(self) -> bool:
        return self.value is not None

    @property
    def approximation(self) -> float:
        low, high = self.bracket
        return float((low + high) / 2)

    def render(self) -> str:
        if self.value is not None:
            return f"{self.value.render()} ≈ {self.approximation:.6f}"
        return f"{self.name}^2 = {self.squared.render()}, {self.name} ≈ {self.approximation:.6f}"


def _solution(
    name: str,
    rec: TraceRecorder,
    unknown: TrigRational,
    construction: Construction,
    angles: Mapping[str, float],
    lengths: Mapping[str, float] | None = None,
    *,
    squared: bool = False,
    drawn_as: str | None = None,
) -> Solution:
    """
    Read the answer off the last step, which must isolate the unknown (or its
    square) against a constant. A square is rooted when the root has no
    nested radical; otherwise the squared value is kept.
    """
    final = rec.last
    target = unknown * unknown if squared else unknown
    if not expr_equals(final.lhs, target) or not final.rhs.is_constant:
        raise InconsistentDerivationException(
            f"{name}: the solution ends in {final.render()}, not {target.render()} = a number"
        )
    result = final.rhs.constant_value()
    if squared:
        squared_value, value = result, sqrt_exact(result)
        if value is not None:
            rec.rewrite(
                f"{squared_value.render()} = ({value.render()})^2",
                target,
                const(value) * const(value),
                label=f"{name}^2",
            )
            rec.premise(f"take the positive root of {name}^2", unknown, const(value), label=name)
        else:
            rec.rewrite(
                f"{name}^2 has no square root without nested radicals; keep the squared value",
                target,
                final.rhs,
                label=f"{name}^2",
            )
    else:
        value, squared_value = result, result * result

    trace = rec.trace()
    failed = trace.check()
    if failed is not None:
        raise InconsistentDerivationException(f"{name}: step {failed + 1} of the solution does not follow")

    bracket = enclose(value, APPROX_BITS) if value is not None else root_bracket(squared_value)
    lengths = dict(lengths) if lengths is not None else None
    if drawn_as is not None:
        lengths = {**(lengths or {}), drawn_as: float((bracket[0] + bracket[1]) / 2)}
    solution = Solution(name, value, squared_value, bracket, trace, construction, dict(angles), lengths)
    logger.info("solved %s: %s", name, solution.render())
    return solution


def _check_range(fn: str, value: ExactReal) -> None:
    zero, one = compare(value, ZERO), compare(value, ONE)
    if fn in ("sin", "cos"):
        ok = zero is not Ordering.LESS and one is not Ordering.GREATER
        allowed = "[0, 1]"
    elif fn in ("tan", "cot"):
        ok = zero is not Ordering.LESS
        allowed = "[0, inf)"
    else:
        ok = one is not Ordering.LESS
        allowed = "[1, inf)"
    if not ok:
        raise DomainException(f"{fn}(a) = {value.render()} is impossible for an acute angle; expected {allowed}")


def _check_name(fn: str) -> None:
    if fn not in TRIG_NAMES:
        raise UnknownFunctionException(f"unknown trigonometric function {fn!r}")


def _lengths(values: Mapping[str, ExactReal]) -> dict[Symbol, TrigPoly]:
    return {Symbol(name, Kind.LEN): TrigPoly.constant(value) for name, value in values.items()}


def _constants(values: Mapping[Symbol, ExactReal]) -> dict[Symbol, TrigPoly]:
    return {symbol: TrigPoly.constant(value) for symbol, value in values.items()}


def _special_values(angle: str, degrees: int) -> dict[Symbol, TrigPoly]:
    return _constants(
        {
            Symbol(angle, Kind.SIN): exact_value("sin", degrees),
            Symbol(angle, Kind.COS): exact_value("cos", degrees),
        }
    )


# (triangle, figure, hypotenuse, opposite, adjacent, unit side, side fixed by the given ratio)
_RATIO_TRIANGLES = {
    "sin": ("ABC", primary_figure, "AB", "BC", "AC", "AB", "BC"),
    "cos": ("ABC", primary_figure, "AB", "BC", "AC", "AB", "AC"),
    "tan": ("ADB", sec_tan_figure, "AD", "DB", "AB", "AB", "DB"),
    "sec": ("ADB", sec_tan_figure, "AD", "DB", "AB", "AB", "AD"),
    "cot": ("EAB", csc_cot_figure, "EA", "AB", "EB", "AB", "EB"),
    "csc": ("EAB", csc_cot_figure, "EA", "AB", "EB", "AB", "EA"),
}
# numerator and denominator of each ratio, as hypotenuse 0, opposite 1, adjacent 2
_RATIO_SIDES = {"sin": (1, 0), "cos": (2, 0), "tan": (1, 2), "cot": (2, 1), "sec": (0, 2), "csc": (0, 1)}


def _ratio_expression(fn: str, a: str = "a") -> TrigRational:
    s, k = sin(a), cos(a)
    return {"sin": s, "cos": k, "tan": s / k, "cot": k / s, "sec": 1 / k, "csc": 1 / s}[fn]


def solve_ratio(given_fn: TrigName, given_value: ExactReal | Fraction | int, want_fn: TrigName) -> Solution:
    """
    Convert one ratio of an acute angle into another.

    The given ratio fixes two sides of a Gasing triangle with one unit side;
    the third comes from the right-triangle relation. The missing side is
    kept squared until the final root so that no side needs a nested radical.
    """
    _check_name(given_fn)
    _check_name(want_fn)
    v = ExactReal.of(given_value)
    _check_range(given_fn, v)

    triangle, build, hyp, opp, adj, unit, given_side = _RATIO_TRIANGLES[given_fn]
    sides = (hyp, opp, adj)
    missing = next(side for side in sides if side not in (unit, given_side))
    known = {unit: ONE, given_side: v}
    squares = {side: value * value for side, value in known.items()}
    if missing == hyp:
        squares[missing] = squares[opp] + squares[adj]
    else:
        other = opp if missing == adj else adj
        squares[missing] = squares[hyp] - squares[other]
    numerator, denominator = (sides[i] for i in _RATIO_SIDES[want_fn])
    if squares[denominator].is_zero:
        raise UndefinedValueException(f"{want_fn}(a) is undefined when {given_fn}(a) = {v.render()}")

    angles = {"a": math.atan2(math.sqrt(float(squares[opp])), math.sqrt(float(squares[adj])))}
    name = f"{want_fn}(a)"
    ratio = f"{name} = {numerator}/{denominator} on {triangle}"
    scaling = f"scale {triangle} so that {unit} = 1; {given_fn}(a) = {v.render()} makes {given_side} = {v.render()}"
    rec = TraceRecorder(f"triangle {triangle}")

    if missing not in (numerator, denominator) or known.get(numerator, ONE).is_zero:
        want = _ratio_expression(want_fn)
        rec.premise(ratio, want, length(numerator) / length(denominator), label=name, reference=f"triangle {triangle}")
        rec.substitute(scaling, _lengths(known), label=name)
        return _solution(name, rec, want, build(), angles)

    rec.premise(
        f"right-triangle relation on {triangle}",
        length(hyp) ** 2,
        length(opp) ** 2 + length(adj) ** 2,
        reference=f"triangle {triangle}",
    )
    rec.substitute(scaling, _lengths(known))
    x = squares[missing]
    rec.rewrite(f"solve for {missing}^2", length(missing) ** 2, const(x), label=f"{missing}^2")
    if numerator == missing:
        c = known[denominator]
        unknown = length(missing) / const(c)
        if c == ONE:
            rec.rewrite(f"{ratio} with {denominator} = 1", rec.last.lhs, rec.last.rhs, label=f"{name}^2")
        else:
            rec.multiply(f"{ratio} with {denominator} = {c.render()}: divide by {c.render()}^2", const(1 / (c * c)), label=f"{name}^2")
    else:
        c = known[numerator]
        unknown = const(c) / length(missing)
        rec.multiply(
            f"{ratio} with {numerator} = {c.render()}: multiply by {c.render()}^2/({missing}^2*{x.render()})",
            const(c * c) / (length(missing) ** 2 * const(x)),
        )
        rec.rewrite("exchange the two sides", rec.last.rhs, rec.last.lhs, label=f"{name}^2")
    return _solution(name, rec, unknown, build(), angles, squared=True)


def _special(degrees: int, allowed: tuple[int, ...] = SOLVER_DEGREES) -> int:
    if degrees not in allowed:
        raise UnsupportedAngleException(
            f"{degrees}deg is not supported here; use one of {', '.join(map(str, allowed))}"
        )
    return degrees


def _nonnegative(name: str, value: ExactReal) -> ExactReal:
    if compare(value, ZERO) is Ordering.LESS:
        raise DomainException(f"{name} must not be negative, got {value.render()}")
    return value


def solve_asa_shared_altitude(
    angle_left: int, angle_right: int, side_right: ExactReal | Fraction | int
) -> Solution:
    """a*sin(left) = side*sin(right): both triangles measure the same altitude."""
    _special(angle_left, ACUTE_DEGREES)
    _special(angle_right, ACUTE_DEGREES)
    side = _nonnegative("side", ExactReal.of(side_right))
    sin_left, sin_right = exact_value("sin", angle_left), exact_value("sin", angle_right)
    altitude = side * sin_right

    fig = sine_cosine_rule_figure()
    bd = fig.constraint("B", "D")
    rec = TraceRecorder("two triangles on a shared altitude")
    rec.premise("ABD and CBD stand on the shared altitude BD", bd.second, bd.first, reference="altitude BD")
    rec.substitute(
        f"the triangle at {angle_right}deg is the primary triangle scaled by {side.render()}:"
        f" BD = {side.render()}*sin({angle_right}deg) = {altitude.render()}",
        _constants({Symbol("alpha", Kind.SIN): sin_right, Symbol("c", Kind.LEN): side}),
        reference="triangle ABD",
    )
    rec.substitute(
        f"the triangle at {angle_left}deg is the primary triangle scaled by a: BD = a*sin({angle_left}deg)",
        _constants({Symbol("gamma", Kind.SIN): sin_left}),
        reference="triangle CBD",
    )
    rec.multiply(f"divide both sides by sin({angle_left}deg) = {sin_left.render()}", const(1 / sin_left), label="a")
    angles = {"alpha": math.radians(angle_right), "gamma": math.radians(angle_left)}
    return _solution("a", rec, length("a"), fig, angles, {"c": float(side)}, drawn_as="a")


def solve_sas_obtuse(
    side_b: ExactReal | Fraction | int, side_d: ExactReal | Fraction | int, obtuse_degrees: int
) -> Solution:
    """Extend the base past the obtuse angle, drop the perpendicular, apply the right-triangle relation."""
    if not 90 < obtuse_degrees < 180:
        raise DomainException(f"expected an obtuse angle, got {obtuse_degrees}deg")
    supplement = _special(180 - obtuse_degrees, ACUTE_DEGREES)
    b = _nonnegative("b", ExactReal.of(side_b))
    d = _nonnegative("d", ExactReal.of(side_d))

    fig = extended_base_figure()
    rec = TraceRecorder("obtuse triangle completed to a right triangle")
    rec.premise(
        "right-triangle relation on ADC",
        length("a") ** 2,
        length("AD") ** 2 + length("CD") ** 2,
        reference="triangle ADC",
    )
    rec.substitute(
        "BCD is the primary triangle of theta scaled by d: BD = d*cos(theta), CD = d*sin(theta);"
        " AD = AB + BD along A-B-D",
        {
            Symbol("AD", Kind.LEN): fig.length("A", "D").num,
            Symbol("CD", Kind.LEN): fig.length("C", "D").num,
        },
        reference="triangle BCD",
    )
    rec.substitute(
        f"theta = 180deg - {obtuse_degrees}deg = {supplement}deg, b = {b.render()}, d = {d.render()}",
        {
            **_special_values("theta", supplement),
            **_lengths({"b": b, "d": d}),
        },
        label="a^2",
    )
    angles = {"theta": math.radians(supplement)}
    return _solution("a", rec, length("a"), fig, angles, {"b": float(b), "d": float(d)}, squared=True, drawn_as="a")


def solve_two_sightlines(
    pole_height: ExactReal | Fraction | int, upper_degrees: int, lower_degrees: int
) -> Solution:
    """
    Height CD of a hill carrying a pole, from the elevation of the pole's top
    and foot seen from one point at horizontal distance x.
    """
    _special(upper_degrees, ACUTE_DEGREES)
    _special(lower_degrees, ACUTE_DEGREES)
    pole = _nonnegative("pole height", ExactReal.of(pole_height))
    if upper_degrees <= lower_degrees:
        raise DegenerateProblemException(
            f"the upper sight line ({upper_degrees}deg) must be steeper than the lower ({lower_degrees}deg)"
        )
    if pole.is_zero:
        raise DegenerateProblemException("a pole of height zero gives no second sight line")
    tan_upper, tan_lower = exact_value("tan", upper_degrees), exact_value("tan", lower_degrees)

    fig = two_sightline_figure()
    x = length("x")
    rec = TraceRecorder("two derived triangles with the common leg x")
    rec.premise(
        "ABC and ADC are the primary triangles scaled to the common leg AC = x; CB = CD + DB along C-D-B",
        fig.length("C", "B"),
        fig.length("C", "D") + length("DB"),
        reference="chain C-D-B",
    )
    rec.substitute(
        f"sight lines at {upper_degrees}deg and {lower_degrees}deg, pole DB = {pole.render()}",
        {
            **_special_values("upper", upper_degrees),
            **_special_values("lower", lower_degrees),
            **_lengths({"DB": pole}),
        },
    )
    rec.rewrite(
        f"collect x: x*(tan({upper_degrees}deg) - tan({lower_degrees}deg)) = DB",
        x * const(tan_upper - tan_lower),
        const(pole),
    )
    rec.multiply(
        f"divide by tan({upper_degrees}deg) - tan({lower_degrees}deg) = {(tan_upper - tan_lower).render()}",
        const(1 / (tan_upper - tan_lower)),
        label="x",
    )
    distance = rec.last.rhs.constant_value()
    rec.premise(f"ADC scaled to the leg x: CD = x*tan({lower_degrees}deg)", length("CD"), fig.length("C", "D"), reference="triangle ADC")
    rec.substitute(
        f"x = {distance.render()}",
        {**_special_values("lower", lower_degrees), **_lengths({"x": distance})},
        label="CD",
    )
    angles = {"upper": math.radians(upper_degrees), "lower": math.radians(lower_degrees)}
    return _solution("CD", rec, length("CD"), fig, angles, {"x": float(distance)})


def _require(givens: Mapping[str, object], *names: str) -> list[ExactReal | int]:
    missing = [n for n in names if givens.get(n) is None]
    if missing:
        raise InsufficientGivensException(f"missing given(s): {', '.join(missing)}")
    return [givens[n] for n in names]  # type: ignore[misc]


def solve_generic(kind: ProblemKind | str, givens: Mapping[str, object]) -> Solution:
    """Apply the derived sine or cosine rule with exact special values."""
    kind = ProblemKind(kind)
    if kind is ProblemKind.SINE_RULE:
        alpha, gamma, c = _require(givens, "alpha", "gamma", "c")
        alpha, gamma = _special(int(alpha)), _special(int(gamma))
        c = _nonnegative("c", ExactReal.of(c))
        sin_alpha, sin_gamma = exact_value("sin", alpha), exact_value("sin", gamma)
        formula = sine_rule().formulas[0]
        assert formula.lhs is not None
        rec = TraceRecorder("sine rule")
        rec.premise("sine rule", formula.lhs, formula.rhs, reference="sine rule")
        rec.substitute(
            f"alpha = {alpha}deg, gamma = {gamma}deg, c = {c.render()}",
            _constants(
                {
                    Symbol("alpha", Kind.SIN): sin_alpha,
                    Symbol("gamma", Kind.SIN): sin_gamma,
                    Symbol("c", Kind.LEN): c,
                }
            ),
        )
        rec.multiply(f"multiply both sides by sin({alpha}deg) = {sin_alpha.render()}", const(sin_alpha), label="a")
        angles = {"alpha": math.radians(alpha), "gamma": math.radians(gamma)}
        return _solution("a", rec, length("a"), sine_cosine_rule_figure(), angles, {"c": float(c)}, drawn_as="a")
    if kind is ProblemKind.COSINE_RULE:
        b, c, alpha = _require(givens, "b", "c", "alpha")
        alpha = _special(int(alpha))
        b, c = _nonnegative("b", ExactReal.of(b)), _nonnegative("c", ExactReal.of(c))
        formula = cosine_rule().formulas[0]
        assert formula.lhs is not None
        rec = TraceRecorder("cosine rule")
        rec.premise("cosine rule", formula.lhs, formula.rhs, reference="cosine rule")
        rec.substitute(
            f"b = {b.render()}, c = {c.render()}, cos({alpha}deg) = {exact_value('cos', alpha).render()}",
            _constants(
                {
                    Symbol("alpha", Kind.COS): exact_value("cos", alpha),
                    Symbol("b", Kind.LEN): b,
                    Symbol("c", Kind.LEN): c,
                }
            ),
            label="a^2",
        )
        solution = _solution(
            "a", rec, length("a"), sine_cosine_rule_figure(), {}, {"c": float(c)}, squared=True, drawn_as="a"
        )
        # the figure is laid out by alpha and the angle gamma at C opposite c
        a_float, b_float, c_float = solution.approximation, float(b), float(c)
        gamma = math.acos(max(-1.0, min(1.0, (a_float**2 + b_float**2 - c_float**2) / (2 * a_float * b_float or 1.0))))
        return dataclasses.replace(solution, angles={"alpha": math.radians(alpha), "gamma": gamma})
    raise DomainException(f"{kind.value} is not a generic rule")


def solve(problem: ProblemInstance) -> Solution:
    g = problem.givens
    if problem.kind is ProblemKind.RATIO:
        given_fn, given_value, want_fn = _require(g, "given_fn", "given_value", "want_fn")
        return solve_ratio(given_fn, given_value, want_fn)  # type: ignore[arg-type]
    if problem.kind is ProblemKind.ASA:
        return solve_asa_shared_altitude(*_require(g, "angle_left", "angle_right", "side_right"))  # type: ignore[arg-type]
    if problem.kind is ProblemKind.SAS_OBTUSE:
        return solve_sas_obtuse(*_require(g, "side_b", "side_d", "obtuse_degrees"))  # type: ignore[arg-type]
    if problem.kind is ProblemKind.SIGHTLINES:
        return solve_two_sightlines(*_require(g, "pole_height", "upper_degrees", "lower_degrees"))  # type: ignore[arg-type]
    return solve_generic(problem.kind, g)
