import logging
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gasing_trig.backend.angles import TRIG_NAMES
from gasing_trig.backend.exactnum import ExactReal, Ordering, compare, sqrt_of
from gasing_trig.backend.exceptions import (
    DegenerateProblemException,
    DomainException,
    InsufficientGivensException,
    UndefinedValueException,
    UnknownFunctionException,
    UnsupportedAngleException,
)
from gasing_trig.backend.model import Engine
from gasing_trig.backend.solver import (
    ProblemInstance,
    ProblemKind,
    root_bracket,
    solve,
    solve_asa_shared_altitude,
    solve_generic,
    solve_ratio,
    solve_sas_obtuse,
    solve_two_sightlines,
)

SQRT3 = sqrt_of(3)


def test_ratio_sin_to_cos():
    solution = solve_ratio("sin", Fraction(1, 2), "cos")
    assert solution.value == SQRT3 / 2
    assert solution.render() == "sqrt(3)/2 ≈ 0.866025"


def test_ratio_tan_to_cos():
    solution = solve_ratio("tan", Fraction(3, 4), "cos")
    assert solution.value == ExactReal.of(Fraction(4, 5))


@pytest.mark.parametrize(
    "given_fn, given_value, want_fn, expected",
    [
        ("cos", Fraction(4, 5), "tan", Fraction(3, 4)),
        ("sec", Fraction(5, 4), "sin", Fraction(3, 5)),
        ("csc", Fraction(5, 3), "cot", Fraction(4, 3)),
        ("cot", Fraction(4, 3), "sin", Fraction(3, 5)),
    ],
)
def test_ratio_conversions(given_fn, given_value, want_fn, expected):
    assert solve_ratio(given_fn, given_value, want_fn).value == ExactReal.of(expected)


def test_ratio_at_the_boundary():
    assert solve_ratio("cos", 1, "sin").value == ExactReal.of(0)
    with pytest.raises(UndefinedValueException):
        solve_ratio("cos", 1, "csc")


def test_ratio_out_of_range():
    with pytest.raises(DomainException):
        solve_ratio("sin", Fraction(3, 2), "cos")
    with pytest.raises(DomainException):
        solve_ratio("sec", Fraction(1, 2), "tan")


def test_ratio_unknown_function():
    with pytest.raises(UnknownFunctionException):
        solve_ratio("sinh", Fraction(1, 2), "cos")  # type: ignore[arg-type]


@pytest.mark.parametrize(
    "left, right, side, expected",
    [
        (30, 45, 6, 6 * sqrt_of(2)),
        (45, 45, 7, ExactReal.of(7)),
        (30, 60, 5, 5 * SQRT3),
    ],
)
def test_asa_shared_altitude(left, right, side, expected):
    solution = solve_asa_shared_altitude(left, right, side)
    assert solution.value == expected
    assert solution.trace.check() is None


def test_asa_rejects_unsupported_angles():
    with pytest.raises(UnsupportedAngleException):
        solve_asa_shared_altitude(20, 45, 6)


def test_sas_obtuse():
    solution = solve_sas_obtuse(8, 6, 120)
    assert solution.value == 2 * sqrt_of(37)
    assert solution.approximation == pytest.approx(12.165525, abs=1e-6)


def test_sas_obtuse_with_a_zero_side():
    assert solve_sas_obtuse(0, 6, 120).value == ExactReal.of(6)


def test_sas_obtuse_keeps_a_nested_root_squared():
    solution = solve_sas_obtuse(3, 4, 150)
    assert solution.value is None
    assert solution.squared == 25 + 12 * SQRT3
    assert solution.approximation == pytest.approx(6.766, abs=1e-3)
    assert solution.render().startswith("a^2 = 25 + 12*sqrt(3), a ≈ 6.76")


def test_sas_obtuse_needs_an_obtuse_angle():
    with pytest.raises(DomainException):
        solve_sas_obtuse(3, 4, 90)
    with pytest.raises(UnsupportedAngleException):
        solve_sas_obtuse(3, 4, 100)


def test_two_sightlines():
    assert solve_two_sightlines(12, 45, 30).value == 6 + 6 * SQRT3
    assert solve_two_sightlines(10, 60, 30).value == ExactReal.of(5)


def test_two_sightlines_degenerate():
    with pytest.raises(DegenerateProblemException):
        solve_two_sightlines(10, 30, 30)
    with pytest.raises(DegenerateProblemException):
        solve_two_sightlines(0, 60, 30)


def test_generic_sine_rule():
    problem = ProblemInstance(ProblemKind.SINE_RULE, {"alpha": 45, "gamma": 30, "c": 6})
    assert solve(problem).value == 6 * sqrt_of(2)


def test_generic_cosine_rule():
    problem = ProblemInstance(ProblemKind.COSINE_RULE, {"b": 8, "c": 6, "alpha": 120})
    assert solve(problem).value == 2 * sqrt_of(37)
    problem = ProblemInstance(ProblemKind.COSINE_RULE, {"b": 3, "c": 4, "alpha": 90})
    assert solve(problem).value == ExactReal.of(5)


def test_missing_givens():
    with pytest.raises(InsufficientGivensException, match="gamma"):
        solve(ProblemInstance(ProblemKind.SINE_RULE, {"alpha": 45, "c": 6}))


def test_solve_dispatches_every_kind():
    problems = [
        ProblemInstance(ProblemKind.RATIO, {"given_fn": "sin", "given_value": Fraction(1, 2), "want_fn": "cos"}),
        ProblemInstance(ProblemKind.ASA, {"angle_left": 30, "angle_right": 45, "side_right": 6}),
        ProblemInstance(ProblemKind.SAS_OBTUSE, {"side_b": 8, "side_d": 6, "obtuse_degrees": 120}),
        ProblemInstance(ProblemKind.SIGHTLINES, {"pole_height": 12, "upper_degrees": 45, "lower_degrees": 30}),
    ]
    for problem in problems:
        solution = solve(problem)
        assert solution.exact
        low, high = solution.bracket
        assert low <= high


def test_root_bracket_encloses_the_root():
    low, high = root_bracket(25 + 12 * SQRT3)
    root = math.sqrt(25 + 12 * math.sqrt(3))
    assert float(low) <= root + 1e-12
    assert float(high) >= root - 1e-12
    assert float(high - low) < 1e-9


def test_asa_and_sightlines_take_acute_angles_only():
    with pytest.raises(UnsupportedAngleException):
        solve_asa_shared_altitude(90, 45, 6)
    with pytest.raises(UnsupportedAngleException):
        solve_asa_shared_altitude(30, 90, 6)
    with pytest.raises(UnsupportedAngleException):
        solve_two_sightlines(10, 60, 0)
    with pytest.raises(UnsupportedAngleException):
        solve_two_sightlines(10, 90, 30)


SOLVED = [
    (lambda: solve_ratio("sin", Fraction(1, 2), "cos"), math.cos(math.asin(0.5))),
    (lambda: solve_ratio("tan", Fraction(3, 4), "csc"), 1 / math.sin(math.atan(0.75))),
    (lambda: solve_ratio("sec", 2, "cot"), 1 / math.tan(math.acos(0.5))),
    (lambda: solve_asa_shared_altitude(30, 45, 6), 6 * math.sin(math.radians(45)) / math.sin(math.radians(30))),
    (lambda: solve_asa_shared_altitude(60, 30, Fraction(5, 2)), 2.5 * math.sin(math.radians(30)) / math.sin(math.radians(60))),
    (lambda: solve_sas_obtuse(8, 6, 120), math.sqrt(64 + 36 - 96 * math.cos(math.radians(120)))),
    (lambda: solve_sas_obtuse(3, 4, 150), math.sqrt(9 + 16 - 24 * math.cos(math.radians(150)))),
    (lambda: solve_two_sightlines(12, 45, 30), 12 * math.tan(math.radians(30)) / (1 - math.tan(math.radians(30)))),
    (lambda: solve_two_sightlines(7, 60, 45), 7 / (math.tan(math.radians(60)) - 1)),
    (
        lambda: solve_generic(ProblemKind.SINE_RULE, {"alpha": 45, "gamma": 30, "c": 6}),
        6 * math.sin(math.radians(45)) / math.sin(math.radians(30)),
    ),
    (
        lambda: solve_generic(ProblemKind.COSINE_RULE, {"b": 3, "c": 4, "alpha": 60}),
        math.sqrt(9 + 16 - 24 * math.cos(math.radians(60))),
    ),
]


@pytest.mark.parametrize("solver, expected", SOLVED)
def test_solutions_agree_with_machine_trigonometry(solver, expected):
    solution = solver()
    assert math.isclose(solution.approximation, expected, rel_tol=1e-10, abs_tol=1e-10)
    if solution.value is not None:
        assert math.isclose(float(solution.value), expected, rel_tol=1e-10, abs_tol=1e-10)


@pytest.mark.parametrize("solver, expected", SOLVED)
def test_solution_traces_do_the_arithmetic(solver, expected):
    trace = solver().trace
    assert trace.check() is None
    worked = [step for step in trace.steps if step.factor is not None or step.substitution]
    assert worked
    assert not all(step.premise for step in trace.steps)


@pytest.mark.parametrize("solver, expected", SOLVED)
def test_every_solution_draws_its_figure(solver, expected):
    solution = solver()
    drawing = Engine(logging.getLogger("test")).draw_solution(solution)
    assert drawing.construction is solution.construction
    assert drawing.coordinates


def test_the_drawn_unknown_is_the_solved_side():
    solution = solve_sas_obtuse(8, 6, 120)
    drawing = Engine(logging.getLogger("test")).draw_solution(solution)
    (ax, ay), (cx, cy) = drawing.coordinates["A"], drawing.coordinates["C"]
    assert math.hypot(ax - cx, ay - cy) == pytest.approx(solution.approximation, rel=1e-9)


def test_construction_and_generic_rule_agree():
    asa = solve_asa_shared_altitude(30, 45, 6)
    sine = solve_generic(ProblemKind.SINE_RULE, {"alpha": 45, "gamma": 30, "c": 6})
    assert compare(asa.value, sine.value) is Ordering.EQUAL

    sas = solve_sas_obtuse(8, 6, 120)
    cosine = solve_generic(ProblemKind.COSINE_RULE, {"b": 8, "c": 6, "alpha": 120})
    assert compare(sas.value, cosine.value) is Ordering.EQUAL

    nested = solve_sas_obtuse(3, 4, 150)
    cosine = solve_generic(ProblemKind.COSINE_RULE, {"b": 3, "c": 4, "alpha": 150})
    assert compare(nested.squared, cosine.squared) is Ordering.EQUAL


GIVEN_RATIOS = {
    "sin": [Fraction(1, 2), Fraction(3, 5), sqrt_of(2) / 2, SQRT3 / 2],
    "cos": [Fraction(4, 5), Fraction(1, 3), SQRT3 / 2],
    "tan": [Fraction(3, 4), ExactReal.of(1), SQRT3, Fraction(5, 12)],
    "cot": [Fraction(4, 3), SQRT3 / 3, ExactReal.of(2)],
    "sec": [Fraction(5, 4), ExactReal.of(2), sqrt_of(2)],
    "csc": [Fraction(5, 3), Fraction(13, 12), ExactReal.of(2)],
}


@settings(max_examples=150, deadline=None)
@given(
    st.sampled_from(sorted(GIVEN_RATIOS)).flatmap(lambda fn: st.tuples(st.just(fn), st.sampled_from(GIVEN_RATIOS[fn]))),
    st.sampled_from(TRIG_NAMES),
)
def test_converting_there_and_back_returns_the_given_ratio(given_ratio, want_fn):
    given_fn, given_value = given_ratio
    there = solve_ratio(given_fn, given_value, want_fn)
    assert there.value is not None
    back = solve_ratio(want_fn, there.value, given_fn)
    assert back.value == ExactReal.of(given_value)
