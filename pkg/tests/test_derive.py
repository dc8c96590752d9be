import math
import random

import pytest

from gasing_trig.backend.angles import Angle
from gasing_trig.backend.derive import (
    DERIVATIONS,
    cofunction,
    cosine_rule,
    derivation,
    derived_functions,
    difference_formulas,
    double_angle,
    quadrant_signed,
    quadrant_table,
    sine_rule,
    sum_formulas,
)
from gasing_trig.backend.exactnum import sqrt_of
from gasing_trig.backend.trigexpr import const, cos, eval_numeric, expr_equals, length, sin

s, c = sin("a"), cos("a")
sb, cb = sin("b"), cos("b")


def test_derived_functions():
    d = derived_functions()
    assert expr_equals(d["tan(a)"].rhs, s / c)
    assert expr_equals(d["sec(a)"].rhs, 1 / c)
    assert expr_equals(d["cot(a)"].rhs, c / s)
    assert expr_equals(d["csc(a)"].rhs, 1 / s)
    assert eval_numeric(d["sec(a)"].rhs, {"a": math.pi / 3}) == pytest.approx(2.0, abs=1e-12)
    assert [cond.render() for cond in d["csc(a)"].conditions] == ["sin(a) != 0"]
    assert d.trace.check() is None


def test_derived_functions_scale_the_primary_triangle():
    steps = derived_functions().trace.steps
    scalings = [step for step in steps if step.factor is not None]
    assert [step.label for step in scalings] == ["tan(a)", "sec(a)", "cot(a)", "csc(a)"]
    assert expr_equals(scalings[0].factor, 1 / c)
    assert expr_equals(scalings[2].factor, 1 / s)
    for step in steps:
        assert not expr_equals(step.lhs, step.rhs)


def test_sum_formulas():
    d = sum_formulas()
    assert expr_equals(d["sin(a+b)"].rhs, s * cb + c * sb)
    assert expr_equals(d["cos(a+b)"].rhs, c * cb - s * sb)
    angles = {"a": 0.3, "b": 0.4}
    assert eval_numeric(d["sin(a+b)"].rhs, angles) == pytest.approx(math.sin(0.7), abs=1e-12)
    assert eval_numeric(d["cos(a+b)"].rhs, angles) == pytest.approx(math.cos(0.7), abs=1e-12)
    assert not d.trace.identity_dependent


def test_difference_formulas():
    d = difference_formulas()
    assert expr_equals(d["sin(a-b)"].rhs, s * cb - c * sb)
    assert expr_equals(d["cos(a-b)"].rhs, c * cb + s * sb)
    angles = {"a": 0.6, "b": 0.2}
    assert eval_numeric(d["sin(a-b)"].rhs, angles) == pytest.approx(math.sin(0.4), abs=1e-12)
    assert d.trace.check() is None


def test_double_angle_forms():
    d = double_angle()
    assert expr_equals(d["sin(2a)"].rhs, 2 * s * c)
    forms = d.forms("cos(2a)")
    assert len(forms) == 3
    assert expr_equals(forms[0].rhs, c * c - s * s)
    assert not forms[0].identity_dependent
    assert all(f.identity_dependent for f in forms[1:])
    assert expr_equals(forms[2].rhs, 1 - 2 * s * s)
    assert d.trace.identity_dependent
    assert d.trace.check() is None


def test_double_angle_forms_agree_numerically():
    rng = random.Random(2)
    forms = double_angle().forms("cos(2a)")
    for _ in range(100):
        angle = rng.uniform(-math.pi, math.pi)
        for form in forms:
            value = eval_numeric(form.rhs, {"a": angle})
            assert value == pytest.approx(math.cos(2 * angle), abs=1e-12)


def test_sine_rule():
    formula = sine_rule().formulas[0]
    assert formula.lhs is not None
    assert expr_equals(formula.lhs, length("a") / sin("alpha"))
    assert expr_equals(formula.rhs, length("c") / sin("gamma"))
    rendered = {cond.render() for cond in formula.conditions}
    assert {"sin(alpha) != 0", "sin(gamma) != 0"} <= rendered


def test_cosine_rule():
    d = cosine_rule()
    formula = d["a^2"]
    b, cc = length("b"), length("c")
    assert expr_equals(formula.rhs, b * b + cc * cc - 2 * b * cc * cos("alpha"))
    assert formula.identity_dependent
    value = eval_numeric(formula.rhs, {"alpha": math.radians(120)}, {"b": 8.0, "c": 6.0})
    assert math.sqrt(value) == pytest.approx(float(2 * sqrt_of(37)), abs=1e-9)
    assert d.trace.check() is None


def test_cofunction():
    d = cofunction()
    assert expr_equals(d["sin(90deg - a)"].rhs, c)
    assert expr_equals(d["cos(90deg - a)"].rhs, s)
    assert expr_equals(d["tan(90deg - a)"].rhs, c / s)
    assert expr_equals(d["sec(90deg - a)"].rhs, 1 / s)
    assert expr_equals(d["cot(90deg - a)"].rhs, s / c)
    assert expr_equals(d["csc(90deg - a)"].rhs, 1 / c)


@pytest.mark.parametrize(
    "quadrant, cos_sign, sin_sign",
    [(1, 1, 1), (2, -1, 1), (3, -1, -1), (4, 1, -1)],
)
def test_quadrant_signs(quadrant, cos_sign, sin_sign):
    angle = Angle("a", quadrant)
    d = quadrant_signed(angle)
    assert expr_equals(d[f"cos({angle.render()})"].rhs, cos_sign * c)
    assert expr_equals(d[f"sin({angle.render()})"].rhs, sin_sign * s)
    radians = {1: 0.3, 2: math.pi - 0.3, 3: math.pi + 0.3, 4: 2 * math.pi - 0.3}[quadrant]
    assert cos_sign * math.cos(0.3) == pytest.approx(math.cos(radians), abs=1e-12)


def test_thirty_degrees_in_the_fourth_quadrant():
    d = quadrant_signed(Angle(30, 4))
    assert d["cos(360deg - 30deg)"].rhs == const(sqrt_of(3) / 2)
    assert d["sin(360deg - 30deg)"].rhs == const(-1) / 2


def test_quadrant_table_covers_all_quadrants():
    d = quadrant_table()
    assert len(d.formulas) == 8
    assert len(d.trace) == 8
    assert expr_equals(d["cos(180deg + a)"].rhs, -c)


def test_formulas_agree_with_machine_trig():
    rng = random.Random(7)
    expected = {
        "tan(a)": lambda a, b: math.tan(a),
        "sec(a)": lambda a, b: 1 / math.cos(a),
        "cot(a)": lambda a, b: 1 / math.tan(a),
        "csc(a)": lambda a, b: 1 / math.sin(a),
        "sin(a+b)": lambda a, b: math.sin(a + b),
        "cos(a+b)": lambda a, b: math.cos(a + b),
        "sin(a-b)": lambda a, b: math.sin(a - b),
        "cos(a-b)": lambda a, b: math.cos(a - b),
        "sin(2a)": lambda a, b: math.sin(2 * a),
        "cos(2a)": lambda a, b: math.cos(2 * a),
        "tan(90deg - a)": lambda a, b: math.tan(math.pi / 2 - a),
        "sec(90deg - a)": lambda a, b: 1 / math.cos(math.pi / 2 - a),
    }
    formulas = [
        f
        for d in (derived_functions(), sum_formulas(), difference_formulas(), double_angle(), cofunction())
        for f in d.formulas
        if f.lhs_name in expected
    ]
    assert {f.lhs_name for f in formulas} == set(expected)
    for _ in range(1000):
        # acute angles keep every side condition away from zero
        a, b = rng.uniform(1e-3, math.pi / 2 - 1e-3), rng.uniform(1e-3, math.pi / 2 - 1e-3)
        for f in formulas:
            value = eval_numeric(f.rhs, {"a": a, "b": b})
            assert value == pytest.approx(expected[f.lhs_name](a, b), rel=1e-12, abs=1e-12)


def test_every_registered_derivation_checks():
    for name in DERIVATIONS:
        d = derivation(name)
        assert d.name == name
        assert d.trace.check() is None


def test_unknown_derivation():
    with pytest.raises(ValueError):
        derivation("half-angle")
