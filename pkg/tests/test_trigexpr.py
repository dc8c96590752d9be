import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gasing_trig.backend.exactnum import sqrt_of
from gasing_trig.backend.exceptions import (
    CircularReasoningException,
    DegenerateSeriesException,
    DivisionByZeroException,
    EvaluationException,
)
from gasing_trig.backend.trigexpr import (
    Kind,
    Symbol,
    TrigMonomial,
    TrigPoly,
    TrigRational,
    const,
    cos,
    eval_numeric,
    expr_equals,
    free_mode,
    ideal_reduce,
    length,
    membership_certificate,
    nonzero,
    partial_sum,
    poly_arith,
    pythagorean_generator,
    recompose,
    reduction_count,
    sin,
    sum_geometric,
)

s, c = sin("a"), cos("a")
sb, cb = sin("b"), cos("b")
CA = Symbol("a", Kind.COS)
GENERATOR = pythagorean_generator("a")


def test_free_ring_keeps_the_square_sum():
    square_sum = c**2 + s**2
    assert not expr_equals(square_sum, const(1))
    assert square_sum.render() == "cos(a)^2 + sin(a)^2"


def test_product_of_sums_expands():
    product, conditions = poly_arith(c + s, c + s, "mul")
    assert expr_equals(product, c * c + 2 * s * c + s * s)
    assert conditions == ()


def test_tan_plus_cot_over_common_denominator():
    result, conditions = poly_arith(s / c, c / s, "add")
    assert expr_equals(result, (s * s + c * c) / (s * c))
    assert {cond.render() for cond in conditions} == {"cos(a) != 0", "sin(a) != 0"}


def test_adding_zero():
    result, _ = poly_arith(s + c, const(0), "add")
    assert result == s + c


def test_division_by_structural_zero():
    with pytest.raises(DivisionByZeroException):
        poly_arith(s, const(0), "div")


def test_expr_equals_by_cross_multiplication():
    assert expr_equals(s / c, (s * sb) / (c * sb))
    assert expr_equals((1 - s * s) / (1 + s), 1 - s)


def test_quotients_cancel_common_factors():
    assert ((1 - s * s) / (1 + s)).render() == "-sin(a) + 1"
    assert ((s * sb) / (c * sb)).render() == "sin(a)/cos(a)"


def test_render_of_quotients():
    assert (1 / (s * c)).render() == "1/(cos(a)*sin(a))"
    assert (s * s / c).render() == "sin(a)^2/cos(a)"
    assert (const(sqrt_of(3)) / 2).render() == "sqrt(3)/2"


def test_ideal_reduce_of_the_generator():
    remainder, cofactors = ideal_reduce(GENERATOR)
    assert remainder.is_zero
    assert cofactors == {"a": TrigPoly.constant(1)}


def test_ideal_reduce_cos_fourth():
    remainder, _ = ideal_reduce(TrigPoly.symbol(CA) ** 4)
    expected = (1 - s * s) ** 2
    assert remainder == expected.num


def test_ideal_reduce_double_angle_cosine():
    remainder, cofactors = ideal_reduce((c * c - s * s).num)
    assert remainder == (1 - 2 * s * s).num
    assert recompose(remainder, cofactors) == (c * c - s * s).num


def test_membership_certificates():
    assert membership_certificate(GENERATOR) == {"a": TrigPoly.constant(1)}
    assert membership_certificate(TrigPoly.symbol(CA) * GENERATOR) == {"a": TrigPoly.symbol(CA)}
    assert membership_certificate((c * c + s * s).num) is None


def test_free_mode_refuses_reduction():
    before = reduction_count()
    with free_mode():
        with pytest.raises(CircularReasoningException):
            ideal_reduce(GENERATOR)
    assert reduction_count() == before
    ideal_reduce(GENERATOR)
    assert reduction_count() == before + 1


def test_geometric_series_closed_forms():
    closed, conditions = sum_geometric(2 * s / c, s * s / (c * c))
    assert expr_equals(closed, 2 * s * c / (c * c - s * s))
    assert "sin(a)^2/cos(a)^2 < 1" in {cond.render() for cond in conditions}

    closed, _ = sum_geometric(2 * s * s / (c * c), s * s / (c * c))
    assert expr_equals(closed, 2 * s * s / (c * c - s * s))

    closed, conditions = sum_geometric(const(1), const(0))
    assert closed == const(1)
    assert [cond.render() for cond in conditions] == ["0 < 1"]

    # a constant ratio is not judged here; its convergence is the recorded assumption
    closed, conditions = sum_geometric(s, const(2))
    assert expr_equals(closed, -s)
    assert "2 < 1" in {cond.render() for cond in conditions}


def test_geometric_series_with_ratio_one():
    with pytest.raises(DegenerateSeriesException):
        sum_geometric(s, const(1))
    with pytest.raises(DegenerateSeriesException):
        sum_geometric(s, s / s)


def test_partial_sums_approach_the_closed_form():
    closed, _ = sum_geometric(2 * s / c, s * s / (c * c))
    angles = {"a": math.pi / 6}
    gaps = [abs(eval_numeric(partial_sum(2 * s / c, s * s / (c * c), n) - closed, angles)) for n in (5, 10, 20)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-9


def test_eval_numeric_examples():
    assert eval_numeric(s * cb + c * sb, {"a": math.pi / 6, "b": math.pi / 6}) == pytest.approx(0.8660254, abs=1e-7)
    assert eval_numeric(c * c + s * s, {"a": 1.234}) == pytest.approx(1.0, abs=1e-15)
    assert eval_numeric(1 / (s * c), {"a": math.pi / 4}) == pytest.approx(2.0, abs=1e-12)
    assert eval_numeric(length("a") * s, {"a": 0.5}, {"a": 2.0}) == pytest.approx(2 * math.sin(0.5))


def test_eval_numeric_names_the_violated_condition():
    with pytest.raises(EvaluationException, match="sin\\(a\\) != 0"):
        eval_numeric(1 / s, {"a": 0.0})
    with pytest.raises(EvaluationException, match="angle b"):
        eval_numeric(sb, {"a": 0.0})


def test_side_condition_holds():
    assert nonzero(c).holds({"a": 0.3})
    assert not nonzero(c).holds({"a": math.pi / 2}, margin=1e-12)


# property suites

symbols = st.sampled_from(
    [Symbol("a", Kind.COS), Symbol("a", Kind.SIN), Symbol("b", Kind.COS), Symbol("b", Kind.SIN)]
)
monomials = st.dictionaries(symbols, st.integers(min_value=0, max_value=4), max_size=3).map(TrigMonomial.of)
polys = st.lists(st.tuples(monomials, st.integers(min_value=-9, max_value=9)), max_size=6).map(TrigPoly.from_terms)


@settings(max_examples=500)
@given(polys)
def test_ideal_reduce_recomposes(p):
    remainder, cofactors = ideal_reduce(p)
    assert recompose(remainder, cofactors) == p
    for monomial, _ in remainder.terms:
        for symbol, exponent in monomial.powers:
            if symbol.kind is Kind.COS:
                assert exponent <= 1


@settings(max_examples=200)
@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero


@settings(max_examples=200)
@given(polys, st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3))
def test_reduction_agrees_numerically(p, a, b):
    values = {"a": a, "b": b}
    expected = eval_numeric(TrigRational(p), values)
    reduced = eval_numeric(TrigRational(ideal_reduce(p).remainder), values)
    assert reduced == pytest.approx(expected, rel=1e-9, abs=1e-9)
