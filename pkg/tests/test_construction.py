import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gasing_trig.backend.construction import (
    ScaleFactor,
    attach,
    chain_equation,
    complement_view,
    layout,
    new_construction,
    primary_triangle,
    scale_similar,
    segment_key,
    with_segment,
)
from gasing_trig.backend.exceptions import ConstructionException, LayoutException
from gasing_trig.backend.figures import primary_figure, six_function_figure, sum_figure
from gasing_trig.backend.trigexpr import TrigRational, const, cos, eval_numeric, expr_equals, sin

s, c = sin("a"), cos("a")


def test_primary_triangle_sides():
    t = primary_triangle("a", ("A", "B", "C"))
    sides = t.sides()
    assert sides[segment_key("A", "B")] == const(1)
    assert sides[segment_key("B", "C")] == s
    assert sides[segment_key("A", "C")] == c
    opp, adj = eval_numeric(t.opp, {"a": 0.7}), eval_numeric(t.adj, {"a": 0.7})
    assert opp**2 + adj**2 == pytest.approx(1.0, abs=1e-15)


def test_primary_triangle_needs_distinct_labels():
    with pytest.raises(ConstructionException):
        primary_triangle("a", ("A", "A", "C"))


def test_scale_to_the_sec_tan_triangle():
    t = scale_similar(primary_triangle("a", ("A", "D", "B")), 1 / c)
    assert t.hyp == 1 / c
    assert t.opp == s / c
    assert t.adj == const(1)
    assert [cond.render() for cond in t.conditions] == ["cos(a) != 0"]


def test_scale_to_the_csc_cot_triangle():
    t = scale_similar(primary_triangle("a", ("E", "A", "B")), 1 / s)
    assert t.hyp == 1 / s
    assert t.adj == c / s


def test_scale_by_one_and_by_zero():
    t = primary_triangle("a", ("A", "B", "C"))
    same = scale_similar(t, 1)
    assert (same.hyp, same.opp, same.adj) == (t.hyp, t.opp, t.adj)
    with pytest.raises(ConstructionException):
        scale_similar(t, 0)


def test_complement_view_swaps_the_legs():
    view = complement_view(primary_triangle("a", ("A", "B", "C")))
    assert view.labels == ("B", "A", "C")
    assert view.opp == c
    assert view.angle_text() == "90deg - a"


def test_glued_edge_mismatch_is_rejected():
    fig = primary_figure()
    with pytest.raises(ConstructionException):
        attach(fig, scale_similar(primary_triangle("a", ("A", "B", "C")), c))


def test_gluing_with_a_constraint_records_both_lengths():
    fig = primary_figure()
    fig = attach(fig, scale_similar(primary_triangle("a", ("A", "B", "C")), c), constraint=True)
    assert fig.constraint("A", "B").first == const(1)
    assert fig.constraint("A", "B").second == c


def test_sum_figure_reads_cos_a_sin_b():
    fig = sum_figure()
    assert fig.length("F", "C") == cos("a") * sin("b")


def test_figure_seven_segments():
    fig = six_function_figure()
    assert fig.length("C", "D") == s * s / c
    assert fig.length("D", "E") == 1 / (c * s)
    assert fig.length("D", "B") == s / c


def test_chain_equations_of_figure_seven():
    fig = six_function_figure()
    whole, parts = chain_equation(fig, ("A", "C", "D"))
    assert whole == 1 / c
    assert parts == c + s * s / c
    whole, parts = chain_equation(fig, ("D", "B", "E"))
    assert whole == 1 / (s * c)
    assert parts == s / c + c / s
    for angle in (math.pi / 6, 0.2, 1.1):
        for chain in (("A", "C", "D"), ("D", "B", "E")):
            whole, parts = chain_equation(fig, chain)
            assert eval_numeric(whole - parts, {"a": angle}) == pytest.approx(0.0, abs=1e-12)


def test_two_point_chain_is_trivial():
    fig = primary_figure()
    whole, parts = chain_equation(fig, ("A", "B"))
    assert whole == parts


def test_with_segment_rejects_a_second_length():
    fig = primary_figure()
    assert with_segment(fig, "A", "B", 1) is fig
    with pytest.raises(ConstructionException):
        with_segment(fig, "A", "B", 2)


def test_unknown_segment():
    with pytest.raises(ConstructionException):
        primary_figure().length("A", "Z")


def test_layout_of_the_primary_triangle():
    coords = layout(primary_figure(), {"a": math.pi / 6})
    assert math.dist(coords["A"], coords["B"]) == pytest.approx(1.0, abs=1e-12)
    assert math.dist(coords["B"], coords["C"]) == pytest.approx(0.5, abs=1e-12)
    assert math.dist(coords["A"], coords["C"]) == pytest.approx(math.sqrt(3) / 2, abs=1e-12)


def test_degenerate_angle_is_rejected():
    with pytest.raises(LayoutException):
        layout(six_function_figure(), {"a": 0.0})
    with pytest.raises(LayoutException):
        layout(primary_figure(), {"a": 0.0})


def test_triangle_must_share_a_point_with_the_figure():
    with pytest.raises(ConstructionException):
        attach(primary_figure(), primary_triangle("a", ("X", "Y", "Z")))
    assert new_construction("empty").points == ()


# property suites

factors = st.fractions(min_value=-50, max_value=50, max_denominator=20).filter(lambda q: q != 0)


@settings(max_examples=500)
@given(factors, factors)
def test_scaling_preserves_ratios_and_composes(k1, k2):
    t = primary_triangle("a", ("A", "B", "C"))
    once = scale_similar(t, ScaleFactor.of(TrigRational.of(k1) * c))
    twice = scale_similar(once, k2)
    direct = scale_similar(t, TrigRational.of(k1 * k2) * c)
    assert expr_equals(twice.opp / twice.hyp, t.opp / t.hyp)
    assert expr_equals(twice.adj / twice.hyp, t.adj / t.hyp)
    assert (twice.hyp, twice.opp, twice.adj) == (direct.hyp, direct.opp, direct.adj)
