"""
The figures every derivation and proof reads its equations from, plus the
registry `render` draws from.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

from gasing_trig.backend.construction import (
    AngleRelation,
    Construction,
    add_perpendicular_point,
    add_ray_point,
    attach,
    chain_length,
    complement_view,
    erect_rectangle,
    new_construction,
    primary_triangle,
    scale_similar,
    segment_key,
    with_chain,
    with_conditions,
    with_relation,
    with_right_angle,
    with_segment,
)
from gasing_trig.backend.exceptions import ConstructionException
from gasing_trig.backend.trigexpr import (
    TrigRational,
    cos,
    length,
    less_than,
    positive,
    sin,
    sum_geometric,
)

logger = logging.getLogger(__name__)


def primary_figure(a: str = "a") -> Construction:
    return attach(new_construction("primary"), primary_triangle(a, ("A", "B", "C")))


def sec_tan_figure(a: str = "a") -> Construction:
    c = primary_figure(a)
    c = attach(c, scale_similar(primary_triangle(a, ("A", "D", "B")), 1 / cos(a)), orientation=-1)
    c = attach(c, scale_similar(primary_triangle(a, ("B", "D", "C")), sin(a) / cos(a)))
    return with_chain(c, "A", "C", "D")


def csc_cot_figure(a: str = "a") -> Construction:
    c = primary_figure(a)
    return attach(c, scale_similar(primary_triangle(a, ("E", "A", "B")), 1 / sin(a)), orientation=-1)


def six_function_figure(a: str = "a") -> Construction:
    """Primary triangle with both derived triangles and the outer triangle EDA."""
    s, k = sin(a), cos(a)
    c = sec_tan_figure(a)
    c = attach(c, scale_similar(primary_triangle(a, ("E", "A", "B")), 1 / s), orientation=-1)
    c = attach(c, scale_similar(primary_triangle(a, ("E", "D", "A")), 1 / (s * k)))
    c = with_chain(c, "D", "B", "E")
    return replace(c, name="six-functions")


figure7 = six_function_figure


def cofunction_figure(a: str = "a") -> Construction:
    """The six-function figure with each triangle also read from its apex."""
    s, k = sin(a), cos(a)
    c = six_function_figure(a)
    for labels, factor, orientation in (
        (("A", "B", "C"), TrigRational.of(1), 1),
        (("E", "A", "B"), 1 / s, -1),
        (("A", "D", "B"), 1 / k, -1),
    ):
        view = complement_view(scale_similar(primary_triangle(a, labels), factor))
        c = attach(c, view, orientation=-orientation)
    return replace(c, name="cofunction")


def sum_figure(a: str = "a", b: str = "b") -> Construction:
    c = new_construction("sum")
    c = attach(c, scale_similar(primary_triangle(b, ("A", "C", "F")), cos(a)))
    c = attach(c, primary_triangle(a, ("A", "B", "C")))
    c = attach(c, scale_similar(primary_triangle(b, ("C", "B", "G")), sin(a)))
    c = with_chain(c, "F", "C", "G")
    c = with_segment(c, "F", "G", chain_length(c, ("F", "C", "G")))
    c = add_ray_point(c, "H", "F", "A", c.length("B", "G"))
    c = with_segment(c, "H", "B", c.length("F", "G"))
    c = with_right_angle(c, "H", "A", "B")
    c = with_chain(c, "A", "H", "F")
    c = with_segment(c, "A", "H", c.length("A", "F") - c.length("H", "F"))
    # H must fall between A and F
    return with_conditions(c, positive(cos(a) * cos(b) - sin(a) * sin(b)))


def difference_figure(a: str = "a", b: str = "b") -> Construction:
    c = new_construction("difference")
    c = attach(c, scale_similar(primary_triangle(a, ("A", "F", "H")), cos(b)))
    c = attach(c, primary_triangle(b, ("A", "B", "F")), orientation=-1)
    c = attach(c, scale_similar(primary_triangle(a, ("B", "F", "G")), sin(b)))
    c = add_ray_point(c, "C", "H", "A", c.length("F", "G"), reverse=True)
    c = with_segment(c, "C", "G", c.length("H", "F"))
    c = with_right_angle(c, "C", "A", "B")
    c = with_chain(c, "C", "B", "G")
    c = with_segment(c, "C", "B", c.length("C", "G") - c.length("B", "G"))
    c = with_chain(c, "A", "H", "C")
    c = with_segment(c, "A", "C", c.length("A", "H") + c.length("H", "C"))
    return with_conditions(c, positive(sin(a) * cos(b) - cos(a) * sin(b)))


def sine_cosine_rule_figure(
    alpha: str = "alpha", gamma: str = "gamma", a: str = "a", c: str = "c"
) -> Construction:
    """Two triangles standing on the shared altitude BD, feet on AC."""
    fig = new_construction("sine-cosine-rule")
    fig = attach(fig, scale_similar(primary_triangle(alpha, ("A", "B", "D")), length(c)))
    fig = attach(
        fig,
        scale_similar(primary_triangle(gamma, ("C", "B", "D")), length(a)),
        orientation=-1,
        constraint=True,
    )
    fig = with_chain(fig, "A", "D", "C")
    return with_segment(fig, "A", "C", chain_length(fig, ("A", "D", "C")))


def extended_base_figure(theta: str = "theta", b: str = "b", d: str = "d", a: str = "a") -> Construction:
    """
    Obtuse triangle ABC with AB = b and BC = d, completed to the right triangle ADC.

    The base AB runs on past B to the foot D of the perpendicular from C, so
    the angle theta at B in BCD is 180deg minus the obtuse angle ABC.
    """
    fig = new_construction("extended-base")
    fig = attach(fig, scale_similar(primary_triangle(theta, ("B", "C", "D")), length(d)))
    fig = add_ray_point(fig, "A", "B", "D", length(b), reverse=True)
    fig = with_chain(fig, "A", "B", "D")
    fig = with_segment(fig, "A", "D", chain_length(fig, ("A", "B", "D")))
    fig = with_right_angle(fig, "D", "A", "C")
    return with_segment(fig, "A", "C", length(a))


def two_sightline_figure(upper: str = "upper", lower: str = "lower", x: str = "x") -> Construction:
    """
    Sight lines from A to the top B of a pole standing on a hill CD.

    Both triangles are the primary triangle scaled to the common leg AC = x.
    """
    fig = new_construction("two-sightlines")
    fig = attach(fig, scale_similar(primary_triangle(lower, ("A", "D", "C")), length(x) / cos(lower)))
    fig = attach(fig, scale_similar(primary_triangle(upper, ("A", "B", "C")), length(x) / cos(upper)))
    fig = with_chain(fig, "C", "D", "B")
    pole = fig.length("C", "B") - fig.length("C", "D")
    fig = with_segment(fig, "D", "B", pole)
    return with_conditions(fig, positive(pole))


def case1_figure(a: str = "a") -> Construction:
    """Four copies of the primary triangle around the unit square EFGH."""
    s, k = sin(a), cos(a)
    c = attach(new_construction("case1"), primary_triangle(a, ("E", "F", "B")))
    c = add_ray_point(c, "C", "B", "F", s + k)
    c = attach(c, primary_triangle(a, ("F", "G", "C")))
    c = add_ray_point(c, "D", "C", "G", s + k)
    c = attach(c, primary_triangle(a, ("G", "H", "D")))
    c = add_ray_point(c, "A", "D", "H", s + k)
    c = attach(c, primary_triangle(a, ("H", "E", "A")))
    c = with_segment(c, "A", "B", s + k)
    for chain in (("B", "F", "C"), ("C", "G", "D"), ("D", "H", "A"), ("A", "E", "B")):
        c = with_chain(c, *chain)
    return c


def case2_figure(a: str = "a") -> Construction:
    """Four copies of the primary triangle inside the unit square ABCD."""
    s, k = sin(a), cos(a)
    c = attach(new_construction("case2"), primary_triangle(a, ("A", "B", "F")))
    c = add_ray_point(c, "G", "B", "F", k)
    c = attach(c, primary_triangle(a, ("B", "C", "G")))
    c = add_ray_point(c, "H", "C", "G", k)
    c = attach(c, primary_triangle(a, ("C", "D", "H")))
    c = add_ray_point(c, "E", "D", "H", k)
    c = attach(c, primary_triangle(a, ("D", "A", "E")))
    for outer, inner, far in (("B", "F", "G"), ("C", "G", "H"), ("D", "H", "E"), ("A", "E", "F")):
        c = with_chain(c, outer, inner, far)
        c = with_segment(c, inner, far, c.length(outer, far) - c.length(outer, inner))
    return with_conditions(c, positive(k - s))


def case3_figure(a: str = "a") -> Construction:
    """The altitude from the right angle splits the primary triangle in two."""
    s, k = sin(a), cos(a)
    c = primary_figure(a)
    c = attach(c, scale_similar(primary_triangle(a, ("A", "C", "D")), k), orientation=-1)
    c = attach(c, scale_similar(primary_triangle(a, ("C", "B", "D")), s), orientation=-1)
    c = with_chain(c, "A", "D", "B")
    return replace(c, name="case3")


def case4_figure(a: str = "a", b: str = "b") -> Construction:
    """
    Unit circle around A with the chord DE perpendicular to the diameter BC.

    The half chords FE and DF both measure cos(a); b is the inscribed angle
    at E over FC, fixed by tan(b) = FC/EF.
    """
    s, k = sin(a), cos(a)
    c = attach(new_construction("case4"), primary_triangle(a, ("D", "A", "F")))
    c = add_ray_point(c, "C", "A", "F", 1)
    c = add_ray_point(c, "B", "A", "F", 1, reverse=True)
    c = add_ray_point(c, "E", "F", "D", k, reverse=True)
    c = with_chain(c, "B", "A", "F", "C")
    c = with_chain(c, "D", "F", "E")
    c = with_segment(c, "F", "C", 1 - s)
    c = with_segment(c, "B", "F", 1 + s)
    c = with_segment(c, "B", "C", 2)
    c = with_segment(c, "D", "E", 2 * k)
    c = with_relation(
        c, AngleRelation(b, "tangent", opposite=segment_key("F", "C"), adjacent=segment_key("E", "F"))
    )
    c = attach(
        c,
        scale_similar(primary_triangle(b, ("E", "C", "F")), cos(a) / cos(b)),
        constraint=True,
    )
    c = attach(
        c,
        scale_similar(primary_triangle(b, ("B", "D", "F")), cos(a) / sin(b)),
        orientation=-1,
        constraint=True,
    )
    # AF lies inside the radius; recorded, the algebra never uses it
    return with_conditions(c, less_than(s, 1))


def case5_figure(a: str = "a") -> Construction:
    s, k = sin(a), cos(a)
    small = (1 - s) / k
    c = attach(new_construction("case5"), primary_triangle(a, ("D", "A", "F")))
    c = add_ray_point(c, "C", "A", "F", 1)
    c = with_chain(c, "A", "F", "C")
    c = with_segment(c, "F", "C", 1 - s)
    c = attach(c, primary_triangle(a, ("C", "A", "E")), orientation=-1)
    c = with_chain(c, "A", "E", "D")
    c = with_segment(c, "E", "D", 1 - s)
    c = attach(c, scale_similar(primary_triangle(a, ("D", "G", "E")), small), orientation=-1)
    c = attach(c, scale_similar(primary_triangle(a, ("C", "G", "F")), small))
    c = with_chain(c, "E", "G", "C")
    return with_chain(c, "D", "G", "F")


def case6_figure(a: str = "a") -> Construction:
    """Squares on the three sides of the primary triangle, split by the altitude CK."""
    s, k = sin(a), cos(a)
    c = primary_figure(a)
    c = erect_rectangle(c, "A", "B", 1, names=("D", "E"))
    c = erect_rectangle(c, "A", "C", k, names=("I", "H"), orientation=-1)
    c = erect_rectangle(c, "C", "B", s, names=("F", "G"), orientation=-1)
    c = attach(c, scale_similar(primary_triangle(a, ("A", "C", "K")), k), orientation=-1)
    c = attach(c, scale_similar(primary_triangle(a, ("C", "B", "K")), s), orientation=-1)
    c = add_perpendicular_point(c, "J", "K", "A", "B", 1)
    c = with_segment(c, "E", "J", c.length("A", "K"))
    c = with_segment(c, "J", "D", c.length("K", "B"))
    c = with_right_angle(c, "K", "A", "J")
    c = with_right_angle(c, "J", "K", "D")
    c = with_chain(c, "A", "K", "B")
    c = with_chain(c, "E", "J", "D")
    return replace(c, name="case6")


def case7_figure(a: str = "a") -> Construction:
    """Trapezoid ACHG from two copies of the primary triangle meeting at B."""
    s, k = sin(a), cos(a)
    c = primary_figure(a)
    c = add_ray_point(c, "H", "B", "C", k, reverse=True)
    c = attach(c, primary_triangle(a, ("B", "G", "H")))
    c = with_right_angle(c, "B", "A", "G")
    c = with_chain(c, "C", "B", "H")
    c = with_segment(c, "C", "H", s + k)
    return replace(c, name="case7")


def case8_series(a: str = "a") -> dict[str, tuple[TrigRational, TrigRational]]:
    """(first term, ratio) of the geometric series for EA and for EB - 1."""
    s, k = sin(a), cos(a)
    ratio = s**2 / k**2
    return {"EA": (2 * s / k, ratio), "EB": (2 * s**2 / k**2, ratio)}


def case8_figure(a: str = "a") -> Construction:
    """
    Triangles shrinking by tan(a)^2 inside the right angle at A.

    EA and EB are closed forms of the geometric series the triangles tile;
    the series converge only for a below 45deg.
    """
    s, k = sin(a), cos(a)
    series = case8_series(a)
    ea, ea_conditions = sum_geometric(*series["EA"])
    tail, eb_conditions = sum_geometric(*series["EB"])
    eb = 1 + tail
    c = attach(new_construction("case8"), primary_triangle(a, ("B", "A", "G")))
    c = attach(c, primary_triangle(a, ("B", "C", "G")), orientation=-1)
    c = with_chain(c, "A", "G", "C")
    c = with_segment(c, "A", "C", 2 * s)
    c = attach(c, scale_similar(primary_triangle(a, ("A", "D", "C")), 2 * s / k))
    c = attach(c, scale_similar(primary_triangle(a, ("C", "F", "D")), 2 * s**2 / k**2), orientation=-1)
    c = add_ray_point(c, "E", "A", "D", ea)
    c = with_segment(c, "B", "E", eb)
    c = with_segment(c, "D", "E", ea - c.length("A", "D"))
    c = with_segment(c, "F", "E", eb - c.length("B", "C") - c.length("C", "F"))
    c = with_chain(c, "A", "D", "E")
    c = with_chain(c, "B", "C", "F", "E")
    c = with_right_angle(c, "A", "B", "E")
    return with_conditions(c, *ea_conditions, *eb_conditions)


def double_angle_figure(a: str = "a", doubled: str = "a2") -> Construction:
    """
    Chord AC of the unit circle around B, seen from B at twice the angle.

    The angle at B over OC is `doubled` = 2*a; triangle CAO reads the same
    segment OC as 2*sin(a)*cos(a).
    """
    s = sin(a)
    c = attach(new_construction("double-angle"), primary_triangle(doubled, ("B", "C", "O")))
    c = add_ray_point(c, "A", "B", "O", 1)
    c = with_chain(c, "B", "O", "A")
    c = attach(c, primary_triangle(a, ("B", "A", "G")), orientation=-1)
    c = attach(c, primary_triangle(a, ("B", "C", "G")))
    c = with_chain(c, "A", "G", "C")
    c = with_segment(c, "A", "C", 2 * s)
    view = scale_similar(complement_view(primary_triangle(a, ("C", "A", "O"))), 2 * s)
    c = attach(c, view, constraint=True)
    c = with_relation(c, AngleRelation(doubled, "multiple", base=a, factor=2))
    return with_conditions(c, positive(cos(doubled)))


@dataclass(frozen=True)
class FigureEntry:
    name: str
    build: Callable[[], Construction]
    # angles the caller supplies; dependent angles come from the figure
    angles: tuple[str, ...] = ("a",)
    lengths: Callable[[Mapping[str, float]], dict[str, float]] | None = None
    description: str = ""
    aliases: tuple[str, ...] = field(default=())


def _rule_lengths(angles: Mapping[str, float]) -> dict[str, float]:
    return {"c": 1.0, "a": math.sin(angles["alpha"]) / math.sin(angles["gamma"])}


def _extended_base_lengths(angles: Mapping[str, float]) -> dict[str, float]:
    # b = d = 1
    theta = angles["theta"]
    return {"b": 1.0, "d": 1.0, "a": math.hypot(1 + math.cos(theta), math.sin(theta))}


FIGURES: tuple[FigureEntry, ...] = (
    FigureEntry("primary", primary_figure, description="the unit-hypotenuse triangle"),
    FigureEntry("sec-tan", sec_tan_figure, description="primary triangle scaled by 1/cos(a)"),
    FigureEntry("csc-cot", csc_cot_figure, description="primary triangle scaled by 1/sin(a)"),
    FigureEntry(
        "six-functions",
        six_function_figure,
        description="all six functions as segments of one figure",
        aliases=("figure7",),
    ),
    FigureEntry("sum", sum_figure, ("a", "b"), description="sine and cosine of a + b"),
    FigureEntry("difference", difference_figure, ("a", "b"), description="sine and cosine of a - b"),
    FigureEntry(
        "sine-cosine-rule",
        sine_cosine_rule_figure,
        ("alpha", "gamma"),
        _rule_lengths,
        description="two triangles on a shared altitude",
    ),
    FigureEntry(
        "extended-base",
        extended_base_figure,
        ("theta",),
        _extended_base_lengths,
        description="obtuse triangle completed to a right triangle",
    ),
    FigureEntry(
        "two-sightlines",
        two_sightline_figure,
        ("upper", "lower"),
        lambda angles: {"x": 1.0},
        description="pole on a hill seen along two sight lines",
    ),
    FigureEntry("cofunction", cofunction_figure, description="the six-function figure read from 90deg - a"),
    FigureEntry("case1", case1_figure, description="square on the sum of the legs"),
    FigureEntry("case2", case2_figure, description="unit square around the square on the leg difference"),
    FigureEntry("case3", case3_figure, description="altitude on the hypotenuse"),
    FigureEntry("case4", case4_figure, description="chord perpendicular to a diameter"),
    FigureEntry("case5", case5_figure, description="similar triangles inside a unit circle"),
    FigureEntry("case6", case6_figure, description="squares on the three sides"),
    FigureEntry("case7", case7_figure, description="trapezoid from two primary triangles"),
    FigureEntry("case8", case8_figure, description="geometric series of similar triangles"),
    FigureEntry("double-angle", double_angle_figure, description="inscribed angle over a chord"),
)


def figure_names() -> list[str]:
    return [entry.name for entry in FIGURES]


def figure(name: str) -> FigureEntry:
    for entry in FIGURES:
        if name == entry.name or name in entry.aliases:
            return entry
    raise ConstructionException(
        f"unknown figure {name!r}; choose from {', '.join(figure_names())}"
    )
