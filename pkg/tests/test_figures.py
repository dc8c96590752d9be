import math
import random

import pytest

from gasing_trig.backend.construction import layout, resolve_angles
from gasing_trig.backend.exceptions import ConstructionException, LayoutException
from gasing_trig.backend.figures import FIGURES, case8_series, figure, figure7, figure_names
from gasing_trig.backend.trigexpr import cos, eval_numeric, expr_equals, sin, sum_geometric

SAMPLES = 20


def sample_angles(name: str, rng: random.Random) -> dict[str, float]:
    if name == "difference":
        return {"a": rng.uniform(0.4, 0.7), "b": rng.uniform(0.1, 0.35)}
    if name == "sine-cosine-rule":
        return {"alpha": rng.uniform(0.2, 1.2), "gamma": rng.uniform(0.2, 1.2)}
    angles = {angle: rng.uniform(0.1, 0.7) for angle in figure(name).angles}
    return angles


def test_registry_names_and_aliases():
    assert figure("figure7").name == "six-functions"
    assert figure7().name == "six-functions"
    assert "case8" in figure_names()
    assert len(figure_names()) == len(set(figure_names()))
    with pytest.raises(ConstructionException):
        figure("figure99")


@pytest.mark.parametrize("name", [entry.name for entry in FIGURES])
def test_layout_distances_match_the_symbolic_lengths(name):
    entry = figure(name)
    construction = entry.build()
    rng = random.Random(name)
    for _ in range(SAMPLES):
        angles = sample_angles(name, rng)
        lengths = entry.lengths(angles) if entry.lengths is not None else None
        coords = layout(construction, angles, lengths)
        resolved = resolve_angles(construction, angles, lengths)
        for (p, q), expr in construction.segment_items():
            expected = eval_numeric(expr, resolved, lengths)
            assert math.dist(coords[p], coords[q]) == pytest.approx(expected, rel=1e-9, abs=1e-9)


def test_case4_resolves_the_inscribed_angle():
    construction = figure("case4").build()
    resolved = resolve_angles(construction, {"a": 0.5})
    # the inscribed angle is half the central angle over the same arc
    assert resolved["b"] == pytest.approx((math.pi / 2 - 0.5) / 2, abs=1e-12)


def test_double_angle_resolves_the_doubled_angle():
    construction = figure("double-angle").build()
    assert resolve_angles(construction, {"a": 0.3})["a2"] == pytest.approx(0.6)


def test_case8_needs_an_angle_below_45_degrees():
    with pytest.raises(LayoutException):
        layout(figure("case8").build(), {"a": 0.9})


def test_case8_series_closed_forms():
    s, c = sin("a"), cos("a")
    first, ratio = case8_series()["EA"]
    closed, _ = sum_geometric(first, ratio)
    assert expr_equals(closed, 2 * s * c / (c**2 - s**2))
    first, ratio = case8_series()["EB"]
    tail, _ = sum_geometric(first, ratio)
    assert expr_equals(1 + tail, (c**2 + s**2) / (c**2 - s**2))


def test_sum_figure_needs_an_acute_total():
    with pytest.raises(LayoutException):
        layout(figure("sum").build(), {"a": 0.9, "b": 0.9})
