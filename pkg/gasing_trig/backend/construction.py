"""
Labeled right-triangle figures with symbolic side lengths.

A Construction is built by gluing Gasing triangles onto each other and by
adding points along rays. Lengths are exact expressions; collinearity and
right angles are asserted by whoever builds the figure, and `layout` checks
all of them numerically once concrete angle values are known.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass, field
from typing import Literal, Mapping

from gasing_trig.backend.exceptions import (
    ConstructionException,
    GasingException,
    LayoutException,
)
from gasing_trig.backend.trigexpr import (
    ConditionKind,
    SideCondition,
    TrigRational,
    conditions_of,
    cos,
    eval_numeric,
    expr_equals,
    merge_conditions,
    nonzero_conditions,
    sin,
)

logger = logging.getLogger(__name__)

Point = str
Segment = tuple[Point, Point]
Coordinates = dict[Point, tuple[float, float]]

# relative tolerance for lengths, absolute for angles in radians
LAYOUT_TOLERANCE = 1e-9
DEGENERATE = 1e-12


def segment_key(p: Point, q: Point) -> Segment:
    if p == q:
        raise ConstructionException(f"segment {p}{q} has coincident endpoints")
    return (p, q) if p < q else (q, p)


@dataclass(frozen=True, eq=False)
class ScaleFactor:
    value: TrigRational
    conditions: tuple[SideCondition, ...] = ()

    @classmethod
    def of(cls, value: object) -> ScaleFactor:
        factor = TrigRational.of(value)
        if factor.is_zero:
            raise ConstructionException("scale factor must not be zero")
        return cls(factor, merge_conditions(conditions_of(factor), nonzero_conditions(factor.num)))


@dataclass(frozen=True, eq=False)
class GasingTriangle:
    """
    Right triangle with labels (base, apex, right-angle vertex).

    The angle sits at the base vertex; `complementary` marks a triangle read
    from its apex, whose base angle is then 90deg minus the named angle.
    """

    labels: tuple[Point, Point, Point]
    angle: str
    hyp: TrigRational
    opp: TrigRational
    adj: TrigRational
    conditions: tuple[SideCondition, ...] = ()
    complementary: bool = False

    @property
    def base(self) -> Point:
        return self.labels[0]

    @property
    def apex(self) -> Point:
        return self.labels[1]

    @property
    def right(self) -> Point:
        return self.labels[2]

    @property
    def name(self) -> str:
        return "".join(self.labels)

    def angle_text(self) -> str:
        return f"90deg - {self.angle}" if self.complementary else self.angle

    def sine(self) -> TrigRational:
        """sin of the base angle as a ratio of the primary functions."""
        return cos(self.angle) if self.complementary else sin(self.angle)

    def cosine(self) -> TrigRational:
        return sin(self.angle) if self.complementary else cos(self.angle)

    def sides(self) -> dict[Segment, TrigRational]:
        base, apex, right = self.labels
        return {
            segment_key(base, apex): self.hyp,
            segment_key(apex, right): self.opp,
            segment_key(base, right): self.adj,
        }


def _check_labels(names: tuple[Point, Point, Point]) -> None:
    if len(names) != 3 or len(set(names)) != 3:
        raise ConstructionException(f"a triangle needs three distinct labels, got {names}")


def primary_triangle(angle: str, names: tuple[Point, Point, Point]) -> GasingTriangle:
    _check_labels(names)
    return GasingTriangle(tuple(names), angle, TrigRational.of(1), sin(angle), cos(angle))  # type: ignore[arg-type]


def scale_similar(
    t: GasingTriangle,
    k: ScaleFactor | object,
    names: tuple[Point, Point, Point] | None = None,
) -> GasingTriangle:
    factor = k if isinstance(k, ScaleFactor) else ScaleFactor.of(k)
    if factor.value.is_zero:
        raise ConstructionException("scale factor must not be zero")
    labels = t.labels if names is None else names
    _check_labels(labels)
    return dataclasses.replace(
        t,
        labels=tuple(labels),
        hyp=t.hyp * factor.value,
        opp=t.opp * factor.value,
        adj=t.adj * factor.value,
        conditions=merge_conditions(t.conditions, factor.conditions),
    )


def complement_view(t: GasingTriangle) -> GasingTriangle:
    """The same triangle read from its apex angle."""
    return dataclasses.replace(
        t,
        labels=(t.apex, t.base, t.right),
        opp=t.adj,
        adj=t.opp,
        complementary=not t.complementary,
    )


@dataclass(frozen=True, eq=False)
class TrianglePlacement:
    triangle: GasingTriangle
    # +1 when base -> right -> apex runs counter-clockwise
    orientation: int = 1


@dataclass(frozen=True, eq=False)
class RayPlacement:
    """point = origin + distance * unit(toward - origin), negated when reverse."""

    point: Point
    origin: Point
    toward: Point
    distance: TrigRational
    reverse: bool = False


@dataclass(frozen=True, eq=False)
class PerpendicularPlacement:
    """point = origin + distance * unit(end - start) turned by 90deg * orientation."""

    point: Point
    origin: Point
    start: Point
    end: Point
    distance: TrigRational
    orientation: int = 1


Placement = TrianglePlacement | RayPlacement | PerpendicularPlacement


@dataclass(frozen=True)
class RightAngle:
    vertex: Point
    first: Point
    second: Point


@dataclass(frozen=True)
class AngleMark:
    vertex: Point
    first: Point
    second: Point
    text: str


@dataclass(frozen=True)
class AngleRelation:
    """How a dependent angle follows from the figure."""

    angle: str
    kind: Literal["tangent", "multiple"]
    # tangent: tan(angle) = |opposite| / |adjacent|
    opposite: Segment | None = None
    adjacent: Segment | None = None
    # multiple: angle = factor * base
    base: str | None = None
    factor: int = 1

    def render(self) -> str:
        if self.kind == "tangent":
            assert self.opposite and self.adjacent
            return f"tan({self.angle}) = {''.join(self.opposite)}/{''.join(self.adjacent)}"
        return f"{self.angle} = {self.factor}*{self.base}"


@dataclass(frozen=True, eq=False)
class Constraint:
    """Two expressions for one segment; equal by the figure."""

    segment: Segment
    first: TrigRational
    second: TrigRational
    source: str

    def render(self) -> str:
        return f"{''.join(self.segment)}: {self.first.render()} = {self.second.render()}"


@dataclass(frozen=True, eq=False)
class Construction:
    name: str
    points: tuple[Point, ...] = ()
    segments: Mapping[Segment, TrigRational] = field(default_factory=dict)
    chains: tuple[tuple[Point, ...], ...] = ()
    right_angles: tuple[RightAngle, ...] = ()
    angle_marks: tuple[AngleMark, ...] = ()
    placements: tuple[Placement, ...] = ()
    constraints: tuple[Constraint, ...] = ()
    angle_relations: tuple[AngleRelation, ...] = ()
    conditions: tuple[SideCondition, ...] = ()

    def has_point(self, p: Point) -> bool:
        return p in self.points

    def length(self, p: Point, q: Point) -> TrigRational:
        key = segment_key(p, q)
        if key not in self.segments:
            raise ConstructionException(f"{self.name}: segment {p}{q} has no length")
        return self.segments[key]

    def segment_items(self) -> list[tuple[Segment, TrigRational]]:
        return sorted(self.segments.items())

    def triangles(self) -> list[GasingTriangle]:
        return [p.triangle for p in self.placements if isinstance(p, TrianglePlacement)]

    def constraint(self, p: Point, q: Point) -> Constraint:
        key = segment_key(p, q)
        for item in self.constraints:
            if item.segment == key:
                return item
        raise ConstructionException(f"{self.name}: no constraint recorded on {p}{q}")


def new_construction(name: str) -> Construction:
    return Construction(name)


def _add_points(points: tuple[Point, ...], new: tuple[Point, ...]) -> tuple[Point, ...]:
    return points + tuple(p for p in dict.fromkeys(new) if p not in points)


def _require_points(c: Construction, *points: Point) -> None:
    missing = [p for p in points if p not in c.points]
    if missing:
        raise ConstructionException(f"{c.name}: unknown point(s) {', '.join(missing)}")


def attach(
    c: Construction,
    t: GasingTriangle,
    mapping: Mapping[Point, Point] | None = None,
    orientation: int = 1,
    constraint: bool = False,
) -> Construction:
    """
    Glue a triangle onto the figure along the points it shares with it.

    Shared edges must carry equal lengths. With constraint=True a mismatch
    is kept as a Constraint instead: the figure asserts both expressions
    measure the same segment.
    """
    if mapping:
        t = dataclasses.replace(t, labels=tuple(mapping.get(p, p) for p in t.labels))
        _check_labels(t.labels)
    if orientation not in (1, -1):
        raise ConstructionException(f"orientation must be +1 or -1, got {orientation}")
    if c.points and not any(p in c.points for p in t.labels):
        raise ConstructionException(f"{c.name}: triangle {t.name} shares no point with the figure")

    segments = dict(c.segments)
    constraints = list(c.constraints)
    for key, value in t.sides().items():
        if key not in segments:
            segments[key] = value
            continue
        if expr_equals(segments[key], value):
            continue
        if not constraint:
            raise ConstructionException(
                f"{c.name}: triangle {t.name} gives {''.join(key)} = {value.render()}"
                f" but the figure has {segments[key].render()}"
            )
        constraints.append(Constraint(key, segments[key], value, t.name))
        logger.debug("%s: constraint on %s from %s", c.name, "".join(key), t.name)

    return dataclasses.replace(
        c,
        points=_add_points(c.points, t.labels),
        segments=segments,
        right_angles=c.right_angles + (RightAngle(t.right, t.base, t.apex),),
        angle_marks=c.angle_marks + (AngleMark(t.base, t.apex, t.right, t.angle_text()),),
        placements=c.placements + (TrianglePlacement(t, orientation),),
        constraints=tuple(constraints),
        conditions=merge_conditions(c.conditions, t.conditions),
    )


def add_ray_point(
    c: Construction,
    point: Point,
    origin: Point,
    toward: Point,
    distance: object,
    reverse: bool = False,
) -> Construction:
    _require_points(c, origin, toward)
    if point in c.points:
        raise ConstructionException(f"{c.name}: point {point} already exists")
    distance = TrigRational.of(distance)
    segments = dict(c.segments)
    segments[segment_key(origin, point)] = distance
    return dataclasses.replace(
        c,
        points=_add_points(c.points, (point,)),
        segments=segments,
        placements=c.placements + (RayPlacement(point, origin, toward, distance, reverse),),
        conditions=merge_conditions(c.conditions, conditions_of(distance)),
    )


def add_perpendicular_point(
    c: Construction,
    point: Point,
    origin: Point,
    start: Point,
    end: Point,
    distance: object,
    orientation: int = 1,
) -> Construction:
    _require_points(c, origin, start, end)
    if point in c.points:
        raise ConstructionException(f"{c.name}: point {point} already exists")
    distance = TrigRational.of(distance)
    segments = dict(c.segments)
    segments[segment_key(origin, point)] = distance
    return dataclasses.replace(
        c,
        points=_add_points(c.points, (point,)),
        segments=segments,
        placements=c.placements
        + (PerpendicularPlacement(point, origin, start, end, distance, orientation),),
    )


def erect_rectangle(
    c: Construction,
    start: Point,
    end: Point,
    height: object,
    names: tuple[Point, Point],
    orientation: int = 1,
) -> Construction:
    """Rectangle start-end-names[0]-names[1] standing on the segment start-end."""
    far_end, far_start = names
    height = TrigRational.of(height)
    c = add_perpendicular_point(c, far_start, start, start, end, height, orientation)
    c = add_perpendicular_point(c, far_end, end, start, end, height, orientation)
    c = with_segment(c, far_start, far_end, c.length(start, end))
    for vertex, a, b in (
        (start, end, far_start),
        (end, start, far_end),
        (far_end, end, far_start),
        (far_start, far_end, start),
    ):
        c = with_right_angle(c, vertex, a, b)
    return c


def with_segment(c: Construction, p: Point, q: Point, length: object) -> Construction:
    _require_points(c, p, q)
    key = segment_key(p, q)
    length = TrigRational.of(length)
    if key in c.segments:
        if expr_equals(c.segments[key], length):
            return c
        raise ConstructionException(
            f"{c.name}: {p}{q} already has length {c.segments[key].render()}, not {length.render()}"
        )
    segments = dict(c.segments)
    segments[key] = length
    return dataclasses.replace(c, segments=segments)


def with_chain(c: Construction, *points: Point) -> Construction:
    _require_points(c, *points)
    if len(points) < 2:
        raise ConstructionException("a chain needs at least two points")
    return dataclasses.replace(c, chains=c.chains + (tuple(points),))


def with_right_angle(c: Construction, vertex: Point, first: Point, second: Point) -> Construction:
    _require_points(c, vertex, first, second)
    mark = RightAngle(vertex, first, second)
    if mark in c.right_angles:
        return c
    return dataclasses.replace(c, right_angles=c.right_angles + (mark,))


def with_relation(c: Construction, relation: AngleRelation) -> Construction:
    return dataclasses.replace(c, angle_relations=c.angle_relations + (relation,))


def with_conditions(c: Construction, *conditions: SideCondition) -> Construction:
    return dataclasses.replace(c, conditions=merge_conditions(c.conditions, conditions))


def chain_length(c: Construction, chain: tuple[Point, ...]) -> TrigRational:
    total = TrigRational.of(0)
    for p, q in zip(chain, chain[1:]):
        total = total + c.length(p, q)
    return total


def chain_equation(c: Construction, chain: tuple[Point, ...]) -> tuple[TrigRational, TrigRational]:
    """whole = sum of parts along a collinear chain."""
    if len(chain) < 2:
        raise ConstructionException("a chain needs at least two points")
    if tuple(chain) not in c.chains and len(chain) > 2:
        raise ConstructionException(f"{c.name}: {'-'.join(chain)} is not an asserted chain")
    whole = c.length(chain[0], chain[-1])
    return whole, chain_length(c, tuple(chain))


def right_triangle_area(leg: TrigRational, other_leg: TrigRational) -> TrigRational:
    return leg * other_leg / 2


def rectangle_area(width: TrigRational, height: TrigRational) -> TrigRational:
    return width * height


def trapezoid_area(side: TrigRational, other_side: TrigRational, height: TrigRational) -> TrigRational:
    return (side + other_side) * height / 2


# numeric layout


def _rotate(v: tuple[float, float], angle: float) -> tuple[float, float]:
    ca, sa = math.cos(angle), math.sin(angle)
    return (v[0] * ca - v[1] * sa, v[0] * sa + v[1] * ca)


def _unit(p: tuple[float, float], q: tuple[float, float]) -> tuple[float, float]:
    dx, dy = q[0] - p[0], q[1] - p[1]
    norm = math.hypot(dx, dy)
    if norm <= DEGENERATE:
        raise LayoutException("two points of the figure coincide")
    return (dx / norm, dy / norm)


def _offset(p: tuple[float, float], direction: tuple[float, float], distance: float) -> tuple[float, float]:
    return (p[0] + distance * direction[0], p[1] + distance * direction[1])


def resolve_angles(
    c: Construction,
    angle_values: Mapping[str, float],
    length_values: Mapping[str, float] | None = None,
) -> dict[str, float]:
    """Fill in angles that follow from the figure's relations."""
    values = dict(angle_values)
    pending = [r for r in c.angle_relations if r.angle not in values]
    while pending:
        progressed = False
        for relation in list(pending):
            try:
                if relation.kind == "multiple":
                    assert relation.base is not None
                    if relation.base not in values:
                        continue
                    values[relation.angle] = relation.factor * values[relation.base]
                else:
                    assert relation.opposite and relation.adjacent
                    opposite = eval_numeric(c.length(*relation.opposite), values, length_values)
                    adjacent = eval_numeric(c.length(*relation.adjacent), values, length_values)
                    values[relation.angle] = math.atan2(opposite, adjacent)
            except GasingException:
                continue
            pending.remove(relation)
            progressed = True
        if not progressed:
            missing = ", ".join(r.angle for r in pending)
            raise LayoutException(f"{c.name}: cannot determine angle(s) {missing}")
    return values


def _check_conditions(
    c: Construction, angles: Mapping[str, float], lengths: Mapping[str, float] | None
) -> None:
    for condition in c.conditions:
        margin = DEGENERATE if condition.kind is ConditionKind.NONZERO else 0.0
        try:
            holds = condition.holds(angles, lengths, margin)
        except GasingException as e:
            raise LayoutException(f"{c.name}: cannot check {condition.render()}: {e}") from e
        if not holds:
            raise LayoutException(f"{c.name}: side condition {condition.render()} is violated")


def _place_triangle(
    coords: Coordinates,
    placement: TrianglePlacement,
    angles: Mapping[str, float],
    lengths: Mapping[str, float] | None,
) -> None:
    t, orientation = placement.triangle, placement.orientation
    opp = eval_numeric(t.opp, angles, lengths)
    adj = eval_numeric(t.adj, angles, lengths)
    if opp <= DEGENERATE or adj <= DEGENERATE:
        raise LayoutException(f"triangle {t.name} is degenerate at these values")
    base, apex, right = t.labels
    known = {p for p in t.labels if p in coords}
    if len(known) == 3:
        return
    quarter = orientation * math.pi / 2
    if not coords:
        coords[base] = (0.0, 0.0)
        coords[right] = (adj, 0.0)
        coords[apex] = _offset(coords[right], _rotate((1.0, 0.0), quarter), opp)
    elif {base, right} <= known:
        coords[apex] = _offset(coords[right], _rotate(_unit(coords[base], coords[right]), quarter), opp)
    elif {base, apex} <= known:
        turn = -orientation * math.atan2(opp, adj)
        coords[right] = _offset(coords[base], _rotate(_unit(coords[base], coords[apex]), turn), adj)
    elif {right, apex} <= known:
        coords[base] = _offset(coords[right], _rotate(_unit(coords[right], coords[apex]), quarter), adj)
    else:
        raise LayoutException(f"triangle {t.name} shares fewer than two placed points")


def _close(measured: float, expected: float) -> bool:
    return abs(measured - expected) <= LAYOUT_TOLERANCE * max(1.0, abs(expected))


def _verify(
    c: Construction,
    coords: Coordinates,
    angles: Mapping[str, float],
    lengths: Mapping[str, float] | None,
) -> None:
    for (p, q), expr in c.segment_items():
        expected = eval_numeric(expr, angles, lengths)
        if expected < -LAYOUT_TOLERANCE:
            raise LayoutException(f"{c.name}: {p}{q} = {expr.render()} is negative here")
        measured = math.dist(coords[p], coords[q])
        if not _close(measured, expected):
            raise LayoutException(f"{c.name}: {p}{q} measures {measured!r}, expected {expected!r}")
    for mark in c.right_angles:
        u = _unit(coords[mark.vertex], coords[mark.first])
        v = _unit(coords[mark.vertex], coords[mark.second])
        between = abs(math.atan2(u[0] * v[1] - u[1] * v[0], u[0] * v[0] + u[1] * v[1]))
        if abs(between - math.pi / 2) > LAYOUT_TOLERANCE:
            raise LayoutException(f"{c.name}: angle at {mark.vertex} is not right")
    for chain in c.chains:
        start, end = coords[chain[0]], coords[chain[-1]]
        direction = _unit(start, end)
        span = math.dist(start, end)
        previous = -LAYOUT_TOLERANCE
        for p in chain[1:-1]:
            dx, dy = coords[p][0] - start[0], coords[p][1] - start[1]
            along = dx * direction[0] + dy * direction[1]
            across = dx * direction[1] - dy * direction[0]
            if abs(across) > LAYOUT_TOLERANCE * max(1.0, span):
                raise LayoutException(f"{c.name}: {p} is off the line {'-'.join(chain)}")
            if along < previous or along > span + LAYOUT_TOLERANCE * max(1.0, span):
                raise LayoutException(f"{c.name}: {p} is out of order on {'-'.join(chain)}")
            previous = along
    for item in c.constraints:
        first = eval_numeric(item.first, angles, lengths)
        second = eval_numeric(item.second, angles, lengths)
        if not _close(first, second):
            raise LayoutException(f"{c.name}: constraint {item.render()} fails here")


def layout(
    c: Construction,
    angle_values: Mapping[str, float],
    length_values: Mapping[str, float] | None = None,
) -> Coordinates:
    """Planar coordinates for every point, checked against every assertion."""
    angles = resolve_angles(c, angle_values, length_values)
    _check_conditions(c, angles, length_values)
    coords: Coordinates = {}
    for placement in c.placements:
        if isinstance(placement, TrianglePlacement):
            _place_triangle(coords, placement, angles, length_values)
            continue
        if not coords:
            raise LayoutException(f"{c.name}: the first placement must be a triangle")
        distance = eval_numeric(placement.distance, angles, length_values)
        if isinstance(placement, RayPlacement):
            direction = _unit(coords[placement.origin], coords[placement.toward])
            if placement.reverse:
                direction = (-direction[0], -direction[1])
        else:
            direction = _rotate(
                _unit(coords[placement.start], coords[placement.end]),
                placement.orientation * math.pi / 2,
            )
        coords[placement.point] = _offset(coords[placement.origin], direction, distance)
    missing = [p for p in c.points if p not in coords]
    if missing:
        raise LayoutException(f"{c.name}: no position for {', '.join(missing)}")
    _verify(c, coords, angles, length_values)
    logger.debug("%s laid out: %s", c.name, coords)
    return coords
