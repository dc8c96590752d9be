import math
from html import escape
from typing import Mapping

from gasing_trig.backend.construction import Construction, layout, resolve_angles
from gasing_trig.backend.model import Drawing
from gasing_trig.backend.trigexpr import eval_numeric

MARGIN = 0.05
DEFAULT_WIDTH = 480


def _num(value: float) -> str:
    text = f"{round(value, 4):.4f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


class SVGFigure:
    """Shapes in figure units; y grows upward until written out."""

    def __init__(self, coordinates: Mapping[str, tuple[float, float]]):
        self.coordinates = {p: (x, -y) for p, (x, y) in coordinates.items()}
        xs = [x for x, _ in self.coordinates.values()]
        ys = [y for _, y in self.coordinates.values()]
        self.span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
        margin = MARGIN * self.span
        self.box = (min(xs) - margin, min(ys) - margin, max(xs) - min(xs) + 2 * margin, max(ys) - min(ys) + 2 * margin)
        self.font = self.span / 30
        self.shapes: list[str] = []

    def segment(self, p: str, q: str, label: str, value: float) -> None:
        (x1, y1), (x2, y2) = self.coordinates[p], self.coordinates[q]
        self.shapes.append(
            f'<line class="segment" data-segment="{p}{q}" data-length="{value:.12f}" '
            f'x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}" />'
        )
        self.text((x1 + x2) / 2, (y1 + y2) / 2, label, "label")

    def point(self, name: str) -> None:
        x, y = self.coordinates[name]
        self.shapes.append(f'<circle class="point" cx="{_num(x)}" cy="{_num(y)}" r="{_num(self.font / 4)}" />')
        self.text(x + self.font / 3, y - self.font / 3, name, "point-name")

    def right_angle(self, vertex: str, first: str, second: str) -> None:
        size = self.font / 1.5
        vx, vy = self.coordinates[vertex]
        corners = []
        for other in (first, second):
            ox, oy = self.coordinates[other]
            d = math.dist((vx, vy), (ox, oy)) or 1.0
            corners.append(((ox - vx) / d * size, (oy - vy) / d * size))
        (ux, uy), (wx, wy) = corners
        path = [(vx + ux, vy + uy), (vx + ux + wx, vy + uy + wy), (vx + wx, vy + wy)]
        points = " ".join(f"{_num(x)},{_num(y)}" for x, y in path)
        self.shapes.append(f'<polyline class="right-angle" data-vertex="{vertex}" points="{points}" />')

    def angle(self, vertex: str, first: str, second: str, content: str) -> None:
        vx, vy = self.coordinates[vertex]
        bx = by = 0.0
        for other in (first, second):
            ox, oy = self.coordinates[other]
            d = math.dist((vx, vy), (ox, oy)) or 1.0
            bx, by = bx + (ox - vx) / d, by + (oy - vy) / d
        norm = math.hypot(bx, by) or 1.0
        self.text(vx + bx / norm * self.font * 1.5, vy + by / norm * self.font * 1.5, content, "angle")

    def text(self, x: float, y: float, content: str, kind: str) -> None:
        self.shapes.append(f'<text class="{kind}" x="{_num(x)}" y="{_num(y)}">{escape(content)}</text>')

    def render(self, width: int, title: str) -> str:
        x, y, w, h = self.box
        height = max(1, round(width * h / w))
        style = (
            f"line{{stroke:black;stroke-width:{_num(self.span / 300)}}}"
            f"polyline{{fill:none;stroke:black;stroke-width:{_num(self.span / 400)}}}"
            f"text{{font-size:{_num(self.font)}px;font-family:sans-serif}}"
        )
        lines = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="{_num(x)} {_num(y)} {_num(w)} {_num(h)}">',
            f"<title>{escape(title)}</title>",
            f"<style>{style}</style>",
            *self.shapes,
            "</svg>",
        ]
        return "\n".join(lines) + "\n"


def drawing_svg(drawing: Drawing, width: int = DEFAULT_WIDTH) -> str:
    c = drawing.construction
    svg = SVGFigure(drawing.coordinates)
    for (p, q), expr in c.segment_items():
        svg.segment(p, q, expr.render(), eval_numeric(expr, drawing.angles, drawing.lengths))
    for mark in c.right_angles:
        svg.right_angle(mark.vertex, mark.first, mark.second)
    for angle in c.angle_marks:
        svg.angle(angle.vertex, angle.first, angle.second, angle.text)
    for point in c.points:
        svg.point(point)
    return svg.render(width, c.name)


def render_svg(
    c: Construction,
    angle_values: Mapping[str, float],
    length_values: Mapping[str, float] | None = None,
    width: int = DEFAULT_WIDTH,
) -> str:
    coordinates = layout(c, angle_values, length_values)
    angles = resolve_angles(c, angle_values, length_values)
    lengths = dict(length_values) if length_values is not None else None
    return drawing_svg(Drawing(c, coordinates, angles, lengths), width)
