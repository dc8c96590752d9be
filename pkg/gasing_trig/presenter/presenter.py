import argparse
import logging
import math
import re
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from pydantic import ValidationError

from gasing_trig.backend.exactnum import ExactReal
from gasing_trig.backend.exceptions import (
    DomainException,
    GasingException,
    UsageException,
    VerificationException,
)
from gasing_trig.backend.messages import (
    TraceBundle,
    certificate_document,
    derivation_document,
    evaluation_document,
    solution_document,
)
from gasing_trig.backend.model import AngleValue, Engine
from gasing_trig.backend.solver import ProblemKind
from gasing_trig.frontend.parser import parse
from gasing_trig.frontend.svg import drawing_svg
from gasing_trig.frontend.view import View
from gasing_trig.presenter.config import Settings, load_settings

_DEGREES = re.compile(r"^(-?\d+)(?:deg)?$")
_ANGLE = re.compile(r"^(-?\d+)deg$")

SOLVE_KINDS = {
    "ratio": ProblemKind.RATIO,
    "asa": ProblemKind.ASA,
    "sas-obtuse": ProblemKind.SAS_OBTUSE,
    "sightlines": ProblemKind.SIGHTLINES,
    "sine-rule": ProblemKind.SINE_RULE,
    "cosine-rule": ProblemKind.COSINE_RULE,
}


class ArgumentParser(argparse.ArgumentParser):
    # exit code 2 belongs to failed proofs
    def error(self, message: str):
        raise UsageException(f"{self.prog}: {message}")


def exact(text: str) -> ExactReal:
    """A constant written in the expression grammar: 6, 1/2, sqrt(3)/2."""
    value = parse(text)
    if not value.is_constant:
        raise DomainException(f"expected a number, got {text!r}")
    return value.constant_value()


def degrees(text: str) -> int:
    match = _DEGREES.match(text.strip())
    if match is None:
        raise DomainException(f"expected whole degrees like 30 or 30deg, got {text!r}")
    return int(match.group(1))


def _pair(text: str) -> tuple[str, str]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip() or not value.strip():
        raise UsageException(f"expected name=value, got {text!r}")
    return name.strip(), value.strip()


def angle_value(text: str) -> AngleValue:
    """30deg is exact whole degrees; a plain number is radians."""
    match = _ANGLE.match(text)
    if match is not None:
        whole = int(match.group(1))
        return AngleValue(math.radians(whole), whole)
    try:
        return AngleValue(float(text))
    except ValueError:
        raise DomainException(f"expected an angle like 30deg or 0.5, got {text!r}") from None


def length_value(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainException(f"expected a rational length like 6 or 5/2, got {text!r}") from None


def _add_solve_parsers(solve: argparse.ArgumentParser, common: argparse.ArgumentParser) -> None:
    output = ArgumentParser(add_help=False, parents=[common])
    output.add_argument("--out", type=Path, help="also draw the solved figure to this SVG file")
    output.add_argument("--width", type=int, help="pixel width of the image")
    kinds = solve.add_subparsers(dest="kind", required=True, parser_class=ArgumentParser)

    ratio = kinds.add_parser("ratio", parents=[output], help="convert one ratio of an acute angle into another")
    ratio.add_argument("--given", required=True, help="fn=value, e.g. sin=1/2")
    ratio.add_argument("--want", required=True, help="the function to find")

    asa = kinds.add_parser("asa", parents=[output], help="two angles and a side on a shared altitude")
    asa.add_argument("--left", required=True, type=degrees, help="angle opposite the unknown side")
    asa.add_argument("--right", required=True, type=degrees, help="angle opposite the given side")
    asa.add_argument("--side", required=True, type=exact)

    sas = kinds.add_parser("sas-obtuse", parents=[output], help="two sides around an obtuse angle")
    sas.add_argument("--b", required=True, type=exact)
    sas.add_argument("--d", required=True, type=exact)
    sas.add_argument("--angle", required=True, type=degrees)

    sight = kinds.add_parser("sightlines", parents=[output], help="hill height from two elevation angles")
    sight.add_argument("--pole", required=True, type=exact)
    sight.add_argument("--upper", required=True, type=degrees)
    sight.add_argument("--lower", required=True, type=degrees)

    sine = kinds.add_parser("sine-rule", parents=[output], help="a = c*sin(alpha)/sin(gamma)")
    sine.add_argument("--alpha", type=degrees)
    sine.add_argument("--gamma", type=degrees)
    sine.add_argument("--c", type=exact)

    cosine = kinds.add_parser("cosine-rule", parents=[output], help="a^2 = b^2 + c^2 - 2*b*c*cos(alpha)")
    cosine.add_argument("--b", type=exact)
    cosine.add_argument("--c", type=exact)
    cosine.add_argument("--alpha", type=degrees)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="gasing", description="Trigonometry from Gasing triangles.")
    parser.add_argument("--json", action="store_true", help="print JSON trace documents")
    parser.add_argument("--trace", action="store_true", help="print the numbered derivation steps")

    # the same flags after the subcommand; SUPPRESS keeps them from resetting the global ones
    common = ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--trace", action="store_true", default=argparse.SUPPRESS)

    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    derive = commands.add_parser("derive", parents=[common], help="derive formulas from constructions")
    derive.add_argument("name")

    prove = commands.add_parser("prove", parents=[common], help="prove cos^2 + sin^2 = 1")
    prove.add_argument("name", help="main, alt, squares, case1..case8 or all")
    prove.add_argument("--jobs", type=int, help="worker processes for prove all")

    solve = commands.add_parser("solve", parents=[common], help="solve a triangle problem exactly")
    _add_solve_parsers(solve, common)

    evaluate = commands.add_parser("eval", parents=[common], help="evaluate an expression")
    evaluate.add_argument("expression")
    evaluate.add_argument("--at", action="append", default=[], help="angle value, e.g. a=30deg or a=0.5")
    evaluate.add_argument("--let", action="append", default=[], help="side length, e.g. c=6")

    render = commands.add_parser("render", parents=[common], help="draw a figure as SVG")
    render.add_argument("figure")
    render.add_argument("--at", action="append", default=[], help="angle value, e.g. a=30deg")
    render.add_argument("--out", type=Path, help="file to write; standard output when absent")
    render.add_argument("--width", type=int, help="pixel width of the image")
    return parser


def _givens(args: argparse.Namespace) -> dict[str, object]:
    if args.kind == "ratio":
        given_fn, given_value = _pair(args.given)
        return {"given_fn": given_fn, "given_value": exact(given_value), "want_fn": args.want}
    if args.kind == "asa":
        return {"angle_left": args.left, "angle_right": args.right, "side_right": args.side}
    if args.kind == "sas-obtuse":
        return {"side_b": args.b, "side_d": args.d, "obtuse_degrees": args.angle}
    if args.kind == "sightlines":
        return {"pole_height": args.pole, "upper_degrees": args.upper, "lower_degrees": args.lower}
    if args.kind == "sine-rule":
        return {"alpha": args.alpha, "gamma": args.gamma, "c": args.c}
    return {"b": args.b, "c": args.c, "alpha": args.alpha}


class Presenter:
    def __init__(self, settings: Settings | None = None):
        self.settings = settings or load_settings()

        # logger
        self.logger = logging.getLogger("gasing_trig")
        level = getattr(logging, self.settings.log_level)
        if self.settings.log_file:
            logging.basicConfig(filename=self.settings.log_file, filemode="w", level=level, force=True)
        else:
            logging.basicConfig(level=level, force=True)

        self.view = View(logger=self.logger)
        self.model = Engine(self.logger)

    def run(self, argv: Sequence[str] | None = None) -> int:
        try:
            args = build_parser().parse_args(argv)
            self.logger.info("Running %s.", args.command)
            return getattr(self, f"_{args.command}")(args)
        except VerificationException as e:
            self.view.show_error(str(e))
            return 2
        except (GasingException, ValidationError) as e:
            self.view.show_error(str(e))
            return 1

    def _derive(self, args: argparse.Namespace) -> int:
        derivations = self.model.derive(args.name)
        bundle = TraceBundle(
            operation=f"derive {args.name}",
            documents=[derivation_document(d) for d in derivations],
        )
        self.view.show_documents(bundle, args.trace, args.json)
        return 0

    def _prove(self, args: argparse.Namespace) -> int:
        jobs = args.jobs if args.jobs is not None else self.settings.jobs
        if jobs < 1:
            raise UsageException(f"--jobs must be at least 1, got {jobs}")
        certificates = self.model.prove(args.name, jobs)
        bundle = TraceBundle(
            operation=f"prove {args.name}",
            documents=[certificate_document(c) for c in certificates],
        )
        self.view.show_documents(bundle, args.trace, args.json)
        for certificate in certificates:
            certificate.raise_for_verdict()
        return 0

    def _width(self, args: argparse.Namespace) -> int:
        width = args.width if args.width is not None else self.settings.svg_width
        if width < 16:
            raise UsageException(f"--width must be at least 16, got {width}")
        return width

    def _solve(self, args: argparse.Namespace) -> int:
        solution = self.model.solve(SOLVE_KINDS[args.kind], _givens(args))
        document = solution_document(f"solve {args.kind}", solution)
        self.view.show_documents(TraceBundle(operation=document.operation, documents=[document]), args.trace, args.json)
        if args.out is not None:
            svg = drawing_svg(self.model.draw_solution(solution), self._width(args))
            args.out.write_text(svg, encoding="utf-8")
            self.view.show_message(f"wrote {args.out}")
        return 0

    def _eval(self, args: argparse.Namespace) -> int:
        expression = parse(args.expression)
        angles = {name: angle_value(value) for name, value in map(_pair, args.at)}
        lengths = {name: length_value(value) for name, value in map(_pair, args.let)}
        evaluation = self.model.evaluate(expression, angles, lengths)
        document = evaluation_document(
            expression.render(),
            evaluation.exact.render() if evaluation.exact is not None else None,
            evaluation.value,
            [c.render() for c in evaluation.conditions],
        )
        self.view.show_documents(TraceBundle(operation=document.operation, documents=[document]), args.trace, args.json)
        return 0

    def _render(self, args: argparse.Namespace) -> int:
        angles = {name: angle_value(value).radians for name, value in map(_pair, args.at)}
        svg = drawing_svg(self.model.draw(args.figure, angles), self._width(args))
        if args.out is None:
            self.view.show_text(svg)
        else:
            args.out.write_text(svg, encoding="utf-8")
            self.view.show_message(f"wrote {args.out}")
        return 0
