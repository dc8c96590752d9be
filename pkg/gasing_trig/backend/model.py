from dataclasses import dataclass
from fractions import Fraction
from logging import Logger
from typing import Mapping

from gasing_trig.backend.angles import Angle, signed_sine_cosine
from gasing_trig.backend.construction import Construction, Coordinates, layout, resolve_angles
from gasing_trig.backend.derive import DERIVATIONS, derivation
from gasing_trig.backend.exactnum import ExactReal
from gasing_trig.backend.exceptions import UsageException
from gasing_trig.backend.figures import figure
from gasing_trig.backend.proofs import PROOF_IDS, ProofCertificate, prove, prove_all
from gasing_trig.backend.solver import ProblemInstance, ProblemKind, Solution, solve
from gasing_trig.backend.trace import Derivation
from gasing_trig.backend.trigexpr import (
    Kind,
    SideCondition,
    Symbol,
    TrigPoly,
    TrigRational,
    conditions_of,
    eval_numeric,
)


@dataclass(frozen=True)
class AngleValue:
    radians: float
    # set when the value was written in whole degrees
    degrees: int | None = None


@dataclass(frozen=True)
class Evaluation:
    expression: TrigRational
    value: float
    exact: ExactReal | None
    conditions: tuple[SideCondition, ...]


@dataclass(frozen=True)
class Drawing:
    construction: Construction
    coordinates: Coordinates
    angles: dict[str, float]
    lengths: dict[str, float] | None


class Engine:
    """What the presenter asks of the backend: one method per subcommand."""

    def __init__(self, logger: Logger):
        self.logger = logger

    def derive(self, name: str) -> list[Derivation]:
        if name == "all":
            names = list(DERIVATIONS)
        elif name in DERIVATIONS:
            names = [name]
        else:
            raise UsageException(
                f"unknown derivation {name!r}; choose from {', '.join(DERIVATIONS)}, all"
            )
        return [derivation(n) for n in names]

    def prove(self, name: str, jobs: int = 1) -> list[ProofCertificate]:
        if name == "all":
            self.logger.info("Proving all cases with %d worker(s).", jobs)
            certificates = prove_all(jobs)
        elif name in PROOF_IDS:
            certificates = list(prove(name))
        else:
            raise UsageException(
                f"unknown proof {name!r}; choose from {', '.join(PROOF_IDS)}, all"
            )
        for certificate in certificates:
            self.logger.info("%s: %s", certificate.case_id, certificate.verdict.value)
        return certificates

    def solve(self, kind: ProblemKind, givens: Mapping[str, object]) -> Solution:
        self.logger.info("Solving %s with %s.", kind.value, dict(givens))
        return solve(ProblemInstance(kind, givens))

    def evaluate(
        self,
        expression: TrigRational,
        angles: Mapping[str, AngleValue],
        lengths: Mapping[str, Fraction] | None = None,
    ) -> Evaluation:
        lengths = lengths or {}
        value = eval_numeric(
            expression,
            {name: v.radians for name, v in angles.items()},
            {name: float(v) for name, v in lengths.items()},
        )
        exact = self._exact_value(expression, angles, lengths)
        self.logger.info("Evaluated %s to %r.", expression.render(), value)
        return Evaluation(expression, value, exact, conditions_of(expression))

    def _exact_value(
        self,
        expression: TrigRational,
        angles: Mapping[str, AngleValue],
        lengths: Mapping[str, Fraction],
    ) -> ExactReal | None:
        """The value in the number domain, when every symbol has an exact value."""
        mapping: dict[Symbol, TrigPoly] = {}
        for symbol in expression.symbols():
            if symbol.kind is Kind.LEN:
                mapping[symbol] = TrigPoly.constant(ExactReal.of(lengths[symbol.name]))
                continue
            degrees = angles[symbol.name].degrees
            if degrees is None or not Angle.from_degrees(degrees).is_special:
                return None
            sine, cosine = signed_sine_cosine(Angle.from_degrees(degrees))
            mapping[symbol] = TrigPoly.constant(cosine if symbol.kind is Kind.COS else sine)
        return expression.substitute(mapping).constant_value()

    def draw(self, name: str, angles: Mapping[str, float]) -> Drawing:
        entry = figure(name)
        missing = [a for a in entry.angles if a not in angles]
        if missing:
            raise UsageException(f"{entry.name} needs a value for {', '.join(missing)}, e.g. --at {missing[0]}=30deg")
        construction = entry.build()
        lengths = entry.lengths(angles) if entry.lengths is not None else None
        coordinates = layout(construction, angles, lengths)
        self.logger.info("Laid out %s with %d points.", entry.name, len(coordinates))
        return Drawing(construction, coordinates, resolve_angles(construction, angles, lengths), lengths)

    def draw_solution(self, solution: Solution) -> Drawing:
        """The solved figure, laid out with the given and solved values."""
        lengths = dict(solution.lengths) if solution.lengths is not None else None
        angles = dict(solution.angles)
        coordinates = layout(solution.construction, angles, lengths)
        self.logger.info("Laid out the %s solution with %d points.", solution.name, len(coordinates))
        return Drawing(
            solution.construction,
            coordinates,
            resolve_angles(solution.construction, angles, lengths),
            lengths,
        )
