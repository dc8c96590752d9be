from pydantic import BaseModel, ConfigDict

from gasing_trig.backend.proofs import ProofCertificate
from gasing_trig.backend.solver import Solution
from gasing_trig.backend.trace import Derivation, DerivationTrace


class StepDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    description: str
    reference: str
    lhs: str
    rhs: str


class TraceDocument(BaseModel):
    """One operation's outcome; field order is the JSON key order."""

    model_config = ConfigDict(frozen=True)

    operation: str
    steps: list[StepDocument]
    result: str
    side_conditions: list[str]
    verdict: str | None = None


class TraceBundle(BaseModel):
    operation: str
    documents: list[TraceDocument]


def step_documents(trace: DerivationTrace) -> list[StepDocument]:
    return [
        StepDocument(
            description=step.description,
            reference=step.reference,
            lhs=step.render_lhs(),
            rhs=step.rhs.render(),
        )
        for step in trace.steps
    ]


def derivation_document(derivation: Derivation) -> TraceDocument:
    return TraceDocument(
        operation=f"derive {derivation.name}",
        steps=step_documents(derivation.trace),
        result="\n".join(formula.render() for formula in derivation.formulas),
        side_conditions=[c.render() for c in derivation.conditions()],
    )


def certificate_document(certificate: ProofCertificate) -> TraceDocument:
    lhs, rhs = certificate.final_equation
    lines = [f"{lhs.render()} = {rhs.render()}"]
    for angle, cofactor in certificate.cofactors.items():
        lines.append(f"cofactor of cos({angle})^2 + sin({angle})^2 - 1: {cofactor.render()}")
    if certificate.remainder is not None:
        lines.append(f"remainder: {certificate.remainder.render()}")
    lines.extend(f"{name} = {value.render()}" for name, value in certificate.quantities)
    lines.extend(certificate.notes)
    return TraceDocument(
        operation=f"prove {certificate.case_id}",
        steps=step_documents(certificate.trace),
        result="\n".join(lines),
        side_conditions=[c.render() for c in certificate.conditions],
        verdict=certificate.verdict.value,
    )


def solution_document(operation: str, solution: Solution) -> TraceDocument:
    return TraceDocument(
        operation=operation,
        steps=step_documents(solution.trace),
        result=solution.render(),
        side_conditions=[],
    )


def evaluation_document(expression: str, exact: str | None, value: float, conditions: list[str]) -> TraceDocument:
    result = f"{exact} ≈ {value:.6f}" if exact is not None else f"{value:.12g}"
    return TraceDocument(
        operation=f"eval {expression}",
        steps=[],
        result=result,
        side_conditions=conditions,
    )
