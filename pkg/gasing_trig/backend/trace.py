from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping

from gasing_trig.backend.construction import Construction
from gasing_trig.backend.trigexpr import (
    SideCondition,
    Symbol,
    TrigPoly,
    TrigRational,
    conditions_of,
    expr_equals,
    membership_certificate,
    merge_conditions,
    nonzero_conditions,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Step:
    """
    One equation lhs = rhs of a derivation.

    A step relates to an earlier step (the previous one unless `source` says
    otherwise) in exactly one way:
    - premise: read off a figure or taken as established, not checked;
    - factor: both sides of the source multiplied by `factor`;
    - combines: sides are the products of the sides of two earlier steps;
    - substitution: the source with symbols replaced;
    - otherwise the same equation rewritten, possibly with sides swapped.
    """

    description: str
    reference: str
    lhs: TrigRational
    rhs: TrigRational
    label: str | None = None
    premise: bool = False
    factor: TrigRational | None = None
    combines: tuple[int, int] | None = None
    substitution: tuple[tuple[Symbol, TrigPoly], ...] = ()
    source: int | None = None
    identity_dependent: bool = False
    conditions: tuple[SideCondition, ...] = ()

    @property
    def difference(self) -> TrigRational:
        return self.lhs - self.rhs

    def render_lhs(self) -> str:
        return self.label if self.label is not None else self.lhs.render()

    def render(self) -> str:
        return f"{self.render_lhs()} = {self.rhs.render()}"


def _same_equation(new: TrigRational, old: TrigRational) -> bool:
    return expr_equals(new, old) or expr_equals(new, -old)


@dataclass(frozen=True, eq=False)
class DerivationTrace:
    steps: tuple[Step, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def __getitem__(self, index: int) -> Step:
        return self.steps[index]

    def _consistent(self, index: int) -> bool:
        step = self.steps[index]
        if step.premise:
            return True
        if step.combines is not None:
            first, second = (self.steps[i] for i in step.combines)
            return expr_equals(step.lhs, first.lhs * second.lhs) and expr_equals(
                step.rhs, first.rhs * second.rhs
            )
        if index == 0:
            return False
        origin = self.steps[step.source if step.source is not None else index - 1]
        expected = origin.difference
        if step.factor is not None:
            expected = step.factor * expected
        if step.substitution:
            expected = expected.substitute(dict(step.substitution))
        if step.identity_dependent:
            gap = step.difference - expected
            flipped = step.difference + expected
            return any(
                membership_certificate(g.num) is not None for g in (gap, flipped)
            )
        return _same_equation(step.difference, expected)

    def check(self) -> int | None:
        """Index of the first step that does not follow, or None."""
        for index in range(len(self.steps)):
            if not self._consistent(index):
                logger.info("step %d does not follow: %s", index, self.steps[index].render())
                return index
        return None

    @property
    def identity_dependent(self) -> bool:
        return any(step.identity_dependent for step in self.steps)

    def conditions(self) -> tuple[SideCondition, ...]:
        groups: list[tuple[SideCondition, ...]] = []
        for step in self.steps:
            groups.append(step.conditions)
            groups.append(conditions_of(step.lhs))
            groups.append(conditions_of(step.rhs))
            if step.factor is not None:
                groups.append(conditions_of(step.factor))
                groups.append(nonzero_conditions(step.factor.num))
        return merge_conditions(*groups)


class TraceRecorder:
    """Collects steps while a derivation runs."""

    def __init__(self, reference: str = ""):
        self.reference = reference
        self._steps: list[Step] = []

    def _add(self, step: Step) -> int:
        self._steps.append(step)
        logger.debug("step %d: %s", len(self._steps) - 1, step.render())
        return len(self._steps) - 1

    def premise(
        self,
        description: str,
        lhs: object,
        rhs: object,
        *,
        reference: str | None = None,
        label: str | None = None,
        conditions: tuple[SideCondition, ...] = (),
    ) -> int:
        return self._add(
            Step(
                description,
                reference if reference is not None else self.reference,
                TrigRational.of(lhs),
                TrigRational.of(rhs),
                label=label,
                premise=True,
                conditions=conditions,
            )
        )

    def rewrite(
        self,
        description: str,
        lhs: object,
        rhs: object,
        *,
        reference: str | None = None,
        label: str | None = None,
        source: int | None = None,
        identity_dependent: bool = False,
        conditions: tuple[SideCondition, ...] = (),
    ) -> int:
        return self._add(
            Step(
                description,
                reference if reference is not None else self.reference,
                TrigRational.of(lhs),
                TrigRational.of(rhs),
                label=label,
                source=source,
                identity_dependent=identity_dependent,
                conditions=conditions,
            )
        )

    def multiply(
        self,
        description: str,
        factor: object,
        *,
        reference: str | None = None,
        source: int | None = None,
        label: str | None = None,
    ) -> int:
        """Multiply both sides of the source step by factor."""
        factor = TrigRational.of(factor)
        origin = self._steps[source if source is not None else -1]
        return self._add(
            Step(
                description,
                reference if reference is not None else self.reference,
                origin.lhs * factor,
                origin.rhs * factor,
                label=label,
                factor=factor,
                source=source,
                conditions=merge_conditions(conditions_of(factor), nonzero_conditions(factor.num)),
            )
        )

    def combine(
        self,
        description: str,
        first: int,
        second: int,
        *,
        reference: str | None = None,
    ) -> int:
        """Multiply two equations side by side."""
        a, b = self._steps[first], self._steps[second]
        return self._add(
            Step(
                description,
                reference if reference is not None else self.reference,
                a.lhs * b.lhs,
                a.rhs * b.rhs,
                combines=(first, second),
            )
        )

    def substitute(
        self,
        description: str,
        mapping: Mapping[Symbol, TrigPoly],
        *,
        reference: str | None = None,
        source: int | None = None,
        label: str | None = None,
    ) -> int:
        origin = self._steps[source if source is not None else -1]
        return self._add(
            Step(
                description,
                reference if reference is not None else self.reference,
                origin.lhs.substitute(mapping),
                origin.rhs.substitute(mapping),
                label=label,
                substitution=tuple(sorted(mapping.items())),
                source=source,
            )
        )

    def swap(self, description: str = "exchange the two sides", *, reference: str | None = None) -> int:
        origin = self._steps[-1]
        return self.rewrite(description, origin.rhs, origin.lhs, reference=reference)

    @property
    def last(self) -> Step:
        return self._steps[-1]

    def trace(self) -> DerivationTrace:
        return DerivationTrace(tuple(self._steps))


@dataclass(frozen=True, eq=False)
class Formula:
    lhs_name: str
    rhs: TrigRational
    conditions: tuple[SideCondition, ...] = ()
    identity_dependent: bool = False
    # set when the left side is itself an expression of the ring
    lhs: TrigRational | None = None

    def render(self) -> str:
        return f"{self.lhs_name} = {self.rhs.render()}"


@dataclass(frozen=True, eq=False)
class Derivation:
    name: str
    formulas: tuple[Formula, ...]
    trace: DerivationTrace
    construction: Construction | None = None
    notes: tuple[str, ...] = field(default=())

    def forms(self, lhs_name: str) -> list[Formula]:
        return [f for f in self.formulas if f.lhs_name == lhs_name]

    def __getitem__(self, lhs_name: str) -> Formula:
        for formula in self.formulas:
            if formula.lhs_name == lhs_name:
                return formula
        raise KeyError(lhs_name)

    def conditions(self) -> tuple[SideCondition, ...]:
        return merge_conditions(*(f.conditions for f in self.formulas))
