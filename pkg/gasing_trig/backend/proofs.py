"""
Trigonometric proofs of the Pythagorean theorem, checked in the free ring.

Each proof reads its equations off a figure and rearranges them while
free_mode() is active, so the relation cos(a)^2 + sin(a)^2 = 1 can never be
used on the way. Certification happens afterwards: the cross-multiplied
difference of the final equation must be an exact multiple of
cos(a)^2 + sin(a)^2 - 1.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from multiprocessing import Pool
from typing import Callable, Mapping

from gasing_trig.backend.construction import (
    Construction,
    chain_equation,
    rectangle_area,
    right_triangle_area,
    trapezoid_area,
)
from gasing_trig.backend.exceptions import VerificationException
from gasing_trig.backend.figures import (
    case1_figure,
    case2_figure,
    case3_figure,
    case4_figure,
    case5_figure,
    case6_figure,
    case7_figure,
    case8_figure,
    case8_series,
    double_angle_figure,
    six_function_figure,
)
from gasing_trig.backend.trace import Derivation, DerivationTrace, Formula, TraceRecorder
from gasing_trig.backend.trigexpr import (
    Kind,
    SideCondition,
    Symbol,
    TrigPoly,
    TrigRational,
    cos,
    divide_exact,
    eval_numeric,
    free_mode,
    ideal_reduce,
    merge_conditions,
    partial_sum,
    pythagorean_generator,
    sin,
    sum_geometric,
)

logger = logging.getLogger(__name__)

PROOF_IDS = ("main", "alt", "squares", "case1", "case2", "case3", "case4", "case5", "case6", "case7", "case8")


class Verdict(str, Enum):
    VERIFIED = "verified"
    FAILED = "failed"


@dataclass(frozen=True, eq=False)
class ProofCertificate:
    case_id: str
    trace: DerivationTrace
    final_equation: tuple[TrigRational, TrigRational]
    cofactors: Mapping[str, TrigPoly]
    conditions: tuple[SideCondition, ...]
    verdict: Verdict
    failed_step: int | None = None
    remainder: TrigPoly | None = None
    quantities: tuple[tuple[str, TrigRational], ...] = ()
    construction: Construction | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def verified(self) -> bool:
        return self.verdict is Verdict.VERIFIED

    @property
    def difference(self) -> TrigPoly:
        lhs, rhs = self.final_equation
        return lhs.num * rhs.den - rhs.num * lhs.den

    def recomposes(self) -> bool:
        total = TrigPoly()
        for angle, cofactor in self.cofactors.items():
            total = total + cofactor * pythagorean_generator(angle)
        return total == self.difference

    def raise_for_verdict(self) -> None:
        if self.verified:
            return
        remainder = self.remainder.render() if self.remainder is not None else ""
        where = f" at step {self.failed_step}" if self.failed_step is not None else ""
        raise VerificationException(
            f"{self.case_id}: proof does not verify{where}; remainder {remainder or '0'}",
            step=self.failed_step,
            remainder=remainder,
        )


def _certify(
    case_id: str,
    rec: TraceRecorder,
    construction: Construction | None = None,
    angle: str = "a",
    quantities: tuple[tuple[str, TrigRational], ...] = (),
    notes: tuple[str, ...] = (),
) -> ProofCertificate:
    """Check the trace and the final equation; runs outside free mode."""
    trace = rec.trace()
    final = trace[len(trace) - 1]
    lhs, rhs = final.lhs, final.rhs
    difference = lhs.num * rhs.den - rhs.num * lhs.den
    cofactor = divide_exact(difference, pythagorean_generator(angle))
    failed_step = trace.check()
    verified = (
        cofactor is not None
        and not cofactor.is_zero
        and failed_step is None
        and not trace.identity_dependent
    )
    remainder = None
    if not verified:
        # diagnostics only; the verdict never depends on a reduction
        remainder = ideal_reduce(difference).remainder
        if failed_step is None and cofactor is None:
            failed_step = len(trace) - 1
    conditions = merge_conditions(
        trace.conditions(), construction.conditions if construction is not None else ()
    )
    certificate = ProofCertificate(
        case_id,
        trace,
        (lhs, rhs),
        {angle: cofactor} if verified and cofactor is not None else {},
        conditions,
        Verdict.VERIFIED if verified else Verdict.FAILED,
        failed_step,
        remainder,
        quantities,
        construction,
        notes,
    )
    logger.info("%s: %s", case_id, certificate.verdict.value)
    return certificate


def prove_main_identity(a: str = "a") -> ProofCertificate:
    with free_mode():
        fig = six_function_figure(a)
        rec = TraceRecorder("six-functions figure")
        whole, parts = chain_equation(fig, ("A", "C", "D"))
        rec.premise("AD = AC + CD along the chain A-C-D", whole, parts, reference="chain A-C-D")
        rec.multiply(f"multiply both sides by cos({a})", cos(a))
        rec.swap()
    return _certify("main", rec, fig, a)


def prove_alt_identity(a: str = "a") -> ProofCertificate:
    with free_mode():
        fig = six_function_figure(a)
        rec = TraceRecorder("six-functions figure")
        whole, parts = chain_equation(fig, ("D", "B", "E"))
        rec.premise("DE = DB + BE along the chain D-B-E", whole, parts, reference="chain D-B-E")
        rec.rewrite(
            f"bring the right side over the common denominator sin({a})*cos({a})",
            whole,
            parts,
        )
        rec.multiply(f"multiply both sides by sin({a})*cos({a})", sin(a) * cos(a))
        rec.swap()
    return _certify("alt", rec, fig, a)


def prove_derived_squares(a: str = "a") -> tuple[ProofCertificate, ProofCertificate]:
    """sec^2 = 1 + tan^2 and csc^2 = 1 + cot^2, as corollaries of the main identity."""
    main = prove_main_identity(a)
    main.raise_for_verdict()
    s, k = sin(a), cos(a)
    identity = main.final_equation
    certificates = []
    for name, divisor, reading, other, triangle, hypotenuse, legs in (
        ("squares-sec", k**2, "sec", "tan", "ADB", ("A", "D"), (("A", "B"), ("D", "B"))),
        ("squares-csc", s**2, "csc", "cot", "EAB", ("E", "A"), (("A", "B"), ("E", "B"))),
    ):
        with free_mode():
            fig = six_function_figure(a)
            hyp = fig.length(*hypotenuse)
            first, second = (fig.length(*leg) for leg in legs)
            rec = TraceRecorder(f"triangle {triangle}")
            rec.premise(
                f"cos({a})^2 + sin({a})^2 = 1, certified by the main proof",
                *identity,
                reference="main proof",
            )
            rec.multiply(f"divide both sides by {divisor.render()}", 1 / divisor)
            rec.swap()
            rec.rewrite(
                f"read on triangle {triangle}: {''.join(hypotenuse)}^2 = {''.join(legs[0])}^2 + {''.join(legs[1])}^2,"
                f" so {reading}({a})^2 = 1 + {other}({a})^2",
                hyp**2,
                first**2 + second**2,
                label=f"{reading}({a})^2",
            )
        certificates.append(_certify(name, rec, fig, a))
    return certificates[0], certificates[1]


def _case1(a: str) -> ProofCertificate:
    s, k = sin(a), cos(a)
    with free_mode():
        fig = case1_figure(a)
        rec = TraceRecorder("case 1 figure")
        side, inner = fig.length("A", "B"), fig.length("E", "F")
        corner = right_triangle_area(fig.length("E", "B"), fig.length("B", "F"))
        outer_area = rectangle_area(side, side)
        inner_area = rectangle_area(inner, inner)
        rec.premise(
            "area of ABCD = area of EFGH + 4 * area of EFB",
            outer_area,
            inner_area + 4 * corner,
            reference="square ABCD",
        )
        rec.rewrite(f"expand (cos({a}) + sin({a}))^2", outer_area, inner_area + 4 * corner)
        rec.rewrite(f"subtract 2*sin({a})*cos({a}) from both sides", k**2 + s**2, TrigRational.of(1))
    quantities = (("area ABCD", outer_area), ("area EFGH", inner_area), ("area EFB", corner))
    return _certify("case1", rec, fig, a, quantities)


def _case2(a: str) -> ProofCertificate:
    s, k = sin(a), cos(a)
    with free_mode():
        fig = case2_figure(a)
        rec = TraceRecorder("case 2 figure")
        side, inner = fig.length("A", "B"), fig.length("E", "F")
        corner = right_triangle_area(fig.length("A", "F"), fig.length("B", "F"))
        outer_area = rectangle_area(side, side)
        inner_area = rectangle_area(inner, inner)
        rec.premise(
            "area of ABCD = area of EFGH + 4 * area of ABF, with HG = cos(a) - sin(a)",
            outer_area,
            inner_area + 4 * corner,
            reference="square ABCD",
        )
        rec.rewrite(f"expand (cos({a}) - sin({a}))^2", outer_area, inner_area + 4 * corner)
        rec.rewrite("collect terms", TrigRational.of(1), k**2 + s**2)
        rec.swap()
    quantities = (("area ABCD", outer_area), ("area EFGH", inner_area), ("area ABF", corner))
    return _certify("case2", rec, fig, a, quantities)


def _case3(a: str) -> ProofCertificate:
    with free_mode():
        fig = case3_figure(a)
        rec = TraceRecorder("case 3 figure")
        whole, parts = chain_equation(fig, ("A", "D", "B"))
        rec.premise("AB = AD + DB along the chain A-D-B", whole, parts, reference="chain A-D-B")
        rec.swap()
    return _certify("case3", rec, fig, a)


def _case4(a: str, b: str = "b") -> ProofCertificate:
    s, k = sin(a), cos(a)
    with free_mode():
        fig = case4_figure(a, b)
        rec = TraceRecorder("case 4 figure")
        fc, bf = fig.constraint("F", "C"), fig.constraint("B", "F")
        rec.premise("FC = 1 - sin(a) on the diameter, and FC from triangle ECF", fc.first, fc.second, reference="triangle ECF")
        rec.premise("BF = 1 + sin(a) on the diameter, and BF from triangle BDF", bf.first, bf.second, reference="triangle BDF")
        rec.combine("multiply the two equations side by side", 0, 1)
        rec.rewrite(f"add sin({a})^2 to both sides", k**2 + s**2, TrigRational.of(1))
    return _certify("case4", rec, fig, a, notes=("AF < AC is recorded but not used by the algebra",))


def _case5(a: str) -> ProofCertificate:
    s, k = sin(a), cos(a)
    with free_mode():
        fig = case5_figure(a)
        rec = TraceRecorder("case 5 figure")
        whole, parts = chain_equation(fig, ("E", "G", "C"))
        rec.premise("EC = EG + GC along the chain E-G-C", whole, parts, reference="chain E-G-C")
        rec.multiply(f"multiply both sides by cos({a})", k)
        rec.rewrite(f"add sin({a})^2 to both sides", k**2 + s**2, TrigRational.of(1))
    return _certify("case5", rec, fig, a)


def _case6(a: str) -> ProofCertificate:
    with free_mode():
        fig = case6_figure(a)
        rec = TraceRecorder("case 6 figure")
        whole, parts = chain_equation(fig, ("A", "K", "B"))
        rec.premise("AB = AK + KB along the chain A-K-B", whole, parts, reference="chain A-K-B")
        rec.swap()
        ak, kb, ae = fig.length("A", "K"), fig.length("K", "B"), fig.length("A", "E")
        ac, cb = fig.length("A", "C"), fig.length("C", "B")
        quantities = (
            ("area ABDE", rectangle_area(whole, ae)),
            ("area AKJE", rectangle_area(ak, ae)),
            ("area KBDJ", rectangle_area(kb, fig.length("B", "D"))),
            ("area ACIH", rectangle_area(ac, ac)),
            ("area CBFG", rectangle_area(cb, cb)),
        )
    notes = ("area ABDE = area AKJE + area KBDJ",)
    return _certify("case6", rec, fig, a, quantities, notes)


def _case7(a: str) -> ProofCertificate:
    s, k = sin(a), cos(a)
    with free_mode():
        fig = case7_figure(a)
        rec = TraceRecorder("case 7 figure")
        ac, gh, ch = fig.length("A", "C"), fig.length("G", "H"), fig.length("C", "H")
        trapezoid = trapezoid_area(ac, gh, ch)
        pieces = (
            right_triangle_area(ac, fig.length("B", "C"))
            + right_triangle_area(gh, fig.length("B", "H"))
            + right_triangle_area(fig.length("A", "B"), fig.length("B", "G"))
        )
        rec.premise("area of trapezoid ACHG = areas of ABC + BGH + ABG", trapezoid, pieces, reference="trapezoid ACHG")
        rec.multiply("multiply both sides by 2", 2)
        rec.rewrite(f"subtract 2*sin({a})*cos({a}) from both sides", k**2 + s**2, TrigRational.of(1))
    quantities = (("area ACHG", trapezoid),)
    return _certify("case7", rec, fig, a, quantities)


def case8_partial_sums(a_value: float, counts: tuple[int, ...] = (5, 10, 20), a: str = "a") -> list[str]:
    """Truncated series for EA and EB against their closed forms, as text."""
    angles = {a: a_value}
    lines = []
    for name, (first, ratio) in case8_series(a).items():
        closed, _ = sum_geometric(first, ratio)
        offset = 0 if name == "EA" else 1
        sums = ", ".join(
            f"{n} terms {offset + eval_numeric(partial_sum(first, ratio, n), angles):.6f}" for n in counts
        )
        lines.append(f"{name}: {sums}; closed form {offset + eval_numeric(closed, angles):.6f}")
    return lines


def _case8(a: str) -> ProofCertificate:
    s, k = sin(a), cos(a)
    doubled = f"{a}2"
    lemma = sin2a_lemma(a)
    with free_mode():
        fig = case8_figure(a)
        rec = TraceRecorder("case 8 figure")
        series = case8_series(a)
        ea, ea_conditions = sum_geometric(*series["EA"])
        tail, eb_conditions = sum_geometric(*series["EB"])
        eb = 1 + tail
        rec.premise("EA sums the sides AD, DF, ... of the shrinking triangles", ea, ea, label="EA", conditions=ea_conditions)
        rec.premise("EB = BC plus the sum of CF, ...", eb, eb, label="EB", conditions=eb_conditions)
        rec.premise(
            f"triangle ABE has the angle 2{a} at B, so EA = EB*sin(2{a})",
            ea,
            eb * sin(doubled),
            reference="triangle ABE",
        )
        rec.substitute(
            f"sin(2{a}) = 2*sin({a})*cos({a}) by the inscribed-angle lemma",
            {Symbol(doubled, Kind.SIN): lemma.formulas[0].rhs.num},
            reference="double-angle figure",
        )
        rec.multiply(
            "cancel 2*sin(a)*cos(a)/(cos(a)^2 - sin(a)^2)",
            (k**2 - s**2) / (2 * s * k),
        )
        rec.swap()
    quantities = (("EA", ea), ("EB", eb))
    return _certify("case8", rec, fig, a, quantities, tuple(case8_partial_sums(math.pi / 6, a=a)))


_CASES: dict[int, Callable[[str], ProofCertificate]] = {
    1: _case1,
    2: _case2,
    3: _case3,
    4: _case4,
    5: _case5,
    6: _case6,
    7: _case7,
    8: _case8,
}


def prove_case(n: int, a: str = "a") -> ProofCertificate:
    if n not in _CASES:
        raise ValueError(f"there are eight cases, got {n}")
    return _CASES[n](a)


def sin2a_lemma(a: str = "a") -> Derivation:
    """sin(2a) = 2*sin(a)*cos(a) from the inscribed angle, without the sum formula."""
    doubled = f"{a}2"
    with free_mode():
        fig = double_angle_figure(a, doubled)
        rec = TraceRecorder("double-angle figure")
        oc = fig.constraint("C", "O")
        rec.premise(f"CBO is the primary triangle of 2{a}", oc.first, oc.first, label="OC", reference="triangle CBO")
        rec.premise(
            f"CAO read from A has the angle 90deg - {a} and hypotenuse AC = 2*sin({a})",
            oc.second,
            oc.second,
            label="OC",
            reference="triangle CAO",
        )
        rec.premise("both expressions measure OC", oc.first, oc.second, label=f"sin(2{a})", reference="segment OC")
    formula = Formula(f"sin(2{a})", oc.second, fig.conditions, lhs=sin(doubled))
    return Derivation("sin2a-lemma", (formula,), rec.trace(), fig)


def prove(name: str) -> tuple[ProofCertificate, ...]:
    if name == "main":
        return (prove_main_identity(),)
    if name == "alt":
        return (prove_alt_identity(),)
    if name == "squares":
        return prove_derived_squares()
    if name.startswith("case") and name[4:].isdigit():
        return (prove_case(int(name[4:])),)
    raise ValueError(f"unknown proof {name!r}")


def prove_all(jobs: int = 1) -> list[ProofCertificate]:
    """Every proof in the fixed order of PROOF_IDS, whatever the worker count."""
    if jobs <= 1:
        results = [prove(name) for name in PROOF_IDS]
    else:
        with Pool(jobs) as pool:
            results = pool.map(prove, PROOF_IDS)
    return [certificate for group in results for certificate in group]
