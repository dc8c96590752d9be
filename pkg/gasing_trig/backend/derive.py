"""
Formula derivations read off the figures by scaling alone.

Every derivation returns a Derivation: its formulas, the trace of steps that
led there and the figure the steps refer to. Only double_angle and
cosine_rule use the Pythagorean relation, and they flag the steps that do.
"""

from __future__ import annotations

import logging
from typing import Callable

from gasing_trig.backend.angles import Angle, signed_sine_cosine, special_value
from gasing_trig.backend.construction import Construction
from gasing_trig.backend.exceptions import InconsistentDerivationException
from gasing_trig.backend.figures import (
    cofunction_figure,
    difference_figure,
    sine_cosine_rule_figure,
    six_function_figure,
    sum_figure,
)
from gasing_trig.backend.trace import Derivation, Formula, TraceRecorder
from gasing_trig.backend.trigexpr import (
    Kind,
    Symbol,
    TrigPoly,
    TrigRational,
    conditions_of,
    const,
    cos,
    expr_equals,
    ideal_reduce,
    length,
    merge_conditions,
    nonzero,
    nonzero_conditions,
    pythagorean_generator,
    sin,
)

__all__ = [
    "DERIVATIONS",
    "cofunction",
    "cosine_rule",
    "derivation",
    "derived_functions",
    "difference_formulas",
    "double_angle",
    "quadrant_signed",
    "quadrant_table",
    "sine_rule",
    "special_value",
    "sum_formulas",
]

logger = logging.getLogger(__name__)


def _formula(name: str, rhs: TrigRational, fig: Construction) -> Formula:
    return Formula(name, rhs, fig.conditions)


def derived_functions(a: str = "a") -> Derivation:
    """tan, sec, cot and csc as sides of the primary triangle scaled to a unit leg."""
    fig = six_function_figure(a)
    rec = TraceRecorder("six-functions figure")
    # (function, side read, its match in ABC, triangle, unit leg, its match in ABC)
    readings = (
        (f"tan({a})", ("D", "B"), ("B", "C"), "ADB", ("A", "B"), ("A", "C")),
        (f"sec({a})", ("A", "D"), ("A", "B"), "ADB", ("A", "B"), ("A", "C")),
        (f"cot({a})", ("E", "B"), ("A", "C"), "EAB", ("A", "B"), ("B", "C")),
        (f"csc({a})", ("E", "A"), ("A", "B"), "EAB", ("A", "B"), ("B", "C")),
    )
    formulas = []
    for name, segment, primary_side, triangle, leg, primary_leg in readings:
        side = "".join(primary_side)
        rec.premise(f"{side} in the primary triangle ABC", length(side), fig.length(*primary_side), reference="triangle ABC")
        factor = fig.length(*leg) / fig.length(*primary_leg)
        rec.multiply(
            f"{triangle} is ABC scaled by {''.join(leg)}/{''.join(primary_leg)} = {factor.render()};"
            f" {''.join(segment)} over the unit leg AB",
            factor,
            label=name,
            reference=f"triangle {triangle}",
        )
        value = rec.last.rhs
        if not expr_equals(value, fig.length(*segment)):
            raise InconsistentDerivationException(
                f"{name}: scaling gives {value.render()}, the figure has {fig.length(*segment).render()}"
            )
        formulas.append(Formula(name, value, merge_conditions(conditions_of(factor), nonzero_conditions(factor.num))))
    logger.info("derived the four derived functions of %s", a)
    return Derivation("derived-functions", tuple(formulas), rec.trace(), fig)


def sum_formulas(a: str = "a", b: str = "b") -> Derivation:
    fig = sum_figure(a, b)
    rec = TraceRecorder("sum figure")
    fc, cg = fig.length("F", "C"), fig.length("C", "G")
    rec.premise("ACF is the primary triangle of b scaled by cos(a)", fc, fc, label="FC", reference="triangle ACF")
    rec.premise("CBG is the primary triangle of b scaled by sin(a)", cg, cg, label="CG", reference="triangle CBG")
    hb = fig.length("H", "B")
    rec.premise("HB = FC + CG along the chain F-C-G", hb, fc + cg, label="HB", reference="rectangle HFGB")
    rec.premise(
        "ABH is the primary triangle of a + b, its opposite side is HB",
        hb,
        hb,
        label=f"sin({a}+{b})",
        reference="triangle ABH",
    )
    af, hf = fig.length("A", "F"), fig.length("H", "F")
    rec.premise("AF is the adjacent side of ACF", af, af, label="AF", reference="triangle ACF")
    rec.premise("HF = BG, opposite sides of the rectangle", hf, hf, label="HF", reference="rectangle HFGB")
    ah = fig.length("A", "H")
    rec.premise("AH = AF - HF along the chain A-H-F", ah, af - hf, label="AH", reference="chain A-H-F")
    rec.premise(
        "the adjacent side of ABH is cos(a+b)",
        ah,
        ah,
        label=f"cos({a}+{b})",
        reference="triangle ABH",
    )
    formulas = (_formula(f"sin({a}+{b})", hb, fig), _formula(f"cos({a}+{b})", ah, fig))
    return Derivation("sum", formulas, rec.trace(), fig)


def _negate_angle(b: str) -> dict[Symbol, TrigPoly]:
    """sin(-b) = -sin(b), cos(-b) = cos(b)."""
    sine = Symbol(b, Kind.SIN)
    return {sine: -TrigPoly.symbol(sine)}


def difference_formulas(a: str = "a", b: str = "b") -> Derivation:
    """
    Sine and cosine of a - b from their own figure, cross-checked against the
    sum formulas with b replaced by -b.
    """
    fig = difference_figure(a, b)
    rec = TraceRecorder("difference figure")
    cg, bg = fig.length("C", "G"), fig.length("B", "G")
    cb = fig.length("C", "B")
    rec.premise("CG = HF, opposite sides of the rectangle HFGC", cg, cg, label="CG", reference="rectangle HFGC")
    rec.premise("BG is the adjacent side of BFG", bg, bg, label="BG", reference="triangle BFG")
    rec.premise("CB = CG - BG along the chain C-B-G", cb, cg - bg, label="CB", reference="chain C-B-G")
    rec.premise(
        "ABC is the primary triangle of a - b, its opposite side is CB",
        cb,
        cb,
        label=f"sin({a}-{b})",
        reference="triangle ABC",
    )
    ah, hc = fig.length("A", "H"), fig.length("H", "C")
    ac = fig.length("A", "C")
    rec.premise("AC = AH + HC along the chain A-H-C", ac, ah + hc, label="AC", reference="chain A-H-C")
    rec.premise(
        "the adjacent side of ABC is cos(a-b)",
        ac,
        ac,
        label=f"cos({a}-{b})",
        reference="triangle ABC",
    )

    sums = sum_formulas(a, b)
    mapping = _negate_angle(b)
    for fn, direct in (("sin", cb), ("cos", ac)):
        via_sum = sums[f"{fn}({a}+{b})"].rhs
        rec.premise(f"{fn}({a}+{b}) from the sum figure", via_sum, via_sum, label=f"{fn}({a}+{b})", reference="sum figure")
        rec.substitute(
            f"replace {b} by -{b}: sin(-{b}) = -sin({b}), cos(-{b}) = cos({b})",
            mapping,
            label=f"{fn}({a}-{b})",
            reference="signs of the unit vector in the fourth quadrant",
        )
        if not expr_equals(rec.last.rhs, direct):
            raise InconsistentDerivationException(
                f"{fn}({a}-{b}): figure gives {direct.render()}, substitution gives {rec.last.rhs.render()}"
            )
    formulas = (_formula(f"sin({a}-{b})", cb, fig), _formula(f"cos({a}-{b})", ac, fig))
    return Derivation("difference", formulas, rec.trace(), fig)


def double_angle(a: str = "a") -> Derivation:
    """b = a in the sum formulas, then the two reduced cosine forms."""
    b = "b" if a != "b" else "c"
    sums = sum_formulas(a, b)
    same = {Symbol(b, Kind.SIN): TrigPoly.symbol(Symbol(a, Kind.SIN)), Symbol(b, Kind.COS): TrigPoly.symbol(Symbol(a, Kind.COS))}
    rec = TraceRecorder("sum formulas")
    rec.premise("sine of a sum", sums[f"sin({a}+{b})"].rhs, sums[f"sin({a}+{b})"].rhs, label=f"sin({a}+{b})")
    rec.substitute(f"set {b} = {a}", same, label=f"sin(2{a})")
    sin_double = rec.last.rhs
    rec.premise("cosine of a sum", sums[f"cos({a}+{b})"].rhs, sums[f"cos({a}+{b})"].rhs, label=f"cos({a}+{b})")
    cos_index = rec.substitute(f"set {b} = {a}", same, label=f"cos(2{a})")
    cos_double = rec.last.rhs

    via_cos = cos_double + TrigRational(pythagorean_generator(a))
    rec.rewrite(
        f"add cos({a})^2 + sin({a})^2 - 1 = 0",
        cos_double,
        via_cos,
        label=f"cos(2{a})",
        source=cos_index,
        identity_dependent=True,
        reference="Pythagorean identity",
    )
    via_sin = TrigRational(ideal_reduce(cos_double.num).remainder)
    rec.rewrite(
        f"replace cos({a})^2 by 1 - sin({a})^2",
        cos_double,
        via_sin,
        label=f"cos(2{a})",
        source=cos_index,
        identity_dependent=True,
        reference="Pythagorean identity",
    )
    formulas = (
        Formula(f"sin(2{a})", sin_double),
        Formula(f"cos(2{a})", cos_double),
        Formula(f"cos(2{a})", via_cos, identity_dependent=True),
        Formula(f"cos(2{a})", via_sin, identity_dependent=True),
    )
    return Derivation("double-angle", formulas, rec.trace(), sums.construction)


def sine_rule(alpha: str = "alpha", gamma: str = "gamma", a: str = "a", c: str = "c") -> Derivation:
    fig = sine_cosine_rule_figure(alpha, gamma, a, c)
    rec = TraceRecorder("sine and cosine rule figure")
    bd = fig.constraint("B", "D")
    rec.premise("ABD is the primary triangle of alpha scaled by c", length("BD"), bd.first, label="BD", reference="triangle ABD")
    rec.premise("CBD is the primary triangle of gamma scaled by a", length("BD"), bd.second, label="BD", reference="triangle CBD")
    rec.premise("both expressions measure the altitude BD", bd.first, bd.second, reference="altitude BD")
    rec.multiply(f"divide by sin({alpha})*sin({gamma})", 1 / (sin(alpha) * sin(gamma)))
    rec.swap()
    lhs, rhs = rec.last.lhs, rec.last.rhs
    formula = Formula(
        f"{a}/sin({alpha})",
        rhs,
        merge_conditions(fig.conditions, (nonzero(sin(alpha)), nonzero(sin(gamma)))),
        lhs=lhs,
    )
    return Derivation("sine-rule", (formula,), rec.trace(), fig)


def cosine_rule(alpha: str = "alpha", gamma: str = "gamma", a: str = "a", c: str = "c", b: str = "b") -> Derivation:
    fig = sine_cosine_rule_figure(alpha, gamma, a, c)
    rec = TraceRecorder("sine and cosine rule figure")
    side_b, side_a, side_c = length(b), length(a), length(c)
    rec.premise("b = AD + DC along the chain A-D-C", side_b, fig.length("A", "C"), label=b, reference="chain A-D-C")
    cd = side_b - fig.length("A", "D")
    rec.premise("so DC = b - AD", length("DC"), cd, label="DC", reference="chain A-D-C")
    bd = fig.constraint("B", "D").first
    rec.premise(
        "right-triangle relation on CBD, certified by the Pythagorean proofs",
        side_a**2,
        cd**2 + bd**2,
        label=f"{a}^2",
        reference="triangle CBD",
    )
    rec.rewrite(
        f"expand: {b}^2 - 2*{b}*{c}*cos({alpha}) + {c}^2*(cos({alpha})^2 + sin({alpha})^2)",
        side_a**2,
        cd**2 + bd**2,
        label=f"{a}^2",
    )
    reduced = TrigRational(ideal_reduce((cd**2 + bd**2).num).remainder)
    rec.rewrite(
        f"replace cos({alpha})^2 + sin({alpha})^2 by 1",
        side_a**2,
        reduced,
        label=f"{a}^2",
        identity_dependent=True,
        reference="Pythagorean identity",
    )
    formula = Formula(f"{a}^2", reduced, fig.conditions, identity_dependent=True, lhs=side_a**2)
    return Derivation("cosine-rule", (formula,), rec.trace(), fig)


def cofunction(a: str = "a") -> Derivation:
    """The six functions of 90deg - a, read from the apex angles of the six-function figure."""
    fig = cofunction_figure(a)
    rec = TraceRecorder("cofunction figure")
    views = [t for t in fig.triangles() if t.complementary]
    from_abc, from_eab, from_adb = views
    other = f"90deg - {a}"
    readings = (
        ("sin", from_abc, from_abc.opp / from_abc.hyp),
        ("cos", from_abc, from_abc.adj / from_abc.hyp),
        ("tan", from_eab, from_eab.opp / from_eab.adj),
        ("sec", from_eab, from_eab.hyp / from_eab.adj),
        ("cot", from_adb, from_adb.adj / from_adb.opp),
        ("csc", from_adb, from_adb.hyp / from_adb.opp),
    )
    formulas = []
    for fn, view, value in readings:
        name = f"{fn}({other})"
        rec.premise(
            f"{view.name} read from its apex {view.base}, where the angle is {other}",
            value,
            value,
            label=name,
            reference=f"triangle {view.name}",
        )
        formulas.append(Formula(name, value, merge_conditions(view.conditions, fig.conditions)))
    return Derivation("cofunction", tuple(formulas), rec.trace(), fig)


_DIRECTIONS = {
    1: "lies in the first quadrant, both projections positive",
    2: "is directed towards the negative x-axis, its y projection stays positive",
    3: "is directed towards the negative x-axis and the negative y-axis",
    4: "is directed towards the negative y-axis, its x projection stays positive",
}


def quadrant_signed(angle: Angle) -> Derivation:
    """Signed cosine and sine of an angle by projecting the unit vector onto the axes."""
    theta = angle.render()
    if angle.is_symbolic:
        assert isinstance(angle.reference, str)
        cos_sign, sin_sign = angle.signs
        cosine, sine = cos(angle.reference) * cos_sign, sin(angle.reference) * sin_sign
    else:
        exact_sine, exact_cosine = signed_sine_cosine(angle)
        cosine, sine = const(exact_cosine), const(exact_sine)
    rec = TraceRecorder(f"unit vector in quadrant {angle.quadrant}")
    reference = angle.reference if angle.is_symbolic else f"{angle.reference}deg"
    rec.premise(
        f"the unit vector at {theta} {_DIRECTIONS[angle.quadrant]}; reference angle {reference}",
        cosine,
        cosine,
        label=f"cos({theta})",
    )
    rec.premise("its projection on the y-axis", sine, sine, label=f"sin({theta})")
    formulas = (Formula(f"cos({theta})", cosine), Formula(f"sin({theta})", sine))
    return Derivation("quadrant", formulas, rec.trace())


def quadrant_table(reference: str = "a") -> Derivation:
    """quadrant_signed of the reference angle placed in all four quadrants."""
    parts = [quadrant_signed(Angle(reference, q)) for q in (1, 2, 3, 4)]
    rec = TraceRecorder()
    for part in parts:
        for step in part.trace.steps:
            rec.premise(step.description, step.lhs, step.rhs, label=step.label, reference=step.reference)
    formulas = tuple(f for part in parts for f in part.formulas)
    return Derivation("quadrant", formulas, rec.trace())


DERIVATIONS: dict[str, Callable[[], Derivation]] = {
    "derived-functions": derived_functions,
    "sum": sum_formulas,
    "difference": difference_formulas,
    "double-angle": double_angle,
    "sine-rule": sine_rule,
    "cosine-rule": cosine_rule,
    "cofunction": cofunction,
    "quadrant": quadrant_table,
}


def derivation(name: str) -> Derivation:
    if name not in DERIVATIONS:
        raise ValueError(f"unknown derivation {name!r}")
    logger.info("deriving %s", name)
    return DERIVATIONS[name]()
