import math
import random

import pytest

from gasing_trig.backend.construction import resolve_angles
from gasing_trig.backend.exceptions import VerificationException
from gasing_trig.backend.proofs import (
    PROOF_IDS,
    Verdict,
    _certify,
    prove,
    prove_all,
    prove_alt_identity,
    prove_case,
    prove_derived_squares,
    prove_main_identity,
    sin2a_lemma,
)
from gasing_trig.backend.trace import TraceRecorder
from gasing_trig.backend.trigexpr import (
    TrigPoly,
    cos,
    eval_numeric,
    expr_equals,
    free_mode,
    reduction_count,
    sin,
)

s, c = sin("a"), cos("a")


def test_main_identity_is_certified_without_reductions():
    before = reduction_count()
    certificate = prove_main_identity()
    assert reduction_count() == before
    assert certificate.verdict is Verdict.VERIFIED
    assert certificate.cofactors == {"a": TrigPoly.constant(1)}
    assert certificate.recomposes()
    lhs, rhs = certificate.final_equation
    assert expr_equals(lhs, c**2 + s**2)
    assert lhs.render() == "cos(a)^2 + sin(a)^2"
    assert rhs.render() == "1"
    assert "cos(a) != 0" in {cond.render() for cond in certificate.conditions}


def test_alt_identity():
    before = reduction_count()
    certificate = prove_alt_identity()
    assert reduction_count() == before
    assert certificate.verified
    assert certificate.recomposes()
    rendered = {cond.render() for cond in certificate.conditions}
    assert {"cos(a) != 0", "sin(a) != 0"} <= rendered


def test_derived_squares():
    before = reduction_count()
    sec, csc = prove_derived_squares()
    assert reduction_count() == before
    assert sec.verified and csc.verified
    assert expr_equals(sec.final_equation[1], 1 + (s / c) ** 2)
    assert expr_equals(csc.final_equation[1], 1 + (c / s) ** 2)
    assert sec.recomposes() and csc.recomposes()


@pytest.mark.parametrize("n", range(1, 9))
def test_every_case_verifies(n):
    before = reduction_count()
    certificate = prove_case(n)
    assert reduction_count() == before
    assert certificate.case_id == f"case{n}"
    assert certificate.verified, certificate.remainder
    assert certificate.failed_step is None
    assert certificate.recomposes()
    assert not certificate.trace.identity_dependent


def test_case_areas_are_recorded():
    quantities = dict(prove_case(1).quantities)
    assert expr_equals(quantities["area ABCD"], (c + s) ** 2)
    assert expr_equals(quantities["area EFB"], s * c / 2)


def test_case4_notes_the_unused_condition():
    assert prove_case(4).notes == ("AF < AC is recorded but not used by the algebra",)


def test_case8_series_notes():
    certificate = prove_case(8)
    assert "sin(a)^2/cos(a)^2 < 1" in {cond.render() for cond in certificate.conditions}
    ea, eb = certificate.notes
    assert ea.startswith("EA: 5 terms")
    assert eb.startswith("EB: 5 terms")
    # both series have converged at 20 terms for a = 30deg
    for line in certificate.notes:
        twenty = line.split("20 terms ")[1].split(";")[0]
        closed = line.split("closed form ")[1]
        assert float(twenty) == pytest.approx(float(closed), abs=1e-6)


def test_unknown_case():
    with pytest.raises(ValueError):
        prove_case(9)
    with pytest.raises(ValueError):
        prove("case")


def test_sin2a_lemma():
    before = reduction_count()
    lemma = sin2a_lemma()
    assert reduction_count() == before
    formula = lemma.formulas[0]
    assert expr_equals(formula.rhs, 2 * s * c)
    assert lemma.trace.check() is None


def test_prove_all_keeps_the_order():
    certificates = prove_all()
    ids = [certificate.case_id for certificate in certificates]
    assert ids == ["main", "alt", "squares-sec", "squares-csc"] + [f"case{n}" for n in range(1, 9)]
    assert all(certificate.verified for certificate in certificates)
    assert len(PROOF_IDS) == len(ids) - 1


def test_a_wrong_final_equation_fails_with_a_remainder():
    with free_mode():
        rec = TraceRecorder("test")
        rec.premise("not a consequence of the figure", c**2 + s**2, 2)
    certificate = _certify("bogus", rec)
    assert certificate.verdict is Verdict.FAILED
    assert certificate.failed_step == 0
    assert certificate.cofactors == {}
    assert certificate.remainder is not None
    assert certificate.remainder.render() == "-1"
    with pytest.raises(VerificationException) as excinfo:
        certificate.raise_for_verdict()
    assert excinfo.value.step == 0
    assert excinfo.value.remainder == "-1"


def test_a_step_that_does_not_follow_is_located():
    with free_mode():
        rec = TraceRecorder("test")
        rec.premise("start", 1 / c, c + s * s / c)
        rec.multiply("multiply by cos(a)", c)
        rec.rewrite("a wrong rewrite", c**2 + s**2, 1 + s)
        rec.rewrite("back to the identity", c**2 + s**2, 1)
    certificate = _certify("broken", rec)
    assert not certificate.verified
    assert certificate.failed_step == 2


def test_every_step_balances_at_random_angles():
    generator = random.Random(20240601)
    # below 45deg, where the case 8 series converge
    samples = [generator.uniform(0.05, 0.7) for _ in range(50)]
    traces = [(certificate.case_id, certificate.trace, certificate.construction) for certificate in prove_all()]
    lemma = sin2a_lemma()
    traces.append((lemma.name, lemma.trace, lemma.construction))
    for name, trace, construction in traces:
        for x in samples:
            angles = resolve_angles(construction, {"a": x, "a2": 2 * x})
            for index, step in enumerate(trace.steps):
                lhs, rhs = eval_numeric(step.lhs, angles), eval_numeric(step.rhs, angles)
                assert math.isclose(lhs, rhs, rel_tol=1e-12, abs_tol=1e-12), (name, index, x)
