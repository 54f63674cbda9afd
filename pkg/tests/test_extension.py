from fractions import Fraction

import pytest

from compactlines.decomposition import DecompositionConfig
from compactlines.extension import (
    CriterionError,
    Extendable,
    NotExtendable,
    Unknown,
    check_criterion,
    extend_through_quotient,
    full_pipeline,
    sequence_norm,
    sobczyk_extend,
    split_operator,
)
from compactlines.functions import FiniteBasis, FiniteFunctional, StepFunction, indicator
from compactlines.measures import SignedMeasure, dirac, pushforward
from compactlines.order import (
    DoubleArrowLine,
    FiniteLine,
    FinitePoint,
    LexDouble,
    PairPoint,
    RationalPoint,
    build_quotient,
    double_arrow_projection,
)
from compactlines.sequences import alternating, explicit, harmonic, scaled, sweep_sequence

L5 = FiniteLine(5)
CFG = DecompositionConfig(Fraction(1, 10), Fraction(1, 2))
HALF = RationalPoint(Fraction(1, 2))


def fp(i):
    return FinitePoint(i)


def test_criterion_zero_sequence():
    q = build_quotient(L5, {fp(1), fp(3)})
    seq = explicit(q.target, [SignedMeasure.zero(q.target)])
    assert check_criterion(q, seq, q.multi_fibers()) == Extendable(())


def test_criterion_sweep_fails_at_half():
    q = double_arrow_projection((HALF.x,))
    verdict = check_criterion(q, sweep_sequence(3), [HALF])
    assert isinstance(verdict, NotExtendable)
    assert verdict.witness == HALF and verdict.limsup == 1 and verdict.uncountable
    assert verdict.covering_count == 3


def test_criterion_scaled_decays():
    q = double_arrow_projection((Fraction(1, 4),))
    seq = scaled(dirac(q.target, RationalPoint(Fraction(1, 4))), Fraction(1, 2))
    assert check_criterion(q, seq, [RationalPoint(Fraction(1, 4))]) == Extendable(())


def test_criterion_alternating_is_unknown():
    q = build_quotient(L5, {fp(1)})
    seq = alternating(q.target, [dirac(q.target, fp(0))], horizon=4)
    assert isinstance(check_criterion(q, seq, q.multi_fibers()), Unknown)


def test_criterion_rejects_single_fiber_points():
    q = build_quotient(L5, {fp(0), fp(1), fp(2), fp(3)})
    seq = explicit(q.target, [dirac(q.target, fp(0))])
    with pytest.raises(CriterionError):
        check_criterion(q, seq, [fp(0)])


def test_extend_through_quotient_example():
    q = build_quotient(L5, {fp(1), fp(3)})
    L3 = q.target
    seq = harmonic(dirac(L3, fp(0)) - dirac(L3, fp(1)), 6)
    ext = extend_through_quotient(q, seq)
    for n in range(1, 7):
        assert ext[n] == (dirac(L5, fp(1)) - dirac(L5, fp(3))).scale(Fraction(1, n))
        assert ext[n].norm() == seq[n].norm()
        assert pushforward(q, ext[n]) == seq[n]


def test_extend_zero_sequence():
    q = build_quotient(L5, {fp(1)})
    seq = explicit(q.target, [SignedMeasure.zero(q.target)], horizon=3)
    assert all(m.is_zero() for m in extend_through_quotient(q, seq).terms())


def test_extend_refuses_negative_verdict():
    q = double_arrow_projection((HALF.x,))
    with pytest.raises(CriterionError):
        extend_through_quotient(q, sweep_sequence(2), verdict=check_criterion(q, sweep_sequence(2), [HALF]))


def test_sobczyk_example():
    L3 = FiniteLine(3)
    R = FiniteBasis(L3, (indicator(L3, fp(1)),))
    T = sobczyk_extend(L3, R, [(1,), (Fraction(1, 2),), (0,), (0,)])
    assert T.terms() == [dirac(L3, fp(0)), dirac(L3, fp(0), Fraction(1, 2)), SignedMeasure.zero(L3), SignedMeasure.zero(L3)]


def test_sobczyk_norm_contract():
    R = FiniteBasis(L5, (indicator(L5, fp(1)), indicator(L5, fp(3))))
    T0 = [FiniteFunctional((1, 0)), FiniteFunctional((Fraction(1, 2), -1))]
    T = sobczyk_extend(L5, R, T0)
    from compactlines.extension import functional_norm

    assert sequence_norm(T) <= 2 * functional_norm(R, T0)


def test_split_operator_identity():
    K = LexDouble(FiniteLine(3))
    q = build_quotient(K, {PairPoint(fp(0), 1), PairPoint(fp(1), 1)})
    L = q.target
    R = FiniteBasis(L, (indicator(L, fp(0)), indicator(L, fp(1))))
    T = sobczyk_extend(L, R, [(1, 0), (Fraction(1, 2), Fraction(1, 2)), (0, -1)])
    split = split_operator(q, R, T, CFG)
    assert split.holds
    for n in range(1, T.horizon + 1):
        assert split.T0_prime[n] + split.S[n] == T[n]


def test_pipeline_golden_shape():
    K = LexDouble(FiniteLine(3))
    b1 = StepFunction.from_point_values(K, [1, 1, 0, 0, 0, 0])
    b2 = StepFunction.from_point_values(K, [1, 1, 1, 1, 0, 0])
    T0 = [(1, 0), (Fraction(1, 2), Fraction(1, 2)), (0, -1)]
    Tp, rep = full_pipeline(K, (b1, b2), None, T0, CFG)
    assert rep.holds and rep.restriction_exact
    assert rep.ratio <= Fraction(81, 10)
    assert not rep.doubled and rep.quotient_size == 3


def test_pipeline_zero_functional():
    K = FiniteLine(4)
    b = indicator(K, fp(1))
    Tp, rep = full_pipeline(K, (b,), None, [(0,)], CFG)
    assert rep.ratio is None and all(m.is_zero() for m in Tp.terms())
    assert rep.holds


def test_pipeline_doubles_non_zero_dimensional_lines():
    K = DoubleArrowLine((Fraction(1, 2),))
    from compactlines.order import DoubledRational

    b = StepFunction(K, (DoubledRational(Fraction(1, 2), 0), K.max()), (1, -1))
    Tp, rep = full_pipeline(K, (b,), None, [(1,), (Fraction(-2, 3),)], CFG)
    assert rep.doubled and rep.holds
    assert rep.ratio <= 8 + CFG.eps
