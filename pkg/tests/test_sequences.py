from fractions import Fraction

import pytest

from compactlines.measures import cumulative, dirac
from compactlines.order import FiniteLine, FinitePoint, RationalPoint, UnitIntervalLine
from compactlines.sequences import (
    ExplicitList,
    MeasureSequence,
    SequenceError,
    alternating,
    explicit,
    harmonic,
    scaled,
    sweep_interval,
    sweep_sequence,
)

L5 = FiniteLine(5)


def test_sweep_third_term():
    seq = sweep_sequence(2)
    assert sweep_interval(3) == (2, Fraction(0), Fraction(1, 4))
    L = UnitIntervalLine()
    assert seq[3] == dirac(L, RationalPoint(Fraction(0))) - dirac(L, RationalPoint(Fraction(1, 4)))


def test_sweep_terms_are_balanced_pairs():
    seq = sweep_sequence(4)
    assert seq.horizon == 30
    for mu in seq.terms():
        assert mu.norm() == 2 and mu.mass() == 0


def test_sweep_covers_each_dyadic_once_per_level():
    seq = sweep_sequence(5)
    for t in (Fraction(0), Fraction(1, 2), Fraction(3, 8), Fraction(15, 16)):
        for level in range(1, 6):
            hits = [
                n for n in range(1, seq.horizon + 1)
                if sweep_interval(n)[0] == level and cumulative(seq[n], RationalPoint(t)) == 1
            ]
            assert len(hits) == 1


def test_scaled_and_harmonic_terms():
    base = dirac(L5, FinitePoint(1)) - dirac(L5, FinitePoint(3))
    s = scaled(base, Fraction(1, 2))
    assert s[3] == base.scale(Fraction(1, 8))
    assert s.sup_norm() == 1
    h = harmonic(base, 10)
    assert h[4] == base.scale(Fraction(1, 4))


def test_explicit_tail_is_zero():
    seq = explicit(L5, [dirac(L5, FinitePoint(0))], horizon=5)
    assert seq[5].is_zero()
    assert seq.tail_sup(lambda m: m.norm(), 2) == 0


def test_harmonic_first_index_below():
    seq = harmonic(dirac(L5, FinitePoint(2)), 20)
    s = lambda m: 2 * abs(cumulative(m, FinitePoint(4)))
    assert seq.first_index_below(s, Fraction(1, 2), 1) == 4


def test_alternating_is_horizon_only():
    seq = alternating(L5, [dirac(L5, FinitePoint(0)), -dirac(L5, FinitePoint(0))], horizon=6)
    assert seq.certificate == "horizon-only"
    assert seq[3] == seq[1]


def test_bound_is_enforced():
    with pytest.raises(SequenceError):
        MeasureSequence(L5, ExplicitList((dirac(L5, FinitePoint(0), 3),)), 1, 1)


def test_ratio_must_contract():
    with pytest.raises(SequenceError):
        scaled(dirac(L5, FinitePoint(0)), 1)
