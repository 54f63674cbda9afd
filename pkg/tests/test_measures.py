from fractions import Fraction

import pytest

from compactlines.functions import PiecewiseLinear, StepFunction, pullback
from compactlines.measures import (
    NBVProfile,
    SignedMeasure,
    bv_norm,
    cumulative,
    dirac,
    jordan,
    pushforward,
    rs_integral,
)
from compactlines.order import (
    DoubleArrowLine,
    DoubledRational,
    FiniteLine,
    FinitePoint,
    OrdinalLine,
    RationalPoint,
    UnitIntervalLine,
    build_quotient,
    ordinal,
)

L5 = FiniteLine(5)


def d(i, w=1, line=L5):
    return dirac(line, FinitePoint(i), w)


def test_norm_and_jordan():
    mu = d(1) - d(3)
    assert mu.norm() == 2
    pos, neg = jordan(mu)
    assert pos == d(1) and neg == d(3)
    assert SignedMeasure.zero(L5).norm() == 0
    assert (d(0, 2) + d(2) - d(4, 3)).norm() == 6


def test_cumulative_values():
    mu = d(1) - d(3)
    assert [cumulative(mu, FinitePoint(i)) for i in range(5)] == [0, 1, 1, 0, 0]


def test_cumulative_double_arrow():
    L = DoubleArrowLine((Fraction(1, 2),))
    mu = dirac(L, DoubledRational(Fraction(1, 2), 1))
    assert cumulative(mu, DoubledRational(Fraction(1, 2), 0)) == 0
    assert cumulative(mu, DoubledRational(Fraction(1, 2), 1)) == 1


def test_bv_norm_examples():
    assert bv_norm(NBVProfile(d(1) - d(3))) == 2
    assert bv_norm(NBVProfile(SignedMeasure.zero(L5))) == 0
    assert bv_norm(NBVProfile(d(0, 2))) == 2


def _jumps_oracle(mu):
    # |F(0)| plus the sum of jumps over the full enumeration of a finite line
    pts = mu.line.points()
    F = [cumulative(mu, p) for p in pts]
    return abs(F[0]) + sum(abs(b - a) for a, b in zip(F, F[1:]))


@pytest.mark.parametrize("weights", [(1, -1, 0, 2, 0), (0, 0, 0, 0, 5), (Fraction(1, 3), -2, 4, 0, -1)])
def test_bv_norm_matches_enumeration(weights):
    mu = SignedMeasure.from_atoms(L5, [(FinitePoint(i), w) for i, w in enumerate(weights) if w])
    assert bv_norm(NBVProfile(mu)) == _jumps_oracle(mu) == mu.norm()


def test_bv_norm_on_ordinal():
    L = OrdinalLine((0, 2, 0))
    mu = dirac(L, ordinal(0, 1, 0), 3) - dirac(L, ordinal(0, 0, 7))
    assert bv_norm(NBVProfile(mu)) == 4


def test_rs_integral_examples():
    f = StepFunction.from_point_values(L5, [1, 1, 1, 0, 0])
    assert rs_integral(f, NBVProfile(d(1) - d(3))) == 1
    one = StepFunction.constant(L5, 1)
    mu = d(0, 2) + d(2) - d(4, 3)
    assert rs_integral(one, NBVProfile(mu)) == mu.mass()


def test_rs_integral_piecewise_linear():
    L = UnitIntervalLine()
    mu = dirac(L, RationalPoint(Fraction(1, 4))) - dirac(L, RationalPoint(Fraction(3, 4)))
    assert rs_integral(PiecewiseLinear.identity(), NBVProfile(mu)) == Fraction(-1, 2)


def test_pushforward_examples():
    q = build_quotient(L5, {FinitePoint(1), FinitePoint(3)})
    L3 = q.target
    assert pushforward(q, d(0) - d(2)) == d(0, line=L3) - d(1, line=L3)
    assert pushforward(q, d(0) - d(1)).is_zero()


def test_pushforward_identity_quotient():
    q = build_quotient(L5, set(L5.points()[:-1]))
    mu = d(0, 2) + d(2) - d(4, 3)
    assert pushforward(q, mu).as_dict() == {FinitePoint(q(p).index): w for p, w in mu.atoms}


def test_pullback_duality_example():
    q = build_quotient(L5, {FinitePoint(1), FinitePoint(3)})
    f = StepFunction.from_point_values(q.target, [1, 0, 0])
    g = pullback(q, f)
    assert [g(FinitePoint(i)) for i in range(5)] == [1, 1, 0, 0, 0]
    mu = d(0) - d(2)
    assert rs_integral(g, NBVProfile(mu)) == rs_integral(f, NBVProfile(pushforward(q, mu))) == 1


def test_measure_line_mismatch():
    with pytest.raises(ValueError):
        d(0) + dirac(FiniteLine(6), FinitePoint(0))
