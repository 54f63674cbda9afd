from fractions import Fraction

import pytest

from compactlines.decomposition import (
    DecompositionConfig,
    ScheduleNotFound,
    choose_schedule,
    decompose,
    normalize,
    verify_decomposition,
)
from compactlines.functions import CoefficientPattern, CoordinateEmbedding, FiniteBasis, indicator
from compactlines.measures import SignedMeasure, cumulative, dirac
from compactlines.order import ClopenPartition, FiniteLine, FinitePoint, OrdinalLine, ordinal
from compactlines.sequences import alternating, explicit, harmonic, scaled

L5 = FiniteLine(5)
OMEGA = OrdinalLine((0, 1, 0))
CFG = DecompositionConfig(Fraction(1, 10), Fraction(1, 2))


def example_basis():
    return FiniteBasis(L5, (indicator(L5, FinitePoint(1)), indicator(L5, FinitePoint(3))))


def failing(checks):
    return [c for c in checks if not c.passed]


def test_delta_from_eps():
    assert CFG.delta == Fraction(2, 15)


def test_schedule_harmonic_example():
    seq = harmonic(dirac(L5, FinitePoint(2)), 20)
    P1 = ClopenPartition(L5, (FinitePoint(4),))
    assert choose_schedule(seq, [P1], Fraction(1, 2)) == [4]


def test_schedule_zero_tail_is_strictly_increasing():
    seq = explicit(L5, [dirac(L5, FinitePoint(1))] * 3, horizon=8)
    P = ClopenPartition(L5, (FinitePoint(1), FinitePoint(4)))
    ns = choose_schedule(seq, [P] * 5, Fraction(1, 2))
    assert ns == [4, 5, 6, 7, 8]


def test_schedule_is_strictly_increasing():
    seq = scaled(dirac(L5, FinitePoint(0)) - dirac(L5, FinitePoint(2)), Fraction(2, 3), 30)
    Ps = [ClopenPartition(L5, tuple(FinitePoint(i) for i in range(k, 5))) for k in range(4, -1, -1)]
    ns = choose_schedule(seq, Ps, Fraction(1, 2))
    assert all(a < b for a, b in zip(ns, ns[1:]))


def test_schedule_not_found_for_alternating():
    seq = alternating(L5, [dirac(L5, FinitePoint(1))], horizon=6)
    with pytest.raises(ScheduleNotFound):
        choose_schedule(seq, lambda k: ClopenPartition(L5, (FinitePoint(1), FinitePoint(4))), Fraction(1, 2))


def test_finite_worked_example():
    R = example_basis()
    seq = scaled(dirac(L5, FinitePoint(1)) - dirac(L5, FinitePoint(3)), Fraction(1, 2), 20)
    res = decompose(L5, R, seq, CFG)
    checks = verify_decomposition(res, R)
    assert not failing(checks)
    names = {c.check for c in checks}
    assert {"a:split", "b:nu", "b:mu_prime", "c:R*nu", "nu_decay"} <= names
    # the partitions become discrete, so every point is the top of some target
    # and the cumulative check (d) has nothing left to test on this line
    assert set(res.exceptional) == set(L5.points())


def test_before_first_index_nothing_moves():
    R = example_basis()
    seq = harmonic(dirac(L5, FinitePoint(1)), 20)
    res = decompose(L5, R, seq, CFG)
    n1 = res.schedule[0]
    assert n1 > 1
    for n in range(1, n1):
        assert res.mu_prime[n] == seq[n] and res.nu[n].is_zero()


def test_norm_budgets():
    R = CoordinateEmbedding(OMEGA)
    seq = harmonic((dirac(OMEGA, ordinal(0, 0, 2)) - dirac(OMEGA, ordinal(0, 0, 5))).scale(Fraction(1, 2)), 20)
    res = decompose(OMEGA, R, seq, CFG)
    for n in range(1, 21):
        assert res.nu[n].norm() <= Fraction(3, 2)
        assert res.mu_prime[n].norm() <= Fraction(5, 2)
    assert not failing(verify_decomposition(res, R))
    assert res.exceptional[-1] == ordinal(0, 1, 0)


def test_cumulative_check_is_exercised_when_tails_shrink():
    # with c(n) = 2^-n the cells ]k, ω] drop below δ quickly, so sampled
    # points outside E get a finite k₀ inside the horizon
    R = CoordinateEmbedding(OMEGA, CoefficientPattern.geometric(1, Fraction(1, 2)))
    seq = harmonic((dirac(OMEGA, ordinal(0, 0, 2)) - dirac(OMEGA, ordinal(0, 0, 40))).scale(Fraction(1, 2)), 20)
    res = decompose(OMEGA, R, seq, CFG)
    checks = verify_decomposition(res, R)
    assert not failing(checks)
    assert any(c.check == "d:mu_prime_cumulative" for c in checks)


def _l1_of_r_star(R, nu):
    # independent of r_star/dual_norm: accumulate φ coordinates by hand
    acc = {}
    for p, w in nu.atoms:
        for k, v in R.phi(p).entries:
            acc[k] = acc.get(k, Fraction(0)) + w * v
    return sum(abs(v) for v in acc.values())


def test_residual_small_by_direct_l1_sum():
    R = CoordinateEmbedding(OMEGA)
    base = (dirac(OMEGA, ordinal(0, 0, 1)) - dirac(OMEGA, ordinal(0, 1, 0))).scale(Fraction(1, 2))
    res = decompose(OMEGA, R, scaled(base, Fraction(3, 4), 25), CFG)
    for n in range(1, 26):
        assert _l1_of_r_star(R, res.nu[n]) <= Fraction(1, 10)
        assert res.mu_prime[n] + res.nu[n] == res.source[n]


def test_mu_prime_cumulative_vanishes_away_from_exceptional_set():
    R = example_basis()
    seq = harmonic((dirac(L5, FinitePoint(0)) - dirac(L5, FinitePoint(4))).scale(Fraction(1, 2)), 20)
    res = decompose(L5, R, seq, CFG)
    E = set(res.exceptional)
    for t in L5.points():
        if t not in E:
            assert cumulative(res.mu_prime[20], t) == 0


def test_decompose_requires_unit_bound():
    R = example_basis()
    seq = explicit(L5, [dirac(L5, FinitePoint(0), 2)])
    with pytest.raises(ValueError):
        decompose(L5, R, seq, CFG)
    unit, s = normalize(seq)
    assert s == 2 and unit.sup_norm() == 1


def test_zero_sequence():
    R = example_basis()
    seq = explicit(L5, [SignedMeasure.zero(L5)], horizon=4)
    res = decompose(L5, R, seq, CFG)
    assert all(res.nu[n].is_zero() and res.mu_prime[n].is_zero() for n in range(1, 5))


def test_config_rejects_nonpositive():
    with pytest.raises(ValueError):
        DecompositionConfig(0, Fraction(1, 2))
