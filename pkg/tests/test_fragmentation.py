import time
from fractions import Fraction

import pytest

from compactlines.closedsets import ClosedSet
from compactlines.fragmentation import alpha_of_interval, compute_hierarchy, flower_bound, level_of
from compactlines.functions import CoefficientPattern, CoordinateEmbedding, FiniteBasis, indicator
from compactlines.measures import SignedMeasure, dirac
from compactlines.oracles import oracle_hierarchy, restrict_levels, truncated_points
from compactlines.order import ClopenInterval, FiniteLine, FinitePoint, OrdinalLine, ordinal

OMEGA = OrdinalLine((0, 1, 0))
OMEGA_SQ = OrdinalLine((1, 0, 0))


def omega_instance():
    return CoordinateEmbedding(OMEGA)


def test_finite_basis_hierarchy_collapses():
    L = FiniteLine(5)
    R = FiniteBasis(L, (indicator(L, FinitePoint(1)), indicator(L, FinitePoint(3))))
    for delta in (Fraction(1, 100), Fraction(1), Fraction(5)):
        h = compute_hierarchy(R, delta)
        assert h.levels[1].is_empty()


def test_omega_hierarchy_delta_one():
    h = compute_hierarchy(omega_instance(), 1)
    assert h.levels[1] == ClosedSet.from_points(OMEGA, [ordinal(0, 1, 0)])
    assert h.levels[2].is_empty()
    assert h.stage == 2


def test_omega_hierarchy_delta_three():
    h = compute_hierarchy(omega_instance(), 3)
    assert h.levels[1].is_empty()


def test_omega_squared_levels():
    R = CoordinateEmbedding(OMEGA_SQ, CoefficientPattern.constant(1), Fraction(1, 2))
    h = compute_hierarchy(R, 1)
    assert len(h.levels) == 4
    assert ordinal(0, 3, 0) in h.levels[1] and ordinal(0, 3, 1) not in h.levels[1]
    assert h.levels[2] == ClosedSet.from_points(OMEGA_SQ, [ordinal(1, 0, 0)])
    assert h.levels[3].is_empty()


def test_omega_squared_small_weight_stops_early():
    # 2·|omega_weight| < δ, so the ω-multiples no longer accumulate at ω²
    R = CoordinateEmbedding(OMEGA_SQ, CoefficientPattern.constant(1), Fraction(1, 4))
    h = compute_hierarchy(R, 1)
    assert h.levels[2].is_empty()


def test_alpha_and_level_examples():
    h = compute_hierarchy(omega_instance(), 1)
    whole = ClopenInterval(OMEGA, OMEGA.max())
    assert alpha_of_interval(h, whole) == 1
    assert alpha_of_interval(h, ClopenInterval(OMEGA, OMEGA.max(), ordinal(0, 0, 5))) == 1
    assert alpha_of_interval(h, ClopenInterval(OMEGA, ordinal(0, 0, 0))) == 0
    assert level_of(h, ordinal(0, 1, 0)) == 1
    assert level_of(h, ordinal(0, 0, 3)) == 0


@pytest.mark.parametrize(
    "R, delta",
    [
        (CoordinateEmbedding(OMEGA), 1),
        (CoordinateEmbedding(OMEGA), 3),
        (CoordinateEmbedding(OMEGA, CoefficientPattern((0, 2), Fraction(1, 2))), Fraction(3, 2)),
        (CoordinateEmbedding(OMEGA_SQ, CoefficientPattern.constant(1), Fraction(1, 2)), 1),
        (CoordinateEmbedding(OMEGA_SQ, CoefficientPattern.constant(1), Fraction(1, 2), Fraction(1, 2)), 1),
        (CoordinateEmbedding(OrdinalLine((0, 3, 0)), CoefficientPattern((1,), Fraction(1, 4)), Fraction(1, 2)), Fraction(1, 2)),
    ],
)
def test_hierarchy_matches_truncation_oracle(R, delta):
    h = compute_hierarchy(R, delta)
    assert restrict_levels(h, 100) == oracle_hierarchy(R, delta, 100)


def test_truncated_points_sizes():
    assert len(truncated_points(OMEGA, 100)) == 101
    assert len(truncated_points(OMEGA_SQ, 100)) == 101


def test_flower_examples():
    L = FiniteLine(5)
    R = FiniteBasis(L, (indicator(L, FinitePoint(2), FinitePoint(0)),))
    mu = dirac(L, FinitePoint(1)) - dirac(L, FinitePoint(3))
    assert flower_bound(R, mu) == (1, 1, True)
    assert flower_bound(R, SignedMeasure.zero(L)) == (0, 0, True)
    W = omega_instance()
    nu = dirac(OMEGA, ordinal(0, 0, 2)) - dirac(OMEGA, ordinal(0, 0, 5))
    assert flower_bound(W, nu) == (2, 2, True)


def test_flower_needs_zero_mass():
    L = FiniteLine(3)
    R = FiniteBasis(L, (indicator(L, FinitePoint(0)),))
    with pytest.raises(ValueError):
        flower_bound(R, dirac(L, FinitePoint(0)))


def test_oracle_runtime_is_desk_scale():
    start = time.perf_counter()
    R = CoordinateEmbedding(OMEGA_SQ, CoefficientPattern.constant(1), Fraction(1, 2))
    oracle_hierarchy(R, 1, 100)
    assert time.perf_counter() - start < 5
