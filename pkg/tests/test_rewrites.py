from fractions import Fraction

import pytest

from compactlines.closedsets import ClosedSet
from compactlines.measures import SignedMeasure, cumulative, dirac
from compactlines.order import ClopenInterval, ClopenPartition, FiniteLine, FinitePoint, OrdinalLine, ordinal
from compactlines.rewrites import RewriteError, skeleton, tilde_mu

L5 = FiniteLine(5)


def m(*pairs, line=L5):
    return SignedMeasure.from_atoms(line, [(FinitePoint(i), w) for i, w in pairs])


def test_tilde_worked_example():
    P = ClopenPartition(L5, (FinitePoint(1), FinitePoint(4)))
    mu = m((0, 1), (2, 1), (4, -1))
    mt = tilde_mu(L5, P, mu)
    assert mt == m((0, 1), (1, -1), (2, 2), (4, -2))
    I, J = P.cells()
    assert mt.mass(I) == 0 and mt.mass(J) == 0
    for t in (0, 2, 3):
        assert cumulative(mt, FinitePoint(t)) == cumulative(mu, FinitePoint(t))
    assert mt.norm() == 6 <= 3 + 2 * (1 + 1)


def test_tilde_fixes_measures_with_vanishing_cuts():
    P = ClopenPartition(L5, (FinitePoint(1), FinitePoint(4)))
    mu = m((0, 1), (1, -1), (3, 2), (4, -2))
    assert tilde_mu(L5, P, mu) == mu


def test_tilde_matches_cumulative_everywhere_off_the_cuts():
    L = FiniteLine(8)
    P = ClopenPartition(L, (FinitePoint(2), FinitePoint(5), FinitePoint(7)))
    mu = m((0, 3), (3, Fraction(-1, 2)), (5, 1), (6, -2), line=L)
    mt = tilde_mu(L, P, mu)
    for p in L.points():
        if p not in P.cuts:
            assert cumulative(mt, p) == cumulative(mu, p)
        else:
            assert cumulative(mt, p) == 0


def test_tilde_on_ordinal_uses_successors():
    L = OrdinalLine((0, 1, 0))
    P = ClopenPartition(L, (ordinal(0, 0, 3), L.max()))
    mu = dirac(L, ordinal(0, 0, 1), 2) - dirac(L, ordinal(0, 1, 0))
    mt = tilde_mu(L, P, mu)
    assert mt.weight(ordinal(0, 0, 4)) == 2
    assert mt.mass(P.cells()[0]) == 0


def test_skeleton_worked_example():
    H = ClosedSet.from_points(L5, [FinitePoint(1), FinitePoint(3)])
    mu = m((0, 1), (2, -1), (4, 1))
    nu = skeleton(L5, H, mu)
    assert nu == m((1, 1))
    assert cumulative(nu, FinitePoint(1)) == cumulative(mu, FinitePoint(1)) == 1


def test_skeleton_on_whole_line_is_identity():
    mu = m((0, 2), (3, -1))
    assert skeleton(L5, ClosedSet.whole(L5), mu) == mu


def test_skeleton_onto_empty_set_drops_balanced_measure():
    mu = m((0, 1), (2, -1))
    assert skeleton(L5, ClosedSet.empty(L5), mu).is_zero()


def test_skeleton_onto_empty_set_needs_zero_mass():
    with pytest.raises((RewriteError, AssertionError)):
        skeleton(L5, ClosedSet.empty(L5), m((0, 1)))


def test_skeleton_on_subinterval_ordinal():
    L = OrdinalLine((0, 2, 0))
    I = ClopenInterval(L, L.max(), ordinal(0, 0, 4))
    H = ClosedSet.build(L, [(ordinal(0, 1, 0), L.max(), 1)])
    mu = dirac(L, ordinal(0, 0, 7), 1) + dirac(L, ordinal(0, 1, 3), -3)
    nu = skeleton(I, H, mu)
    assert set(nu.support()) <= {ordinal(0, 1, 0), ordinal(0, 2, 0)}
    assert nu.mass() == mu.mass() and nu.norm() <= mu.norm()
