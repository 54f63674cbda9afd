"""Hypothesis-driven properties on finite and ordinal lines.

Every check enumerates the whole (finite) line instead of trusting the
library's own test-point selection.
"""
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from compactlines import instances as gen
from compactlines.closedsets import ClosedSet
from compactlines.decomposition import DecompositionConfig, decompose, verify_decomposition
from compactlines.fragmentation import flower_bound
from compactlines.functions import FiniteFunctional, StepFunction, dual_norm, pullback, r_star
from compactlines.measures import NBVProfile, SignedMeasure, bv_norm, cumulative, pushforward, rs_integral
from compactlines.order import ClopenInterval, ClopenPartition, FiniteLine, FinitePoint, build_quotient
from compactlines.rewrites import skeleton, tilde_mu

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

fractions = st.fractions(min_value=-4, max_value=4, max_denominator=6)
sizes = st.integers(min_value=1, max_value=9)


@st.composite
def finite_measure(draw, size=None):
    n = size or draw(sizes)
    L = FiniteLine(n)
    atoms = draw(st.lists(st.tuples(st.integers(0, n - 1), fractions), max_size=6))
    return SignedMeasure.from_atoms(L, [(FinitePoint(i), w) for i, w in atoms])


@st.composite
def measure_and_partition(draw):
    mu = draw(finite_measure())
    L = mu.line
    cuts = draw(st.sets(st.integers(0, L.size - 1)))
    return mu, ClopenPartition(L, tuple(FinitePoint(i) for i in cuts | {L.size - 1}))


@st.composite
def step_on(draw, L):
    cuts = sorted(draw(st.sets(st.integers(0, L.size - 2))) | {L.size - 1}) if L.size > 1 else [0]
    vals = draw(st.lists(fractions, min_size=len(cuts), max_size=len(cuts)))
    return StepFunction(L, tuple(FinitePoint(i) for i in cuts), tuple(vals))


@SETTINGS
@given(finite_measure())
def test_bv_norm_is_isometric(mu):
    assert bv_norm(NBVProfile(mu)) == mu.norm()


@SETTINGS
@given(st.data())
def test_stieltjes_equals_atomic_sum(data):
    mu = data.draw(finite_measure())
    f = data.draw(step_on(mu.line))
    assert rs_integral(f, NBVProfile(mu)) == sum((f(p) * w for p, w in mu.atoms), Fraction(0))


@SETTINGS
@given(measure_and_partition())
def test_tilde_postconditions_everywhere(mp):
    mu, P = mp
    L = mu.line
    mt = tilde_mu(L, P, mu)
    for I in P.cells():
        assert mt.mass(I) == 0
    for p in L.points():
        if p not in P.cuts:
            assert cumulative(mt, p) == cumulative(mu, p)
    assert mt.norm() <= mu.norm() + 2 * sum((abs(cumulative(mu, b)) for b in P.cuts), Fraction(0))


@SETTINGS
@given(st.data())
def test_skeleton_postconditions_everywhere(data):
    mu = data.draw(finite_measure())
    L = mu.line
    lo = data.draw(st.integers(-1, L.size - 2))
    hi = data.draw(st.integers(lo + 1, L.size - 1))
    I = ClopenInterval(L, FinitePoint(hi), None if lo < 0 else FinitePoint(lo))
    pts = I.subline_points()
    chosen = data.draw(st.sets(st.sampled_from(pts), min_size=1))
    H = ClosedSet.from_points(L, chosen)
    part = mu.restrict(I)
    nu = skeleton(I, H, part)
    assert set(nu.support()) <= set(chosen)
    assert nu.mass() == part.mass() and nu.norm() <= part.norm()
    top = max(chosen, key=lambda p: p.index)
    for t in chosen:
        if t != top:
            assert nu.mass_between(I.lo, t) == part.mass_between(I.lo, t)


@SETTINGS
@given(st.data())
def test_pullback_pushforward_duality(data):
    mu = data.draw(finite_measure(size=data.draw(st.integers(2, 9))))
    K = mu.line
    cuts = data.draw(st.sets(st.integers(0, K.size - 2)))
    q = build_quotient(K, {FinitePoint(i) for i in cuts})
    f = data.draw(step_on(q.target))
    assert rs_integral(pullback(q, f), NBVProfile(mu)) == rs_integral(f, NBVProfile(pushforward(q, mu)))


@SETTINGS
@given(st.integers(0, 10 ** 6))
def test_flower_bound_random_operators(seed):
    rng = gen.rng_for(seed, "flower-property")
    R = gen.random_operator(rng)
    mu = gen.random_zero_mass_measure(rng, R.line)
    lhs, rhs, holds = flower_bound(R, mu)
    assert holds and lhs <= rhs


@SETTINGS
@given(st.integers(0, 10 ** 6), fractions)
def test_dual_norm_is_a_norm(seed, a):
    rng = gen.rng_for(seed, "dual-property")
    R = gen.random_finite_basis(rng)
    psi = FiniteFunctional(tuple(gen.random_fraction(rng) for _ in range(R.dim)))
    chi = FiniteFunctional(tuple(gen.random_fraction(rng) for _ in range(R.dim)))
    assert dual_norm(R, psi.scale(a)) == abs(a) * dual_norm(R, psi)
    assert dual_norm(R, psi + chi) <= dual_norm(R, psi) + dual_norm(R, chi)
    mu = gen.random_measure(rng, R.line)
    assert dual_norm(R, r_star(R, mu)) <= R.norm() * mu.norm()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_decomposition_contract(seed):
    rng = gen.rng_for(seed, "decomposition-property")
    L, R, seq = gen.random_decomposition_instance(rng, 10)
    res = decompose(L, R, seq, DecompositionConfig(Fraction(1, 10), Fraction(1, 2)))
    assert all(c.passed for c in verify_decomposition(res, R))
