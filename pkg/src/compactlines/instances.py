"""Seeded random desk-scale instances.

Every generator takes a :class:`random.Random` so that campaigns are
reproducible from a seed.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .closedsets import ClosedSet
from .functions import (
    CoefficientPattern,
    CoordinateEmbedding,
    FiniteBasis,
    FunctionError,
    PiecewiseLinear,
    StepFunction,
)
from .measures import SignedMeasure
from .order import (
    ClopenInterval,
    ClopenPartition,
    DoubleArrowLine,
    DoubledRational,
    FiniteLine,
    FinitePoint,
    LexDouble,
    OrdinalLine,
    OrdinalPoint,
    PairPoint,
    RationalPoint,
    UnitIntervalLine,
)
from .sequences import explicit, harmonic, scaled

ORDINAL_BOUNDS = ((0, 0, 6), (0, 1, 0), (0, 1, 3), (0, 2, 0), (1, 0, 0), (1, 1, 2))


def rng_for(seed, *labels) -> random.Random:
    return random.Random(":".join(str(x) for x in (seed,) + labels))


def random_fraction(rng: random.Random, num: int = 4, den: int = 4, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if x or not nonzero:
            return x


def random_line(rng: random.Random, zero_dimensional: bool = False):
    kinds = ["finite", "ordinal", "lexdouble"] + ([] if zero_dimensional else ["interval", "doublearrow"])
    kind = rng.choice(kinds)
    if kind == "finite":
        return FiniteLine(rng.randint(1, 8))
    if kind == "ordinal":
        return OrdinalLine(rng.choice(ORDINAL_BOUNDS))
    if kind == "lexdouble":
        inner = FiniteLine(rng.randint(1, 4)) if rng.random() < 0.6 else OrdinalLine(rng.choice(ORDINAL_BOUNDS[:3]))
        return LexDouble(inner)
    if kind == "interval":
        return UnitIntervalLine()
    Q = sorted({Fraction(rng.randint(1, 8), 8) for _ in range(rng.randint(1, 3))})
    return DoubleArrowLine(tuple(Q))


def random_point(rng: random.Random, line):
    if isinstance(line, FiniteLine):
        return FinitePoint(rng.randrange(line.size))
    if isinstance(line, OrdinalLine):
        A, B, C = line.bound
        while True:
            a = rng.randint(0, A)
            b = rng.randint(0, B if a == A else 12)
            c = rng.randint(0, C if (a, b) == (A, B) else 12)
            p = OrdinalPoint((a, b, c))
            if line.contains(p):
                return p
    if isinstance(line, LexDouble):
        return PairPoint(random_point(rng, line.inner), rng.randint(0, 1))
    if isinstance(line, UnitIntervalLine):
        d = rng.choice((2, 3, 4, 8, 16))
        return RationalPoint(Fraction(rng.randint(0, d), d))
    if isinstance(line, DoubleArrowLine):
        if line.Q and rng.random() < 0.4:
            return DoubledRational(rng.choice(line.Q), rng.randint(0, 1))
        d = rng.choice((2, 3, 4, 8, 16))
        return DoubledRational(Fraction(rng.randint(0, d), d), 0)
    raise TypeError(line)


def random_measure(rng: random.Random, line, atoms: int = 6) -> SignedMeasure:
    k = rng.randint(0, atoms)
    return SignedMeasure.from_atoms(line, [(random_point(rng, line), random_fraction(rng, nonzero=True)) for _ in range(k)])


def random_zero_mass_measure(rng: random.Random, line, atoms: int = 6) -> SignedMeasure:
    mu = random_measure(rng, line, atoms - 1)
    return mu - SignedMeasure.from_atoms(line, [(random_point(rng, line), mu.mass())])


def random_cut(rng: random.Random, line):
    """A random right-isolated point."""
    while True:
        p = random_point(rng, line)
        if line.is_right_isolated(p):
            return p


def random_partition(rng: random.Random, line, cuts: int = 4) -> ClopenPartition:
    pts = {random_cut(rng, line) for _ in range(rng.randint(0, cuts))}
    pts.add(line.max())
    return ClopenPartition(line, tuple(pts))


def random_step_function(rng: random.Random, line, cuts: int = 4) -> StepFunction:
    P = random_partition(rng, line, cuts)
    return StepFunction(line, P.cuts, tuple(random_fraction(rng) for _ in P.cuts))


def random_piecewise_linear(rng: random.Random, nodes: int = 4) -> PiecewiseLinear:
    xs = sorted({Fraction(rng.randint(1, 15), 16) for _ in range(rng.randint(0, nodes))})
    xs = [Fraction(0)] + xs + [Fraction(1)]
    return PiecewiseLinear(tuple((x, random_fraction(rng)) for x in xs))


def random_test_function(rng: random.Random, line):
    if isinstance(line, UnitIntervalLine):
        return random_piecewise_linear(rng)
    return random_step_function(rng, line)


def random_closed_subset(rng: random.Random, I: ClopenInterval) -> ClosedSet:
    """A nonempty closed subset of the clopen interval ``I``."""
    line = I.line
    pts = set()
    for _ in range(12):
        p = random_point(rng, line)
        if p in I:
            pts.add(p)
        if len(pts) >= 4:
            break
    pts.add(I.max() if rng.random() < 0.5 else I.min())
    pts = line.sort(pts)
    if isinstance(line, OrdinalLine) and len(pts) >= 2 and rng.random() < 0.5:
        # one genuine infinite piece between two of the points
        i = rng.randrange(len(pts) - 1)
        level = rng.randint(0, 2)
        pieces = [(p, p, 0) for j, p in enumerate(pts) if j not in (i, i + 1)]
        pieces.append((pts[i], pts[i + 1], level))
        H = ClosedSet.build(line, pieces)
        if not H.is_empty():
            return H
    return ClosedSet.from_points(line, pts)


def random_interval(rng: random.Random, line) -> ClopenInterval:
    P = random_partition(rng, line)
    return rng.choice(P.cells())


def random_finite_basis(rng: random.Random, line=None, dim: int = 3) -> FiniteBasis:
    line = line or rng.choice([FiniteLine(rng.randint(2, 6)), LexDouble(FiniteLine(rng.randint(1, 3))), OrdinalLine((0, 1, 0))])
    while True:
        m = rng.randint(1, dim)
        basis = tuple(random_step_function(rng, line, 3) for _ in range(m))
        try:
            return FiniteBasis(line, basis)
        except FunctionError:
            continue


def random_pattern(rng: random.Random) -> CoefficientPattern:
    table = tuple(random_fraction(rng, 2, 2) for _ in range(rng.randint(0, 3)))
    kind = rng.choice(["table", "constant", "geometric"])
    if kind == "table":
        return CoefficientPattern(table, 0)
    if kind == "constant":
        return CoefficientPattern(table, random_fraction(rng, 2, 2, nonzero=True))
    return CoefficientPattern(table, random_fraction(rng, 2, 2, nonzero=True), rng.choice([Fraction(1, 2), Fraction(-1, 3), Fraction(2, 3)]))


def random_coordinate(rng: random.Random, line=None) -> CoordinateEmbedding:
    line = line or OrdinalLine(rng.choice(((0, 0, 5), (0, 1, 0), (0, 2, 0), (1, 0, 0), (1, 1, 2))))
    weights = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(-1, 2))
    return CoordinateEmbedding(line, random_pattern(rng), rng.choice(weights), rng.choice(weights))


def random_operator(rng: random.Random):
    return random_finite_basis(rng) if rng.random() < 0.5 else random_coordinate(rng)


def random_unit_sequence(rng: random.Random, line, horizon: int):
    """A sequence with ``sup‖μ_n‖ ≤ 1`` of one of the analytic variants."""

    def unit(mu):
        return mu.scale(1 / mu.norm()) if mu.norm() else mu

    kind = rng.choice(["explicit", "scaled", "harmonic"])
    if kind == "explicit":
        return explicit(line, [unit(random_measure(rng, line, 4)) for _ in range(rng.randint(1, horizon))], horizon, bound=1)
    base = unit(random_measure(rng, line, 4))
    if kind == "scaled":
        return scaled(base, rng.choice([Fraction(1, 2), Fraction(-2, 3), Fraction(3, 4)]), horizon)
    return harmonic(base, horizon)


def random_decomposition_instance(rng: random.Random, horizon: int = 12):
    R = random_operator(rng)
    return R.line, R, random_unit_sequence(rng, R.line, horizon)


def random_pipeline_instance(rng: random.Random, horizon: int = 4):
    """``(K, basis, T0)`` with step functions on ``K`` and functionals on their span."""
    choice = rng.random()
    if choice < 0.4:
        K = LexDouble(FiniteLine(rng.randint(2, 3)))
    elif choice < 0.7:
        K = FiniteLine(rng.randint(3, 7))
    elif choice < 0.85:
        K = OrdinalLine((0, 1, 0))
    else:
        # not zero-dimensional: the pipeline doubles it first
        K = DoubleArrowLine(tuple(sorted({Fraction(rng.randint(1, 4), 4) for _ in range(2)})))
    R = random_finite_basis(rng, K, 3)
    T0 = [tuple(random_fraction(rng) for _ in range(R.dim)) for _ in range(rng.randint(1, horizon))]
    return K, R.basis, T0
