"""The δ-oscillation hierarchy ``H_0 ⊇ H_1 ⊇ ...`` of ``φ^R``.

``H_{α+1}`` keeps the points ``p ∈ H_α`` such that every neighbourhood ``V``
of ``p`` has ``diam φ^R[V ∩ H_α] ≥ δ``.

Only two situations produce nonempty higher levels at desk scale:

* ``R`` a :class:`~compactlines.functions.FiniteBasis`: ``φ^R`` is constant on
  the cells of a clopen partition, so ``H_1 = ∅``;
* ``R`` a :class:`~compactlines.functions.CoordinateEmbedding` on an ordinal
  segment: a point survives only if it is a left limit inside ``H_α``, and the
  infimum of the diameters over its left tails is a closed form provided by
  ``R.tail_oscillation``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .closedsets import ClosedSet, Piece
from .functions import CoordinateEmbedding, FiniteBasis, dual_norm, diam_phi, r_star
from .measures import SignedMeasure
from .order import ClopenInterval, OrderError, OrdinalLine, OrdinalPoint

__all__ = [
    "NotStabilized",
    "Hierarchy",
    "compute_hierarchy",
    "alpha_of_interval",
    "level_of",
    "flower_bound",
    "DEFAULT_STAGE_CAP",
]

DEFAULT_STAGE_CAP = 32


class NotStabilized(RuntimeError):
    def __init__(self, max_stage: int):
        super().__init__(f"hierarchy did not reach ∅ within {max_stage} stages")
        self.max_stage = max_stage


@dataclass(frozen=True)
class Hierarchy:
    R: object
    delta: Fraction
    levels: tuple

    @property
    def line(self):
        return self.R.line

    @property
    def stage(self) -> int:
        """Index of the first empty level."""
        return len(self.levels) - 1

    def __getitem__(self, alpha: int) -> ClosedSet:
        if alpha >= len(self.levels):
            return self.levels[-1]
        return self.levels[alpha]

    def __str__(self):
        return "\n".join(f"H_{i} = {H}" for i, H in enumerate(self.levels))


def _next_piece(line: OrdinalLine, R, pc: Piece, delta: Fraction) -> list:
    if pc.lo == pc.hi or pc.level >= 2:
        return []
    a, b, c = pc.lo.cnf
    start = OrdinalPoint((a, b, c + 1))
    if pc.level == 0:
        d1 = R.tail_oscillation(1, 0)
        d2 = R.tail_oscillation(2, 0)
        if d1 > d2:
            raise OrderError("ω-limits would survive without the ω²-limit above them")
        if d1 >= delta:
            return [(start, pc.hi, 1)]
        if d2 >= delta:
            return [(start, pc.hi, 2)]
        return []
    if R.tail_oscillation(2, 1) >= delta:
        return [(start, pc.hi, 2)]
    return []


def _next_level(R, H: ClosedSet, delta: Fraction) -> ClosedSet:
    line = H.line
    if isinstance(R, FiniteBasis) or line.is_finite:
        # every point has a neighbourhood on which φ is constant
        return ClosedSet.empty(line)
    if not isinstance(line, OrdinalLine):
        raise OrderError(f"no symbolic hierarchy for {line}")
    pieces = []
    for pc in H.pieces:
        pieces.extend(_next_piece(line, R, pc, delta))
    return ClosedSet.build(line, pieces)


def _strictly_inside(line, small: ClosedSet, big: ClosedSet) -> bool:
    if small.is_empty():
        return not big.is_empty()
    reps = list(small.representatives(4))
    if not all(p in big for p in reps):
        return False
    return any(p not in small for p in big.representatives(4))


def compute_hierarchy(R, delta, max_stage: int = DEFAULT_STAGE_CAP) -> Hierarchy:
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("δ must be positive")
    if not isinstance(R, (FiniteBasis, CoordinateEmbedding)):
        raise TypeError(f"unsupported operator {R!r}")
    levels = [ClosedSet.whole(R.line)]
    while not levels[-1].is_empty():
        if len(levels) > max_stage:
            raise NotStabilized(max_stage)
        nxt = _next_level(R, levels[-1], delta)
        if not _strictly_inside(R.line, nxt, levels[-1]):
            raise AssertionError("hierarchy level is not properly contained in its predecessor")
        levels.append(nxt)
    return Hierarchy(R, delta, tuple(levels))


def alpha_of_interval(h: Hierarchy, I: ClopenInterval) -> int:
    """``α(I) = min{α : diam φ^R[H_α ∩ I] < δ}``."""
    for alpha, H in enumerate(h.levels):
        if diam_phi(h.R, H.intersect(I)) < h.delta:
            return alpha
    raise AssertionError("the last level is empty")


def level_of(h: Hierarchy, t) -> int:
    """Largest ``β`` with ``t ∈ H_β``."""
    h.line.validate(t)
    beta = 0
    for alpha, H in enumerate(h.levels):
        if t in H:
            beta = alpha
    return beta


def flower_bound(R, mu: SignedMeasure) -> tuple:
    """``(‖R*μ‖, ½·diam φ^R[supp μ]·‖μ‖, holds)`` for ``μ(L) = 0``."""
    if mu.mass() != 0:
        raise ValueError("flower bound needs μ(L) = 0")
    lhs = dual_norm(R, r_star(R, mu))
    rhs = diam_phi(R, ClosedSet.from_points(R.line, mu.support())) * mu.norm() / 2
    holds = lhs <= rhs
    assert holds, f"flower bound violated: {lhs} > {rhs}"
    return lhs, rhs, holds
