"""Bounded sequences of measures ``(μ_n)_{n≥1}``, i.e. operators ``C(L) → ℓ∞``.

Indices start at 1.  Each generator carries a norm bound and a decay
certificate: ``"analytic"`` when weak*-nullness follows from the shape of the
generator, ``"horizon-only"`` when it is only observed up to the horizon.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .measures import SignedMeasure
from .order import Line, RationalPoint, UnitIntervalLine

__all__ = [
    "SequenceError",
    "ExplicitList",
    "Scaled",
    "Harmonic",
    "IntervalSweep",
    "Alternating",
    "MeasureSequence",
    "explicit",
    "scaled",
    "harmonic",
    "alternating",
    "sweep_sequence",
    "sweep_interval",
]

ANALYTIC = "analytic"
HORIZON_ONLY = "horizon-only"


class SequenceError(ValueError):
    pass


@dataclass(frozen=True)
class ExplicitList:
    """``μ_1, ..., μ_m`` followed by zeros."""

    measures: tuple


@dataclass(frozen=True)
class Scaled:
    """``μ_n = rⁿ·base`` with ``|r| < 1``."""

    base: SignedMeasure
    ratio: Fraction


@dataclass(frozen=True)
class Harmonic:
    """``μ_n = base / n``."""

    base: SignedMeasure


@dataclass(frozen=True)
class IntervalSweep:
    """``μ_n = δ_{a_n} − δ_{b_n}`` over the dyadic intervals ``[a_n, b_n[``
    listed level by level: ``[0,½[, [½,1[, [0,¼[, ...``.  The sequence never
    stops; ``depth`` only fixes the default horizon (all levels ``≤ depth``)."""

    depth: int


@dataclass(frozen=True)
class Alternating:
    """``μ_n = table[(n−1) mod len(table)]``; no decay certificate."""

    table: tuple


def sweep_interval(n: int) -> tuple:
    """``(level, a_n, b_n)`` of the ``n``-th dyadic interval."""
    if n < 1:
        raise SequenceError("indices start at 1")
    level = 1
    while (1 << (level + 1)) - 2 < n:
        level += 1
    j = n - ((1 << level) - 2) - 1
    w = Fraction(1, 1 << level)
    return level, j * w, (j + 1) * w


def _check_measure(line: Line, m: SignedMeasure):
    if m.line != line:
        raise SequenceError("measure lives on another line")


@dataclass(frozen=True)
class MeasureSequence:
    line: Line
    generator: object
    bound: Fraction
    horizon: int
    certificate: str = ANALYTIC

    def __post_init__(self):
        object.__setattr__(self, "bound", Fraction(self.bound))
        if self.horizon < 1:
            raise SequenceError("horizon must be at least 1")
        g = self.generator
        if isinstance(g, ExplicitList):
            for m in g.measures:
                _check_measure(self.line, m)
        elif isinstance(g, (Scaled, Harmonic)):
            _check_measure(self.line, g.base)
            if isinstance(g, Scaled) and not abs(g.ratio) < 1:
                raise SequenceError("ratio must satisfy |r| < 1")
        elif isinstance(g, Alternating):
            if not g.table:
                raise SequenceError("empty period table")
            for m in g.table:
                _check_measure(self.line, m)
        elif isinstance(g, IntervalSweep):
            if not isinstance(self.line, UnitIntervalLine):
                raise SequenceError("the sweep lives on the unit interval")
        else:
            raise SequenceError(f"unknown generator {g!r}")
        for n in range(1, self.horizon + 1):
            if self[n].norm() > self.bound:
                raise SequenceError(f"‖μ_{n}‖ exceeds the declared bound {self.bound}")

    # -- terms
    def __getitem__(self, n: int) -> SignedMeasure:
        if n < 1:
            raise SequenceError("indices start at 1")
        g = self.generator
        if isinstance(g, ExplicitList):
            return g.measures[n - 1] if n <= len(g.measures) else SignedMeasure.zero(self.line)
        if isinstance(g, Scaled):
            return g.base.scale(g.ratio ** n)
        if isinstance(g, Harmonic):
            return g.base.scale(Fraction(1, n))
        if isinstance(g, Alternating):
            return g.table[(n - 1) % len(g.table)]
        _, a, b = sweep_interval(n)
        return SignedMeasure.from_atoms(self.line, [(RationalPoint(a), 1), (RationalPoint(b), -1)])

    def terms(self, horizon: Optional[int] = None) -> list:
        return [self[n] for n in range(1, (horizon or self.horizon) + 1)]

    @property
    def variant(self) -> str:
        return type(self.generator).__name__

    def sup_norm(self, horizon: Optional[int] = None) -> Fraction:
        """``sup_n ‖μ_n‖``: exact for the analytic variants, else over the horizon."""
        g = self.generator
        if isinstance(g, Scaled):
            return abs(g.ratio) * g.base.norm()
        if isinstance(g, Harmonic):
            return g.base.norm()
        if isinstance(g, IntervalSweep):
            return Fraction(2)
        if isinstance(g, Alternating):
            return max(m.norm() for m in g.table)
        return max((m.norm() for m in g.measures), default=Fraction(0))

    # -- analytic tail information
    def tail_sup(self, seminorm: Callable, n: int) -> Fraction:
        """``sup_{m ≥ n} s(μ_m)`` for an absolutely homogeneous seminorm ``s``.

        Exact for the analytic variants; over ``[n, horizon]`` for horizon-only ones.
        """
        g = self.generator
        if isinstance(g, ExplicitList):
            return max((seminorm(self[m]) for m in range(n, len(g.measures) + 1)), default=Fraction(0))
        if isinstance(g, Scaled):
            return abs(g.ratio) ** n * seminorm(g.base)
        if isinstance(g, Harmonic):
            return seminorm(g.base) / n
        if isinstance(g, Alternating):
            return max((seminorm(self[m]) for m in range(n, self.horizon + 1)), default=Fraction(0))
        raise SequenceError("no tail analysis for the sweep on a non-zero-dimensional line")

    def first_index_below(self, seminorm: Callable, eps: Fraction, start: int) -> Optional[int]:
        """Least ``n ≥ start`` with ``tail_sup(s, n) ≤ eps`` (None when not found within the horizon)."""
        g = self.generator
        if isinstance(g, Harmonic):
            s = seminorm(g.base)
            return max(start, math.ceil(s / eps)) if s else start
        if isinstance(g, Scaled):
            s = seminorm(g.base)
            n = start
            while abs(g.ratio) ** n * s > eps:
                n += 1
            return n
        if isinstance(g, ExplicitList):
            n = start
            while self.tail_sup(seminorm, n) > eps:
                n += 1
            return n
        for n in range(start, self.horizon + 1):
            if self.tail_sup(seminorm, n) <= eps:
                return n
        return None

    # -- linear maps
    def map_linear(self, fn: Callable, line: Optional[Line] = None, bound=None) -> "MeasureSequence":
        """Apply a linear map termwise, keeping the generator shape."""
        line = line or self.line
        bound = self.bound if bound is None else bound
        g = self.generator
        if isinstance(g, ExplicitList):
            new = ExplicitList(tuple(fn(m) for m in g.measures))
        elif isinstance(g, Scaled):
            new = Scaled(fn(g.base), g.ratio)
        elif isinstance(g, Harmonic):
            new = Harmonic(fn(g.base))
        elif isinstance(g, Alternating):
            new = Alternating(tuple(fn(m) for m in g.table))
        else:
            raise SequenceError("the sweep cannot be mapped termwise")
        return MeasureSequence(line, new, bound, self.horizon, self.certificate)

    def scale(self, c) -> "MeasureSequence":
        c = Fraction(c)
        return self.map_linear(lambda m: m.scale(c), bound=abs(c) * self.bound)


def explicit(line: Line, measures, horizon: Optional[int] = None, bound=None) -> MeasureSequence:
    measures = tuple(measures)
    if bound is None:
        bound = max((m.norm() for m in measures), default=Fraction(0))
    return MeasureSequence(line, ExplicitList(measures), bound, horizon or max(len(measures), 1), ANALYTIC)


def scaled(base: SignedMeasure, ratio, horizon: int = 20) -> MeasureSequence:
    ratio = Fraction(ratio)
    return MeasureSequence(base.line, Scaled(base, ratio), abs(ratio) * base.norm(), horizon, ANALYTIC)


def harmonic(base: SignedMeasure, horizon: int = 20) -> MeasureSequence:
    return MeasureSequence(base.line, Harmonic(base), base.norm(), horizon, ANALYTIC)


def alternating(line: Line, table, horizon: int = 20) -> MeasureSequence:
    table = tuple(table)
    return MeasureSequence(line, Alternating(table), max(m.norm() for m in table), horizon, HORIZON_ONLY)


def sweep_sequence(depth: int, horizon: Optional[int] = None) -> MeasureSequence:
    """The dyadic sweep on ``[0,1]`` through all levels ``≤ depth`` by default."""
    if depth < 1:
        raise SequenceError("depth must be at least 1")
    horizon = horizon or (1 << (depth + 1)) - 2
    return MeasureSequence(UnitIntervalLine(), IntervalSweep(depth), Fraction(2), horizon, ANALYTIC)
