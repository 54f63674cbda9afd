"""Finitely supported signed measures on compact lines.

All weights are :class:`fractions.Fraction`; nothing in this module touches
floating point.  A measure ``μ`` determines the cumulative function
``F_μ(t) = μ([0, t])``, which is normalized of bounded variation, and
``‖F_μ‖_BV = |F_μ(0)| + V(F_μ)`` equals the total variation ``‖μ‖``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .order import ClopenInterval, InvalidPoint, Line, OrderError, QuotientMap

__all__ = [
    "MeasureError",
    "SignedMeasure",
    "NBVProfile",
    "dirac",
    "total_variation",
    "jordan",
    "cumulative",
    "bv_norm",
    "variation",
    "canonical_partition",
    "rs_sum",
    "rs_integral",
    "pushforward",
]


class MeasureError(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class SignedMeasure:
    """``Σ w_p δ_p`` with finitely many nonzero rational weights.

    ``atoms`` is kept as a tuple of ``(point, weight)`` pairs sorted in the
    order of the line; build instances with :meth:`from_atoms`.
    """

    line: Line
    atoms: tuple = ()

    @classmethod
    def from_atoms(cls, line: Line, atoms) -> "SignedMeasure":
        if isinstance(atoms, dict):
            atoms = atoms.items()
        acc: dict = {}
        for p, w in atoms:
            line.validate(p)
            acc[p] = acc.get(p, Fraction(0)) + _frac(w)
        items = [(p, w) for p, w in acc.items() if w != 0]
        items.sort(key=lambda pw: line.key(pw[0]))
        return cls(line, tuple(items))

    @classmethod
    def zero(cls, line: Line) -> "SignedMeasure":
        return cls(line, ())

    # -- basic views
    def as_dict(self) -> dict:
        return dict(self.atoms)

    def weight(self, p) -> Fraction:
        for q, w in self.atoms:
            if q == p:
                return w
        return Fraction(0)

    def support(self) -> list:
        return [p for p, _ in self.atoms]

    def is_zero(self) -> bool:
        return not self.atoms

    def norm(self) -> Fraction:
        return sum((abs(w) for _, w in self.atoms), Fraction(0))

    def mass(self, interval: Optional[ClopenInterval] = None) -> Fraction:
        """``μ(L)``, or ``μ(I)`` for a clopen interval ``I``."""
        if interval is None:
            return sum((w for _, w in self.atoms), Fraction(0))
        return sum((w for p, w in self.atoms if p in interval), Fraction(0))

    def mass_between(self, lo, hi, *, lo_open=True, hi_open=False) -> Fraction:
        """Mass of the order interval with endpoints ``lo``/``hi`` (None = unbounded)."""
        key = self.line.key
        total = Fraction(0)
        for p, w in self.atoms:
            kp = key(p)
            if lo is not None and (kp < key(lo) or (lo_open and kp == key(lo))):
                continue
            if hi is not None and (kp > key(hi) or (hi_open and kp == key(hi))):
                continue
            total += w
        return total

    def restrict(self, interval: ClopenInterval) -> "SignedMeasure":
        return SignedMeasure(self.line, tuple((p, w) for p, w in self.atoms if p in interval))

    # -- linear structure
    def _check_line(self, other: "SignedMeasure"):
        if other.line != self.line:
            raise MeasureError("measures live on different lines")

    def __add__(self, other: "SignedMeasure") -> "SignedMeasure":
        self._check_line(other)
        return SignedMeasure.from_atoms(self.line, list(self.atoms) + list(other.atoms))

    def __neg__(self) -> "SignedMeasure":
        return SignedMeasure(self.line, tuple((p, -w) for p, w in self.atoms))

    def __sub__(self, other: "SignedMeasure") -> "SignedMeasure":
        return self + (-other)

    def scale(self, c) -> "SignedMeasure":
        c = _frac(c)
        if c == 0:
            return SignedMeasure.zero(self.line)
        return SignedMeasure(self.line, tuple((p, c * w) for p, w in self.atoms))

    __rmul__ = scale

    def __str__(self):
        if not self.atoms:
            return "0"
        return " + ".join(f"{w}·δ[{p}]" for p, w in self.atoms)


def dirac(line: Line, p, weight=1) -> SignedMeasure:
    return SignedMeasure.from_atoms(line, [(p, weight)])


# ---------------------------------------------------------------------------
# total variation and Jordan decomposition


def total_variation(mu: SignedMeasure) -> Fraction:
    return mu.norm()


def jordan(mu: SignedMeasure) -> tuple:
    """``(μ⁺, μ⁻)`` with ``μ = μ⁺ − μ⁻`` and disjoint supports."""
    pos = SignedMeasure(mu.line, tuple((p, w) for p, w in mu.atoms if w > 0))
    neg = SignedMeasure(mu.line, tuple((p, -w) for p, w in mu.atoms if w < 0))
    return pos, neg


def cumulative(mu: SignedMeasure, t) -> Fraction:
    """``F_μ(t) = μ([0, t])``."""
    line = mu.line
    kt = line.key(line.validate(t))
    return sum((w for p, w in mu.atoms if line.key(p) <= kt), Fraction(0))


# ---------------------------------------------------------------------------
# NBV functions


@dataclass(frozen=True)
class NBVProfile:
    """The cumulative function ``F_μ``; values are computed on demand."""

    measure: SignedMeasure

    @property
    def line(self) -> Line:
        return self.measure.line

    def __call__(self, t) -> Fraction:
        return cumulative(self.measure, t)


def canonical_partition(line: Line, atoms: Iterable, extra: Iterable = ()) -> list:
    """Sorted partition through ``0``, ``max``, every atom, a point just below
    every atom (when one exists) and the points of ``extra``."""
    pts = {line.min(), line.max()}
    pts.update(extra)
    atoms = list(atoms)
    pts.update(atoms)
    ordered = line.sort(pts)
    for p in atoms:
        if p == line.min():
            continue
        below = [q for q in ordered if line.less(q, p)]
        prev = below[-1]
        pred = line.predecessor(p)
        if pred is not None:
            pts.add(pred)
        else:
            mid = line.between(prev, p)
            if mid is not None:
                pts.add(mid)
    return line.sort(pts)


def _refine_once(line: Line, partition: list) -> list:
    pts = set(partition)
    for a, b in zip(partition, partition[1:]):
        mid = line.between(a, b)
        if mid is not None:
            pts.add(mid)
    return line.sort(pts)


def _variation_on(F: NBVProfile, partition: list) -> Fraction:
    vals = [F(t) for t in partition]
    return sum((abs(b - a) for a, b in zip(vals, vals[1:])), Fraction(0))


def variation(F: NBVProfile) -> Fraction:
    """``V(F)``.

    For an atomic ``μ`` the supremum over partitions is attained on any
    partition through the atoms and a point just below each atom; the value is
    checked to be stable under one further refinement.
    """
    line = F.line
    P = canonical_partition(line, F.measure.support())
    v = _variation_on(F, P)
    if _variation_on(F, _refine_once(line, P)) != v:
        raise MeasureError("variation not stable under refinement")
    return v


def bv_norm(F: NBVProfile) -> Fraction:
    """``‖F‖_BV = |F(0)| + V(F)``."""
    return abs(F(F.line.min())) + variation(F)


# ---------------------------------------------------------------------------
# Riemann–Stieltjes integration


def rs_sum(f, F: NBVProfile, partition: list) -> Fraction:
    """``S(f, F; P) = f(0)F(0) + Σ f(t_{i+1}) (F(t_{i+1}) − F(t_i))``."""
    vals = [F(t) for t in partition]
    total = f(partition[0]) * vals[0]
    for i in range(len(partition) - 1):
        total += f(partition[i + 1]) * (vals[i + 1] - vals[i])
    return total


def rs_integral(f, F: NBVProfile) -> Fraction:
    """``∫ f dF`` for a continuous test function ``f`` on the line of ``F``.

    ``f`` must expose ``line``, ``breakpoints()`` and be callable on points
    (see :mod:`compactlines.functions`).  The sum is taken on a partition
    refining the atoms and the breakpoints of ``f`` and must agree with the sum
    on one further refinement.
    """
    line = F.line
    if getattr(f, "line", line) != line:
        raise MeasureError("function and NBV profile live on different lines")
    check = getattr(f, "check_continuous", None)
    if check is not None:
        check()
    extra = [p for p in f.breakpoints() if line.contains(p)] if hasattr(f, "breakpoints") else []
    P = canonical_partition(line, F.measure.support(), extra)
    value = rs_sum(f, F, P)
    if rs_sum(f, F, _refine_once(line, P)) != value:
        raise MeasureError("Riemann–Stieltjes sum not stable under refinement")
    return value


# ---------------------------------------------------------------------------
# pushforward


def pushforward(q: QuotientMap, mu: SignedMeasure) -> SignedMeasure:
    """``q_*μ(B) = μ(q⁻¹[B])``."""
    if mu.line != q.source:
        raise MeasureError("measure does not live on the source of the quotient")
    return SignedMeasure.from_atoms(q.target, [(q.image(p), w) for p, w in mu.atoms])
