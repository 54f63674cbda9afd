"""Closed subsets of compact lines as finite unions of simple pieces.

A piece is ``(lo, hi, level)``: the points ``p`` with ``lo ≤ p ≤ hi`` that are
multiples of ``ω**level``.  ``level`` is always 0 outside ordinal lines, where
a piece is just a closed interval.  On ordinal segments below ``ω³`` the sets
``{ω, ω·2, ..., ω²}`` produced by the fragmentation hierarchy need
``level ≥ 1``; such pieces are closed because limits of multiples of ``ω**j``
are again multiples of ``ω**j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .order import ClopenInterval, Line, OrderError, OrdinalLine, OrdinalPoint

__all__ = ["Piece", "ClosedSet"]


@dataclass(frozen=True)
class Piece:
    lo: object
    hi: object
    level: int = 0

    def __str__(self):
        inner = f"[{self.lo},{self.hi}]"
        return inner if self.level == 0 else f"{inner}∩ω^{self.level}·N"


def _normalize(line: Line, lo, hi, level) -> Optional[Piece]:
    if isinstance(line, OrdinalLine) and level:
        lo = line.round_up(lo, level)
        if lo is None:
            return None
        hi = line.round_down(hi, level)
    elif level:
        raise OrderError("divisibility pieces only exist on ordinal lines")
    if line.key(lo) > line.key(hi):
        return None
    if lo == hi:
        level = 0
    return Piece(lo, hi, level)


@dataclass(frozen=True)
class ClosedSet:
    line: Line
    pieces: tuple = ()

    @classmethod
    def build(cls, line: Line, pieces) -> "ClosedSet":
        out = []
        for pc in pieces:
            lo, hi, level = (pc.lo, pc.hi, pc.level) if isinstance(pc, Piece) else (tuple(pc) + (0,))[:3]
            line.validate(lo)
            line.validate(hi)
            n = _normalize(line, lo, hi, level)
            if n is not None:
                out.append(n)
        out.sort(key=lambda pc: line.key(pc.lo))
        for a, b in zip(out, out[1:]):
            if line.key(a.hi) >= line.key(b.lo):
                raise OrderError("closed-set pieces overlap")
        return cls(line, tuple(out))

    @classmethod
    def whole(cls, line: Line) -> "ClosedSet":
        return cls(line, (Piece(line.min(), line.max(), 0),))

    @classmethod
    def empty(cls, line: Line) -> "ClosedSet":
        return cls(line, ())

    @classmethod
    def from_points(cls, line: Line, points) -> "ClosedSet":
        pts = line.sort(set(line.validate(p) for p in points))
        return cls(line, tuple(Piece(p, p, 0) for p in pts))

    @classmethod
    def from_interval(cls, I: ClopenInterval) -> "ClosedSet":
        return cls.build(I.line, [(I.min(), I.max(), 0)])

    def __str__(self):
        return "∅" if not self.pieces else " ∪ ".join(map(str, self.pieces))

    # -- membership and extremes
    def is_empty(self) -> bool:
        return not self.pieces

    def __bool__(self):
        return bool(self.pieces)

    def _in_piece(self, pc: Piece, p) -> bool:
        key = self.line.key
        if not (key(pc.lo) <= key(p) <= key(pc.hi)):
            return False
        return pc.level == 0 or p.divisible(pc.level)

    def __contains__(self, p) -> bool:
        return any(self._in_piece(pc, p) for pc in self.pieces)

    def min(self):
        return self.pieces[0].lo if self.pieces else None

    def max(self):
        return self.pieces[-1].hi if self.pieces else None

    def ceil(self, p):
        """Least member ``≥ p`` (None if there is none)."""
        key = self.line.key
        for pc in self.pieces:
            if key(pc.hi) < key(p):
                continue
            start = pc.lo if key(pc.lo) >= key(p) else p
            if pc.level:
                start = self.line.round_up(start, pc.level)
            if start is not None and key(start) <= key(pc.hi):
                return start
        return None

    def floor(self, p):
        """Greatest member ``≤ p`` (None if there is none)."""
        key = self.line.key
        for pc in reversed(self.pieces):
            if key(pc.lo) > key(p):
                continue
            end = pc.hi if key(pc.hi) <= key(p) else p
            if pc.level:
                end = self.line.round_down(end, pc.level)
            if key(end) >= key(pc.lo):
                return end
        return None

    # -- set operations
    def intersect(self, I: ClopenInterval) -> "ClosedSet":
        line = self.line
        key = line.key
        lo_I, hi_I = I.min(), I.max()
        out = []
        for pc in self.pieces:
            lo = pc.lo if key(pc.lo) >= key(lo_I) else lo_I
            hi = pc.hi if key(pc.hi) <= key(hi_I) else hi_I
            if key(lo) > key(hi):
                continue
            n = _normalize(line, lo, hi, pc.level)
            if n is not None:
                out.append(n)
        return ClosedSet(line, tuple(out))

    def points(self) -> list:
        """All members (finite lines, or sets made of degenerate pieces)."""
        if all(pc.lo == pc.hi for pc in self.pieces):
            return [pc.lo for pc in self.pieces]
        if not self.line.is_finite:
            raise OrderError("closed set is infinite")
        return [p for p in self.line.points() if p in self]

    def representatives(self, m: int) -> Iterator:
        """A finite subset meeting every maximal run of the set in its first
        and last ``m`` elements (every element when the set is finite)."""
        line = self.line
        for pc in self.pieces:
            if pc.lo == pc.hi:
                yield pc.lo
            elif isinstance(line, OrdinalLine):
                yield from _ordinal_representatives(line, pc, m)
            elif line.is_finite:
                for p in line.points():
                    if self._in_piece(pc, p):
                        yield p
            else:
                raise OrderError(f"no representative enumeration for {line}")


def _window(lo: int, hi: Optional[int], m: int) -> list:
    """First and last ``m`` integers of ``[lo, hi]`` (``hi=None``: unbounded)."""
    if hi is None:
        return list(range(lo, lo + m))
    if hi - lo + 1 <= 2 * m:
        return list(range(lo, hi + 1))
    return list(range(lo, lo + m)) + list(range(hi - m + 1, hi + 1))


def _ordinal_representatives(line: OrdinalLine, pc: Piece, m: int):
    la, lb, lc = pc.lo.cnf
    ha, hb, hc = pc.hi.cnf
    for a in _window(la, ha, m):
        b_lo = lb if a == la else 0
        b_hi = hb if a == ha else None
        for b in _window(b_lo, b_hi, m):
            c_lo = lc if (a, b) == (la, lb) else 0
            c_hi = hc if (a, b) == (ha, hb) else None
            if pc.level >= 1:
                cs = [0] if c_lo == 0 else []
            else:
                cs = _window(c_lo, c_hi, m)
            for c in cs:
                if pc.level == 2 and b != 0:
                    continue
                p = OrdinalPoint((a, b, c))
                if pc.lo.cnf <= p.cnf <= pc.hi.cnf:
                    yield p
