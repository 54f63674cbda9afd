"""Computable compact lines.

Every line here is a linearly ordered set that is compact in its order
topology.  Points are small immutable values; a point only means something
relative to the line that produced it, and every public query validates its
arguments against the line.

Supported lines:

* ``FiniteLine(n)``          -- ``{0, ..., n-1}``
* ``OrdinalLine(bound)``     -- the ordinal segment ``[0, bound]``, ``bound < ω³``
* ``LexDouble(inner)``       -- ``inner × {0,1}`` with the lexicographic order
* ``UnitIntervalLine()``     -- ``[0, 1]`` restricted to rational points
* ``DoubleArrowLine(Q)``     -- ``([0,1]×{0}) ∪ (Q×{1})`` for a finite rational ``Q ⊂ ]0,1]``
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

__all__ = [
    "InvalidPoint",
    "OrderError",
    "FinitePoint",
    "OrdinalPoint",
    "PairPoint",
    "RationalPoint",
    "DoubledRational",
    "Point",
    "Line",
    "FiniteLine",
    "OrdinalLine",
    "LexDouble",
    "UnitIntervalLine",
    "DoubleArrowLine",
    "ClopenInterval",
    "ClopenPartition",
    "QuotientMap",
    "order_query",
    "partition_cells",
    "cell_of",
    "lex_double",
    "build_quotient",
    "double_arrow_projection",
    "refine_partitions",
    "ordinal",
    "DEFAULT_ORDINAL_CAP",
]

DEFAULT_ORDINAL_CAP = 8


class OrderError(ValueError):
    """Raised for malformed order-theoretic data (bad cuts, bad partitions)."""


class InvalidPoint(OrderError):
    """Raised when a point does not belong to the line it is used with."""


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class FinitePoint:
    index: int

    def __str__(self):
        return str(self.index)


@dataclass(frozen=True)
class OrdinalPoint:
    """The ordinal ``ω²·A + ω·B + C`` stored as ``cnf = (A, B, C)``."""

    cnf: tuple

    def __str__(self):
        a, b, c = self.cnf
        parts = []
        if a:
            parts.append("ω²" if a == 1 else f"ω²·{a}")
        if b:
            parts.append("ω" if b == 1 else f"ω·{b}")
        if c or not parts:
            parts.append(str(c))
        return "+".join(parts)

    @property
    def is_limit(self) -> bool:
        a, b, c = self.cnf
        return c == 0 and (a, b) != (0, 0)

    def divisible(self, level: int) -> bool:
        """True when the ordinal is a multiple of ``ω**level``."""
        a, b, c = self.cnf
        if level <= 0:
            return True
        if level == 1:
            return c == 0
        return b == 0 and c == 0


@dataclass(frozen=True)
class PairPoint:
    base: "Point"
    bit: int

    def __str__(self):
        return f"({self.base},{self.bit})"


@dataclass(frozen=True)
class RationalPoint:
    x: Fraction

    def __str__(self):
        return str(self.x)


@dataclass(frozen=True)
class DoubledRational:
    x: Fraction
    bit: int

    def __str__(self):
        return f"({self.x},{self.bit})"


Point = Union[FinitePoint, OrdinalPoint, PairPoint, RationalPoint, DoubledRational]


def ordinal(a: int = 0, b: int = 0, c: int = 0) -> OrdinalPoint:
    """Shorthand for ``OrdinalPoint((a, b, c))``, i.e. ``ω²·a + ω·b + c``."""
    return OrdinalPoint((a, b, c))


def _rational_enumeration() -> Iterator[Fraction]:
    # 0, 1, 1/2, 1/3, 2/3, 1/4, 3/4, ...
    yield Fraction(0)
    yield Fraction(1)
    for d in itertools.count(2):
        for n in range(1, d):
            if Fraction(n, d).denominator == d:
                yield Fraction(n, d)


# ---------------------------------------------------------------------------
# lines


class Line:
    """Common interface of the computable compact lines."""

    kind = "abstract"
    is_zero_dimensional = True
    is_finite = False

    # -- to be provided by subclasses
    def contains(self, p) -> bool:
        raise NotImplementedError

    def key(self, p) -> tuple:
        raise NotImplementedError

    def min(self) -> Point:
        raise NotImplementedError

    def max(self) -> Point:
        raise NotImplementedError

    def successor(self, p) -> Optional[Point]:
        raise NotImplementedError

    def predecessor(self, p) -> Optional[Point]:
        raise NotImplementedError

    def between(self, a, b) -> Optional[Point]:
        """Some point strictly between ``a < b``, or None when ``b`` succeeds ``a``."""
        raise NotImplementedError

    def enumerate_points(self) -> Iterator[Point]:
        """A fixed enumeration of the (countable) point set."""
        raise NotImplementedError

    def right_isolated_points(self) -> Iterator[Point]:
        """Canonical enumeration of the right-isolated points."""
        return (p for p in self.enumerate_points() if self.is_right_isolated(p))

    # -- shared
    def validate(self, p) -> Point:
        if not self.contains(p):
            raise InvalidPoint(f"{p!r} is not a point of {self}")
        return p

    def compare(self, p, q) -> int:
        kp, kq = self.key(self.validate(p)), self.key(self.validate(q))
        return (kp > kq) - (kp < kq)

    def less(self, p, q) -> bool:
        return self.key(p) < self.key(q)

    def sort(self, points) -> list:
        return sorted(points, key=self.key)

    def is_right_isolated(self, p) -> bool:
        self.validate(p)
        return p == self.max() or self.successor(p) is not None

    def is_left_isolated(self, p) -> bool:
        self.validate(p)
        return p == self.min() or self.predecessor(p) is not None

    def points(self) -> list:
        if not self.is_finite:
            raise OrderError(f"{self} has infinitely many points")
        return list(self.enumerate_points())

    def sample(self, limit: int = 64) -> list:
        """A deterministic finite sample of points (all of them for finite lines)."""
        if self.is_finite:
            return self.points()
        pts = set(itertools.islice(self.enumerate_points(), limit))
        pts.add(self.min())
        pts.add(self.max())
        return self.sort(pts)


@dataclass(frozen=True)
class FiniteLine(Line):
    size: int
    labels: Optional[tuple] = None

    kind = "finite"
    is_finite = True

    def __post_init__(self):
        if self.size < 1:
            raise OrderError("a finite line needs at least one point")
        if self.labels is not None and len(self.labels) != self.size:
            raise OrderError("labels must match the size")

    def __str__(self):
        return f"FiniteLine({self.size})"

    def contains(self, p):
        return isinstance(p, FinitePoint) and 0 <= p.index < self.size

    def key(self, p):
        return (p.index,)

    def min(self):
        return FinitePoint(0)

    def max(self):
        return FinitePoint(self.size - 1)

    def successor(self, p):
        self.validate(p)
        return FinitePoint(p.index + 1) if p.index + 1 < self.size else None

    def predecessor(self, p):
        self.validate(p)
        return FinitePoint(p.index - 1) if p.index > 0 else None

    def between(self, a, b):
        return FinitePoint(a.index + 1) if a.index + 1 < b.index else None

    def enumerate_points(self):
        return (FinitePoint(i) for i in range(self.size))

    def point(self, i: int) -> FinitePoint:
        return self.validate(FinitePoint(i))


@dataclass(frozen=True)
class OrdinalLine(Line):
    """The segment ``[0, bound]`` of ordinals below ``ω³``.

    ``cap`` limits the coefficients of ``bound`` only; points below the bound
    have arbitrary natural coefficients (``[0, ω]`` contains every natural).
    """

    bound: tuple
    cap: int = DEFAULT_ORDINAL_CAP

    kind = "ordinal"

    def __post_init__(self):
        bound = tuple(int(v) for v in self.bound)
        if len(bound) != 3 or min(bound) < 0:
            raise OrderError(f"bad Cantor normal form {self.bound!r}")
        if max(bound) > self.cap:
            raise OrderError(f"bound {bound} exceeds the coefficient cap {self.cap}")
        object.__setattr__(self, "bound", bound)

    def __str__(self):
        return f"OrdinalLine([0, {OrdinalPoint(self.bound)}])"

    @property
    def is_finite(self):
        return self.bound[0] == 0 and self.bound[1] == 0

    def contains(self, p):
        return (
            isinstance(p, OrdinalPoint)
            and len(p.cnf) == 3
            and min(p.cnf) >= 0
            and p.cnf <= self.bound
        )

    def key(self, p):
        return p.cnf

    def min(self):
        return OrdinalPoint((0, 0, 0))

    def max(self):
        return OrdinalPoint(self.bound)

    def successor(self, p):
        self.validate(p)
        if p.cnf == self.bound:
            return None
        a, b, c = p.cnf
        return OrdinalPoint((a, b, c + 1))

    def predecessor(self, p):
        self.validate(p)
        a, b, c = p.cnf
        return OrdinalPoint((a, b, c - 1)) if c > 0 else None

    def between(self, a, b):
        s = self.successor(a)
        return s if s is not None and s.cnf < b.cnf else None

    def enumerate_points(self):
        # breadth-first by coefficient sum, ordinal order inside each shell
        ba, bb, bc = self.bound
        for s in itertools.count():
            shell = [
                (a, b, s - a - b)
                for a in range(min(s, ba) + 1)
                for b in range(s - a + 1)
                if (a, b, s - a - b) <= self.bound
            ]
            if not shell and self.is_finite:
                return
            for cnf in shell:
                yield OrdinalPoint(cnf)

    def sample(self, limit: int = 64):
        pts = set(super().sample(limit))
        # every limit point up to a small depth, so limit behaviour is sampled
        a_max, b_max = self.bound[0], self.bound[1]
        for a in range(a_max + 1):
            for b in range(0, 6 if a < a_max else b_max + 1):
                p = OrdinalPoint((a, b, 0))
                if self.contains(p):
                    pts.add(p)
        return self.sort(pts)

    # -- ordinal helpers used by the fragmentation code
    def round_up(self, p: OrdinalPoint, level: int) -> Optional[OrdinalPoint]:
        """Least multiple of ``ω**level`` that is ``>= p`` (None past the bound)."""
        a, b, c = p.cnf
        if level == 1 and c:
            q = (a, b + 1, 0)
        elif level == 2 and (b or c):
            q = (a + 1, 0, 0)
        else:
            q = p.cnf
        return OrdinalPoint(q) if q <= self.bound else None

    @staticmethod
    def round_down(p: OrdinalPoint, level: int) -> OrdinalPoint:
        a, b, c = p.cnf
        if level == 1:
            return OrdinalPoint((a, b, 0))
        if level == 2:
            return OrdinalPoint((a, 0, 0))
        return p


@dataclass(frozen=True)
class LexDouble(Line):
    """``inner × {0,1}`` ordered lexicographically."""

    inner: Line

    kind = "lexdouble"
    is_zero_dimensional = True

    def __str__(self):
        return f"LexDouble({self.inner})"

    @property
    def is_finite(self):
        return self.inner.is_finite

    def contains(self, p):
        return isinstance(p, PairPoint) and p.bit in (0, 1) and self.inner.contains(p.base)

    def key(self, p):
        return self.inner.key(p.base) + (p.bit,)

    def min(self):
        return PairPoint(self.inner.min(), 0)

    def max(self):
        return PairPoint(self.inner.max(), 1)

    def successor(self, p):
        self.validate(p)
        if p.bit == 0:
            return PairPoint(p.base, 1)
        s = self.inner.successor(p.base)
        return PairPoint(s, 0) if s is not None else None

    def predecessor(self, p):
        self.validate(p)
        if p.bit == 1:
            return PairPoint(p.base, 0)
        s = self.inner.predecessor(p.base)
        return PairPoint(s, 1) if s is not None else None

    def between(self, a, b):
        s = self.successor(a)
        if s is not None:
            return s if self.less(s, b) else None
        # a = (t,1) with t not right-isolated in the inner line
        m = self.inner.between(a.base, b.base)
        if m is not None:
            return PairPoint(m, 0)
        return PairPoint(b.base, 0) if b.bit == 1 else None

    def enumerate_points(self):
        for p in self.inner.enumerate_points():
            yield PairPoint(p, 0)
            yield PairPoint(p, 1)


@dataclass(frozen=True)
class UnitIntervalLine(Line):
    """``[0,1]`` with rational points only.  Only ``1`` is right-isolated."""

    kind = "interval"
    is_zero_dimensional = False

    def __str__(self):
        return "UnitIntervalLine()"

    def contains(self, p):
        return isinstance(p, RationalPoint) and 0 <= p.x <= 1

    def key(self, p):
        return (p.x,)

    def min(self):
        return RationalPoint(Fraction(0))

    def max(self):
        return RationalPoint(Fraction(1))

    def successor(self, p):
        self.validate(p)
        return None

    def predecessor(self, p):
        self.validate(p)
        return None

    def between(self, a, b):
        return RationalPoint((a.x + b.x) / 2)

    def enumerate_points(self):
        return (RationalPoint(x) for x in _rational_enumeration())

    def right_isolated_points(self):
        # only the maximum; filtering the enumeration would never terminate
        return iter((self.max(),))

    def point(self, x) -> RationalPoint:
        return self.validate(RationalPoint(Fraction(x)))


@dataclass(frozen=True)
class DoubleArrowLine(Line):
    """``([0,1]×{0}) ∪ (Q×{1})`` with finite rational ``Q ⊂ ]0,1]``.

    With finite ``Q`` the line still has connected pieces, so it is flagged as
    not zero-dimensional.
    """

    Q: tuple = field(default=())

    kind = "doublearrow"
    is_zero_dimensional = False

    def __post_init__(self):
        q = tuple(sorted({Fraction(x) for x in self.Q}))
        if any(not (0 < x <= 1) for x in q):
            raise OrderError("Q must lie in ]0,1]")
        object.__setattr__(self, "Q", q)

    def __str__(self):
        return f"DoubleArrowLine({{{', '.join(map(str, self.Q))}}})"

    def contains(self, p):
        if not isinstance(p, DoubledRational) or not (0 <= p.x <= 1):
            return False
        return p.bit == 0 or (p.bit == 1 and p.x in self.Q)

    def key(self, p):
        return (p.x, p.bit)

    def min(self):
        return DoubledRational(Fraction(0), 0)

    def max(self):
        one = Fraction(1)
        return DoubledRational(one, 1 if one in self.Q else 0)

    def successor(self, p):
        self.validate(p)
        if p.bit == 0 and p.x in self.Q:
            return DoubledRational(p.x, 1)
        return None

    def predecessor(self, p):
        self.validate(p)
        return DoubledRational(p.x, 0) if p.bit == 1 else None

    def between(self, a, b):
        if a.x == b.x:
            return None
        return DoubledRational((a.x + b.x) / 2, 0)

    def enumerate_points(self):
        for x in _rational_enumeration():
            yield DoubledRational(x, 0)
            if x in self.Q:
                yield DoubledRational(x, 1)

    def right_isolated_points(self):
        for x in self.Q:
            yield DoubledRational(x, 0)
        if self.max().bit == 0:
            yield self.max()


# ---------------------------------------------------------------------------
# order queries


def order_query(line: Line, kind: str, *points):
    """Dispatch one of ``compare``, ``min``, ``max``, ``successor``,
    ``predecessor``, ``is_right_isolated``."""
    if kind == "compare":
        return line.compare(*points)
    if kind == "min":
        return line.min()
    if kind == "max":
        return line.max()
    if kind in ("successor", "predecessor", "is_right_isolated", "is_left_isolated"):
        (p,) = points
        return getattr(line, kind)(p)
    raise OrderError(f"unknown order query {kind!r}")


# ---------------------------------------------------------------------------
# clopen intervals and partitions


@dataclass(frozen=True)
class ClopenInterval:
    """``[min, hi]`` when ``lo`` is None, otherwise ``]lo, hi]``."""

    line: Line
    hi: Point
    lo: Optional[Point] = None

    def __post_init__(self):
        line = self.line
        for p in (self.hi, self.lo):
            if p is not None and not line.is_right_isolated(p):
                raise OrderError(f"clopen interval endpoint {p} is not right-isolated")
        if self.lo is not None and not line.less(self.lo, self.hi):
            raise OrderError("empty clopen interval")

    def __str__(self):
        return f"[0,{self.hi}]" if self.lo is None else f"]{self.lo},{self.hi}]"

    def __contains__(self, p):
        key = self.line.key
        return key(p) <= key(self.hi) and (self.lo is None or key(self.lo) < key(p))

    def min(self) -> Point:
        return self.line.min() if self.lo is None else self.line.successor(self.lo)

    def max(self) -> Point:
        return self.hi

    def subline_points(self) -> list:
        """All points, for intervals of finite lines."""
        return [p for p in self.line.points() if p in self]


@dataclass(frozen=True)
class ClopenPartition:
    """A finite set of right-isolated cuts containing the maximum."""

    line: Line
    cuts: tuple

    def __post_init__(self):
        line = self.line
        cuts = line.sort(set(line.validate(c) for c in self.cuts))
        if not cuts or cuts[-1] != line.max():
            raise OrderError("the maximum of the line must be a cut")
        for c in cuts:
            if not line.is_right_isolated(c):
                raise OrderError(f"cut {c} is not right-isolated")
        object.__setattr__(self, "cuts", tuple(cuts))

    @classmethod
    def trivial(cls, line: Line) -> "ClopenPartition":
        return cls(line, (line.max(),))

    def cells(self) -> list:
        out, lo = [], None
        for b in self.cuts:
            out.append(ClopenInterval(self.line, b, lo))
            lo = b
        return out

    def cell_of(self, t) -> ClopenInterval:
        self.line.validate(t)
        kt = self.line.key(t)
        lo = None
        for b in self.cuts:
            if kt <= self.line.key(b):
                return ClopenInterval(self.line, b, lo)
            lo = b
        raise AssertionError("unreachable: max is always a cut")

    def __le__(self, other: "ClopenPartition") -> bool:
        return set(self.cuts) <= set(other.cuts)


def partition_cells(line: Line, P: ClopenPartition) -> list:
    if P.line != line:
        raise OrderError("partition belongs to another line")
    return P.cells()


def cell_of(line: Line, P: ClopenPartition, t) -> ClopenInterval:
    if P.line != line:
        raise OrderError("partition belongs to another line")
    return P.cell_of(t)


def refine_partitions(line: Line, k: int) -> ClopenPartition:
    """``P_k``: the first ``k`` right-isolated points of the canonical
    enumeration together with the maximum.  Increasing in ``k``; the union over
    ``k`` is the set of all right-isolated points."""
    cuts = set(itertools.islice(line.right_isolated_points(), max(k, 0)))
    cuts.add(line.max())
    return ClopenPartition(line, tuple(cuts))


# ---------------------------------------------------------------------------
# quotient maps


@dataclass(frozen=True)
class QuotientMap:
    """A continuous increasing surjection ``q: source -> target``.

    ``kind == "cuts"``: target is ``FiniteLine(len(fibers))`` and the fibers are
    the classes cut out by the sorted right-isolated points ``cuts``.
    ``kind == "projection"``: first-coordinate projection of a ``LexDouble`` or
    ``DoubleArrowLine`` onto the underlying line.
    """

    source: Line
    target: Line
    kind: str
    cuts: tuple = ()

    def image(self, p) -> Point:
        self.source.validate(p)
        if self.kind == "projection":
            if isinstance(p, PairPoint):
                return p.base
            return RationalPoint(p.x)
        kp = self.source.key(p)
        return FinitePoint(sum(1 for s in self.cuts if self.source.key(s) < kp))

    __call__ = image

    def fiber(self, t) -> tuple:
        """The fiber ``q⁻¹(t)`` as a closed interval ``(min, max)`` of the source."""
        self.target.validate(t)
        if self.kind == "projection":
            if isinstance(self.source, LexDouble):
                return PairPoint(t, 0), PairPoint(t, 1)
            lo = DoubledRational(t.x, 0)
            return lo, (DoubledRational(t.x, 1) if t.x in self.source.Q else lo)
        i = t.index
        lo = self.source.min() if i == 0 else self.source.successor(self.cuts[i - 1])
        hi = self.cuts[i] if i < len(self.cuts) else self.source.max()
        return lo, hi

    def fiber_max(self, t) -> Point:
        """``b_t = max q⁻¹(t)``."""
        return self.fiber(t)[1]

    def fiber_right_isolated(self, t) -> Optional[Point]:
        """``a_t``: a right-isolated fiber point below ``b_t`` (None for singleton fibers)."""
        lo, hi = self.fiber(t)
        if lo == hi:
            return None
        if not self.source.is_right_isolated(lo):
            raise OrderError(f"fiber of {t} has no right-isolated point below its max")
        return lo

    def is_multi_fiber(self, t) -> bool:
        lo, hi = self.fiber(t)
        return lo != hi

    def multi_fibers(self) -> list:
        """``Q_f = {t : |q⁻¹(t)| > 1}`` (finite targets only)."""
        return [t for t in self.target.points() if self.is_multi_fiber(t)]


def lex_double(line: Line) -> tuple:
    """``(LexDouble(line), π₁)``."""
    doubled = LexDouble(line)
    return doubled, QuotientMap(doubled, line, "projection")


def double_arrow_projection(Q: Sequence) -> QuotientMap:
    """``π₁: DA(Q) → [0,1]``."""
    return QuotientMap(DoubleArrowLine(tuple(Q)), UnitIntervalLine(), "projection")


def build_quotient(K: Line, E) -> QuotientMap:
    """Quotient of ``K`` by the indicators ``χ_[0,s]``, ``s ∈ E``.

    The target is the finite line of order classes cut out by ``E``.
    """
    cuts = []
    for s in set(E):
        K.validate(s)
        if not K.is_right_isolated(s):
            raise OrderError(f"{s} is not right-isolated in {K}")
        if s != K.max():
            cuts.append(s)
    cuts = tuple(K.sort(cuts))
    return QuotientMap(K, FiniteLine(len(cuts) + 1), "cuts", cuts)
