"""Continuous test functions, dual vectors and operators ``R: X → C(L)``.

Two operator families are supported:

``FiniteBasis``
    ``X`` is finite dimensional, spanned inside ``C(L)`` by step functions
    ``g_1..g_m`` (optionally through a coefficient matrix).  ``X*`` norms are
    exact LPs over one representative per cell of the common refinement.

``CoordinateEmbedding``
    ``X = c₀`` over a structured index set, ``X* = ℓ₁``, on an ordinal segment
    (or finite line).  ``φ^R(p)`` is a short ℓ₁ vector built from the Cantor
    normal form of ``p``; see :class:`CoordinateEmbedding`.

Throughout, ``φ^R(p) = R*(δ_p)`` and ``‖R‖ = sup_p ‖φ^R(p)‖``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import lp
from .closedsets import ClosedSet
from .measures import SignedMeasure
from .order import (
    ClopenInterval,
    ClopenPartition,
    FiniteLine,
    FinitePoint,
    Line,
    OrderError,
    OrdinalLine,
    QuotientMap,
    RationalPoint,
    UnitIntervalLine,
)

__all__ = [
    "FunctionError",
    "StepFunction",
    "PiecewiseLinear",
    "PulledBack",
    "indicator",
    "eval_function",
    "sup_norm",
    "pullback",
    "FiniteFunctional",
    "L1Vector",
    "CoefficientPattern",
    "FiniteBasis",
    "CoordinateEmbedding",
    "dual_norm",
    "phi",
    "r_star",
    "diam_phi",
    "operator_norm",
]


class FunctionError(ValueError):
    pass


def _F(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# test functions


@dataclass(frozen=True)
class StepFunction:
    """Constant on the cells ``[0,b₁], ]b₁,b₂], ...`` of a clopen partition.

    Stored in canonical form: neighbouring cells with equal values are merged,
    so ``cuts`` lists exactly the jumps plus the maximum.
    """

    line: Line
    cuts: tuple
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.cuts):
            raise FunctionError("one value per cell is required")
        order = sorted(zip(self.cuts, self.values), key=lambda bv: self.line.key(bv[0]))
        P = ClopenPartition(self.line, tuple(b for b, _ in order))
        if len(P.cuts) != len(order):
            raise FunctionError("repeated cut")
        vals = [_F(v) for _, v in order]
        keep = [i for i in range(len(vals)) if i == len(vals) - 1 or vals[i] != vals[i + 1]]
        object.__setattr__(self, "cuts", tuple(P.cuts[i] for i in keep))
        object.__setattr__(self, "values", tuple(vals[i] for i in keep))

    @classmethod
    def from_cells(cls, line: Line, cells) -> "StepFunction":
        """From ``[(ClopenInterval, value), ...]`` covering the line."""
        cells = sorted(cells, key=lambda cv: line.key(cv[0].hi))
        lo = None
        for I, _ in cells:
            if I.lo != lo:
                raise FunctionError("cells must partition the line")
            lo = I.hi
        return cls(line, tuple(I.hi for I, _ in cells), tuple(v for _, v in cells))

    @classmethod
    def constant(cls, line: Line, value) -> "StepFunction":
        return cls(line, (line.max(),), (value,))

    @classmethod
    def from_point_values(cls, line: Line, values) -> "StepFunction":
        """A function on a finite line given by its value at every point."""
        pts = line.points()
        if len(values) != len(pts):
            raise FunctionError("one value per point is required")
        return cls(line, tuple(pts), tuple(values))

    @property
    def partition(self) -> ClopenPartition:
        return ClopenPartition(self.line, self.cuts)

    def cells(self) -> list:
        return list(zip(self.partition.cells(), self.values))

    def __call__(self, t) -> Fraction:
        line = self.line
        kt = line.key(line.validate(t))
        for b, v in zip(self.cuts, self.values):
            if kt <= line.key(b):
                return v
        raise AssertionError("unreachable")

    def sup_norm(self) -> Fraction:
        return max(abs(v) for v in self.values)

    def breakpoints(self) -> list:
        return list(self.cuts)

    def check_continuous(self):
        # cells are clopen by construction
        return True

    def __str__(self):
        return "; ".join(f"{I}↦{v}" for I, v in self.cells())


def indicator(line: Line, hi, lo=None) -> StepFunction:
    """``χ_[0,hi]`` or ``χ_]lo,hi]``."""
    ClopenInterval(line, hi, lo)  # validates the endpoints
    cuts, values = [], []
    if lo is not None:
        cuts.append(lo)
        values.append(0)
    cuts.append(hi)
    values.append(1)
    if hi != line.max():
        cuts.append(line.max())
        values.append(0)
    return StepFunction(line, tuple(cuts), tuple(values))


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function on ``[0,1]`` through rational nodes."""

    nodes: tuple
    line: Line = field(default_factory=UnitIntervalLine)

    def __post_init__(self):
        nodes = tuple(sorted((_F(x), _F(y)) for x, y in self.nodes))
        if len(nodes) < 2 or nodes[0][0] != 0 or nodes[-1][0] != 1:
            raise FunctionError("nodes must start at 0 and end at 1")
        if len({x for x, _ in nodes}) != len(nodes):
            raise FunctionError("duplicate node abscissa")
        if not isinstance(self.line, UnitIntervalLine):
            raise FunctionError("piecewise-linear functions live on the unit interval")
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def identity(cls) -> "PiecewiseLinear":
        return cls(((0, 0), (1, 1)))

    def __call__(self, t) -> Fraction:
        x = self.line.validate(t).x
        for (x0, y0), (x1, y1) in zip(self.nodes, self.nodes[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        raise AssertionError("unreachable")

    def sup_norm(self) -> Fraction:
        return max(abs(y) for _, y in self.nodes)

    def max_slope(self) -> Fraction:
        return max(abs((y1 - y0) / (x1 - x0)) for (x0, y0), (x1, y1) in zip(self.nodes, self.nodes[1:]))

    def breakpoints(self) -> list:
        return [RationalPoint(x) for x, _ in self.nodes]

    def check_continuous(self):
        return True


@dataclass(frozen=True)
class PulledBack:
    """``f ∘ q`` for a function ``f`` on the target of ``q`` without step structure."""

    q: QuotientMap
    f: object

    @property
    def line(self) -> Line:
        return self.q.source

    def __call__(self, t) -> Fraction:
        return self.f(self.q.image(t))

    def sup_norm(self) -> Fraction:
        return self.f.sup_norm()

    def breakpoints(self) -> list:
        return []

    def check_continuous(self):
        return True


def _check_step_continuity(f: StepFunction):
    line = f.line
    if not line.is_zero_dimensional and len(f.cuts) > 1:
        # the only clopen sets of a connected piece are trivial
        for (b, v), v2 in zip(zip(f.cuts, f.values), f.values[1:]):
            if v != v2 and line.successor(b) is None:
                raise FunctionError(f"step function jumps at non-isolated {b}")


def eval_function(f, t) -> Fraction:
    return f(t)


def sup_norm(f) -> Fraction:
    return f.sup_norm()


def pullback(q: QuotientMap, f):
    """``q*f = f ∘ q`` on the source of ``q``; step functions stay step functions."""
    if f.line != q.target:
        raise FunctionError("function does not live on the target of the quotient")
    if isinstance(f, StepFunction):
        cuts = tuple(q.fiber_max(b) for b in f.cuts)
        return StepFunction(q.source, cuts, f.values)
    return PulledBack(q, f)


# ---------------------------------------------------------------------------
# dual vectors


@dataclass(frozen=True)
class FiniteFunctional:
    """A functional on a finite-dimensional ``X`` by its coordinates."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_F(v) for v in self.coords))

    @classmethod
    def zero(cls, d: int) -> "FiniteFunctional":
        return cls((0,) * d)

    def __add__(self, other):
        return FiniteFunctional(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return FiniteFunctional(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c):
        c = _F(c)
        return FiniteFunctional(tuple(c * a for a in self.coords))

    def __call__(self, x) -> Fraction:
        return sum((a * _F(b) for a, b in zip(self.coords, x)), Fraction(0))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coords)

    def __str__(self):
        return "(" + ", ".join(map(str, self.coords)) + ")"


@dataclass(frozen=True)
class L1Vector:
    """A finitely supported vector of ``ℓ₁``; ``entries`` is a sorted tuple of ``(index, value)``."""

    entries: tuple = ()

    @classmethod
    def from_dict(cls, d) -> "L1Vector":
        items = d.items() if isinstance(d, dict) else d
        acc: dict = {}
        for k, v in items:
            acc[k] = acc.get(k, Fraction(0)) + _F(v)
        return cls(tuple(sorted((k, v) for k, v in acc.items() if v != 0)))

    def as_dict(self) -> dict:
        return dict(self.entries)

    def __add__(self, other):
        return L1Vector.from_dict(list(self.entries) + list(other.entries))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = _F(c)
        return L1Vector(tuple((k, c * v) for k, v in self.entries if c * v != 0))

    def norm(self) -> Fraction:
        return sum((abs(v) for _, v in self.entries), Fraction(0))

    def is_zero(self) -> bool:
        return not self.entries


# ---------------------------------------------------------------------------
# coordinate embeddings


@dataclass(frozen=True)
class CoefficientPattern:
    """Coefficients ``c(n)`` for ``n = 0, 1, 2, ...``.

    ``c(n) = table[n]`` inside the table; beyond it ``c(n) = tail`` (constant
    tail) or ``c(n) = tail·ratio**n`` (geometric tail, ``|ratio| < 1``).
    A bare table has ``tail = 0``.
    """

    table: tuple = ()
    tail: Fraction = Fraction(0)
    ratio: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(_F(v) for v in self.table))
        object.__setattr__(self, "tail", _F(self.tail))
        if self.ratio is not None:
            r = _F(self.ratio)
            if not abs(r) < 1:
                raise FunctionError("geometric ratio must satisfy |r| < 1")
            object.__setattr__(self, "ratio", r)

    @classmethod
    def constant(cls, value=1) -> "CoefficientPattern":
        return cls((), value)

    @classmethod
    def geometric(cls, base, ratio) -> "CoefficientPattern":
        return cls((), base, ratio)

    def __call__(self, n: int) -> Fraction:
        if n < len(self.table):
            return self.table[n]
        if self.ratio is None:
            return self.tail
        return self.tail * self.ratio ** n

    def sup_abs(self, start: int = 0) -> Fraction:
        """``sup_{n ≥ start} |c(n)|`` (attained: tails are constant or decreasing)."""
        vals = [abs(v) for v in self.table[start:]]
        vals.append(abs(self(max(start, len(self.table)))))
        return max(vals)

    def limsup_abs(self) -> Fraction:
        return abs(self.tail) if self.ratio is None else Fraction(0)

    @property
    def horizon(self) -> int:
        """Index after which ``|c|`` is constant or strictly decreasing."""
        return len(self.table)


def _cnf(p) -> tuple:
    return (0, 0, p.index) if isinstance(p, FinitePoint) else p.cnf


@dataclass(frozen=True)
class CoordinateEmbedding:
    """``X = c₀``, ``X* = ℓ₁``; ``φ^R(p)`` built from ``p = ω²·a + ω·b + c``.

    ``φ^R(p)`` has up to three terms, on three disjoint families of indices:

    * unit term ``unit(c)·e_(0,a,b,c)`` when ``p`` is isolated (``c > 0`` or ``p = 0``);
    * ω-term ``omega_weight·e_(1,a,t)`` where ``ω·t`` is the least limit ``≥ p``
      in the block of ``p`` (absent below ``ω`` only for ``p = 0``);
    * ω²-term ``omega2_weight·e_(2,s)`` with ``ω²·s`` the least multiple of ``ω² ≥ p``.

    With ``omega_weight = omega2_weight = 0`` this is the pattern
    ``φ(p) = c(p)·e_ι(p)`` with ``φ = 0`` at limit points.  Every coordinate of
    ``R x`` is continuous for ``x ∈ c₀`` because sequences converging to a
    limit carry the limit's own higher-layer indices and fresh unit indices.
    """

    line: Line
    unit: CoefficientPattern = field(default_factory=CoefficientPattern.constant)
    omega_weight: Fraction = Fraction(0)
    omega2_weight: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.line, (OrdinalLine, FiniteLine)):
            raise FunctionError("coordinate embeddings live on ordinal or finite lines")
        object.__setattr__(self, "omega_weight", _F(self.omega_weight))
        object.__setattr__(self, "omega2_weight", _F(self.omega2_weight))

    def targets(self, p) -> tuple:
        """``(unit coefficient, ω-index, ω²-index)``; absent terms are None/0."""
        a, b, c = _cnf(p)
        u = self.unit(c) if (c > 0 or (a, b, c) == (0, 0, 0)) else Fraction(0)
        if c > 0:
            t1 = (1, a, b + 1)
        elif b > 0:
            t1 = (1, a, b)
        else:
            t1 = None
        if b > 0 or c > 0:
            t2 = (2, a + 1)
        elif a > 0:
            t2 = (2, a)
        else:
            t2 = None
        return u, t1, t2

    def phi(self, p) -> L1Vector:
        self.line.validate(p)
        a, b, c = _cnf(p)
        u, t1, t2 = self.targets(p)
        entries = []
        if u:
            entries.append(((0, a, b, c), u))
        if t1 is not None and self.omega_weight:
            entries.append((t1, self.omega_weight))
        if t2 is not None and self.omega2_weight:
            entries.append((t2, self.omega2_weight))
        return L1Vector(tuple(sorted(entries)))

    @property
    def sample_depth(self) -> int:
        return self.unit.horizon + 3

    def tail_oscillation(self, kind: int, level: int) -> Fraction:
        """Limit of ``diam φ[V]`` over left neighbourhoods ``V`` of a limit ``λ``
        of the given kind (1: ``ω·(b+1)``-type, 2: multiple of ``ω²``) inside a
        piece of multiples of ``ω**level``."""
        w1 = abs(self.omega_weight)
        if kind == 1 and level == 0:
            return 2 * self.unit.limsup_abs()
        if kind == 2 and level == 0:
            return 2 * self.unit.sup_abs(1) + 2 * w1
        if kind == 2 and level == 1:
            return 2 * w1
        return Fraction(0)

    def distance(self, p, q) -> Fraction:
        return (self.phi(p) - self.phi(q)).norm()

    def diameter(self, S: ClosedSet) -> Fraction:
        # distance between distinct p, q is |u_p| + |u_q| plus layer terms that
        # depend only on the layer indices, so group points by those indices
        groups: dict = {}
        for p in S.representatives(self.sample_depth):
            u, t1, t2 = self.targets(p)
            top = groups.setdefault((t1, t2), [])
            top.append(abs(u))
            top.sort(reverse=True)
            del top[2:]
        w1, w2 = abs(self.omega_weight), abs(self.omega2_weight)

        def layer(s, t, w):
            if s == t:
                return Fraction(0)
            return w * ((s is not None) + (t is not None))

        best = Fraction(0)
        keys = list(groups)
        for i, ki in enumerate(keys):
            gi = groups[ki]
            if len(gi) == 2:
                best = max(best, gi[0] + gi[1])
            for kj in keys[i + 1:]:
                d = gi[0] + groups[kj][0] + layer(ki[0], kj[0], w1) + layer(ki[1], kj[1], w2)
                best = max(best, d)
        return best

    def norm(self) -> Fraction:
        return max(self.phi(p).norm() for p in ClosedSet.whole(self.line).representatives(self.sample_depth))


# ---------------------------------------------------------------------------
# finite-dimensional X


@dataclass(frozen=True)
class FiniteBasis:
    """``R x = Σ_i (M x)_i g_i`` with step functions ``g_i`` on ``line``.

    ``matrix`` (``m × d``) defaults to the identity, in which case the
    coordinates of ``X`` are the basis coefficients.
    """

    line: Line
    basis: tuple
    matrix: Optional[tuple] = None

    def __post_init__(self):
        if not self.basis:
            raise FunctionError("empty basis")
        for g in self.basis:
            if not isinstance(g, StepFunction) or g.line != self.line:
                raise FunctionError("basis must consist of step functions on the line")
            _check_step_continuity(g)
        if self.matrix is not None:
            M = tuple(tuple(_F(v) for v in row) for row in self.matrix)
            if len(M) != len(self.basis) or len({len(r) for r in M}) != 1:
                raise FunctionError("matrix must be m × d")
            object.__setattr__(self, "matrix", M)
        if lp.rank(self.rows) != self.dim:
            raise FunctionError("basis is linearly dependent; X would not be normed")

    @property
    def dim(self) -> int:
        return len(self.matrix[0]) if self.matrix is not None else len(self.basis)

    @functools.cached_property
    def partition(self) -> ClopenPartition:
        cuts = set()
        for g in self.basis:
            cuts.update(g.cuts)
        return ClopenPartition(self.line, tuple(cuts))

    @functools.cached_property
    def cells(self) -> list:
        return self.partition.cells()

    @functools.cached_property
    def representatives(self) -> list:
        """Least point of each cell of the common refinement."""
        return [I.min() for I in self.cells]

    def _row_at(self, p) -> tuple:
        g = [gi(p) for gi in self.basis]
        if self.matrix is None:
            return tuple(g)
        return tuple(sum((g[i] * self.matrix[i][j] for i in range(len(g))), Fraction(0)) for j in range(self.dim))

    @functools.cached_property
    def rows(self) -> tuple:
        return tuple(self._row_at(p) for p in self.representatives)

    def phi(self, p) -> FiniteFunctional:
        I = self.partition.cell_of(p)
        return FiniteFunctional(self.rows[self.cells.index(I)])

    def apply(self, x):
        """``R x`` as a step function on the refinement."""
        vals = [sum((r * _F(v) for r, v in zip(row, x)), Fraction(0)) for row in self.rows]
        return StepFunction(self.line, self.partition.cuts, tuple(vals))

    def min_norm_representation(self, psi: FiniteFunctional, lexicographic: bool = False):
        """Minimum total variation measure on the cell representatives that
        agrees with ``psi`` on ``X``; returns ``(norm, SignedMeasure)``."""
        k = len(self.rows)
        cost = [1] * (2 * k)
        A = [[self.rows[c][j] for c in range(k)] + [-self.rows[c][j] for c in range(k)] for j in range(self.dim)]
        # variables ordered (λ⁺_1, λ⁻_1, λ⁺_2, ...) for the lexicographic tie-break
        order = [v for c in range(k) for v in (c, k + c)]
        A = [[row[v] for v in order] for row in A]
        value, x = lp.simplex_min(cost, A, list(psi.coords), lexicographic=lexicographic)
        weights = [x[2 * c] - x[2 * c + 1] for c in range(k)]
        mu = SignedMeasure.from_atoms(self.line, zip(self.representatives, weights))
        return value, mu

    def dual_norm(self, psi: FiniteFunctional) -> Fraction:
        return _finite_dual_norm(self, psi.coords)

    def dual_norm_vertex(self, psi: FiniteFunctional) -> Fraction:
        """Independent route: ``max ψ(x)`` over ``|R x| ≤ 1`` by vertex enumeration."""
        A, b = [], []
        for row in set(self.rows):
            if any(row):
                A.append(list(row))
                A.append([-v for v in row])
                b += [1, 1]
        value, _ = lp.vertex_max(list(psi.coords), A, b)
        return value

    def diameter(self, S: ClosedSet) -> Fraction:
        vecs = []
        for I, row in zip(self.cells, self.rows):
            if not S.intersect(I).is_empty() and row not in vecs:
                vecs.append(row)
        best = Fraction(0)
        for u, v in itertools.combinations(vecs, 2):
            best = max(best, _finite_dual_norm(self, tuple(a - b for a, b in zip(u, v))))
        return best

    def tail_oscillation(self, kind: int, level: int) -> Fraction:
        # φ is constant on cells, so every limit point has a constant neighbourhood
        return Fraction(0)

    def norm(self) -> Fraction:
        return max(_finite_dual_norm(self, row) for row in set(self.rows))


@functools.lru_cache(maxsize=65536)
def _finite_dual_norm(R: FiniteBasis, coords: tuple) -> Fraction:
    if not any(coords):
        return Fraction(0)
    value, _ = R.min_norm_representation(FiniteFunctional(coords))
    return value


# ---------------------------------------------------------------------------
# module-level operations


def dual_norm(R, psi) -> Fraction:
    if isinstance(R, FiniteBasis):
        if not isinstance(psi, FiniteFunctional) or len(psi.coords) != R.dim:
            raise FunctionError("expected a functional on the finite-dimensional X")
        return R.dual_norm(psi)
    if isinstance(R, CoordinateEmbedding):
        if not isinstance(psi, L1Vector):
            raise FunctionError("expected an ℓ₁ vector")
        return psi.norm()
    raise FunctionError(f"unknown operator {R!r}")


def phi(R, p):
    return R.phi(p)


def r_star(R, mu: SignedMeasure):
    """``R*(μ) = Σ_p μ({p}) φ^R(p)``."""
    if mu.line != R.line:
        raise FunctionError("measure and operator live on different lines")
    if isinstance(R, FiniteBasis):
        acc = FiniteFunctional.zero(R.dim)
    else:
        acc = L1Vector()
    for p, w in mu.atoms:
        acc = acc + R.phi(p).scale(w)
    return acc


def diam_phi(R, S) -> Fraction:
    """``diam φ^R[S]``; the empty set has diameter 0."""
    if not isinstance(S, ClosedSet):
        S = ClosedSet.from_points(R.line, S)
    if S.line != R.line:
        raise FunctionError("closed set lives on another line")
    if S.is_empty():
        return Fraction(0)
    return R.diameter(S)


def operator_norm(R) -> Fraction:
    return R.norm()
