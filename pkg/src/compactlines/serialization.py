"""JSON encoding of lines, points, measures, functions, operators and sequences.

Rationals are always strings ``"p/q"`` (the denominator is written even when
it is 1).  Canonical dumps sort keys and drop whitespace so that digests and
artifacts are reproducible byte for byte.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .closedsets import ClosedSet
from .functions import (
    CoefficientPattern,
    CoordinateEmbedding,
    FiniteBasis,
    FiniteFunctional,
    L1Vector,
    PiecewiseLinear,
    StepFunction,
)
from .measures import SignedMeasure
from .order import (
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
from .sequences import (
    Alternating,
    ExplicitList,
    Harmonic,
    IntervalSweep,
    MeasureSequence,
    Scaled,
)

__all__ = [
    "SerializationError",
    "rat",
    "parse_rat",
    "canonical",
    "digest",
    "point_to_json",
    "point_from_json",
    "line_to_json",
    "line_from_json",
    "measure_to_json",
    "measure_from_json",
    "function_to_json",
    "function_from_json",
    "operator_to_json",
    "operator_from_json",
    "sequence_to_json",
    "sequence_from_json",
    "closed_set_to_json",
    "hierarchy_to_json",
    "dual_to_json",
]


class SerializationError(ValueError):
    pass


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SerializationError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SerializationError(f"malformed rational {s!r}") from exc


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(obj) -> str:
    return hashlib.sha256(canonical(obj).encode()).hexdigest()[:12]


def _get(d, key):
    if not isinstance(d, dict) or key not in d:
        raise SerializationError(f"missing field {key!r}")
    return d[key]


# -- points and lines


def point_to_json(p):
    if isinstance(p, FinitePoint):
        return {"finite": p.index}
    if isinstance(p, OrdinalPoint):
        return {"ordinal": list(p.cnf)}
    if isinstance(p, PairPoint):
        return {"pair": [point_to_json(p.base), p.bit]}
    if isinstance(p, RationalPoint):
        return {"rational": rat(p.x)}
    if isinstance(p, DoubledRational):
        return {"doubled": [rat(p.x), p.bit]}
    raise SerializationError(f"unknown point {p!r}")


def point_from_json(d):
    if not isinstance(d, dict) or len(d) != 1:
        raise SerializationError(f"malformed point {d!r}")
    (tag, v), = d.items()
    try:
        if tag == "finite":
            return FinitePoint(int(v))
        if tag == "ordinal":
            a, b, c = (int(x) for x in v)
            return OrdinalPoint((a, b, c))
        if tag == "pair":
            base, bit = v
            return PairPoint(point_from_json(base), int(bit))
        if tag == "rational":
            return RationalPoint(parse_rat(v))
        if tag == "doubled":
            x, bit = v
            return DoubledRational(parse_rat(x), int(bit))
    except (TypeError, ValueError) as exc:
        raise SerializationError(f"malformed point {d!r}") from exc
    raise SerializationError(f"unknown point tag {tag!r}")


def line_to_json(line):
    if isinstance(line, FiniteLine):
        return {"kind": "finite", "size": line.size}
    if isinstance(line, OrdinalLine):
        return {"kind": "ordinal", "bound": list(line.bound)}
    if isinstance(line, LexDouble):
        return {"kind": "lexdouble", "inner": line_to_json(line.inner)}
    if isinstance(line, UnitIntervalLine):
        return {"kind": "interval"}
    if isinstance(line, DoubleArrowLine):
        return {"kind": "doublearrow", "Q": [rat(x) for x in line.Q]}
    raise SerializationError(f"unknown line {line!r}")


def line_from_json(d):
    kind = _get(d, "kind")
    try:
        if kind == "finite":
            return FiniteLine(int(_get(d, "size")))
        if kind == "ordinal":
            return OrdinalLine(tuple(int(x) for x in _get(d, "bound")))
        if kind == "lexdouble":
            return LexDouble(line_from_json(_get(d, "inner")))
        if kind == "interval":
            return UnitIntervalLine()
        if kind == "doublearrow":
            return DoubleArrowLine(tuple(parse_rat(x) for x in _get(d, "Q")))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SerializationError):
            raise
        raise SerializationError(f"malformed line {d!r}: {exc}") from exc
    raise SerializationError(f"unknown line kind {kind!r}")


def _point_on(line, d):
    p = point_from_json(d)
    if not line.contains(p):
        raise SerializationError(f"{p} is not a point of {line}")
    return p


# -- measures and functions


def measure_to_json(mu: SignedMeasure):
    return {
        "line": line_to_json(mu.line),
        "atoms": [{"point": point_to_json(p), "weight": rat(w)} for p, w in mu.atoms],
    }


def measure_from_json(d, line=None):
    line = line or line_from_json(_get(d, "line"))
    atoms = [(_point_on(line, _get(a, "point")), parse_rat(_get(a, "weight"))) for a in _get(d, "atoms")]
    return SignedMeasure.from_atoms(line, atoms)


def function_to_json(f):
    if isinstance(f, StepFunction):
        return {"kind": "step", "cells": [{"hi": point_to_json(b), "value": rat(v)} for b, v in zip(f.cuts, f.values)]}
    if isinstance(f, PiecewiseLinear):
        return {"kind": "piecewise", "nodes": [[rat(x), rat(y)] for x, y in f.nodes]}
    raise SerializationError(f"cannot serialize {f!r}")


def function_from_json(d, line):
    kind = _get(d, "kind")
    try:
        if kind == "step":
            cells = _get(d, "cells")
            return StepFunction(
                line,
                tuple(_point_on(line, _get(c, "hi")) for c in cells),
                tuple(parse_rat(_get(c, "value")) for c in cells),
            )
        if kind == "piecewise":
            return PiecewiseLinear(tuple((parse_rat(x), parse_rat(y)) for x, y in _get(d, "nodes")))
    except SerializationError:
        raise
    except (TypeError, ValueError) as exc:
        raise SerializationError(f"malformed function: {exc}") from exc
    raise SerializationError(f"unknown function kind {kind!r}")


# -- operators


def _pattern_to_json(c: CoefficientPattern):
    return {
        "table": [rat(v) for v in c.table],
        "tail": rat(c.tail),
        "ratio": None if c.ratio is None else rat(c.ratio),
    }


def operator_to_json(R):
    if isinstance(R, FiniteBasis):
        return {
            "kind": "finitebasis",
            "line": line_to_json(R.line),
            "basis": [function_to_json(g) for g in R.basis],
            "matrix": None if R.matrix is None else [[rat(v) for v in row] for row in R.matrix],
        }
    if isinstance(R, CoordinateEmbedding):
        return {
            "kind": "coordinate",
            "line": line_to_json(R.line),
            "unit": _pattern_to_json(R.unit),
            "omega_weight": rat(R.omega_weight),
            "omega2_weight": rat(R.omega2_weight),
        }
    raise SerializationError(f"unknown operator {R!r}")


def operator_from_json(d):
    kind = _get(d, "kind")
    line = line_from_json(_get(d, "line"))
    try:
        if kind == "finitebasis":
            basis = tuple(function_from_json(g, line) for g in _get(d, "basis"))
            M = d.get("matrix")
            M = None if M is None else tuple(tuple(parse_rat(v) for v in row) for row in M)
            return FiniteBasis(line, basis, M)
        if kind == "coordinate":
            u = _get(d, "unit")
            ratio = u.get("ratio")
            pattern = CoefficientPattern(
                tuple(parse_rat(v) for v in u.get("table", [])),
                parse_rat(u.get("tail", "0/1")),
                None if ratio is None else parse_rat(ratio),
            )
            return CoordinateEmbedding(
                line,
                pattern,
                parse_rat(d.get("omega_weight", "0/1")),
                parse_rat(d.get("omega2_weight", "0/1")),
            )
    except SerializationError:
        raise
    except (TypeError, ValueError) as exc:
        raise SerializationError(f"malformed operator: {exc}") from exc
    raise SerializationError(f"unknown operator kind {kind!r}")


def dual_to_json(psi):
    if isinstance(psi, FiniteFunctional):
        return {"coords": [rat(v) for v in psi.coords]}
    if isinstance(psi, L1Vector):
        return {"entries": [[list(k), rat(v)] for k, v in psi.entries]}
    raise SerializationError(f"unknown dual vector {psi!r}")


# -- sequences


def sequence_to_json(seq: MeasureSequence):
    g = seq.generator
    out = {"line": line_to_json(seq.line), "horizon": seq.horizon, "bound": rat(seq.bound)}
    if isinstance(g, ExplicitList):
        out.update(kind="explicit", measures=[measure_to_json(m)["atoms"] for m in g.measures])
    elif isinstance(g, Scaled):
        out.update(kind="scaled", base=measure_to_json(g.base)["atoms"], ratio=rat(g.ratio))
    elif isinstance(g, Harmonic):
        out.update(kind="harmonic", base=measure_to_json(g.base)["atoms"])
    elif isinstance(g, Alternating):
        out.update(kind="alternating", table=[measure_to_json(m)["atoms"] for m in g.table])
    elif isinstance(g, IntervalSweep):
        out.update(kind="sweep", depth=g.depth)
    return out


def sequence_from_json(d, line=None):
    from . import sequences as S

    line = line or line_from_json(_get(d, "line"))
    kind = _get(d, "kind")
    horizon = d.get("horizon")

    def m(atoms):
        return measure_from_json({"atoms": atoms}, line)

    try:
        if kind == "explicit":
            return S.explicit(line, [m(a) for a in _get(d, "measures")], horizon)
        if kind == "scaled":
            return S.scaled(m(_get(d, "base")), parse_rat(_get(d, "ratio")), horizon or 20)
        if kind == "harmonic":
            return S.harmonic(m(_get(d, "base")), horizon or 20)
        if kind == "alternating":
            return S.alternating(line, [m(a) for a in _get(d, "table")], horizon or 20)
        if kind == "sweep":
            return S.sweep_sequence(int(_get(d, "depth")), horizon)
    except SerializationError:
        raise
    except (TypeError, ValueError) as exc:
        raise SerializationError(f"malformed sequence: {exc}") from exc
    raise SerializationError(f"unknown sequence kind {kind!r}")


# -- closed sets and hierarchies


def closed_set_to_json(H: ClosedSet):
    out = []
    for pc in H.pieces:
        item = [point_to_json(pc.lo), point_to_json(pc.hi)]
        if pc.level:
            item.append(pc.level)
        out.append(item)
    return out


def hierarchy_to_json(h):
    return [closed_set_to_json(H) for H in h.levels]
