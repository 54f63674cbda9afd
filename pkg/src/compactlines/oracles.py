"""Brute-force truncation oracle for the hierarchy on ordinal segments.

Independent of the closed forms used by :mod:`compactlines.fragmentation`: it
only evaluates ``φ^R`` at finitely many points and compares ℓ₁/LP distances.
Each unbounded run of successors is cut to ``M`` points (``M = N`` on
``[0, ω·k]``, ``M = ⌊√N⌋`` once there are two layers of limits).  A limit
survives a stage when every left tail that starts in the first half of the
truncated run below it still has diameter ``≥ δ``.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .functions import dual_norm
from .order import OrdinalLine, OrdinalPoint

__all__ = ["truncated_points", "oracle_hierarchy", "restrict_levels"]


def _run_length(line: OrdinalLine, N: int) -> int:
    a, b, _ = line.bound
    return N if a == 0 and b <= 1 else math.isqrt(N)


def truncated_points(line: OrdinalLine, N: int = 100) -> list:
    M = _run_length(line, N)
    A, B, C = line.bound
    pts = []
    for a in range(A + 1):
        for b in range(B + 1 if a == A else M):
            for c in range(C + 1 if (a, b) == (A, B) else M):
                pts.append(OrdinalPoint((a, b, c)))
    return pts


def _starts(p: OrdinalPoint, M: int) -> list:
    """Left endpoints ``γ`` of the tails ``]γ, p]`` that are enumerated."""
    a, b, c = p.cnf
    if c or (a, b) == (0, 0):
        return []
    half = M // 2
    if b:
        return [OrdinalPoint((a, b - 1, k)) for k in range(half)]
    return [OrdinalPoint((a - 1, j, k)) for j in range(half) for k in range(M)]


def oracle_hierarchy(R, delta, N: int = 100, max_stage: int = 32) -> list:
    """Levels ``H_0 ⊇ H_1 ⊇ ... ⊇ ∅`` as sorted lists of truncated points."""
    line = R.line
    delta = Fraction(delta)
    M = _run_length(line, N)
    pts = truncated_points(line, N)
    index = {p: i for i, p in enumerate(pts)}
    vec = [R.phi(p) for p in pts]
    dist: dict = {}

    def d(i, j):
        if i > j:
            i, j = j, i
        if (i, j) not in dist:
            dist[(i, j)] = dual_norm(R, vec[i] - vec[j])
        return dist[(i, j)]

    def diam(members):
        return max((d(i, j) for i, j in itertools.combinations(members, 2)), default=Fraction(0))

    level = list(range(len(pts)))
    levels = [level]
    while level:
        if len(levels) > max_stage:
            raise RuntimeError("oracle hierarchy did not stabilize")
        survivors = []
        for i in level:
            starts = _starts(pts[i], M)
            if not starts:
                continue
            ok = True
            for g in starts:
                tail = [j for j in level if index[g] < j <= i]
                if diam(tail) < delta:
                    ok = False
                    break
            if ok:
                survivors.append(i)
        level = survivors
        levels.append(level)
    return [[pts[i] for i in lv] for lv in levels]


def restrict_levels(h, N: int = 100) -> list:
    """The levels of a symbolic hierarchy, intersected with the truncated points."""
    pts = truncated_points(h.line, N)
    return [[p for p in pts if p in H] for H in h.levels]
