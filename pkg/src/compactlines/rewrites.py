"""The two measure rewrites behind the decomposition: tilde and skeleton.

Both functions check their postconditions exactly before returning and raise
``AssertionError`` when one fails.
"""
from __future__ import annotations

from fractions import Fraction

from .closedsets import ClosedSet
from .measures import SignedMeasure, cumulative
from .order import ClopenInterval, ClopenPartition, Line

__all__ = ["RewriteError", "tilde_mu", "skeleton", "tilde_test_points", "skeleton_test_points"]


class RewriteError(ValueError):
    pass


def tilde_mu(L: Line, P: ClopenPartition, mu: SignedMeasure) -> SignedMeasure:
    """``μ − Σ_{b∈P} μ([0,b])δ_b + Σ_{b∈P, b≠max} μ([0,b])δ_{b⁺}``."""
    if P.line != L or mu.line != L:
        raise RewriteError("partition, measure and line do not match")
    terms = list(mu.atoms)
    for b in P.cuts:
        m = cumulative(mu, b)
        if not m:
            continue
        terms.append((b, -m))
        if b != L.max():
            succ = L.successor(b)
            if succ is None:
                raise RewriteError(f"cut {b} has no successor")
            terms.append((succ, m))
    out = SignedMeasure.from_atoms(L, terms)
    _check_tilde(L, P, mu, out)
    return out


def tilde_test_points(L: Line, P: ClopenPartition, measures) -> list:
    """Points outside ``P`` meeting every interval on which the cumulative
    functions of ``measures`` are all constant."""
    cuts = set(P.cuts)
    events = set()
    for m in measures:
        events.update(m.support())
    events.add(L.min())
    ordered = L.sort(events)
    out = []
    for x, nxt in zip(ordered, ordered[1:] + [None]):
        p = x
        while p is not None and p in cuts and (nxt is None or L.less(p, nxt)):
            p = L.successor(p)
        if p is not None and p not in cuts and (nxt is None or L.less(p, nxt)):
            out.append(p)
    return out


def _check_tilde(L, P, mu, out):
    for I in P.cells():
        assert out.mass(I) == 0, f"(i) fails on {I}"
    for t in tilde_test_points(L, P, (mu, out)):
        assert cumulative(out, t) == cumulative(mu, t), f"(ii) fails at {t}"
    rhs = mu.norm() + 2 * sum((abs(cumulative(mu, b)) for b in P.cuts), Fraction(0))
    assert out.norm() <= rhs, f"(iii) fails: {out.norm()} > {rhs}"


def _as_interval(I) -> ClopenInterval:
    if isinstance(I, ClopenInterval):
        return I
    if isinstance(I, Line):
        return ClopenInterval(I, I.max())
    raise RewriteError(f"expected a line or a clopen interval, got {I!r}")


def _mass_upto(I: ClopenInterval, mu: SignedMeasure, t) -> Fraction:
    """``μ([min I, t])``."""
    return mu.mass_between(I.lo, t, lo_open=True, hi_open=False)


def skeleton(I, H: ClosedSet, mu: SignedMeasure) -> SignedMeasure:
    """Re-support ``μ|_I`` on ``H ⊆ I``.

    An atom ``p ∉ H`` is moved to the least point of ``H`` above it (a
    left-isolated point of ``H`` whose gap contains ``p``), or to ``max H`` when
    ``p > max H``.
    """
    I = _as_interval(I)
    line = I.line
    if H.line != line or mu.line != line:
        raise RewriteError("interval, closed set and measure do not match")
    local = mu.restrict(I)
    if H.is_empty():
        if local.mass() != 0:
            raise RewriteError("H is empty but μ(I) ≠ 0")
        return SignedMeasure.zero(line)
    if not (H.min() in I and H.max() in I):
        raise RewriteError("H must lie inside I")
    top = H.max()
    terms = []
    for p, w in local.atoms:
        if p in H:
            terms.append((p, w))
        elif line.less(top, p):
            terms.append((top, w))
        else:
            terms.append((H.ceil(p), w))
    out = SignedMeasure.from_atoms(line, terms)
    _check_skeleton(I, H, local, out)
    return out


def skeleton_test_points(H: ClosedSet, measures) -> list:
    """Points of ``H ∖ {max H}`` meeting every run of ``H`` on which the
    cumulative functions of ``measures`` are constant."""
    pts = {H.min()}
    for m in measures:
        for p in m.support():
            c = H.ceil(p)
            if c is not None:
                pts.add(c)
    top = H.max()
    return [p for p in H.line.sort(pts) if p != top]


def _check_skeleton(I, H, mu, out):
    assert all(p in H for p in out.support()), "(A) fails"
    assert out.mass() == mu.mass(), "(B) fails"
    assert out.norm() <= mu.norm(), "(C) fails"
    for t in skeleton_test_points(H, (mu, out)):
        assert _mass_upto(I, out, t) == _mass_upto(I, mu, t), f"(D) fails at {t}"
