"""Extending ``c₀``-valued operators: the quotient criterion, the Sobczyk step
and the end-to-end pipeline from a subspace ``X ⊂ C(K)`` to ``C(K)``.

An operator into ``c₀`` is handled as its sequence of measures (or, on ``X``,
of functionals); its norm is the supremum of the norms of the terms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .decomposition import Check, DecompositionConfig, decompose, normalize, verify_decomposition
from .functions import FiniteBasis, FiniteFunctional, StepFunction, dual_norm, pullback, r_star
from .measures import SignedMeasure, cumulative, pushforward
from .order import (
    FiniteLine,
    Line,
    QuotientMap,
    UnitIntervalLine,
    build_quotient,
    lex_double,
)
from .sequences import Alternating, IntervalSweep, MeasureSequence, explicit, sweep_interval

__all__ = [
    "CriterionError",
    "Extendable",
    "NotExtendable",
    "Unknown",
    "check_criterion",
    "extend_through_quotient",
    "sobczyk_extend",
    "OperatorSplit",
    "split_operator",
    "PipelineReport",
    "full_pipeline",
    "sequence_norm",
    "functional_norm",
]


class CriterionError(ValueError):
    pass


@dataclass(frozen=True)
class Extendable:
    exceptional: tuple = ()


@dataclass(frozen=True)
class NotExtendable:
    witness: object
    covering_count: int
    limsup: Fraction
    uncountable: bool


@dataclass(frozen=True)
class Unknown:
    reason: str


def sequence_norm(seq: MeasureSequence, horizon: Optional[int] = None) -> Fraction:
    return max((m.norm() for m in seq.terms(horizon)), default=Fraction(0))


def functional_norm(R, functionals) -> Fraction:
    return max((dual_norm(R, psi) for psi in functionals), default=Fraction(0))


# ---------------------------------------------------------------------------
# the criterion


def check_criterion(q: QuotientMap, seq: MeasureSequence, sample) -> object:
    """Decide whether ``μ_n([0,t]) → 0`` for the sampled ``t`` in the multi-fiber set."""
    if seq.line != q.target:
        raise CriterionError("sequence does not live on the target of the quotient")
    sample = list(sample)
    for t in sample:
        if not q.is_multi_fiber(t):
            raise CriterionError(f"{t} is not in the multi-fiber set")
    g = seq.generator
    if isinstance(g, Alternating):
        return Unknown("the alternating generator has no decay certificate")
    if isinstance(g, IntervalSweep):
        for t in sample:
            if t.x < 1:
                hits = 0
                for n in range(1, seq.horizon + 1):
                    _, a, b = sweep_interval(n)
                    if a <= t.x < b:
                        assert cumulative(seq[n], t) == 1
                        hits += 1
                # every t < 1 lies in exactly one dyadic interval per level, so
                # the cumulative value 1 recurs forever, for every t in [0,1[
                return NotExtendable(t, hits, Fraction(1), True)
        return Extendable(())
    # zero tail, rⁿ·base and base/n all have cumulative values tending to 0
    return Extendable(())


def extend_through_quotient(q: QuotientMap, seq: MeasureSequence, E=(), verdict=None) -> MeasureSequence:
    """``ν_n = Σ_t μ_n({t}) δ_{b_t}``: the measure on the source whose cumulative
    function is ``F_n ∘ q``."""
    if verdict is None:
        sample = q.multi_fibers() if q.target.is_finite else list(E)
        verdict = check_criterion(q, seq, sample)
    if not isinstance(verdict, Extendable):
        raise CriterionError(f"criterion verdict is {verdict}")

    def lift(mu: SignedMeasure) -> SignedMeasure:
        nu = SignedMeasure.from_atoms(q.source, [(q.fiber_max(t), w) for t, w in mu.atoms])
        assert nu.norm() == mu.norm()
        assert pushforward(q, nu) == mu
        return nu

    return seq.map_linear(lift, line=q.source)


# ---------------------------------------------------------------------------
# Sobczyk step


def sobczyk_extend(L: Line, R: FiniteBasis, T0, horizon: Optional[int] = None) -> MeasureSequence:
    """Hahn–Banach extension of each functional of ``T0`` to a measure of
    minimal norm on the cell representatives of ``R``'s basis."""
    if R.line != L:
        raise ValueError("operator does not live on L")
    T0 = [psi if isinstance(psi, FiniteFunctional) else FiniteFunctional(psi) for psi in T0]
    measures = []
    for psi in T0:
        if psi.is_zero():
            measures.append(SignedMeasure.zero(L))
            continue
        value, mu = R.min_norm_representation(psi, lexicographic=True)
        assert r_star(R, mu) == psi, "extension does not restrict to the functional"
        assert mu.norm() == value
        measures.append(mu)
    seq = explicit(L, measures, horizon or max(len(T0), 1))
    norm_T0 = functional_norm(R, T0)
    assert sequence_norm(seq) <= 2 * norm_T0
    return seq


# ---------------------------------------------------------------------------
# operator level: T = T′∘q* + S


@dataclass(frozen=True)
class OperatorSplit:
    T: MeasureSequence
    T0_prime: MeasureSequence
    S: MeasureSequence
    T_prime: MeasureSequence
    scale: Fraction
    checks: tuple

    @property
    def holds(self) -> bool:
        return all(c.passed for c in self.checks)


def split_operator(q: QuotientMap, R, T: MeasureSequence, cfg: DecompositionConfig) -> OperatorSplit:
    """Decompose ``T`` (on ``L = q.target``) as ``T′∘q* + S`` with the norm budgets."""
    L = q.target
    unit, s = normalize(T)
    res = decompose(L, R, unit, cfg)
    T0p = res.mu_prime.scale(s)
    S = res.nu.scale(s)
    Tp = extend_through_quotient(q, T0p)
    nT, nT0p, nS, nTp = (sequence_norm(x) for x in (T, T0p, S, Tp))
    checks = [c for c in verify_decomposition(res, R)]
    checks.append(Check("op:T0prime", None, nT0p, (4 + cfg.epsp) * nT, nT0p <= (4 + cfg.epsp) * nT))
    checks.append(Check("op:Tprime", None, nTp, (4 + cfg.epsp) * nT, nTp <= (4 + cfg.epsp) * nT))
    checks.append(Check("op:S", None, nS, (1 + cfg.epsp) * nT, nS <= (1 + cfg.epsp) * nT))
    SR = functional_norm(R, [r_star(R, m) for m in S.terms()])
    checks.append(Check("op:SR", None, SR, cfg.eps * s, SR <= cfg.eps * s))
    cuts = L.points() if L.is_finite else list(L.right_isolated_points())
    for n in range(1, T.horizon + 1):
        ok = True
        for b in cuts:
            lhs = cumulative(T[n], b)
            rhs = cumulative(Tp[n], q.fiber_max(b)) + cumulative(S[n], b)
            ok = ok and lhs == rhs
        checks.append(Check("op:T=T'q*+S", n, None, None, ok))
    return OperatorSplit(T, T0p, S, Tp, s, tuple(checks))


# ---------------------------------------------------------------------------
# pipeline


@dataclass(frozen=True)
class PipelineReport:
    norm_T0: Fraction
    norm_Tprime: Fraction
    ratio: Optional[Fraction]
    bound: Fraction
    restriction_exact: bool
    doubled: bool
    quotient_size: int
    rounds: tuple
    checks: tuple

    @property
    def holds(self) -> bool:
        return self.restriction_exact and all(c.passed for c in self.checks)


def _push_basis(q: QuotientMap, basis) -> tuple:
    out = []
    for g in basis:
        vals = [g(q.fiber_max(t)) for t in q.target.points()]
        for t, v in zip(q.target.points(), vals):
            lo, _ = q.fiber(t)
            assert g(lo) == v, "basis function is not constant on a fiber"
        out.append(StepFunction.from_point_values(q.target, vals))
    return tuple(out)


def full_pipeline(K: Line, basis, matrix, T0, cfg: DecompositionConfig, rounds: int = 2):
    """Extend ``T0: X → c₀`` (functionals on ``X = span R(basis)``) to ``T′`` on ``C(K)``.

    Each round extends the current residual to ``C(L)`` (Sobczyk step),
    splits it as ``T′∘q* + S`` and carries ``S∘R`` over as the next residual;
    after the last round the residual is extended exactly by Hahn–Banach.
    """
    doubled = False
    basis = tuple(basis)
    if not K.is_zero_dimensional:
        K, pi = lex_double(K)
        basis = tuple(pullback(pi, g) for g in basis)
        doubled = True
    RK = FiniteBasis(K, basis, matrix)
    T0 = [psi if isinstance(psi, FiniteFunctional) else FiniteFunctional(psi) for psi in T0]
    horizon = max(len(T0), 1)
    cuts = set()
    for g in basis:
        cuts.update(g.cuts)
    q = build_quotient(K, cuts)
    L = q.target
    RL = FiniteBasis(L, _push_basis(q, basis), matrix)
    norm_T0 = functional_norm(RL, T0)
    checks = []
    total = [SignedMeasure.zero(K) for _ in range(horizon)]
    residual = list(T0) + [FiniteFunctional.zero(RL.dim)] * (horizon - len(T0))
    round_info = []
    for r in range(rounds):
        rho = functional_norm(RL, residual)
        if rho == 0:
            break
        T = sobczyk_extend(L, RL, residual, horizon)
        nT = sequence_norm(T)
        checks.append(Check(f"round{r}:sobczyk", r, nT, 2 * rho, nT <= 2 * rho))
        split = split_operator(q, RL, T, cfg)
        checks.extend(split.checks)
        nT0p, nTp = sequence_norm(split.T0_prime), sequence_norm(split.T_prime)
        checks.append(Check(f"round{r}:T0prime", r, nT0p, (2 + cfg.epsp) * nT, nT0p <= (2 + cfg.epsp) * nT))
        checks.append(Check(f"round{r}:Tprime", r, nTp, 2 * nT0p, nTp <= 2 * nT0p))
        total = [a + b for a, b in zip(total, split.T_prime.terms())]
        residual = [r_star(RL, m) for m in split.S.terms()]
        round_info.append({"round": r, "residual": rho, "T": nT, "T0prime": nT0p, "Tprime": nTp})
    rho = functional_norm(RL, residual)
    if rho:
        closing = extend_through_quotient(q, sobczyk_extend(L, RL, residual, horizon))
        total = [a + b for a, b in zip(total, closing.terms())]
        round_info.append({"round": "close", "residual": rho, "Tprime": sequence_norm(closing)})
    Tprime = explicit(K, total, horizon)
    exact = all(r_star(RK, m) == psi for m, psi in zip(Tprime.terms(), T0))
    exact = exact and all(m.is_zero() for m in Tprime.terms()[len(T0):])
    norm_Tp = sequence_norm(Tprime)
    bound = 8 + cfg.eps
    ratio = norm_Tp / norm_T0 if norm_T0 else None
    if norm_T0:
        checks.append(Check("pipeline:ratio", None, ratio, bound, ratio <= bound))
    else:
        checks.append(Check("pipeline:zero", None, norm_Tp, 0, norm_Tp == 0))
    checks.append(Check("pipeline:restriction", None, None, None, exact))
    report = PipelineReport(
        norm_T0=norm_T0,
        norm_Tprime=norm_Tp,
        ratio=ratio,
        bound=bound,
        restriction_exact=exact,
        doubled=doubled,
        quotient_size=L.size,
        rounds=tuple(round_info),
        checks=tuple(checks),
    )
    return Tprime, report

