"""Splitting a weak*-null sequence ``μ_n = μ′_n + ν_n`` against an operator ``R``.

``ν_n`` is the part that ``R*`` barely sees (``‖R*ν_n‖ ≤ ε``) and ``μ′_n`` the
part whose cumulative function dies off outside a finite exceptional set ``E``.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .closedsets import ClosedSet
from .fragmentation import Hierarchy, alpha_of_interval, compute_hierarchy, level_of
from .functions import diam_phi, dual_norm, r_star
from .measures import SignedMeasure, cumulative
from .order import ClopenPartition, Line, OrdinalLine, refine_partitions
from .rewrites import skeleton, tilde_mu
from .sequences import MeasureSequence, explicit

__all__ = [
    "ScheduleNotFound",
    "DecompositionConfig",
    "DecompositionResult",
    "Check",
    "schedule_seminorm",
    "choose_schedule",
    "decompose",
    "verify_decomposition",
    "normalize",
]

DEFAULT_PARTITION_CAP = 64


class ScheduleNotFound(RuntimeError):
    pass


@dataclass(frozen=True)
class DecompositionConfig:
    eps: Fraction
    epsp: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        object.__setattr__(self, "epsp", Fraction(self.epsp))
        if self.eps <= 0 or self.epsp <= 0:
            raise ValueError("ε and ε′ must be positive")

    @property
    def delta(self) -> Fraction:
        return 2 * self.eps / (1 + self.epsp)


@dataclass(frozen=True)
class Check:
    """One verified inequality or identity."""

    check: str
    index: object
    lhs: object
    rhs: object
    passed: bool


@dataclass(frozen=True)
class DecompositionResult:
    source: MeasureSequence
    mu_prime: MeasureSequence
    nu: MeasureSequence
    exceptional: tuple
    schedule: tuple
    partitions: tuple
    hierarchy: Hierarchy
    config: DecompositionConfig

    @property
    def horizon(self) -> int:
        return self.source.horizon

    def partition_index(self, n: int) -> int:
        """The ``k`` with ``n_k ≤ n < n_{k+1}``, or 0 when ``n < n_1``."""
        k = 0
        for i, nk in enumerate(self.schedule, start=1):
            if nk <= n:
                k = i
        return k


def schedule_seminorm(P: ClopenPartition):
    """``μ ↦ 2 Σ_{b∈P} |μ([0,b])|``."""

    def s(mu: SignedMeasure) -> Fraction:
        return 2 * sum((abs(cumulative(mu, b)) for b in P.cuts), Fraction(0))

    return s


def choose_schedule(seq: MeasureSequence, partitions, epsp, count: Optional[int] = None) -> list:
    """Strictly increasing ``n_1 < n_2 < ...``: ``n_k`` is the least index above
    ``n_{k−1}`` from which ``2 Σ_{b∈P_k} |μ_n([0,b])| ≤ ε′`` holds for good.

    ``partitions`` is a list or a callable ``k ↦ P_k``.  Without ``count`` the
    schedule stops at the first ``n_k`` beyond the horizon.
    """
    epsp = Fraction(epsp)
    get = partitions if callable(partitions) else (lambda k: partitions[k - 1])
    limit = count if count is not None else (len(partitions) if not callable(partitions) else None)
    out: list = []
    k = 1
    while limit is None or k <= limit:
        start = out[-1] + 1 if out else 1
        nk = seq.first_index_below(schedule_seminorm(get(k)), epsp, start)
        if nk is None:
            raise ScheduleNotFound(f"no admissible n_{k} within horizon {seq.horizon}")
        out.append(nk)
        if count is None and nk > seq.horizon:
            break
        k += 1
    return out


def normalize(seq: MeasureSequence) -> tuple:
    """``(seq / s, s)`` with ``s = sup‖μ_n‖`` (``s = 1`` for the zero sequence)."""
    s = seq.sup_norm()
    if s == 0:
        return seq, Fraction(1)
    return seq.scale(1 / s), s


def _check_line(L: Line):
    if not L.is_zero_dimensional or not (L.is_finite or isinstance(L, OrdinalLine)):
        raise ValueError(f"{L} is not a supported metrizable zero-dimensional line")


def decompose(
    L: Line,
    R,
    seq: MeasureSequence,
    cfg: DecompositionConfig,
    max_partitions: int = DEFAULT_PARTITION_CAP,
    hierarchy: Optional[Hierarchy] = None,
) -> DecompositionResult:
    _check_line(L)
    if R.line != L or seq.line != L:
        raise ValueError("operator, sequence and line do not match")
    if seq.sup_norm() > 1:
        raise ValueError("decompose needs sup‖μ_n‖ ≤ 1; normalize the sequence first")
    h = hierarchy or compute_hierarchy(R, cfg.delta)
    partitions = functools.lru_cache(maxsize=None)(lambda k: refine_partitions(L, k))
    schedule = choose_schedule(seq, partitions, cfg.epsp)
    schedule = schedule[:max_partitions]
    K = len(schedule)
    Ps = tuple(partitions(k) for k in range(1, K + 1))

    @functools.lru_cache(maxsize=None)
    def target(k, I):
        return h[alpha_of_interval(h, I)].intersect(I)

    mu_p, nus = [], []
    for n in range(1, seq.horizon + 1):
        mu = seq[n]
        k = sum(1 for nk in schedule if nk <= n)
        if k == 0:
            nu = SignedMeasure.zero(L)
        else:
            P = Ps[k - 1]
            mt = tilde_mu(L, P, mu)
            nu = SignedMeasure.zero(L)
            for I in P.cells():
                part = mt.restrict(I)
                if part.is_zero():
                    continue
                nu = nu + skeleton(I, target(k, I), part)
        nus.append(nu)
        mu_p.append(mu - nu)

    E = set()
    for k, P in enumerate(Ps, start=1):
        for I in P.cells():
            S = target(k, I)
            if not S.is_empty():
                E.add(S.max())
    bound_nu = 1 + cfg.epsp
    return DecompositionResult(
        source=seq,
        mu_prime=explicit(L, mu_p, seq.horizon, bound=1 + bound_nu),
        nu=explicit(L, nus, seq.horizon, bound=bound_nu),
        exceptional=tuple(L.sort(E)),
        schedule=tuple(schedule),
        partitions=Ps,
        hierarchy=h,
        config=cfg,
    )


def _k0_neighbourhood(res: DecompositionResult, R, t) -> Optional[int]:
    """Least ``k`` with ``diam φ^R[H_β ∩ P̄_k(t)] < δ``, ``β`` the level of ``t``."""
    h = res.hierarchy
    Hb = h[level_of(h, t)]
    for k, P in enumerate(res.partitions, start=1):
        if diam_phi(R, Hb.intersect(P.cell_of(t))) < res.config.delta:
            return k
    return None


def default_sample(L: Line, limit: int = 64) -> list:
    return L.sample(limit)


def verify_decomposition(res: DecompositionResult, R, sample=None) -> list:
    """Recompute every postcondition from scratch; returns a list of :class:`Check`."""
    cfg = res.config
    L = res.source.line
    checks = []
    for n in range(1, res.horizon + 1):
        mu, mp, nu = res.source[n], res.mu_prime[n], res.nu[n]
        checks.append(Check("a:split", n, (mp + nu - mu).norm(), 0, (mp + nu) == mu))
        checks.append(Check("b:nu", n, nu.norm(), 1 + cfg.epsp, nu.norm() <= 1 + cfg.epsp))
        checks.append(Check("b:mu_prime", n, mp.norm(), 2 + cfg.epsp, mp.norm() <= 2 + cfg.epsp))
        lhs = dual_norm(R, r_star(R, nu))
        checks.append(Check("c:R*nu", n, lhs, cfg.eps, lhs <= cfg.eps))
    pts = default_sample(L) if sample is None else list(sample)
    E = set(res.exceptional)
    for t in pts:
        if t not in E:
            k0 = _k0_neighbourhood(res, R, t)
            if k0 is not None:
                vals = [cumulative(res.mu_prime[n], t) for n in range(res.schedule[k0 - 1], res.horizon + 1)]
                bad = [v for v in vals if v != 0]
                checks.append(Check("d:mu_prime_cumulative", (str(t), k0), bad[0] if bad else 0, 0, not bad))
        if L.is_right_isolated(t):
            k0 = next((k for k, P in enumerate(res.partitions, start=1) if t in P.cuts), None)
            if k0 is not None:
                vals = [cumulative(res.nu[n], t) for n in range(res.schedule[k0 - 1], res.horizon + 1)]
                bad = [v for v in vals if v != 0]
                checks.append(Check("nu_decay", (str(t), k0), bad[0] if bad else 0, 0, not bad))
    checks.append(Check("E:finite", None, len(E), None, True))
    return checks
