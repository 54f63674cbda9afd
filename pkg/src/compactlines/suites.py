"""Randomized property suites run by ``verify-lemmas``.

A suite maps ``(rng, config)`` to ``(instance_json, checks)`` where each check
is ``(name, lhs, rhs, passed)``.  Library-side assertion failures surface as a
failed ``exception`` row in the campaign runner.
"""
from __future__ import annotations

from fractions import Fraction

from . import instances as gen
from .closedsets import ClosedSet
from .decomposition import DecompositionConfig, decompose, verify_decomposition
from .extension import check_criterion, extend_through_quotient, full_pipeline
from .fragmentation import alpha_of_interval, compute_hierarchy, flower_bound
from .functions import (
    CoefficientPattern,
    CoordinateEmbedding,
    FiniteFunctional,
    PiecewiseLinear,
    StepFunction,
    diam_phi,
    dual_norm,
    pullback,
    r_star,
)
from .measures import (
    NBVProfile,
    SignedMeasure,
    bv_norm,
    cumulative,
    jordan,
    pushforward,
    rs_integral,
)
from .oracles import oracle_hierarchy, restrict_levels
from .order import (
    FiniteLine,
    LexDouble,
    OrdinalLine,
    UnitIntervalLine,
    build_quotient,
)
from .rewrites import skeleton, skeleton_test_points, tilde_mu, tilde_test_points
from .sequences import explicit, harmonic, sweep_interval, sweep_sequence
from .serialization import (
    function_to_json,
    line_to_json,
    measure_to_json,
    operator_to_json,
    point_to_json,
    rat,
    sequence_to_json,
    closed_set_to_json,
)

__all__ = ["SUITES"]


def _pairing(f, mu: SignedMeasure) -> Fraction:
    return sum((f(p) * w for p, w in mu.atoms), Fraction(0))


def suite_order(rng, cfg):
    line = gen.random_line(rng)
    P = gen.random_partition(rng, line)
    pts = line.sample(40) + [gen.random_point(rng, line) for _ in range(8)]
    cells = P.cells()
    cover = all(sum(1 for I in cells if p in I) == 1 and p in P.cell_of(p) for p in pts)
    succ_ok = True
    for p in pts:
        s = line.successor(p)
        if s is not None:
            succ_ok &= line.less(p, s) and line.between(p, s) is None and line.is_right_isolated(p)
    checks = [("cells_cover", len(pts), len(pts), cover), ("successor", None, None, succ_ok)]
    if line.is_finite and line.is_zero_dimensional:
        E = {gen.random_cut(rng, line) for _ in range(3)}
        q = build_quotient(line, E)
        pl = line.points()
        mono = all(q(a).index <= q(b).index for a, b in zip(pl, pl[1:]))
        checks.append(("quotient_monotone", None, None, mono))
    return {"line": line_to_json(line), "cuts": [point_to_json(b) for b in P.cuts]}, checks


def suite_nbv(rng, cfg):
    line = gen.random_line(rng)
    mu = gen.random_measure(rng, line)
    lhs = bv_norm(NBVProfile(mu))
    pos, neg = jordan(mu)
    checks = [
        ("isometry", lhs, mu.norm(), lhs == mu.norm()),
        ("jordan", pos.norm() + neg.norm(), mu.norm(), pos.norm() + neg.norm() == mu.norm() and pos - neg == mu),
    ]
    return {"measure": measure_to_json(mu)}, checks


def suite_stieltjes(rng, cfg):
    line = gen.random_line(rng)
    mu = gen.random_measure(rng, line)
    f = gen.random_test_function(rng, line)
    lhs = rs_integral(f, NBVProfile(mu))
    rhs = _pairing(f, mu)
    return {"measure": measure_to_json(mu), "function": function_to_json(f)}, [("rs_integral", lhs, rhs, lhs == rhs)]


def suite_pullback(rng, cfg):
    K = rng.choice([FiniteLine(rng.randint(2, 7)), LexDouble(FiniteLine(rng.randint(1, 3)))])
    E = {gen.random_cut(rng, K) for _ in range(rng.randint(0, 3))}
    q = build_quotient(K, E)
    f = gen.random_step_function(rng, q.target)
    mu = gen.random_measure(rng, K)
    g = pullback(q, f)
    lhs = rs_integral(g, NBVProfile(mu))
    nu = pushforward(q, mu)
    rhs = rs_integral(f, NBVProfile(nu))
    cum = all(cumulative(nu, t) == cumulative(mu, q.fiber_max(t)) for t in q.target.points())
    checks = [
        ("duality", lhs, rhs, lhs == rhs),
        ("sup_norm", g.sup_norm(), f.sup_norm(), g.sup_norm() == f.sup_norm()),
        ("push_norm", nu.norm(), mu.norm(), nu.norm() <= mu.norm() and nu.mass() == mu.mass()),
        ("cumulative_bt", None, None, cum),
    ]
    return {"line": line_to_json(K), "cuts": [point_to_json(s) for s in K.sort(E)], "measure": measure_to_json(mu)}, checks


def suite_dual_norm(rng, cfg):
    R = gen.random_finite_basis(rng)
    d = R.dim
    psi = FiniteFunctional(tuple(gen.random_fraction(rng) for _ in range(d)))
    chi = FiniteFunctional(tuple(gen.random_fraction(rng) for _ in range(d)))
    c = gen.random_fraction(rng)
    n_psi = dual_norm(R, psi)
    checks = [("simplex_vs_vertex", n_psi, R.dual_norm_vertex(psi), n_psi == R.dual_norm_vertex(psi))]
    lhs = dual_norm(R, psi.scale(c))
    checks.append(("homogeneity", lhs, abs(c) * n_psi, lhs == abs(c) * n_psi))
    lhs = dual_norm(R, psi + chi)
    rhs = n_psi + dual_norm(R, chi)
    checks.append(("triangle", lhs, rhs, lhs <= rhs))
    mu = gen.random_measure(rng, R.line)
    lhs = dual_norm(R, r_star(R, mu))
    rhs = R.norm() * mu.norm()
    checks.append(("r_star_bound", lhs, rhs, lhs <= rhs))
    _, rep = R.min_norm_representation(psi)
    checks.append(("hahn_banach", rep.norm(), n_psi, rep.norm() == n_psi and r_star(R, rep) == psi))
    return {"operator": operator_to_json(R), "psi": [rat(v) for v in psi.coords]}, checks


def suite_tilde(rng, cfg):
    line = gen.random_line(rng, zero_dimensional=True)
    P = gen.random_partition(rng, line)
    mu = gen.random_measure(rng, line, 8)
    mt = tilde_mu(line, P, mu)
    ok_i = all(mt.mass(I) == 0 for I in P.cells())
    pts = tilde_test_points(line, P, (mu, mt))
    ok_ii = all(cumulative(mt, t) == cumulative(mu, t) for t in pts)
    rhs = mu.norm() + 2 * sum((abs(cumulative(mu, b)) for b in P.cuts), Fraction(0))
    checks = [("i", None, None, ok_i), ("ii", len(pts), len(pts), ok_ii), ("iii", mt.norm(), rhs, mt.norm() <= rhs)]
    return {"measure": measure_to_json(mu), "cuts": [point_to_json(b) for b in P.cuts]}, checks


def suite_skeleton(rng, cfg):
    line = gen.random_line(rng, zero_dimensional=True)
    I = gen.random_interval(rng, line)
    H = gen.random_closed_subset(rng, I)
    mu = gen.random_measure(rng, line, 8).restrict(I)
    nu = skeleton(I, H, mu)
    pts = skeleton_test_points(H, (mu, nu))
    ok_d = all(
        nu.mass_between(I.lo, t) == mu.mass_between(I.lo, t) for t in pts
    )
    checks = [
        ("A", None, None, all(p in H for p in nu.support())),
        ("B", nu.mass(), mu.mass(), nu.mass() == mu.mass()),
        ("C", nu.norm(), mu.norm(), nu.norm() <= mu.norm()),
        ("D", len(pts), len(pts), ok_d),
    ]
    inst = {"measure": measure_to_json(mu), "H": closed_set_to_json(H), "interval_hi": point_to_json(I.hi)}
    return inst, checks


def suite_flower(rng, cfg):
    R = gen.random_operator(rng)
    mu = gen.random_zero_mass_measure(rng, R.line)
    lhs, rhs, holds = flower_bound(R, mu)
    return {"operator": operator_to_json(R), "measure": measure_to_json(mu)}, [("flower", lhs, rhs, holds)]


def _oracle_safe_coordinate(rng):
    line = OrdinalLine(rng.choice(((0, 1, 0), (0, 2, 0), (1, 0, 0))))
    table = tuple(gen.random_fraction(rng, 2, 2) for _ in range(rng.randint(0, 2)))
    unit = CoefficientPattern(table, rng.choice([0, Fraction(1, 2), 1, Fraction(-3, 2)]))
    weights = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(-1, 2))
    return CoordinateEmbedding(line, unit, rng.choice(weights), rng.choice(weights))


def suite_hierarchy(rng, cfg):
    R = _oracle_safe_coordinate(rng)
    delta = rng.choice([Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)])
    h = compute_hierarchy(R, delta)
    N = 36
    oracle = oracle_hierarchy(R, delta, N)
    symbolic = restrict_levels(h, N)
    checks = [("oracle_match", len(symbolic), len(oracle), symbolic == oracle)]
    I = gen.random_interval(rng, R.line)
    a = alpha_of_interval(h, I)
    ok = diam_phi(R, h[a].intersect(I)) < delta and (a == 0 or diam_phi(R, h[a - 1].intersect(I)) >= delta)
    checks.append(("alpha_minimal", a, h.stage, ok and a <= h.stage))
    return {"operator": operator_to_json(R), "delta": rat(delta)}, checks


def suite_decomposition(rng, cfg):
    L, R, seq = gen.random_decomposition_instance(rng, cfg.horizon)
    dcfg = DecompositionConfig(cfg.eps, cfg.epsp)
    res = decompose(L, R, seq, dcfg)
    checks = [(c.check, c.lhs, c.rhs, c.passed) for c in verify_decomposition(res, R)]
    return {"operator": operator_to_json(R), "sequence": sequence_to_json(seq)}, checks


def suite_extension(rng, cfg):
    K = rng.choice([FiniteLine(rng.randint(2, 7)), LexDouble(FiniteLine(rng.randint(1, 3)))])
    E = {gen.random_cut(rng, K) for _ in range(rng.randint(0, 3))}
    q = build_quotient(K, E)
    base = gen.random_measure(rng, q.target, 4)
    seq = harmonic(base, cfg.horizon) if rng.random() < 0.5 else explicit(q.target, [gen.random_measure(rng, q.target, 3) for _ in range(3)], cfg.horizon)
    ext = extend_through_quotient(q, seq, verdict=check_criterion(q, seq, q.multi_fibers()))
    f = gen.random_step_function(rng, q.target)
    g = pullback(q, f)
    ok_push = ok_norm = ok_pair = True
    for n in range(1, seq.horizon + 1):
        ok_push &= pushforward(q, ext[n]) == seq[n]
        ok_norm &= ext[n].norm() == seq[n].norm()
        ok_pair &= _pairing(g, ext[n]) == _pairing(f, seq[n])
    checks = [("pushforward", None, None, ok_push), ("norm", None, None, ok_norm), ("pairing", None, None, ok_pair)]
    return {"line": line_to_json(K), "cuts": [point_to_json(s) for s in K.sort(E)], "sequence": sequence_to_json(seq)}, checks


def suite_sweep(rng, cfg):
    depth = rng.randint(1, 4)
    seq = sweep_sequence(depth)
    f = gen.random_piecewise_linear(rng)
    ok = True
    worst = Fraction(0)
    for n in range(1, seq.horizon + 1):
        _, a, b = sweep_interval(n)
        lhs = abs(rs_integral(f, NBVProfile(seq[n])))
        ok &= lhs <= f.max_slope() * (b - a)
        worst = max(worst, lhs)
    return {"depth": depth, "function": function_to_json(f)}, [("pl_bound", worst, f.max_slope(), ok)]


def suite_pipeline(rng, cfg):
    K, basis, T0 = gen.random_pipeline_instance(rng)
    dcfg = DecompositionConfig(cfg.eps, cfg.epsp)
    _, rep = full_pipeline(K, basis, None, T0, dcfg)
    checks = [("ratio", rep.ratio, rep.bound, rep.ratio is None or rep.ratio <= rep.bound), ("restriction", None, None, rep.restriction_exact)]
    checks += [(c.check, c.lhs, c.rhs, c.passed) for c in rep.checks if not c.passed]
    inst = {
        "line": line_to_json(K),
        "basis": [function_to_json(g) for g in basis],
        "T0": [[rat(v) for v in psi] for psi in T0],
    }
    return inst, checks


SUITES = {
    "order": suite_order,
    "nbv_isometry": suite_nbv,
    "stieltjes": suite_stieltjes,
    "pullback": suite_pullback,
    "dual_norm": suite_dual_norm,
    "tilde": suite_tilde,
    "skeleton": suite_skeleton,
    "flower": suite_flower,
    "hierarchy": suite_hierarchy,
    "decomposition": suite_decomposition,
    "extension": suite_extension,
    "sweep": suite_sweep,
    "pipeline": suite_pipeline,
}
