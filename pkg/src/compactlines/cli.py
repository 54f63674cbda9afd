"""Command-line harness.

Every subcommand produces rows ``(suite, trial, instance_digest, check, lhs,
rhs, pass)`` with exact rationals written as ``"p/q"``.  Exit status is 0 when
every row passes, 1 when some row fails (the failing instances are written
next to the artifact for replay) and 2 on malformed input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .decomposition import DecompositionConfig, decompose, normalize, verify_decomposition
from .extension import NotExtendable, check_criterion, full_pipeline
from .fragmentation import compute_hierarchy
from .functions import FiniteFunctional
from .instances import random_piecewise_linear, rng_for
from .measures import NBVProfile, cumulative, rs_integral
from .oracles import oracle_hierarchy, restrict_levels
from .order import OrdinalLine, RationalPoint, double_arrow_projection
from .sequences import sweep_interval, sweep_sequence
from .serialization import (
    SerializationError,
    canonical,
    digest,
    function_from_json,
    function_to_json,
    hierarchy_to_json,
    line_from_json,
    line_to_json,
    measure_to_json,
    operator_from_json,
    operator_to_json,
    parse_rat,
    point_to_json,
    rat,
    sequence_from_json,
    sequence_to_json,
)
from .suites import SUITES

COLUMNS = ("suite", "trial", "instance_digest", "check", "lhs", "rhs", "pass")
DECIMAL_COLUMNS = ("lhs_decimal_approx", "rhs_decimal_approx")
GOLDEN_PIPELINE = "golden:pipeline_lexdouble.json"


class InputError(ValueError):
    """Malformed command-line input or instance file (exit status 2)."""


@dataclass(frozen=True)
class CampaignConfig:
    seed: int
    trials: int
    horizon: int
    eps: Fraction
    epsp: Fraction


# -- formatting


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, Fraction)):
        return rat(x)
    return str(x)


def _approx(x) -> str:
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return f"{float(x):.6g}"
    return ""


def _row(suite, trial, dig, check, lhs, rhs, passed) -> dict:
    return {
        "suite": suite,
        "trial": trial,
        "instance_digest": dig,
        "check": check,
        "lhs": lhs,
        "rhs": rhs,
        "pass": bool(passed),
    }


def render_csv(rows, decimal: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS + (DECIMAL_COLUMNS if decimal else ()))
    for r in rows:
        line = [r["suite"], r["trial"], r["instance_digest"], r["check"], _cell(r["lhs"]), _cell(r["rhs"]), _cell(r["pass"])]
        if decimal:
            line += [_approx(r["lhs"]), _approx(r["rhs"])]
        w.writerow(line)
    return buf.getvalue()


def render_json(command, cfg, rows, instances, result=None, decimal: bool = False) -> str:
    out_rows = []
    for r in rows:
        d = {k: (_cell(r[k]) if k in ("lhs", "rhs") else r[k]) for k in COLUMNS}
        if decimal:
            d["lhs_decimal_approx"] = _approx(r["lhs"])
            d["rhs_decimal_approx"] = _approx(r["rhs"])
        out_rows.append(d)
    doc = {
        "command": command,
        "config": {
            "seed": cfg.seed,
            "trials": cfg.trials,
            "horizon": cfg.horizon,
            "eps": rat(cfg.eps),
            "epsp": rat(cfg.epsp),
        },
        "rows": out_rows,
        "summary": _summary(rows),
        "instances": instances,
    }
    if result is not None:
        doc["result"] = result
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def _summary(rows) -> dict:
    failed = sum(1 for r in rows if not r["pass"])
    return {"rows": len(rows), "passed": len(rows) - failed, "failed": failed}


# -- instance loading


def _rational(text: str) -> Fraction:
    try:
        x = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")
    if x <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return x


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {n}")
    return n


def golden_names() -> list:
    return sorted(p.name for p in resources.files("compactlines").joinpath("golden").iterdir() if p.name.endswith(".json"))


def load_instance(source: str) -> dict:
    """Read a JSON instance from a path or from ``golden:<name>``."""
    try:
        if source.startswith("golden:"):
            text = resources.files("compactlines").joinpath("golden", source[len("golden:"):]).read_text(encoding="utf-8")
        else:
            text = Path(source).read_text(encoding="utf-8")
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read instance {source}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"instance {source} is not a JSON object")
    return doc


def _config(args, instance: Optional[dict] = None, horizon_default: int = 12) -> CampaignConfig:
    instance = instance or {}

    def pick(name, default):
        v = getattr(args, name)
        if v is not None:
            return v
        if name in instance:
            x = parse_rat(instance[name])
            if x <= 0:
                raise InputError(f"{name} must be positive")
            return x
        return default

    return CampaignConfig(
        seed=args.seed,
        trials=args.trials,
        horizon=args.horizon or horizon_default,
        eps=pick("eps", Fraction(1, 10)),
        epsp=pick("epsp", Fraction(1, 2)),
    )


# -- verify-lemmas


def _run_trial(task):
    suite, trial, cfg = task
    rng = rng_for(cfg.seed, suite, trial)
    try:
        instance, checks = SUITES[suite](rng, cfg)
    except Exception as exc:  # a failed library assertion is a failed row
        instance = {"suite": suite, "seed": cfg.seed, "trial": trial}
        checks = [("exception", None, None, False)]
        instance["error"] = f"{type(exc).__name__}: {exc}"
    dig = digest(instance)
    rows = [_row(suite, trial, dig, name, lhs, rhs, ok) for name, lhs, rhs, ok in checks]
    return rows, dig, instance


def cmd_verify(args):
    cfg = _config(args)
    names = args.suite or list(SUITES)
    for s in names:
        if s not in SUITES:
            raise InputError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
    tasks = [(s, t, cfg) for s in names for t in range(cfg.trials)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_run_trial, tasks, chunksize=8))
    else:
        results = [_run_trial(t) for t in tasks]
    rows, instances = [], {}
    for r, dig, inst in results:
        rows.extend(r)
        instances[dig] = inst
    counts = {s: sum(1 for r in rows if r["suite"] == s) for s in names}
    messages = [f"{s}: {counts[s]} rows" for s in names]
    return cfg, rows, instances, None, messages


# -- decompose


def cmd_decompose(args):
    doc = load_instance(args.instance)
    cfg = _config(args, doc)
    try:
        R = operator_from_json(doc["operator"]) if "operator" in doc else None
        if R is None:
            raise SerializationError("missing field 'operator'")
        sdoc = dict(doc.get("sequence") or {})
        if not sdoc:
            raise SerializationError("missing field 'sequence'")
        if args.horizon:
            sdoc["horizon"] = args.horizon
        seq = sequence_from_json(sdoc, R.line)
    except (SerializationError, KeyError, TypeError, AttributeError) as exc:
        raise InputError(str(exc)) from exc
    L = R.line
    unit, scale = normalize(seq)
    dcfg = DecompositionConfig(cfg.eps, cfg.epsp)
    try:
        res = decompose(L, R, unit, dcfg)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    instance = {"operator": operator_to_json(R), "sequence": sequence_to_json(seq), "eps": rat(cfg.eps), "epsp": rat(cfg.epsp)}
    dig = digest(instance)
    rows = [
        _row("decompose", c.index if isinstance(c.index, int) else 0, dig, c.check, c.lhs, c.rhs, c.passed)
        for c in verify_decomposition(res, R)
    ]
    result = {
        "scale": rat(scale),
        "delta": rat(dcfg.delta),
        "schedule": list(res.schedule),
        "exceptional": [point_to_json(p) for p in res.exceptional],
        "hierarchy": hierarchy_to_json(res.hierarchy),
        "terms": [
            {
                "n": n,
                "mu": measure_to_json(res.source[n])["atoms"],
                "mu_prime": measure_to_json(res.mu_prime[n])["atoms"],
                "nu": measure_to_json(res.nu[n])["atoms"],
            }
            for n in range(1, res.horizon + 1)
        ],
    }
    messages = [
        f"schedule n_k = {list(res.schedule)}",
        f"exceptional set E = {{{', '.join(map(str, res.exceptional))}}}",
    ]
    return cfg, rows, {dig: instance}, result, messages


# -- counterexample


def cmd_counterexample(args):
    cfg = _config(args, horizon_default=0)
    seq = sweep_sequence(args.depth, args.horizon)
    half = RationalPoint(Fraction(1, 2))
    q = double_arrow_projection((half.x,))
    instance = {"depth": args.depth, "horizon": seq.horizon, "Q": [rat(half.x)]}
    dig = digest(instance)
    rows = []
    for trial in range(cfg.trials):
        f = random_piecewise_linear(rng_for(cfg.seed, "counterexample", trial))
        ok, worst = True, Fraction(0)
        for n in range(1, seq.horizon + 1):
            _, a, b = sweep_interval(n)
            val = abs(rs_integral(f, NBVProfile(seq[n])))
            ok &= val <= f.max_slope() * (b - a)
            worst = max(worst, val)
        rows.append(_row("counterexample", trial, dig, "pl_bound", worst, f.max_slope(), ok))
    hits = [n for n in range(1, seq.horizon + 1) if cumulative(seq[n], half) == 1]
    verdict = check_criterion(q, seq, [half])
    found = isinstance(verdict, NotExtendable)
    rows.append(_row("counterexample", 0, dig, "covering_count", len(hits), args.depth, len(hits) >= args.depth))
    rows.append(_row("counterexample", 0, dig, "criterion_fails", None, None, found))
    result = {
        "witness": rat(half.x),
        "covering_indices": hits,
        "verdict": type(verdict).__name__,
        "limsup": rat(verdict.limsup) if found else None,
        "uncountable": verdict.uncountable if found else None,
    }
    messages = [f"witness t=1/2 covering count={len(hits)} at n={hits} verdict={type(verdict).__name__}"]
    return cfg, rows, {dig: instance}, result, messages


# -- pipeline


def pipeline_from_json(doc):
    try:
        K = line_from_json(doc["line"])
        basis = tuple(function_from_json(g, K) for g in doc["basis"])
        M = doc.get("matrix")
        M = None if M is None else tuple(tuple(parse_rat(v) for v in row) for row in M)
        T0 = [FiniteFunctional(tuple(parse_rat(v) for v in psi)) for psi in doc["T0"]]
    except KeyError as exc:
        raise InputError(f"missing field {exc}") from exc
    except (SerializationError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(str(exc)) from exc
    return K, basis, M, T0


def cmd_pipeline(args):
    doc = load_instance(args.instance or GOLDEN_PIPELINE)
    cfg = _config(args, doc)
    K, basis, M, T0 = pipeline_from_json(doc)
    try:
        Tprime, rep = full_pipeline(K, basis, M, T0, DecompositionConfig(cfg.eps, cfg.epsp))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    instance = {
        "line": line_to_json(K),
        "basis": [function_to_json(g) for g in basis],
        "matrix": None if M is None else [[rat(v) for v in row] for row in M],
        "T0": [[rat(v) for v in psi.coords] for psi in T0],
        "eps": rat(cfg.eps),
        "epsp": rat(cfg.epsp),
    }
    dig = digest(instance)
    rows = [_row("pipeline", c.index if isinstance(c.index, int) else 0, dig, c.check, c.lhs, c.rhs, c.passed) for c in rep.checks]
    result = {
        "norm_T0": rat(rep.norm_T0),
        "norm_Tprime": rat(rep.norm_Tprime),
        "ratio": None if rep.ratio is None else rat(rep.ratio),
        "bound": rat(rep.bound),
        "doubled": rep.doubled,
        "quotient_size": rep.quotient_size,
        "rounds": [{k: (rat(v) if isinstance(v, Fraction) else v) for k, v in r.items()} for r in rep.rounds],
        "Tprime": [measure_to_json(m)["atoms"] for m in Tprime.terms()],
    }
    ratio = "undefined (T0 = 0)" if rep.ratio is None else rat(rep.ratio)
    messages = [f"ratio={ratio} bound={rat(rep.bound)} holds={_cell(rep.holds)}"]
    return cfg, rows, {dig: instance}, result, messages


# -- hierarchy


def cmd_hierarchy(args):
    doc = load_instance(args.instance)
    cfg = _config(args, doc)
    try:
        R = operator_from_json(doc["operator"])
        delta = parse_rat(doc["delta"]) if "delta" in doc else DecompositionConfig(cfg.eps, cfg.epsp).delta
    except KeyError as exc:
        raise InputError(f"missing field {exc}") from exc
    except (SerializationError, TypeError, AttributeError) as exc:
        raise InputError(str(exc)) from exc
    if delta <= 0:
        raise InputError("delta must be positive")
    h = compute_hierarchy(R, delta)
    instance = {"operator": operator_to_json(R), "delta": rat(delta)}
    dig = digest(instance)
    levels = hierarchy_to_json(h)
    rows = [_row("hierarchy", 0, dig, "stage", h.stage, None, True)]
    if args.oracle > 0 and isinstance(R.line, OrdinalLine) and R.line.bound <= (1, 0, 0):
        symbolic = restrict_levels(h, args.oracle)
        oracle = oracle_hierarchy(R, delta, args.oracle)
        rows.append(_row("hierarchy", 0, dig, f"oracle_match_N{args.oracle}", len(symbolic), len(oracle), symbolic == oracle))
    messages = [f"H_{a} = {H}" for a, H in enumerate(h.levels)]
    return cfg, rows, {dig: instance}, {"delta": rat(delta), "levels": levels}, messages


# -- driver


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="campaign seed (default 0)")
    common.add_argument("--trials", type=_positive, default=20, help="random trials per suite")
    common.add_argument("--horizon", type=_positive, default=None, help="number of sequence terms")
    common.add_argument("--eps", type=_rational, default=None, help="ε as p/q (default 1/10)")
    common.add_argument("--epsp", type=_rational, default=None, help="ε′ as p/q (default 1/2)")
    common.add_argument("--out", default=None, help="artifact path, or - for stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--decimal", action="store_true", help="add approximate decimal columns")

    p = argparse.ArgumentParser(prog="compactlines", description="Exact desk-scale verification of c₀-extension constructions on compact lines.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify-lemmas", parents=[common], help="run the randomized property suites")
    v.add_argument("--suite", action="append", help=f"restrict to a suite (repeatable): {', '.join(SUITES)}")
    v.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    v.set_defaults(run=cmd_verify)

    d = sub.add_parser("decompose", parents=[common], help="decompose one sequence from a JSON instance")
    d.add_argument("instance", help="path or golden:<name>")
    d.set_defaults(run=cmd_decompose)

    c = sub.add_parser("counterexample", parents=[common], help="dyadic sweep on the double arrow quotient")
    c.add_argument("--depth", type=_positive, default=4)
    c.set_defaults(run=cmd_counterexample)

    pl = sub.add_parser("pipeline", parents=[common], help="extend T0 from X to C(K) and report the ratio")
    pl.add_argument("instance", nargs="?", default=None, help=f"path or golden:<name> (default {GOLDEN_PIPELINE})")
    pl.set_defaults(run=cmd_pipeline)

    h = sub.add_parser("hierarchy", parents=[common], help="dump the levels H_α")
    h.add_argument("instance", help="path or golden:<name>")
    h.add_argument("--oracle", type=int, default=100, help="truncation size for the oracle comparison (0 disables)")
    h.set_defaults(run=cmd_hierarchy)
    return p


def _failure_path(out: Optional[str]) -> Path:
    if out and out != "-":
        return Path(out + ".failures.json")
    return Path("compactlines.failures.json")


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        cfg, rows, instances, result, messages = args.run(args)
    except (InputError, SerializationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        text = render_json(args.command, cfg, rows, instances, result, args.decimal)
    else:
        text = render_csv(rows, args.decimal)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        for m in messages:
            print(m, flush=True)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
    s = _summary(rows)
    failing = [r for r in rows if not r["pass"]]
    if failing:
        digs = sorted({r["instance_digest"] for r in failing})
        payload = {
            "command": args.command,
            "seed": args.seed,
            "failures": [
                {"instance_digest": d, "instance": instances.get(d), "checks": [
                    {k: (_cell(r[k]) if k in ("lhs", "rhs") else r[k]) for k in COLUMNS}
                    for r in failing if r["instance_digest"] == d
                ]}
                for d in digs
            ],
        }
        path = _failure_path(args.out)
        path.write_text(canonical(payload) + "\n", encoding="utf-8")
        print(f"{s['failed']} of {s['rows']} checks failed; instances written to {path}", file=sys.stderr)
    else:
        print(f"all {s['rows']} checks passed", file=sys.stderr)
    print(f"wall-clock {time.perf_counter() - started:.2f}s", file=sys.stderr)
    return 1 if failing else 0


def main(argv=None) -> None:
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
