"""Command-line toolbox: run, limits, classify, scheme, validate.

Exit codes: 0 success, 1 validation-suite failure, 2 invalid config or
spec string, 3 numeric abort during simulation.

Config files are flat JSON documents with exactly the experiment fields;
unknown keys are errors (silent typos in experiment configs are the main
reproducibility hazard).  The environment variable DSL_SEED_OVERRIDE, when
set to an integer, overrides both seed fields for quick smoke runs.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import statistics
import sys
from typing import Optional

from . import __version__
from ._kernel import active_lane
from .distributions import (
    ConfigurationError,
    ParetoTailSpec,
    StableParams,
    ZeroLaw,
    empirical_cf,
    pareto_dna_sf,
    sample_many,
    stable_cf,
)
from .engine import (
    CheckpointRecord,
    ExperimentConfig,
    NumericOverflowError,
    checkpoint_grid,
    replicate,
)
from .integral_test import classify_analytic, classify_numeric, parse_test_fn
from .lags import (
    MIN_INDEX,
    FullLag,
    LagSpec,
    LogPowerLag,
    PowerLag,
    RandomTau1Lag,
    RandomUniformLag,
    lag_s_regime,
)
from .lil_stats import COMPOSITION_LIMIT, STABLE_A1_LIMIT, predicted_limit, regime_limit
from .rng import DOMAIN_LAG, DOMAIN_SUMMAND, derive_stream_seed
from .scheme import (
    Composition,
    RegimeSpec,
    StableAlpha1,
    StableAlpha2,
    build_scheme,
    regime_ratio,
    tau,
)

SEED_OVERRIDE_ENV = "DSL_SEED_OVERRIDE"

CSV_COLUMNS = (
    "rep", "n", "tau1", "tau2", "S_n", "U", "V", "a_n", "T",
    "B_n", "B_an", "s_n", "gamma_n", "gamma_star",
    "chover_loglog", "chover_gamma", "chover_gamma_star",
    "runmax_loglog", "runmax_gamma", "runmax_gamma_star",
)

_INT_COLUMNS = {"rep", "n", "tau1", "tau2", "a_n"}


# -- config parsing ----------------------------------------------------------

def _require_keys(d: dict, required: set, optional: set, where: str) -> None:
    unknown = set(d) - required - optional
    if unknown:
        raise ConfigurationError(f"unknown key(s) {sorted(unknown)} in {where}")
    missing = required - set(d)
    if missing:
        raise ConfigurationError(f"missing key(s) {sorted(missing)} in {where}")


def parse_law(d: dict, where: str):
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigurationError(f"{where} must be an object with a 'kind' field")
    kind = d["kind"]
    if kind == "stable":
        _require_keys(d, {"kind", "alpha"}, {"scale"}, where)
        return StableParams(alpha=float(d["alpha"]), scale=float(d.get("scale", 1.0)))
    if kind == "pareto":
        _require_keys(d, {"kind", "alpha", "c_plus", "c_minus", "cutoff"}, set(), where)
        return ParetoTailSpec(
            alpha=float(d["alpha"]),
            c_plus=float(d["c_plus"]),
            c_minus=float(d["c_minus"]),
            cutoff=float(d["cutoff"]),
        )
    if kind == "zero":
        _require_keys(d, {"kind", "alpha"}, set(), where)
        return ZeroLaw(alpha=float(d["alpha"]))
    raise ConfigurationError(f"{where}: unknown law kind {kind!r}")


def parse_regime(d: dict) -> RegimeSpec:
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigurationError("regime must be an object with a 'kind' field")
    kind = d["kind"]
    if kind == "composition":
        _require_keys(d, {"kind", "alpha1", "alpha2", "lambda_target"}, set(), "regime")
        k = Composition(lambda_target=float(d["lambda_target"]))
    elif kind == "stable_alpha1":
        _require_keys(d, {"kind", "alpha1", "alpha2", "rho"}, set(), "regime")
        k = StableAlpha1(rho=float(d["rho"]))
    elif kind == "stable_alpha2":
        _require_keys(d, {"kind", "alpha1", "alpha2", "mu"}, set(), "regime")
        k = StableAlpha2(mu=float(d["mu"]))
    else:
        raise ConfigurationError(f"regime: unknown kind {kind!r}")
    return RegimeSpec(alpha1=float(d["alpha1"]), alpha2=float(d["alpha2"]), kind=k)


def parse_lag(d: dict) -> LagSpec:
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigurationError("lag must be an object with a 'kind' field")
    kind = d["kind"]
    if kind == "full":
        _require_keys(d, {"kind"}, set(), "lag")
        return FullLag()
    if kind == "power":
        _require_keys(d, {"kind", "rho"}, set(), "lag")
        return PowerLag(rho=float(d["rho"]))
    if kind == "log_power":
        _require_keys(d, {"kind", "s"}, set(), "lag")
        return LogPowerLag(s=float(d["s"]))
    if kind == "random_uniform":
        _require_keys(d, {"kind", "c"}, set(), "lag")
        return RandomUniformLag(c=float(d["c"]))
    if kind == "random_tau1":
        _require_keys(d, {"kind", "c"}, set(), "lag")
        return RandomTau1Lag(c=float(d["c"]))
    raise ConfigurationError(f"lag: unknown kind {kind!r}")


def parse_config(doc: dict) -> ExperimentConfig:
    """Strict parse of the flat experiment-config document."""
    if not isinstance(doc, dict):
        raise ConfigurationError("config must be a JSON object")
    required = {"law1", "law2", "regime", "lag", "n_max", "summand_seed", "lag_seed"}
    optional = {"checkpoint_ratio", "replications"}
    _require_keys(doc, required, optional, "config")
    summand_seed = int(doc["summand_seed"])
    lag_seed = int(doc["lag_seed"])
    override = os.environ.get(SEED_OVERRIDE_ENV)
    if override:
        summand_seed = lag_seed = int(override)
    return ExperimentConfig(
        law1=parse_law(doc["law1"], "law1"),
        law2=parse_law(doc["law2"], "law2"),
        regime=parse_regime(doc["regime"]),
        lag=parse_lag(doc["lag"]),
        n_max=int(doc["n_max"]),
        summand_seed=summand_seed,
        lag_seed=lag_seed,
        checkpoint_ratio=float(doc.get("checkpoint_ratio", 1.1)),
        replications=int(doc.get("replications", 1)),
    )


def config_to_doc(config: ExperimentConfig) -> dict:
    """Inverse of parse_config, for manifests."""
    def law_doc(law):
        if isinstance(law, StableParams):
            return {"kind": "stable", "alpha": law.alpha, "scale": law.scale}
        if isinstance(law, ParetoTailSpec):
            return {
                "kind": "pareto", "alpha": law.alpha,
                "c_plus": law.c_plus, "c_minus": law.c_minus, "cutoff": law.cutoff,
            }
        return {"kind": "zero", "alpha": law.alpha}

    r = config.regime
    if isinstance(r.kind, Composition):
        regime_doc = {"kind": "composition", "alpha1": r.alpha1, "alpha2": r.alpha2,
                      "lambda_target": r.kind.lambda_target}
    elif isinstance(r.kind, StableAlpha1):
        regime_doc = {"kind": "stable_alpha1", "alpha1": r.alpha1, "alpha2": r.alpha2,
                      "rho": r.kind.rho}
    else:
        regime_doc = {"kind": "stable_alpha2", "alpha1": r.alpha1, "alpha2": r.alpha2,
                      "mu": r.kind.mu}

    lg = config.lag
    if isinstance(lg, FullLag):
        lag_doc = {"kind": "full"}
    elif isinstance(lg, PowerLag):
        lag_doc = {"kind": "power", "rho": lg.rho}
    elif isinstance(lg, LogPowerLag):
        lag_doc = {"kind": "log_power", "s": lg.s}
    elif isinstance(lg, RandomUniformLag):
        lag_doc = {"kind": "random_uniform", "c": lg.c}
    else:
        lag_doc = {"kind": "random_tau1", "c": lg.c}

    return {
        "law1": law_doc(config.law1),
        "law2": law_doc(config.law2),
        "regime": regime_doc,
        "lag": lag_doc,
        "n_max": config.n_max,
        "checkpoint_ratio": config.checkpoint_ratio,
        "summand_seed": config.summand_seed,
        "lag_seed": config.lag_seed,
        "replications": config.replications,
    }


# -- output writers ----------------------------------------------------------

def _fmt(value, column: str) -> str:
    if value is None:
        return ""
    if column in _INT_COLUMNS:
        return str(value)
    return repr(float(value))


def records_to_csv(records_by_rep: list[list[CheckpointRecord]]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for records in records_by_rep:
        for rec in records:
            lines.append(",".join(_fmt(getattr(rec, col), col) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def limits_report(config: ExperimentConfig) -> dict:
    """Regime classification, normalizer choice, branch, predicted limits."""
    regime = regime_limit(config.regime)
    s, s_mode = lag_s_regime(config.lag)
    if regime.kind == COMPOSITION_LIMIT:
        branch = "A(ii)" if s == 0.0 else ("A(i)" if math.isinf(s) else "A(iii)")
        statistic = "chover_gamma"
        normalizer_formula = "n^(1/alpha2)"
        description = "composition limit; gamma exponent on T/B_[a_n]"
        predicted = {
            "loglog": math.exp(1.0 / regime.alpha1),
            "gamma": predicted_limit(regime, s),
            "gamma_star": None,
        }
    elif regime.kind == STABLE_A1_LIMIT:
        branch = "B"
        statistic = "chover_gamma_star"
        normalizer_formula = "tau1(n)^(1/alpha1)"
        description = "stable(alpha1) limit; gamma* exponent on T/B_[a_n]"
        predicted = {
            "loglog": math.exp(1.0 / regime.alpha1),
            "gamma": None,
            "gamma_star": predicted_limit(regime, s),
        }
    else:
        branch = "C"
        statistic = "chover_gamma"
        normalizer_formula = "tau2(n)^(1/alpha2)"
        description = "stable(alpha2) limit; gamma exponent on T/B_[a_n]"
        predicted = {
            "loglog": math.exp(1.0 / regime.alpha2),
            "gamma": predicted_limit(regime, s),
            "gamma_star": None,
        }
    return {
        "regime": {"limit": regime.kind, "alpha1": regime.alpha1, "alpha2": regime.alpha2},
        "branch": branch,
        "branch_description": description,
        "statistic": statistic,
        "normalizer": normalizer_formula,
        "s_regime": {"s": ("infinity" if math.isinf(s) else s), "mode": s_mode},
        "predicted": predicted,
        "predicted_limit": predicted[statistic.removeprefix("chover_")],
    }


def _pool(values: list) -> Optional[dict]:
    present = [v for v in values if v is not None]
    if not present:
        return None
    return {
        "median": statistics.median(present),
        "min": min(present),
        "max": max(present),
        "count": len(present),
    }


def build_summary(config: ExperimentConfig, records_by_rep: list[list[CheckpointRecord]]) -> dict:
    """Final running maxima per replication and pooled, against predictions.

    Two running maxima are reported per statistic: over the full checkpoint
    grid (from n = 16) and over the tail window n >= tail_start with
    tail_start = max(16, isqrt(n_max)).  The tail window is the honest
    limsup proxy: the exponents 1/gamma_n are so small at the first
    checkpoints that early values otherwise dominate every maximum.  The
    pooled location is the median across replications (a max across
    replications estimates an extreme quantile, not the almost-sure limit).
    """
    tail_start = max(MIN_INDEX, math.isqrt(config.n_max))
    stats_cols = ("loglog", "gamma", "gamma_star")
    per_rep = []
    for records in records_by_rep:
        final = {c: getattr(records[-1], f"runmax_{c}") for c in stats_cols}
        tail: dict = {c: None for c in stats_cols}
        for rec in records:
            if rec.n < tail_start:
                continue
            for c in stats_cols:
                v = getattr(rec, f"chover_{c}")
                if v is not None and (tail[c] is None or v > tail[c]):
                    tail[c] = v
        per_rep.append({"rep": records[0].rep, "final": final, "tail": tail})

    pooled = {
        "final": {c: _pool([pr["final"][c] for pr in per_rep]) for c in stats_cols},
        "tail": {c: _pool([pr["tail"][c] for pr in per_rep]) for c in stats_cols},
    }
    report = limits_report(config)
    log_ratio = {}
    for c in stats_cols:
        pred = report["predicted"][c]
        pool = pooled["tail"][c]
        if pred is None or pool is None or pool["median"] <= 0.0:
            log_ratio[c] = None
        else:
            log_ratio[c] = math.log(pool["median"] / pred)
    return {
        "artifact_version": __version__,
        "n_max": config.n_max,
        "replications": config.replications,
        "checkpoint_count": len(records_by_rep[0]) if records_by_rep else 0,
        "tail_start": tail_start,
        **report,
        "per_replication": per_rep,
        "pooled": pooled,
        "log_ratio": log_ratio,
    }


def build_manifest(config: ExperimentConfig, grid: list[int], out_names: dict) -> dict:
    reps = range(config.replications)
    return {
        "artifact_version": __version__,
        "config": config_to_doc(config),
        "seed_derivations": {
            "summand": [derive_stream_seed(config.summand_seed, r, DOMAIN_SUMMAND) for r in reps],
            "lag": [derive_stream_seed(config.lag_seed, r, DOMAIN_LAG) for r in reps],
        },
        "checkpoint_grid": grid,
        "outputs": out_names,
        "lane": active_lane(),
    }


def _dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- subcommands ---------------------------------------------------------------

def _load_config_file(path: str) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if isinstance(doc, dict) and "config" in doc and "artifact_version" in doc:
        doc = doc["config"]  # accept a manifest for bytewise re-runs
    return parse_config(doc)


def cmd_run(args) -> int:
    try:
        config = _load_config_file(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return 2
    try:
        records_by_rep = replicate(config, threads=args.threads)
    except NumericOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    os.makedirs(args.out, exist_ok=True)
    paths = {
        "records": os.path.join(args.out, "records.csv"),
        "summary": os.path.join(args.out, "summary.json"),
        "manifest": os.path.join(args.out, "manifest.json"),
    }
    with open(paths["records"], "w", encoding="utf-8", newline="\n") as fh:
        fh.write(records_to_csv(records_by_rep))
    with open(paths["summary"], "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_dump_json(build_summary(config, records_by_rep)))
    grid = checkpoint_grid(config.checkpoint_ratio, config.n_max)
    out_names = {k: os.path.basename(v) for k, v in paths.items() if k != "manifest"}
    with open(paths["manifest"], "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_dump_json(build_manifest(config, grid, out_names)))
    if not args.quiet:
        for key in ("records", "summary", "manifest"):
            print(paths[key])
    return 0


def cmd_limits(args) -> int:
    try:
        config = _load_config_file(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return 2
    print(_dump_json(limits_report(config)), end="")
    return 0


def cmd_classify(args) -> int:
    try:
        fn = parse_test_fn(args.fn_spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    numeric = classify_numeric(fn, args.k, args.window)
    doc = {
        "numeric_verdict": numeric.verdict,
        "decay_exponent": numeric.decay_exponent,
        "partial_sums": list(numeric.partial_sums),
        "K": args.k,
        "window": args.window,
    }
    try:
        analytic = classify_analytic(fn)
        doc["analytic_verdict"] = analytic.verdict
        doc["verdict"] = analytic.verdict
    except TypeError:
        doc["analytic_verdict"] = None
        doc["verdict"] = numeric.verdict
    print(_dump_json(doc), end="")
    return 0


def cmd_scheme(args) -> int:
    try:
        config = _load_config_file(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return 2
    sch = build_scheme(config.regime)
    n_max = args.n_max or config.n_max
    grid = checkpoint_grid(config.checkpoint_ratio, n_max)
    lines = ["n,tau1,tau2,regime_ratio"]
    for n in grid:
        t1 = tau(sch, 1, n)
        t2 = n - t1
        ratio = repr(regime_ratio(sch, n)) if t2 > 0 else ""
        lines.append(f"{n},{t1},{t2},{ratio}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        if not args.quiet:
            print(args.out)
    else:
        print(text, end="")
    return 0


def _parse_law_spec(spec: str):
    kind, _, rest = spec.partition(":")
    fields = {}
    for part in rest.split(","):
        if not part:
            continue
        key, _, val = part.partition("=")
        fields[key.strip()] = float(val)
    if kind == "stable":
        return StableParams(alpha=fields.pop("alpha"), scale=fields.pop("scale", 1.0)), fields
    if kind == "pareto":
        return (
            ParetoTailSpec(
                alpha=fields.pop("alpha"),
                c_plus=fields.pop("c_plus"),
                c_minus=fields.pop("c_minus"),
                cutoff=fields.pop("cutoff"),
            ),
            fields,
        )
    raise ConfigurationError(f"unknown law spec kind {kind!r} (use stable: or pareto:)")


def cmd_validate(args) -> int:
    try:
        law, leftover = _parse_law_spec(args.law_spec)
        if leftover:
            raise ConfigurationError(f"unknown law spec field(s) {sorted(leftover)}")
    except (KeyError, ValueError) as exc:
        print(f"error: invalid law spec: {exc}", file=sys.stderr)
        return 2
    import numpy as np
    from scipy import stats as sps

    n = args.n
    samples = sample_many(law, seed=args.seed, n=n)
    checks: list[tuple[str, bool, str]] = []

    def add(name, ok, detail):
        checks.append((name, bool(ok), detail))

    if isinstance(law, StableParams):
        for t in (0.5, 1.0, 2.0):
            ecf = empirical_cf(samples, t)
            target = stable_cf(law, t)
            tol = 5.0 / math.sqrt(n)
            add(f"cf t={t}", abs(ecf - target) <= tol,
                f"ecf={ecf:.5f} target={target:.5f} tol={tol:.5f}")
        med = float(np.median(samples))
        iqr = float(np.percentile(samples, 75) - np.percentile(samples, 25))
        tol = 3.0 * iqr / math.sqrt(n)
        add("median 0", abs(med) <= tol, f"median={med:.5f} tol={tol:.5f}")
        if law.alpha == 1.0:
            frac = float(np.mean(samples <= law.scale))
            tol = 0.002 * math.sqrt(1e6 / n)
            add("cauchy quantile", abs(frac - 0.75) <= tol,
                f"P(X<=scale)={frac:.5f} tol={tol:.5f}")
        m = min(n, 100_000)
        p = sps.ks_2samp(samples[:m], -samples[:m]).pvalue
        add("sign-flip symmetry", p > 0.001, f"ks p={p:.5f}")
    else:
        for x in (2.0 * law.cutoff, 10.0 * law.cutoff):
            frac = float(np.mean(samples > x))
            target = pareto_dna_sf(law, x)
            tol = 3.0 * math.sqrt(target * (1.0 - target) / n)
            add(f"upper tail x={x}", abs(frac - target) <= tol,
                f"frac={frac:.6f} target={target:.6f} tol={tol:.6f}")
        body_target = 1.0 - (law.c_plus + law.c_minus) / math.pow(law.cutoff, law.alpha)
        frac = float(np.mean(np.abs(samples) < law.cutoff))
        tol = 3.0 * math.sqrt(max(body_target * (1.0 - body_target), 1e-12) / n)
        add("body mass", abs(frac - body_target) <= tol,
            f"frac={frac:.6f} target={body_target:.6f} tol={tol:.6f}")
        if law.symmetric:
            m = min(n, 100_000)
            p = sps.ks_2samp(samples[:m], -samples[:m]).pvalue
            add("sign-flip symmetry", p > 0.001, f"ks p={p:.5f}")

    failures = 0
    for name, ok, detail in checks:
        if not ok:
            failures += 1
        if not args.quiet or not ok:
            print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return 1 if failures else 0


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dslab", description=__doc__)
    parser.add_argument("--quiet", action="store_true", help="suppress routine output")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment config, write records/summary/manifest")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", required=True)
    p_run.add_argument("--threads", type=int, default=1)
    p_run.set_defaults(func=cmd_run)

    p_lim = sub.add_parser("limits", help="print regime branch and predicted limits (no simulation)")
    p_lim.add_argument("--config", required=True)
    p_lim.set_defaults(func=cmd_limits)

    p_cls = sub.add_parser("classify", help="classify a test function's integral convergence")
    p_cls.add_argument("fn_spec", help="logpow:ETA or composite:ETA,THETA")
    p_cls.add_argument("--k", type=int, default=200)
    p_cls.add_argument("--window", type=int, default=50)
    p_cls.set_defaults(func=cmd_classify)

    p_sch = sub.add_parser("scheme", help="dump (n, tau1, tau2, regime_ratio) CSV on a geometric grid")
    p_sch.add_argument("--config", required=True)
    p_sch.add_argument("--out", default=None)
    p_sch.add_argument("--n-max", type=int, default=None, dest="n_max")
    p_sch.set_defaults(func=cmd_scheme)

    p_val = sub.add_parser("validate", help="goodness-of-fit suite for a law spec")
    p_val.add_argument("law_spec", help="stable:alpha=A,scale=S or pareto:alpha=A,c_plus=..,c_minus=..,cutoff=..")
    p_val.add_argument("--n", type=int, default=1_000_000)
    p_val.add_argument("--seed", type=int, default=2026)
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    # propagate --quiet to subcommands that use it
    if not hasattr(args, "quiet"):
        args.quiet = False
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
