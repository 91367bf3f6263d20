"""Single-pass streaming simulation.

One replication is one forward pass over indices k = 1, 2, ...: draw X_k
from the law the scheme assigns, fold it into the compensated component
sums U (G1 draws) and V (G2 draws), and at geometric checkpoints realize
the lag a_n and queue the window end n + a_n.  When the stream reaches a
queued index, the delayed sum T = S_{n+a_n} - S_n is filled in.  The pass
continues past n_max just long enough to resolve every queued window.

S_n is defined as value(U) + value(V) at read time, so the component
identity U + V = S holds bitwise.  Everything is bit-reproducible from
(summand_seed, lag_seed, rep): per-replication streams are derived with
the splitmix64 construction in ``rng``.
"""

from __future__ import annotations

import heapq
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from ._kernel import active_lane, get_kernel_module
from .distributions import ConfigurationError, LawChoice, law_alpha, law_consts
from .lags import LagSpec, c2_constant, gamma_n, gamma_star, lag, s_n
from .lil_stats import chover_stat, normalizer, regime_limit
from .rng import DOMAIN_LAG, DOMAIN_SUMMAND, XoshiroStream, derive_stream_seed
from .scheme import RegimeSpec, Scheme, build_scheme


class NumericOverflowError(RuntimeError):
    """An accumulator went non-finite (extreme heavy-tail draw)."""

    def __init__(self, rep: int, index: int):
        self.rep = rep
        self.index = index
        super().__init__(
            f"non-finite accumulation in replication {rep} at stream index {index}; "
            "alpha below the recommended range or n_max too large for double precision"
        )


@dataclass(frozen=True)
class ExperimentConfig:
    law1: LawChoice
    law2: LawChoice
    regime: RegimeSpec
    lag: LagSpec
    n_max: int
    summand_seed: int
    lag_seed: int
    checkpoint_ratio: float = 1.1
    replications: int = 1

    def __post_init__(self):
        if self.n_max < 16:
            raise ConfigurationError(f"n_max must be >= 16, got {self.n_max}")
        if not self.checkpoint_ratio > 1.0:
            raise ConfigurationError("checkpoint_ratio must be > 1")
        if self.replications < 1:
            raise ConfigurationError("replications must be >= 1")
        if law_alpha(self.law1) != self.regime.alpha1:
            raise ConfigurationError(
                f"law1 exponent {law_alpha(self.law1)} != regime alpha1 {self.regime.alpha1}"
            )
        if law_alpha(self.law2) != self.regime.alpha2:
            raise ConfigurationError(
                f"law2 exponent {law_alpha(self.law2)} != regime alpha2 {self.regime.alpha2}"
            )


@dataclass
class CheckpointRecord:
    rep: int
    n: int
    tau1: int
    tau2: int
    S_n: float
    U: float
    V: float
    a_n: int
    T: Optional[float] = None
    B_n: Optional[float] = None
    B_an: Optional[float] = None
    s_n: Optional[float] = None
    gamma_n: Optional[float] = None
    gamma_star: Optional[float] = None
    chover_loglog: Optional[float] = None
    chover_gamma: Optional[float] = None
    chover_gamma_star: Optional[float] = None
    runmax_loglog: Optional[float] = None
    runmax_gamma: Optional[float] = None
    runmax_gamma_star: Optional[float] = None
    # regime metadata for downstream statistics; not part of the CSV schema
    alpha1: float = field(default=0.0, repr=False)
    alpha2: float = field(default=0.0, repr=False)


def checkpoint_grid(q: float, n_max: int) -> list[int]:
    """Geometric grid n_k = max(16, ceil(q^k)), deduplicated, plus n_max."""
    ns = {n_max}
    k = 0
    while True:
        v = math.ceil(q ** k)
        if v > n_max:
            break
        ns.add(max(16, v))
        k += 1
    return sorted(ns)


def pending_queue_bound(q: float, lag_spec: LagSpec) -> int:
    """Max simultaneous unresolved windows: ceil(log_q(1+c)) + 2."""
    c = c2_constant(lag_spec)
    return math.ceil(math.log(1.0 + c) / math.log(q)) + 2


def run_experiment(
    config: ExperimentConfig,
    rep: int = 0,
    stats: Optional[dict] = None,
) -> list[CheckpointRecord]:
    """Run one replication; returns records in checkpoint order."""
    scheme = build_scheme(config.regime)
    regime = regime_limit(config.regime)
    grid = checkpoint_grid(config.checkpoint_ratio, config.n_max)
    kmod = get_kernel_module()
    kern = kmod.StreamKernel(
        law_consts(config.law1),
        law_consts(config.law2),
        (scheme.g_c, scheme.g_p, scheme.g_m),
        derive_stream_seed(config.summand_seed, rep, DOMAIN_SUMMAND),
    )
    lag_rng = XoshiroStream(derive_stream_seed(config.lag_seed, rep, DOMAIN_LAG))

    q_bound = pending_queue_bound(config.checkpoint_ratio, config.lag)
    records: list[CheckpointRecord] = []
    heap: list[int] = []            # unresolved window ends
    waiting: dict[int, list[int]] = {}  # window end -> record indices
    pending_entries = 0
    max_pending = 0
    gi = 0
    while gi < len(grid) or heap:
        target = grid[gi] if gi < len(grid) else heap[0]
        if heap and heap[0] < target:
            target = heap[0]
        abort_at = kern.advance(target)
        if abort_at != -1:
            raise NumericOverflowError(rep, abort_at)
        s_now = kern.s_value()
        while heap and heap[0] == target:
            key = heapq.heappop(heap)
            for ri in waiting.pop(key):
                records[ri].T = s_now - records[ri].S_n
                pending_entries -= 1
        if gi < len(grid) and grid[gi] == target:
            n = target
            t1 = kern.tau1
            a_n = lag(config.lag, n, scheme, lag_rng)
            records.append(
                CheckpointRecord(
                    rep=rep,
                    n=n,
                    tau1=t1,
                    tau2=n - t1,
                    S_n=s_now,
                    U=kern.u_value(),
                    V=kern.v_value(),
                    a_n=a_n,
                    alpha1=config.regime.alpha1,
                    alpha2=config.regime.alpha2,
                )
            )
            key = n + a_n
            if key in waiting:
                waiting[key].append(len(records) - 1)
            else:
                waiting[key] = [len(records) - 1]
                heapq.heappush(heap, key)
            pending_entries += 1
            if pending_entries > max_pending:
                max_pending = pending_entries
            if pending_entries > q_bound:
                raise AssertionError(
                    f"pending queue grew to {pending_entries} > bound {q_bound}"
                )
            gi += 1

    _enrich(records, regime, scheme)
    if stats is not None:
        stats["max_pending"] = max_pending
        stats["queue_bound"] = q_bound
        stats["lane"] = active_lane()
        stats["stream_end"] = kern.index
        stats["grid"] = grid
    return records


def _enrich(records: list[CheckpointRecord], regime, scheme: Scheme) -> None:
    """Fill normalizers, exponents, Chover statistics, and running maxima."""
    run_ll = run_g = run_gs = None
    for rec in records:
        n, a_n = rec.n, rec.a_n
        rec.s_n = s_n(n, a_n)
        rec.gamma_n = gamma_n(n, a_n)
        try:
            rec.gamma_star = gamma_star(n, a_n, scheme)
        except ValueError:
            rec.gamma_star = None
        try:
            rec.B_n = normalizer(regime, scheme, n)
        except ValueError:
            rec.B_n = None
        try:
            rec.B_an = normalizer(regime, scheme, a_n)
        except ValueError:
            rec.B_an = None
        if rec.T is not None:
            loglog = math.log(math.log(n))
            if rec.B_n is not None:
                rec.chover_loglog = chover_stat(rec.T, rec.B_n, loglog)
            if rec.B_an is not None:
                rec.chover_gamma = chover_stat(rec.T, rec.B_an, rec.gamma_n)
                if rec.gamma_star is not None:
                    rec.chover_gamma_star = chover_stat(rec.T, rec.B_an, rec.gamma_star)
        if rec.chover_loglog is not None:
            run_ll = rec.chover_loglog if run_ll is None else max(run_ll, rec.chover_loglog)
        if rec.chover_gamma is not None:
            run_g = rec.chover_gamma if run_g is None else max(run_g, rec.chover_gamma)
        if rec.chover_gamma_star is not None:
            run_gs = rec.chover_gamma_star if run_gs is None else max(run_gs, rec.chover_gamma_star)
        rec.runmax_loglog = run_ll
        rec.runmax_gamma = run_g
        rec.runmax_gamma_star = run_gs


def _replicate_worker(args) -> tuple[int, list[CheckpointRecord]]:
    config, rep = args
    return rep, run_experiment(config, rep)


def replicate(config: ExperimentConfig, threads: int = 1) -> list[list[CheckpointRecord]]:
    """Run all replications; rep r derives its streams from (seed, r).

    Replications are independent and may run in a process pool; output
    order is by replication index regardless of completion order.
    """
    reps = range(config.replications)
    if threads <= 1 or config.replications == 1:
        return [run_experiment(config, r) for r in reps]
    out: list[Optional[list[CheckpointRecord]]] = [None] * config.replications
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for rep, recs in pool.map(_replicate_worker, [(config, r) for r in reps]):
            out[rep] = recs
    return out  # type: ignore[return-value]
