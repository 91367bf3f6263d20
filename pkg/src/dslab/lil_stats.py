"""Closed-form quantities of the iterated-logarithm limit theory plus the
finite-n diagnostic series.

Normalizers B_n per limit regime:

    stable(alpha1) limit (ratio -> infinity):  B_n = tau1(n)^(1/alpha1)
    stable(alpha2) limit (ratio -> 0):         B_n = tau2(n)^(1/alpha2)
    composition limit (0 < lambda < infinity): B_n = n^(1/alpha2)

Predicted almost-sure limits of |T/B|^(1/exponent):

    composition, s = 0:            e^(1/alpha1)
    composition, s = infinity:     e^(1/alpha2)
    composition, s in (0, inf):    exp((alpha1*s + alpha2) / ((s+1)*alpha1*alpha2))
    stable(alpha1) regime:         e^(1/alpha1)   (gamma* exponent)
    stable(alpha2) regime:         e^(1/alpha2)

A running maximum over a geometric checkpoint grid is the finite-n proxy
for the limsup; reports must carry the grid and n_max because no finite
run reaches an almost-sure limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .distributions import ConfigurationError
from .integral_test import TestFn
from .scheme import (
    Composition,
    RegimeSpec,
    Scheme,
    StableAlpha1,
    StableAlpha2,
    tau,
)

COMPOSITION_LIMIT = "CompositionLimit"
STABLE_A1_LIMIT = "StableA1Limit"
STABLE_A2_LIMIT = "StableA2Limit"


@dataclass(frozen=True)
class Regime:
    kind: str
    alpha1: float
    alpha2: float


def regime_limit(spec: RegimeSpec) -> Regime:
    """Classify the limit distribution implied by a regime spec."""
    if isinstance(spec.kind, Composition):
        kind = COMPOSITION_LIMIT
    elif isinstance(spec.kind, StableAlpha1):
        kind = STABLE_A1_LIMIT
    elif isinstance(spec.kind, StableAlpha2):
        kind = STABLE_A2_LIMIT
    else:
        raise ConfigurationError(f"unknown regime kind {spec.kind!r}")
    return Regime(kind=kind, alpha1=spec.alpha1, alpha2=spec.alpha2)


def normalizer(regime: Regime, scheme: Scheme, n: int) -> float:
    if n < 1:
        raise ValueError("n must be >= 1")
    if regime.kind == STABLE_A1_LIMIT:
        t1 = tau(scheme, 1, n)
        if t1 < 1:
            raise ValueError(f"tau1({n}) = 0: stable(alpha1) normalizer undefined")
        return math.pow(t1, 1.0 / regime.alpha1)
    if regime.kind == STABLE_A2_LIMIT:
        t2 = tau(scheme, 2, n)
        if t2 < 1:
            raise ValueError(f"tau2({n}) = 0: stable(alpha2) normalizer undefined")
        return math.pow(t2, 1.0 / regime.alpha2)
    return math.pow(n, 1.0 / regime.alpha2)


def chover_stat(T: float, B: float, exponent: float) -> float:
    """|T/B|^(1/exponent); 0 when T = 0."""
    if B <= 0.0:
        raise ValueError(f"normalizer must be > 0, got {B}")
    if exponent <= 0.0:
        raise ValueError(f"exponent must be > 0, got {exponent}")
    if T == 0.0:
        return 0.0
    return math.pow(abs(T / B), 1.0 / exponent)


def predicted_limit(regime: Regime, s: float) -> float:
    """Predicted limsup of the matching Chover statistic.

    ``s`` is the lag-regime exponent (0, finite, or math.inf).  Only the
    composition regime depends on it; the pure-stable regimes return their
    e^(1/alpha) regardless of the lag.
    """
    if regime.kind == STABLE_A1_LIMIT:
        return math.exp(1.0 / regime.alpha1)
    if regime.kind == STABLE_A2_LIMIT:
        return math.exp(1.0 / regime.alpha2)
    if s < 0.0:
        raise ValueError(f"lag-regime exponent must be >= 0, got {s}")
    if s == 0.0:
        return math.exp(1.0 / regime.alpha1)
    if math.isinf(s):
        return math.exp(1.0 / regime.alpha2)
    a1, a2 = regime.alpha1, regime.alpha2
    return math.exp((a1 * s + a2) / ((s + 1.0) * a1 * a2))


EXPONENT_TAGS = ("loglog", "gamma", "gamma_star")


@dataclass(frozen=True)
class ChoverSeries:
    """Per-checkpoint Chover values R_n and their running maximum.

    ``values`` may contain None where a statistic was unavailable (window
    past the stream end, or tau1(a_n) = 0); the running maximum skips
    absent entries rather than treating them as 0.
    """

    exponent_tag: str
    ns: tuple
    values: tuple
    running: tuple = ()

    def __post_init__(self):
        if self.exponent_tag not in EXPONENT_TAGS:
            raise ValueError(f"unknown exponent tag {self.exponent_tag!r}")
        if len(self.ns) != len(self.values):
            raise ValueError("ns and values length mismatch")


def running_max(series: ChoverSeries) -> ChoverSeries:
    out = []
    best: Optional[float] = None
    for v in series.values:
        if v is not None:
            best = v if best is None else max(best, v)
        out.append(best)
    return replace(series, running=tuple(out))


def dichotomy_series(
    records: Sequence,
    fn: TestFn,
    alpha_slot: int,
    delta: float,
    numerator: str = "S",
) -> list:
    """|S_n| / (B_n * f(n)^((1+delta)/alpha)) per checkpoint record.

    ``alpha_slot`` selects alpha1 (1) or alpha2 (2) from the record's
    regime; ``numerator`` picks the plain partial sum ("S") or the delayed
    sum ("T"), the two families the convergence/divergence dichotomies
    cover.  Entries are None where the chosen numerator is absent.
    """
    if delta < 0.0:
        raise ValueError("delta must be >= 0")
    if alpha_slot not in (1, 2):
        raise ValueError("alpha_slot must be 1 or 2")
    if numerator not in ("S", "T"):
        raise ValueError("numerator must be 'S' or 'T'")
    out = []
    for rec in records:
        x = rec.S_n if numerator == "S" else rec.T
        if x is None or rec.B_n is None:
            out.append(None)
            continue
        alpha = rec.alpha1 if alpha_slot == 1 else rec.alpha2
        out.append(abs(x) / (rec.B_n * math.pow(fn.value(float(rec.n)), (1.0 + delta) / alpha)))
    return out
