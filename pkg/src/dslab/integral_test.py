"""Convergence classification of the integral-test switch.

Every dichotomy in the experiments flips on whether

    integral_1^infinity dx / (x f(x))

is finite.  For the log-power family this is exact: f(x) = (log x)^eta
integrates to finiteness iff eta > 1, and the Bertrand extension
f(x) = (log x)^eta * (log log x)^theta is finite iff eta > 1, or eta = 1
with theta > 1 (the theta rule extends the base family; the eta rule is
the one the experiments rely on).

The numeric path uses the dyadic comparison: the integral and the series
sum_k 1/f(2^k) converge together, so the decay exponent of 1/f(2^k) in k
separates the verdicts, with an explicit Inconclusive band around the
critical exponent 1 because near-critical decay is not finitely decidable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

CONVERGENT = "Convergent"
DIVERGENT = "Divergent"
INCONCLUSIVE = "Inconclusive"

# Tail-decay exponent thresholds for the numeric verdict.
_DECAY_HI = 1.05
_DECAY_LO = 0.95


@dataclass(frozen=True)
class LogPower:
    """f(x) = (log(x + e))^eta, eta >= 0; the +e shift keeps f(1) positive."""

    eta: float

    def __post_init__(self):
        if self.eta < 0.0:
            raise ValueError(f"LogPower eta must be >= 0, got {self.eta}")

    def value(self, x: float) -> float:
        return math.pow(math.log(x + math.e), self.eta)


@dataclass(frozen=True)
class Composite:
    """f(x) = (log(x+e))^eta * (log log(x+e^2))^theta."""

    eta: float
    theta: float

    def __post_init__(self):
        if self.eta < 0.0:
            raise ValueError(f"Composite eta must be >= 0, got {self.eta}")

    def value(self, x: float) -> float:
        return math.pow(math.log(x + math.e), self.eta) * math.pow(
            math.log(math.log(x + math.e * math.e)), self.theta
        )


@dataclass(frozen=True)
class Tabulated:
    """f given on a monotone sample grid; evaluated by log-x interpolation."""

    xs: tuple
    fs: tuple

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=np.float64)
        fs = np.asarray(self.fs, dtype=np.float64)
        if xs.size < 2 or xs.size != fs.size:
            raise ValueError("Tabulated needs matching grids with >= 2 points")
        if not (np.all(np.diff(xs) > 0) and xs[0] >= 1.0):
            raise ValueError("Tabulated x grid must be increasing and start at x >= 1")
        if np.any(fs <= 0.0) or np.any(np.diff(fs) < 0):
            raise ValueError("Tabulated f must be positive and nondecreasing")

    def value(self, x: float) -> float:
        xs = np.asarray(self.xs, dtype=np.float64)
        fs = np.asarray(self.fs, dtype=np.float64)
        if x < xs[0] or x > xs[-1]:
            raise ValueError(f"x = {x} outside tabulated range [{xs[0]}, {xs[-1]}]")
        return float(np.interp(math.log(x), np.log(xs), fs))


TestFn = Union[LogPower, Composite, Tabulated]


@dataclass(frozen=True)
class Classification:
    verdict: str
    method: str  # "analytic" or "dyadic-fit"
    partial_sums: tuple = field(default_factory=tuple)
    decay_exponent: float = math.nan


def classify_analytic(fn: TestFn) -> Classification:
    """Exact verdict for the analytic families (never Inconclusive)."""
    if isinstance(fn, LogPower):
        verdict = CONVERGENT if fn.eta > 1.0 else DIVERGENT
    elif isinstance(fn, Composite):
        verdict = (
            CONVERGENT
            if fn.eta > 1.0 or (fn.eta == 1.0 and fn.theta > 1.0)
            else DIVERGENT
        )
    else:
        raise TypeError("classify_analytic only covers LogPower and Composite")
    return Classification(verdict=verdict, method="analytic")


def dyadic_partial_sum(fn: TestFn, K: int) -> float:
    """sum_{k=1}^{K} 1/f(2^k), the comparison series for the integral."""
    if K < 1:
        raise ValueError("K must be >= 1")
    total = 0.0
    for k in range(1, K + 1):
        total += 1.0 / fn.value(2.0 ** k)
    return total


def classify_numeric(fn: TestFn, K: int, window: int) -> Classification:
    """Fit the decay of 1/f(2^k) over the last ``window`` dyadic terms.

    The fitted slope of log(1/f(2^k)) against log k estimates the decay
    exponent d with 1/f(2^k) ~ k^-d; Convergent needs d > 1.05, Divergent
    d < 0.95, anything between is Inconclusive by design.
    """
    if window < 2:
        raise ValueError("window must be >= 2")
    if K < 2 * window:
        raise ValueError("need K >= 2*window for a stable tail fit")
    ks = np.arange(K - window + 1, K + 1, dtype=np.float64)
    vals = np.array([fn.value(2.0 ** k) for k in ks])
    if np.any(np.diff(vals) < 0):
        raise ValueError("test function is not nondecreasing on the dyadic tail")
    incr = 1.0 / vals
    slope = np.polyfit(np.log(ks), np.log(incr), 1)[0]
    decay = -float(slope)
    if decay > _DECAY_HI:
        verdict = CONVERGENT
    elif decay < _DECAY_LO:
        verdict = DIVERGENT
    else:
        verdict = INCONCLUSIVE
    partials = tuple(dyadic_partial_sum(fn, k) for k in (K // 4, K // 2, K))
    return Classification(
        verdict=verdict,
        method="dyadic-fit",
        partial_sums=partials,
        decay_exponent=decay,
    )


def parse_test_fn(spec: str) -> TestFn:
    """Parse "logpow:ETA" or "composite:ETA,THETA" CLI specs."""
    name, _, rest = spec.partition(":")
    name = name.strip().lower()
    try:
        if name == "logpow":
            return LogPower(float(rest))
        if name == "composite":
            eta_s, theta_s = rest.split(",")
            return Composite(float(eta_s), float(theta_s))
    except (ValueError, TypeError) as exc:
        raise ValueError(f"bad test-function spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown test-function family {name!r} (use logpow: or composite:)")
