"""Lag sequences a_n for delayed sums, deterministic or random, plus the
exponent sequences they induce.

The lag regime is summarized by s = lim log(n/a_n) / log log n, which
interpolates the Chover exponent between the two tail indices:

    s = 0        full-length windows (a_n = n),
    s = infinity short windows (a_n = n^rho, rho < 1),
    s in (0,oo)  a_n = n / (log n)^s.

gamma_n = log(n/a_n) + log log n is the matching exponent normalization;
gamma_n* replaces n/a_n by tau1(n)/tau1(a_n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .distributions import ConfigurationError
from .rng import XoshiroStream
from .scheme import Scheme, tau, tau1_array

MIN_INDEX = 16  # smallest n with log log n safely positive (log log 16 ~ 1.02)


@dataclass(frozen=True)
class PowerLag:
    """a_n = ceil(n^rho), 0 < rho <= 1."""

    rho: float

    def __post_init__(self):
        if not (0.0 < self.rho <= 1.0):
            raise ConfigurationError(f"PowerLag rho must be in (0, 1], got {self.rho}")


@dataclass(frozen=True)
class LogPowerLag:
    """a_n = max(1, ceil(n * log(n+e)^-s)), s > 0."""

    s: float

    def __post_init__(self):
        if not self.s > 0.0:
            raise ConfigurationError(f"LogPowerLag s must be > 0, got {self.s}")


@dataclass(frozen=True)
class FullLag:
    """a_n = n."""


@dataclass(frozen=True)
class RandomUniformLag:
    """a_n uniform on {1, ..., ceil(c*n)}, independent of the summands."""

    c: float

    def __post_init__(self):
        if not self.c > 0.0:
            raise ConfigurationError(f"RandomUniformLag c must be > 0, got {self.c}")


@dataclass(frozen=True)
class RandomTau1Lag:
    """a_n uniform on {1, ..., max(1, ceil(c*tau1(n)))}."""

    c: float

    def __post_init__(self):
        if not self.c > 0.0:
            raise ConfigurationError(f"RandomTau1Lag c must be > 0, got {self.c}")


LagSpec = Union[PowerLag, LogPowerLag, FullLag, RandomUniformLag, RandomTau1Lag]


def is_random(spec: LagSpec) -> bool:
    return isinstance(spec, (RandomUniformLag, RandomTau1Lag))


def c2_constant(spec: LagSpec) -> float:
    """A constant c with a_n <= c*n surely, used for queue-bound checks."""
    if isinstance(spec, RandomUniformLag):
        return spec.c + 1.0
    if isinstance(spec, RandomTau1Lag):
        return spec.c + 1.0
    return 1.0


def _uniform_int(rng: XoshiroStream, m: int) -> int:
    """Uniform draw on {1, ..., m}."""
    k = 1 + int(rng.next_double() * m)
    return m if k > m else k


def lag(
    spec: LagSpec,
    n: int,
    scheme: Optional[Scheme] = None,
    rng: Optional[XoshiroStream] = None,
) -> int:
    """Realize a_n.  Random kinds consume exactly one draw from ``rng``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(spec, FullLag):
        return n
    if isinstance(spec, PowerLag):
        return int(math.ceil(math.pow(n, spec.rho)))
    if isinstance(spec, LogPowerLag):
        return max(1, int(math.ceil(n * math.pow(math.log(n + math.e), -spec.s))))
    if rng is None:
        raise ConfigurationError(f"{type(spec).__name__} needs a lag rng stream")
    if isinstance(spec, RandomUniformLag):
        return _uniform_int(rng, int(math.ceil(spec.c * n)))
    if isinstance(spec, RandomTau1Lag):
        if scheme is None:
            raise ConfigurationError("RandomTau1Lag needs the sampling scheme")
        m = max(1, int(math.ceil(spec.c * tau(scheme, 1, n))))
        return _uniform_int(rng, m)
    raise ConfigurationError(f"unknown lag spec {spec!r}")


def s_n(n: int, a_n: int) -> float:
    """log(n/a_n) / log log n, the finite-n lag-regime exponent."""
    if n < MIN_INDEX:
        raise ValueError(f"s_n needs n >= {MIN_INDEX}")
    return math.log(n / a_n) / math.log(math.log(n))


def gamma_n(n: int, a_n: int) -> float:
    """log(n/a_n) + log log n."""
    if n < MIN_INDEX:
        raise ValueError(f"gamma_n needs n >= {MIN_INDEX}")
    return math.log(n / a_n) + math.log(math.log(n))


def gamma_star(n: int, a_n: int, scheme: Scheme) -> float:
    """log(tau1(n)/tau1(a_n)) + log log n; needs tau1(a_n) >= 1."""
    if n < MIN_INDEX:
        raise ValueError(f"gamma_star needs n >= {MIN_INDEX}")
    t1a = tau(scheme, 1, a_n)
    if t1a < 1:
        raise ValueError(f"tau1(a_n) = 0 at a_n = {a_n}: lag too small for scheme")
    return math.log(tau(scheme, 1, n) / t1a) + math.log(math.log(n))


def lag_s_regime(spec: LagSpec) -> tuple[float, str]:
    """(s, mode) where s = lim log(n/a_n)/log log n.

    mode is "exact" when the limit holds along the whole sequence
    (deterministic lags, and RandomTau1Lag where the bound is sure), or
    "in-probability" for RandomUniformLag, whose ratio fluctuates so the
    almost-sure limit does not exist; s then describes the typical value.
    """
    if isinstance(spec, FullLag):
        return 0.0, "exact"
    if isinstance(spec, PowerLag):
        return (0.0, "exact") if spec.rho == 1.0 else (math.inf, "exact")
    if isinstance(spec, LogPowerLag):
        return spec.s, "exact"
    if isinstance(spec, RandomUniformLag):
        return 0.0, "in-probability"
    if isinstance(spec, RandomTau1Lag):
        return math.inf, "exact"
    raise ConfigurationError(f"unknown lag spec {spec!r}")


ASSUMPTIONS = ("C1", "C2", "C1*", "C2*")


@dataclass(frozen=True)
class AssumptionReport:
    """Empirical supremum scan for a lag assumption.

    A finite scan cannot prove a limsup bound; the report states the
    scanned range and replication count alongside the verdict.
    """

    assumption: str
    lag_kind: str
    n_max: int
    replications: int
    n_start: int
    sup_ratio: float
    sup_at_n: int
    bound: float
    passed: bool


def _lag_array(spec: LagSpec, ns: np.ndarray, scheme, rng) -> np.ndarray:
    if isinstance(spec, FullLag):
        return ns.copy()
    if isinstance(spec, PowerLag):
        return np.ceil(np.power(ns, spec.rho))
    if isinstance(spec, LogPowerLag):
        return np.maximum(1.0, np.ceil(ns * np.power(np.log(ns + math.e), -spec.s)))
    if isinstance(spec, RandomUniformLag):
        m = np.ceil(spec.c * ns)
        return np.minimum(m, 1.0 + np.floor(rng.random(ns.size) * m))
    if isinstance(spec, RandomTau1Lag):
        m = np.maximum(1.0, np.ceil(spec.c * tau1_array(scheme, ns)))
        return np.minimum(m, 1.0 + np.floor(rng.random(ns.size) * m))
    raise ConfigurationError(f"unknown lag spec {spec!r}")


def check_lag_assumption(
    spec: LagSpec,
    which: str,
    scheme: Optional[Scheme] = None,
    n_max: int = 100_000,
    replications: int = 1,
    bound: Optional[float] = None,
    seed: int = 0,
) -> AssumptionReport:
    """Scan sup of a_n/tau1(n) (C1/C1*) or a_n/n (C2/C2*) over n <= n_max.

    Starred assumptions pair with random lag kinds and unstarred with
    deterministic ones; mixing them is a configuration error.  Random kinds
    are scanned over ``replications`` independent vectorized streams (this
    checker uses numpy streams; engine reproducibility is not involved).
    The default bound is c2_constant(spec): the sure upper bound on a_n/n,
    which is also the natural pass level for matched C1* checks.
    """
    if which not in ASSUMPTIONS:
        raise ConfigurationError(f"unknown assumption {which!r}, expected one of {ASSUMPTIONS}")
    starred = which.endswith("*")
    if starred != is_random(spec):
        raise ConfigurationError(
            f"assumption {which} expects a {'random' if starred else 'deterministic'} lag kind, "
            f"got {type(spec).__name__}"
        )
    against_tau1 = which.startswith("C1")
    if against_tau1 and scheme is None:
        raise ConfigurationError(f"assumption {which} needs the sampling scheme")
    if bound is None:
        bound = c2_constant(spec)

    ns = np.arange(1, n_max + 1, dtype=np.float64)
    if against_tau1:
        denom = tau1_array(scheme, ns)
        positive = denom >= 1.0
        if not positive.any():
            raise ConfigurationError("tau1 never reaches 1 on the scanned range")
        start = int(np.argmax(positive)) + 1
        ns = ns[positive]
        denom = denom[positive]
    else:
        denom = ns
        start = 1

    sup_ratio = -math.inf
    sup_at = 0
    reps = replications if is_random(spec) else 1
    for r in range(reps):
        rng = np.random.default_rng((seed, r)) if is_random(spec) else None
        a = _lag_array(spec, ns, scheme, rng)
        ratios = a / denom
        i = int(np.argmax(ratios))
        if ratios[i] > sup_ratio:
            sup_ratio = float(ratios[i])
            sup_at = int(ns[i])
    return AssumptionReport(
        assumption=which,
        lag_kind=type(spec).__name__,
        n_max=n_max,
        replications=reps,
        n_start=start,
        sup_ratio=sup_ratio,
        sup_at_n=sup_at,
        bound=float(bound),
        passed=sup_ratio <= bound,
    )
