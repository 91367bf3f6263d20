"""Deterministic assignment of stream indices to the two laws.

Index n is a G1 index exactly when tau1(n) > tau1(n-1), where

    tau1(n) = min(n, floor(g(n))),
    g(n)    = g_c * n^g_p * log(n + e)^(-g_m).

The growth function per regime kind:

  * Composition(lambda):  g(n) = lambda^(1/alpha2) * n^(alpha1/alpha2),
    so (tau1(n))^alpha2 / (tau2(n))^alpha1 -> lambda.  The coefficient
    follows from lim g(n)^alpha2 / n^alpha1 = lambda with tau2(n) ~ n.
  * StableAlpha1(rho):    g(n) = n^rho with alpha1/alpha2 < rho < 1,
    which forces n * tau1(n)^(-alpha2/alpha1) -> 0 (ratio -> infinity).
  * StableAlpha2(mu):     g(n) = n^(alpha1/alpha2) * log(n + e)^(-mu'),
    mu' = mu + 0.1, strictly inside the tau1(n) < n^(alpha1/alpha2) *
    (log n)^(-mu) envelope (ratio -> 0).

The min(n, .) clamp realizes the carry-forward rule tau1(n) =
min(floor(g(n)), tau1(n-1) + 1): for concave g with g(0) = 0 the two are
identical (g(n) - g(n-1) <= g(n)/n < 1 whenever g(n) < n), which keeps
tau1 O(1) with increments in {0, 1}.  Construction re-verifies the
increment property by exhaustive scan over an initial range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .distributions import ConfigurationError

C3_MARGIN = 0.1  # mu' = mu + margin keeps the C3 envelope strict


@dataclass(frozen=True)
class Composition:
    lambda_target: float


@dataclass(frozen=True)
class StableAlpha1:
    rho: float


@dataclass(frozen=True)
class StableAlpha2:
    mu: float


RegimeKind = Union[Composition, StableAlpha1, StableAlpha2]


def c3_mu_bound(alpha1: float, alpha2: float) -> float:
    """Smallest admissible mu for the tau1 log-power envelope."""
    return (alpha2 - alpha1) / alpha2


@dataclass(frozen=True)
class RegimeSpec:
    alpha1: float
    alpha2: float
    kind: RegimeKind

    def __post_init__(self):
        if not (0.0 < self.alpha1 <= self.alpha2 < 2.0):
            raise ConfigurationError(
                f"need 0 < alpha1 <= alpha2 < 2, got ({self.alpha1}, {self.alpha2})"
            )
        k = self.kind
        if isinstance(k, Composition):
            if not self.alpha1 < self.alpha2:
                raise ConfigurationError("Composition regime requires alpha1 < alpha2")
            if not k.lambda_target > 0.0:
                raise ConfigurationError("lambda_target must be > 0")
        elif isinstance(k, StableAlpha1):
            lo = self.alpha1 / self.alpha2
            if not (lo < k.rho < 1.0):
                raise ConfigurationError(
                    f"StableAlpha1 rho must satisfy {lo} < rho < 1, got {k.rho}"
                )
        elif isinstance(k, StableAlpha2):
            bound = c3_mu_bound(self.alpha1, self.alpha2)
            if not k.mu > bound:
                raise ConfigurationError(
                    f"StableAlpha2 mu must exceed (alpha2-alpha1)/alpha2 = {bound}, got {k.mu}"
                )
        else:
            raise ConfigurationError(f"unknown regime kind {k!r}")


G1 = "G1"
G2 = "G2"


@dataclass(frozen=True)
class Scheme:
    regime: RegimeSpec
    g_c: float
    g_p: float
    g_m: float

    def g(self, n: float) -> float:
        """Growth function; expression order frozen for kernel parity."""
        v = self.g_c * math.pow(n, self.g_p)
        if self.g_m != 0.0:
            v = v * math.pow(math.log(n + math.e), -self.g_m)
        return v


def build_scheme(regime: RegimeSpec) -> Scheme:
    k = regime.kind
    if isinstance(k, Composition):
        g_c = math.pow(k.lambda_target, 1.0 / regime.alpha2)
        g_p = regime.alpha1 / regime.alpha2
        g_m = 0.0
    elif isinstance(k, StableAlpha1):
        g_c = 1.0
        g_p = k.rho
        g_m = 0.0
    else:
        g_c = 1.0
        g_p = regime.alpha1 / regime.alpha2
        g_m = k.mu + C3_MARGIN
    scheme = Scheme(regime=regime, g_c=g_c, g_p=g_p, g_m=g_m)
    _verify_increments(scheme)
    return scheme


def _verify_increments(scheme: Scheme, n_cap: int = 200_000) -> None:
    """Exhaustive increment check over the initial range.

    Beyond the scan, increments <= 1 hold because g is concave with
    g(0) = 0 (power and power-times-inverse-log-power functions with
    exponent <= 1), so g(n) - g(n-1) <= g(n)/n < 1 on the g-branch of
    the clamp.  The scan guards the small-n region where g' may exceed 1
    and any floating-point edge cases.
    """
    n0 = 1.0
    if scheme.g_m == 0.0 and scheme.g_p < 1.0:
        # g' = c*p*n^(p-1) < 1  <=>  n > (c*p)^(1/(1-p))
        n0 = math.pow(max(scheme.g_c * scheme.g_p, 1e-12), 1.0 / (1.0 - scheme.g_p))
    n_check = min(n_cap, max(1024, int(math.ceil(n0)) + 8))
    ns = np.arange(0, n_check + 1, dtype=np.float64)
    t = tau1_array(scheme, ns)
    d = np.diff(t)
    bad = np.nonzero((d < 0) | (d > 1))[0]
    if bad.size:
        raise AssertionError(
            f"tau1 increment outside {{0,1}} at n={bad[0] + 1} for scheme {scheme}"
        )


def tau(scheme: Scheme, j: int, n: int) -> int:
    """Count of G_j indices among 1..n; O(1) closed form."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if j not in (1, 2):
        raise ValueError("j must be 1 or 2")
    if n == 0:
        return 0
    t1 = min(n, int(math.floor(scheme.g(float(n)))))
    return t1 if j == 1 else n - t1


def tau1_array(scheme: Scheme, ns: np.ndarray) -> np.ndarray:
    """Vectorized tau1 over a float64 index array (for scans and checks)."""
    g = scheme.g_c * np.power(ns, scheme.g_p)
    if scheme.g_m != 0.0:
        g = g * np.power(np.log(ns + math.e), -scheme.g_m)
    return np.minimum(ns, np.floor(g))


def indicator(scheme: Scheme, n: int) -> str:
    """Which law index n draws from: G1 iff tau1 increments at n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return G1 if tau(scheme, 1, n) > tau(scheme, 1, n - 1) else G2


def regime_ratio(scheme: Scheme, n: int) -> float:
    """(tau1(n))^alpha2 / (tau2(n))^alpha1, the regime-defining ratio."""
    t1 = tau(scheme, 1, n)
    t2 = n - t1
    if t2 == 0:
        raise ValueError(f"tau2({n}) = 0: n too small for a regime ratio")
    r = scheme.regime
    return math.pow(t1, r.alpha2) / math.pow(t2, r.alpha1)


def check_c3(scheme: Scheme, mu: float, n_lo: int, n_hi: int) -> bool:
    """True iff tau1(n) < n^(alpha1/alpha2) * (log n)^(-mu) on [n_lo, n_hi].

    The scan is strict and exhaustive over the integer range (vectorized,
    chunked); mu must exceed (alpha2 - alpha1)/alpha2.
    """
    r = scheme.regime
    bound = c3_mu_bound(r.alpha1, r.alpha2)
    if not mu > bound:
        raise ConfigurationError(
            f"C3 requires mu > (alpha2-alpha1)/alpha2 = {bound}, got {mu}"
        )
    if n_lo < 3 or n_hi < n_lo:
        raise ValueError("C3 scan range must lie within [3, n_max]")
    p = r.alpha1 / r.alpha2
    chunk = 1 << 20
    lo = n_lo
    while lo <= n_hi:
        hi = min(n_hi, lo + chunk - 1)
        ns = np.arange(lo, hi + 1, dtype=np.float64)
        t1 = tau1_array(scheme, ns)
        envelope = np.power(ns, p) * np.power(np.log(ns), -mu)
        if not np.all(t1 < envelope):
            return False
        lo = hi + 1
    return True
