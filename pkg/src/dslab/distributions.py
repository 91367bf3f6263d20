"""Summand laws: exact symmetric stable variates and Pareto-tailed members
of their domains of normal attraction.

Two families are supported.  ``StableParams(alpha, scale)`` is the symmetric
stable law with characteristic function exp(-scale*|t|^alpha).  A sum of n
iid copies scaled by n^(-1/alpha) has exactly the same law, which makes it
the reference point for every normalizer in the experiments.

``ParetoTailSpec`` is a deliberately non-stable member of the same domain of
normal attraction: beyond a cutoff x0 the tails are exactly Pareto,

    P(X > x)  = c_plus  * x^-alpha   (x >= x0),
    P(X < -x) = c_minus * x^-alpha   (x >= x0),

with the leftover mass uniform on (-x0, x0).  The exact power tails make
tail assertions testable without asymptotic slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .rng import XoshiroStream


class ConfigurationError(ValueError):
    """A spec object or experiment config failed validation."""


@dataclass(frozen=True)
class StableParams:
    """Symmetric stable law with cf exp(-scale*|t|^alpha), 0 < alpha < 2."""

    alpha: float
    scale: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.alpha < 2.0):
            raise ConfigurationError(f"stable alpha must be in (0, 2), got {self.alpha}")
        if not self.scale > 0.0:
            raise ConfigurationError(f"stable scale must be > 0, got {self.scale}")


@dataclass(frozen=True)
class ParetoTailSpec:
    """Three-piece law: exact Pareto tails beyond ``cutoff``, uniform body."""

    alpha: float
    c_plus: float
    c_minus: float
    cutoff: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 2.0):
            raise ConfigurationError(f"pareto alpha must be in (0, 2), got {self.alpha}")
        if self.c_plus <= 0.0 or self.c_minus <= 0.0:
            raise ConfigurationError("tail constants c_plus, c_minus must be > 0")
        if self.cutoff <= 0.0:
            raise ConfigurationError("cutoff must be > 0")
        if (self.c_plus + self.c_minus) / math.pow(self.cutoff, self.alpha) > 1.0:
            raise ConfigurationError(
                "tail masses exceed 1: need (c_plus + c_minus)/cutoff^alpha <= 1"
            )

    @property
    def symmetric(self) -> bool:
        return self.c_plus == self.c_minus


@dataclass(frozen=True)
class ZeroLaw:
    """Test-only degenerate law: every variate is exactly 0.0.

    Carries an alpha so configs stay consistent with their regime spec.
    """

    alpha: float = 1.0


LawChoice = Union[StableParams, ParetoTailSpec, ZeroLaw]

# Kernel parameter layout shared with the compiled lane: (kind, p0..p5).
LAW_ZERO = 0
LAW_STABLE = 1
LAW_PARETO = 2


def law_alpha(law: LawChoice) -> float:
    return law.alpha


def law_consts(law: LawChoice) -> tuple:
    """Flatten a law into the (kind, p0..p5) tuple the stream kernels use.

    Derived constants are computed here, once, so the compiled and Python
    lanes consume bit-identical parameter values.
    """
    if isinstance(law, ZeroLaw):
        return (LAW_ZERO, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    if isinstance(law, StableParams):
        a = law.alpha
        inv_alpha = 1.0 / a
        return (
            LAW_STABLE,
            a,
            1.0 - a,                      # one_minus_alpha
            inv_alpha,
            (1.0 - a) / a,                # CMS exponent
            math.pow(law.scale, inv_alpha),  # scale multiplier
            0.0,
        )
    if isinstance(law, ParetoTailSpec):
        p_plus = law.c_plus / math.pow(law.cutoff, law.alpha)
        p_minus = law.c_minus / math.pow(law.cutoff, law.alpha)
        p_body = 1.0 - (p_plus + p_minus)
        return (
            LAW_PARETO,
            1.0 / law.alpha,
            p_body,
            p_body + p_plus,              # upper-tail region boundary
            law.c_plus,
            law.c_minus,
            law.cutoff,
        )
    raise ConfigurationError(f"unknown law {law!r}")


def _draw_stable(consts: tuple, rng: XoshiroStream) -> float:
    """One symmetric stable variate by the polar (CMS) transform.

    u is uniform on (-pi/2, pi/2), w standard exponential.  For alpha != 1:

        X = sin(alpha*u)/cos(u)^(1/alpha) * (cos((1-alpha)*u)/w)^((1-alpha)/alpha)

    and for alpha = 1 the transform degenerates to X = tan(u) (Cauchy).
    The expression order below is frozen: the compiled kernel repeats it
    verbatim so both lanes produce bit-identical draws.
    """
    _, alpha, one_minus_alpha, inv_alpha, cms_exp, scale_mult, _ = consts
    u = math.pi * (rng.next_open_double() - 0.5)
    w = -math.log(rng.next_open_double())
    if alpha == 1.0:
        x = math.tan(u)
    else:
        t1 = math.sin(alpha * u) / math.pow(math.cos(u), inv_alpha)
        t2 = math.cos(one_minus_alpha * u) / w
        x = t1 * math.pow(t2, cms_exp)
    return scale_mult * x


def _draw_pareto(consts: tuple, rng: XoshiroStream) -> float:
    """One three-piece variate by inversion.

    The tail regions are inverted from their far ends (w = region_top - u)
    so w stays strictly positive and the draw is always finite.
    """
    _, inv_alpha, p_body, p_plus_hi, c_plus, c_minus, cutoff = consts
    u = rng.next_double()
    if u < p_body:
        return cutoff * (2.0 * (u / p_body) - 1.0)
    if u < p_plus_hi:
        w = p_plus_hi - u
        return math.pow(c_plus / w, inv_alpha)
    w = 1.0 - u
    return -math.pow(c_minus / w, inv_alpha)


def sample_stable(params: StableParams, rng: XoshiroStream) -> float:
    """Draw one variate from the symmetric stable(alpha, scale) law."""
    return _draw_stable(law_consts(params), rng)


def sample_pareto_dna(spec: ParetoTailSpec, rng: XoshiroStream) -> float:
    """Draw one variate from the exact-Pareto-tailed law."""
    return _draw_pareto(law_consts(spec), rng)


def sample_law(law: LawChoice, rng: XoshiroStream) -> float:
    if isinstance(law, ZeroLaw):
        return 0.0
    if isinstance(law, StableParams):
        return sample_stable(law, rng)
    return sample_pareto_dna(law, rng)


def sample_many(law: LawChoice, seed: int, n: int):
    """Vectorized sampling for validation suites; uses the fast lane when built.

    Returns a numpy array of n draws from the stream seeded with ``seed``.
    """
    import numpy as np

    from ._kernel import get_kernel_module

    consts = law_consts(law)
    buf = get_kernel_module().sample_law_many(consts, seed, n)
    return np.asarray(buf, dtype=np.float64)


def stable_cf(params: StableParams, t: float) -> float:
    """Characteristic function exp(-scale*|t|^alpha) (real by symmetry)."""
    return math.exp(-params.scale * math.pow(abs(t), params.alpha))


def empirical_cf(samples: Sequence[float] | Iterable[float], t: float) -> float:
    """Real empirical characteristic function: mean of cos(t*x).

    Serves as the independent oracle for the samplers; errors on empty input.
    """
    import numpy as np

    arr = np.asarray(samples, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("empirical_cf needs at least one sample")
    return float(np.mean(np.cos(t * arr)))


def pareto_dna_sf(spec: ParetoTailSpec, x: float) -> float:
    """Exact survival function P(X > x) of the three-piece law."""
    p_plus = spec.c_plus / math.pow(spec.cutoff, spec.alpha)
    p_minus = spec.c_minus / math.pow(spec.cutoff, spec.alpha)
    p_body = 1.0 - (p_plus + p_minus)
    if x >= spec.cutoff:
        return spec.c_plus * math.pow(x, -spec.alpha)
    if x <= -spec.cutoff:
        return 1.0 - spec.c_minus * math.pow(-x, -spec.alpha)
    # inside the uniform body
    return p_plus + p_body * (spec.cutoff - x) / (2.0 * spec.cutoff)
