"""Shared fixtures: small experiment configs and the naive window oracle."""

from __future__ import annotations

import pytest

from dslab import _kernel_py
from dslab.distributions import StableParams, ZeroLaw, law_consts
from dslab.engine import ExperimentConfig, checkpoint_grid
from dslab.lags import FullLag, lag
from dslab.rng import DOMAIN_LAG, DOMAIN_SUMMAND, XoshiroStream, derive_stream_seed
from dslab.scheme import RegimeSpec, StableAlpha2, build_scheme


def collapsed_stable_config(**overrides) -> ExperimentConfig:
    """Single-law configuration: both laws stable(0.7), so every draw has
    the same distribution regardless of the scheme labels."""
    base = dict(
        law1=StableParams(alpha=0.7, scale=1.0),
        law2=StableParams(alpha=0.7, scale=1.0),
        regime=RegimeSpec(alpha1=0.7, alpha2=0.7, kind=StableAlpha2(mu=0.5)),
        lag=FullLag(),
        n_max=10_000,
        summand_seed=1234,
        lag_seed=5678,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def zero_config(**overrides) -> ExperimentConfig:
    base = dict(
        law1=ZeroLaw(alpha=0.8),
        law2=ZeroLaw(alpha=1.6),
        regime=RegimeSpec(alpha1=0.8, alpha2=1.6, kind=StableAlpha2(mu=0.6)),
        lag=FullLag(),
        n_max=20,
        summand_seed=1,
        lag_seed=2,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def naive_windows(config: ExperimentConfig, rep: int = 0):
    """Independent recomputation of (n, S_n, U, V, tau1, T) per checkpoint.

    Stores the full prefix-sum array instead of using a pending queue:
    realize every lag first (checkpoint order, same lag stream), then one
    pass with the pure-Python kernel storing S after every index, then read
    the windows out of the array.  Same accumulation order as the engine,
    so agreement must be bitwise.
    """
    scheme = build_scheme(config.regime)
    grid = checkpoint_grid(config.checkpoint_ratio, config.n_max)
    lag_rng = XoshiroStream(derive_stream_seed(config.lag_seed, rep, DOMAIN_LAG))
    lags = {n: lag(config.lag, n, scheme, lag_rng) for n in grid}
    n_end = max(n + a for n, a in lags.items())

    kern = _kernel_py.StreamKernel(
        law_consts(config.law1),
        law_consts(config.law2),
        (scheme.g_c, scheme.g_p, scheme.g_m),
        derive_stream_seed(config.summand_seed, rep, DOMAIN_SUMMAND),
    )
    prefix = [0.0] * (n_end + 1)
    uvals = [0.0] * (n_end + 1)
    vvals = [0.0] * (n_end + 1)
    taus = [0] * (n_end + 1)
    for k in range(1, n_end + 1):
        assert kern.advance(k) == -1
        prefix[k] = kern.s_value()
        uvals[k] = kern.u_value()
        vvals[k] = kern.v_value()
        taus[k] = kern.tau1
    return [
        {
            "n": n,
            "S_n": prefix[n],
            "U": uvals[n],
            "V": vvals[n],
            "tau1": taus[n],
            "a_n": lags[n],
            "T": prefix[n + lags[n]] - prefix[n],
        }
        for n in grid
    ]


@pytest.fixture
def small_config():
    return collapsed_stable_config()
