import math

import pytest
from hypothesis import given, strategies as st

from dslab.distributions import ConfigurationError
from dslab.lags import (
    FullLag,
    LogPowerLag,
    PowerLag,
    RandomTau1Lag,
    RandomUniformLag,
    check_lag_assumption,
    gamma_n,
    gamma_star,
    lag,
    lag_s_regime,
    s_n,
)
from dslab.rng import XoshiroStream
from dslab.scheme import Composition, RegimeSpec, build_scheme


def sqrt_scheme():
    return build_scheme(RegimeSpec(alpha1=0.8, alpha2=1.6, kind=Composition(1.0)))


def test_deterministic_lags():
    assert lag(FullLag(), 10 ** 6) == 10 ** 6
    assert lag(PowerLag(0.5), 10 ** 4) == 100
    assert lag(LogPowerLag(1.0), 16) == math.ceil(16 / math.log(16 + math.e))
    assert lag(LogPowerLag(5.0), 2) == 1  # floor clamps at 1


def test_random_lag_needs_rng():
    with pytest.raises(ConfigurationError):
        lag(RandomUniformLag(2.0), 10)
    with pytest.raises(ConfigurationError):
        lag(RandomTau1Lag(1.0), 10, rng=XoshiroStream(1))  # missing scheme


def test_random_uniform_lag_moments():
    rng = XoshiroStream(33)
    n = 1000
    draws = [lag(RandomUniformLag(2.0), n, rng=rng) for _ in range(10_000)]
    assert max(draws) <= 2000
    assert min(draws) >= 1
    mean = sum(draws) / len(draws)
    # uniform{1..2000}: mean 1000.5, sd ~ 577
    assert abs(mean - 1000.5) <= 3.0 * 577.4 / math.sqrt(10_000)


def test_random_tau1_lag_range():
    sch = sqrt_scheme()
    rng = XoshiroStream(34)
    n = 10_000
    cap = math.ceil(1.5 * (n ** 0.5))
    draws = [lag(RandomTau1Lag(1.5), n, scheme=sch, rng=rng) for _ in range(5_000)]
    assert 1 <= min(draws) and max(draws) <= cap


def test_s_n_values():
    assert s_n(100, 100) == 0.0
    # PowerLag(0.5) at n = 1e6: log(n/a_n)/loglog n with a_n = 1000
    v = s_n(10 ** 6, 1000)
    assert v == pytest.approx((0.5 * math.log(10 ** 6)) / math.log(math.log(10 ** 6)), rel=1e-12)
    assert s_n(10 ** 8, 10 ** 4) > v  # increases with n for the same rho
    with pytest.raises(ValueError):
        s_n(15, 1)


def test_log_power_lag_s_recovery():
    for s in (0.5, 1.0, 2.0):
        spec = LogPowerLag(s)
        n = 10 ** 6
        assert abs(s_n(n, lag(spec, n)) - s) <= 0.15


def test_gamma_values():
    n = 10 ** 6
    assert gamma_n(n, 1000) == pytest.approx(math.log(1000) + math.log(math.log(n)), rel=1e-12)
    n_e2 = round(math.exp(math.exp(2.0)))
    assert gamma_n(n_e2, n_e2) == pytest.approx(2.0, abs=5e-3)


@given(
    n=st.integers(min_value=16, max_value=10 ** 9),
    frac=st.floats(min_value=1e-6, max_value=1.0),
)
def test_gamma_identity(n, frac):
    a_n = max(1, min(n, int(frac * n)))
    lhs = gamma_n(n, a_n)
    rhs = (1.0 + s_n(n, a_n)) * math.log(math.log(n))
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_gamma_star_values():
    sch = sqrt_scheme()  # tau1 = floor(sqrt(n))
    n = 10 ** 6
    v = gamma_star(n, 10 ** 4, sch)
    assert v == pytest.approx(math.log(1000 / 100) + math.log(math.log(n)), rel=1e-12)
    assert gamma_star(n, n, sch) == pytest.approx(math.log(math.log(n)), rel=1e-12)
    # tau1(a_n) = 0 is an error: tiny lambda keeps tau1 at 0 for small n
    sch2 = build_scheme(RegimeSpec(alpha1=0.5, alpha2=1.5, kind=Composition(0.001)))
    with pytest.raises(ValueError):
        gamma_star(1000, 2, sch2)


def test_gamma_star_lower_bound():
    sch = sqrt_scheme()
    for n, a in ((100, 30), (10 ** 4, 5000), (10 ** 6, 10 ** 6)):
        assert gamma_star(n, a, sch) >= math.log(math.log(n)) - 1e-12


def test_lag_s_regime_classification():
    assert lag_s_regime(FullLag()) == (0.0, "exact")
    assert lag_s_regime(PowerLag(0.5)) == (math.inf, "exact")
    assert lag_s_regime(PowerLag(1.0)) == (0.0, "exact")
    assert lag_s_regime(LogPowerLag(2.0)) == (2.0, "exact")
    assert lag_s_regime(RandomUniformLag(2.0)) == (0.0, "in-probability")
    assert lag_s_regime(RandomTau1Lag(1.0)) == (math.inf, "exact")


def test_check_assumption_full_lag_c2():
    rep = check_lag_assumption(FullLag(), "C2", n_max=10_000)
    assert rep.passed and rep.sup_ratio == 1.0


def test_check_assumption_random_uniform_c2star():
    rep = check_lag_assumption(
        RandomUniformLag(2.0), "C2*", n_max=100_000, replications=100, seed=5
    )
    assert rep.passed
    assert rep.sup_ratio <= 2.0  # ceil(2n) = 2n exactly for integer c


def test_check_assumption_full_lag_c1_fails():
    sch = sqrt_scheme()
    rep = check_lag_assumption(FullLag(), "C1", scheme=sch, n_max=10 ** 6)
    assert not rep.passed
    assert rep.sup_ratio > 100.0  # ~ sqrt(n), scanned to 1e6


def test_check_assumption_tau1_matched_passes():
    sch = sqrt_scheme()
    rep = check_lag_assumption(
        RandomTau1Lag(1.5), "C1*", scheme=sch, n_max=50_000, replications=20, seed=6
    )
    assert rep.passed


def test_check_assumption_kind_mismatch():
    with pytest.raises(ConfigurationError):
        check_lag_assumption(FullLag(), "C2*")
    with pytest.raises(ConfigurationError):
        check_lag_assumption(RandomUniformLag(1.0), "C2")


def test_random_lag_stream_disjoint_from_summands():
    # realized lags depend only on the lag stream, not the summand stream
    from conftest import collapsed_stable_config
    from dslab.engine import run_experiment
    from dslab.lags import RandomUniformLag as RUL

    cfg_a = collapsed_stable_config(lag=RUL(2.0), n_max=2000, summand_seed=1, lag_seed=77)
    cfg_b = collapsed_stable_config(lag=RUL(2.0), n_max=2000, summand_seed=999, lag_seed=77)
    lags_a = [r.a_n for r in run_experiment(cfg_a)]
    lags_b = [r.a_n for r in run_experiment(cfg_b)]
    assert lags_a == lags_b
    s_a = [r.S_n for r in run_experiment(cfg_a)]
    s_b = [r.S_n for r in run_experiment(cfg_b)]
    assert s_a != s_b
