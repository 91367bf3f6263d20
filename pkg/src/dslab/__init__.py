"""dslab: a Monte Carlo laboratory for delayed heavy-tailed random sums.

Builds two-law mixed sequences in domains of normal attraction of stable
laws, runs single-pass streaming experiments over deterministic or random
lag windows, and evaluates every closed-form quantity of the associated
Chover-type iterated-logarithm limit theory.
"""

__version__ = "0.1.0"

from ._kernel import active_lane
from .distributions import (
    LawChoice,
    ParetoTailSpec,
    StableParams,
    ZeroLaw,
    empirical_cf,
    sample_pareto_dna,
    sample_stable,
    stable_cf,
)
from .engine import CheckpointRecord, ExperimentConfig, replicate, run_experiment
from .lags import FullLag, LogPowerLag, PowerLag, RandomTau1Lag, RandomUniformLag
from .lil_stats import chover_stat, normalizer, predicted_limit, regime_limit
from .scheme import (
    Composition,
    RegimeSpec,
    StableAlpha1,
    StableAlpha2,
    build_scheme,
    indicator,
    regime_ratio,
    tau,
)

__all__ = [
    "__version__",
    "active_lane",
    "LawChoice",
    "ParetoTailSpec",
    "StableParams",
    "ZeroLaw",
    "empirical_cf",
    "sample_pareto_dna",
    "sample_stable",
    "stable_cf",
    "CheckpointRecord",
    "ExperimentConfig",
    "replicate",
    "run_experiment",
    "FullLag",
    "LogPowerLag",
    "PowerLag",
    "RandomTau1Lag",
    "RandomUniformLag",
    "chover_stat",
    "normalizer",
    "predicted_limit",
    "regime_limit",
    "Composition",
    "RegimeSpec",
    "StableAlpha1",
    "StableAlpha2",
    "build_scheme",
    "indicator",
    "regime_ratio",
    "tau",
]
