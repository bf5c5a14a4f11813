"""Genetic-algorithm test bench for fitness functions with null marginals.

Modules
-------
pivotal   stochastic fitness functions whose loci have no marginal effects
sga       generational GA operators (sigma scaling, SUS, uniform crossover)
engine    run loop; compiled and numpy engines, bit-identical per seed
classify  one-frequency statistics and locus classification
dmt       combinatorial marginal-scan baseline
harness   replicated experiments, persistence, summaries
verify    randomized self-checks of the exact-marginal calculator
cli       command-line front end (``pivotalga``)
"""

from .classify import ClassificationResult, SchemaPartition, classify_loci, dominant_schema
from .engine import run
from .harness import ExperimentConfig, ExperimentSummary, run_experiment, significance_bound
from .pivotal import (Type1Descriptor, Type2Descriptor, basic_type1,
                      basic_type2, exact_marginal)
from .sga import GAConfig

__version__ = "1.0.0"

__all__ = [
    "ClassificationResult",
    "ExperimentConfig",
    "ExperimentSummary",
    "GAConfig",
    "SchemaPartition",
    "Type1Descriptor",
    "Type2Descriptor",
    "basic_type1",
    "basic_type2",
    "classify_loci",
    "dominant_schema",
    "exact_marginal",
    "run",
    "run_experiment",
    "significance_bound",
]
