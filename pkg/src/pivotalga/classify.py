"""Locus classification and schema-dominance statistics.

A locus is declared *non-pivotal* when its final one-frequency x satisfies
0.1 <= x <= 0.9 (boundaries included), and *pivotal* otherwise: under the
GA's sampling dynamics, loci the fitness function actually depends on drift
to fixation while the rest hover near 0.5. The number of fitness queries
this costs is population_size * generations, independent of the genome
length — the classifier reads the whole genome's verdict out of one run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import engine
from .pivotal import Descriptor
from .sga import GAConfig

Array = np.ndarray

NON_PIVOTAL_LOW = 0.1
NON_PIVOTAL_HIGH = 0.9


def one_frequency(pop: Array, locus: int) -> float:
    """Fraction of the population carrying a 1 at ``locus`` (1-based)."""
    if not 1 <= locus <= pop.shape[1]:
        raise ValueError(f"locus {locus} out of range 1..{pop.shape[1]}")
    return int(pop[:, locus - 1].sum(dtype=np.int64)) / pop.shape[0]


def zero_frequency(pop: Array, locus: int) -> float:
    return 1.0 - one_frequency(pop, locus)


def is_non_pivotal(freq: float) -> bool:
    return NON_PIVOTAL_LOW <= freq <= NON_PIVOTAL_HIGH


@dataclass(frozen=True)
class ClassificationResult:
    """Outcome of one classification run.

    ``pivotal_loci`` and ``non_pivotal_loci`` partition 1..span;
    ``frequencies[k-1]`` is the final one-frequency of locus k after
    ``generation_used`` generations; ``queries`` counts fitness evaluations.
    """

    pivotal_loci: frozenset[int]
    non_pivotal_loci: frozenset[int]
    generation_used: int
    frequencies: Array
    queries: int

    def __post_init__(self):
        span = self.frequencies.shape[0]
        if self.pivotal_loci & self.non_pivotal_loci:
            raise ValueError("pivotal and non-pivotal sets overlap")
        if self.pivotal_loci | self.non_pivotal_loci != frozenset(range(1, span + 1)):
            raise ValueError("classification must cover every locus")


def classify_frequencies(freqs: Array, generation: int,
                         queries: int) -> ClassificationResult:
    """Partition loci by the non-pivotal band [0.1, 0.9] (inclusive)."""
    freqs = np.asarray(freqs, dtype=np.float64)
    inside = (freqs >= NON_PIVOTAL_LOW) & (freqs <= NON_PIVOTAL_HIGH)
    loci = np.arange(1, freqs.shape[0] + 1)
    return ClassificationResult(
        pivotal_loci=frozenset(loci[~inside].tolist()),
        non_pivotal_loci=frozenset(loci[inside].tolist()),
        generation_used=generation,
        frequencies=freqs,
        queries=queries,
    )


def classify_loci(descriptor: Descriptor, generations: int, config: GAConfig,
                  seed, backend: str | None = None) -> ClassificationResult:
    """Run the GA for ``generations`` and classify every locus of the span.

    ``config.generations`` is overridden by ``generations`` so the same base
    configuration can drive classifiers of different depths.
    """
    if generations < 1:
        raise ValueError("classification needs at least one generation")
    cfg = GAConfig(generations=generations,
                   population_size=config.population_size,
                   mutation_rate=config.mutation_rate,
                   crossover_prob=config.crossover_prob)
    trace = engine.run(descriptor, cfg, seed, record_stride=generations,
                       backend=backend)
    return classify_frequencies(trace.final_one_frequencies(), generations,
                                trace.queries)


@dataclass(frozen=True)
class SchemaPartition:
    """A set of defining positions (1-based, distinct, ascending)."""

    defining_positions: tuple[int, ...]

    def __post_init__(self):
        pos = tuple(int(k) for k in self.defining_positions)
        object.__setattr__(self, "defining_positions", pos)
        if not pos:
            raise ValueError("a schema partition needs at least one position")
        if any(k < 1 for k in pos):
            raise ValueError("positions are 1-based")
        if len(set(pos)) != len(pos):
            raise ValueError(f"positions {pos} must be distinct")

    @property
    def order(self) -> int:
        return len(self.defining_positions)


def dominant_schema(pop: Array, partition: SchemaPartition) -> tuple[str, float]:
    """Most populous bit-assignment to the partition's positions.

    Returns the schema as a bitstring (ordered like the partition) and its
    population fraction. Ties go to the lexicographically smallest string.
    """
    cols = np.asarray(partition.defining_positions, dtype=np.int64) - 1
    if cols.max() >= pop.shape[1]:
        raise ValueError(f"partition {partition.defining_positions} exceeds "
                         f"genome length {pop.shape[1]}")
    o = partition.order
    # big-endian packing makes integer order match lexicographic string order
    weights = 1 << np.arange(o - 1, -1, -1, dtype=np.int64)
    codes = pop[:, cols].astype(np.int64) @ weights
    counts = np.bincount(codes, minlength=1 << o)
    best = int(np.argmax(counts))  # argmax takes the first (smallest) maximum
    return format(best, f"0{o}b"), counts[best] / pop.shape[0]


def schema_parity(schema: str) -> int:
    """XOR of the schema's bits."""
    return schema.count("1") % 2
