"""Generational genetic algorithm: sigma scaling, SUS, uniform crossover.

The population is a ``(population_size, span)`` uint8 matrix of bits. One
generation consists of

1. evaluating every member once (one normal draw per member),
2. sigma-scaling the fitnesses into non-negative weights,
3. stochastic universal sampling of ``population_size`` parents,
4. shuffling the parents and pairing adjacent ones,
5. per-pair uniform crossover (probability ``crossover_prob``),
6. independent per-bit mutation.

Replacement is total: children overwrite the old population, with no
elitism. Runs are deterministic functions of the seed, and the random
stream is consumed in a fixed order and quantity per generation (noise
draws and crossover masks are drawn even when unused), so the compiled
engine in :mod:`pivotalga._kernel` can reproduce a run bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pivotal import Descriptor, conditional_means

Array = np.ndarray
RNG = np.random.Generator


@dataclass(frozen=True)
class GAConfig:
    """Run-length and operator rates for the generational GA."""

    generations: int
    population_size: int = 1500
    mutation_rate: float = 0.003
    crossover_prob: float = 1.0

    def __post_init__(self):
        if self.generations < 0:
            raise ValueError("generations must be >= 0")
        if self.population_size < 2 or self.population_size % 2:
            raise ValueError("population_size must be even and >= 2")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must be in [0, 1]")
        if not 0.0 <= self.crossover_prob <= 1.0:
            raise ValueError("crossover_prob must be in [0, 1]")


@dataclass(frozen=True)
class RunTrace:
    """Recorded statistics of a single run.

    ``one_frequencies[i, k]`` is the fraction of the population carrying a 1
    at locus ``k+1`` when generation ``generations[i]`` was the current
    population. Row 0 is always the initial population and the last row the
    final one. ``queries`` counts fitness evaluations: the final population
    is never evaluated, so a run of ``t`` generations costs exactly
    ``population_size * t`` queries.
    """

    generations: Array
    one_frequencies: Array
    queries: int
    final_population: Array

    @property
    def span(self) -> int:
        return self.one_frequencies.shape[1]

    def final_one_frequencies(self) -> Array:
        return self.one_frequencies[-1]


def initial_population(size: int, span: int, rng: RNG) -> Array:
    """Fair-coin initial population; consumes size*span uniforms."""
    return (rng.random((size, span)) < 0.5).astype(np.uint8)


def _seq_sum(x: Array) -> float:
    # in-order accumulation, so results match a plain C loop exactly
    return float(np.cumsum(x)[-1]) if x.size else 0.0


def sigma_scale(fitness: Array) -> Array:
    """Map raw fitnesses to non-negative selection weights.

    ``w = max(0, 1 + (f - mean) / std)`` with the population standard
    deviation; a zero-variance population gets all-ones weights.
    """
    f = np.asarray(fitness, dtype=np.float64)
    n = f.size
    if n == 0:
        raise ValueError("cannot scale an empty fitness sample")
    mean = _seq_sum(f) / n
    d = f - mean
    std = np.sqrt(_seq_sum(d * d) / n)
    if std == 0.0:
        return np.ones(n)
    w = np.maximum(0.0, 1.0 + d / std)
    # with exact arithmetic someone is always at or above the mean; if
    # rounding of a near-degenerate sample clamped everyone, fall back to
    # the zero-variance behaviour instead of handing selection dead weights
    if not w.max() > 0.0:
        return np.ones(n)
    return w


def sus_select(weights: Array, count: int, rng: RNG) -> Array:
    """Stochastic universal sampling: ``count`` indices from one spin.

    Consumes a single uniform. Each index i is drawn floor or ceil of
    ``count * w_i / sum(w)`` times, never anything else.
    """
    w = np.asarray(weights, dtype=np.float64)
    cum = np.cumsum(w)
    total = cum[-1]
    if not total > 0.0:
        raise ValueError("selection weights must have positive total")
    spin = rng.random()
    points = (spin + np.arange(count)) * (total / count)
    idx = np.searchsorted(cum, points, side="right")
    return np.minimum(idx, w.size - 1)


def shuffle_order(size: int, rng: RNG) -> Array:
    """Random permutation via sort keys; consumes ``size`` uniforms."""
    keys = rng.random(size)
    return np.argsort(keys, kind="stable")


def uniform_crossover(x: Array, y: Array, rng: RNG) -> tuple[Array, Array]:
    """Cross two genomes under a fresh i.i.d. fair-coin mask.

    Where the mask is 1, child 1 inherits from ``x`` and child 2 from ``y``;
    where it is 0, the origins swap. Children are complementary with respect
    to parental origin, so per-locus bit pools are conserved.
    """
    x = np.asarray(x, dtype=np.uint8)
    y = np.asarray(y, dtype=np.uint8)
    if x.shape != y.shape:
        raise ValueError("parents must have the same length")
    mask = rng.random(x.shape) < 0.5
    return np.where(mask, x, y), np.where(mask, y, x)


def crossover_pairs(parents: Array, crossover_prob: float, rng: RNG) -> Array:
    """Uniform crossover of adjacent rows (0,1), (2,3), ...

    Consumes ``n_pairs * (1 + span)`` uniforms: one crossover decision and a
    full mask per pair, the mask drawn whether or not the pair crosses. A
    mask uniform below 0.5 routes the first parent's bit to the first child.
    """
    n, span = parents.shape
    npairs = n // 2
    block = rng.random((npairs, 1 + span))
    cross = block[:, 0] < crossover_prob
    take_first = block[:, 1:] < 0.5
    a, b = parents[0::2], parents[1::2]
    c1 = np.where(take_first, a, b)
    c2 = np.where(take_first, b, a)
    c1[~cross] = a[~cross]
    c2[~cross] = b[~cross]
    children = np.empty_like(parents)
    children[0::2] = c1
    children[1::2] = c2
    return children


def mutate(pop: Array, rate: float, rng: RNG) -> Array:
    """Independent per-bit flips; consumes ``pop.size`` uniforms (row-major)."""
    flips = rng.random(pop.shape) < rate
    return np.bitwise_xor(pop, flips.astype(np.uint8))


def step_generation(pop: Array, descriptor: Descriptor, config: GAConfig,
                    rng: RNG) -> Array:
    """Advance the population one generation (numpy engine)."""
    noise = rng.standard_normal(pop.shape[0])
    fitness = conditional_means(descriptor, pop) + descriptor.sigma * noise
    weights = sigma_scale(fitness)
    selected = pop[sus_select(weights, pop.shape[0], rng)]
    paired = selected[shuffle_order(pop.shape[0], rng)]
    children = crossover_pairs(paired, config.crossover_prob, rng)
    return mutate(children, config.mutation_rate, rng)
