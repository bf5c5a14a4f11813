"""Run loop and engine selection.

Two interchangeable engines advance the population: the numpy one in
:mod:`pivotalga.sga` and a compiled kernel built at install time. Both
consume the random stream identically, so for a given seed they produce
bit-for-bit identical runs; which one executes is a question of speed only.
"""

from __future__ import annotations

import numpy as np

from . import sga
from .pivotal import Descriptor
from .sga import GAConfig, RunTrace

try:
    from . import _kernel
except ImportError:  # built without a compiler; numpy engine only
    _kernel = None

HAVE_COMPILED = _kernel is not None
DEFAULT_BACKEND = "compiled" if HAVE_COMPILED else "numpy"


def _compiled_step(pop, descriptor, config, rng):
    if descriptor.kind == 1:
        values = np.asarray(descriptor.values, dtype=np.uint8)
    else:
        values = np.zeros(descriptor.order, dtype=np.uint8)
    return _kernel.step_generation(
        pop,
        descriptor.kind,
        np.asarray(descriptor.loci, dtype=np.int64) - 1,
        values,
        descriptor.sigma,
        descriptor.on_mean(),
        descriptor.off_mean(),
        config.crossover_prob,
        config.mutation_rate,
        rng.bit_generator,
    )


def resolve_backend(name: str | None = None):
    """Return the generation-step callable for ``name`` (or the default)."""
    name = name or DEFAULT_BACKEND
    if name == "numpy":
        return sga.step_generation
    if name == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled kernel is not available in this install")
        return _compiled_step
    raise ValueError(f"unknown backend {name!r} (use 'numpy' or 'compiled')")


def one_frequencies(pop: np.ndarray) -> np.ndarray:
    """Fraction of 1-bits per locus; exact (integer count over size)."""
    return pop.sum(axis=0, dtype=np.int64) / pop.shape[0]


Seed = int | np.random.SeedSequence


def run(descriptor: Descriptor, config: GAConfig, seed: Seed,
        record_stride: int = 1, backend: str | None = None) -> RunTrace:
    """Execute one GA run and record its one-frequency history.

    The trace always contains generation 0 (the unevaluated initial
    population) and the final generation; between them, every
    ``record_stride``-th generation. Identical arguments give an identical
    trace regardless of engine.
    """
    if record_stride < 1:
        raise ValueError("record_stride must be >= 1")
    step = resolve_backend(backend)
    rng = np.random.default_rng(seed)

    pop = sga.initial_population(config.population_size, descriptor.span, rng)
    gens = [0]
    freqs = [one_frequencies(pop)]
    for t in range(1, config.generations + 1):
        pop = step(pop, descriptor, config, rng)
        if t % record_stride == 0 or t == config.generations:
            gens.append(t)
            freqs.append(one_frequencies(pop))

    return RunTrace(
        generations=np.asarray(gens, dtype=np.int64),
        one_frequencies=np.vstack(freqs),
        queries=config.population_size * config.generations,
        final_population=pop,
    )
