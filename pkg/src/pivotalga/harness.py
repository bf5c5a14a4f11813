"""Replicated experiments: orchestration, summaries, and persistence.

An experiment is R independent seeded runs of one descriptor/configuration
pair. Replicate seeds derive from ``seed_base`` through a splittable counter
scheme, so replicate i is the same run whether executed alone, in a batch,
or on another worker count, and extending R never perturbs earlier
replicates. Summaries are pure functions of the replicate records, making
shard merges exact.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import engine
from .classify import SchemaPartition, dominant_schema
from .pivotal import Descriptor, descriptor_from_dict
from .sga import GAConfig

Array = np.ndarray

FIXED_LOW, FIXED_HIGH = 0.1, 0.9       # outside this band counts as fixed
INNER_LOW, INNER_HIGH = 0.07, 0.93     # reported alongside, wider reading


@dataclass(frozen=True)
class ExperimentConfig:
    """Descriptor, GA settings, and replication plan for one experiment."""

    descriptor: Descriptor
    ga: GAConfig
    replicates: int
    seed_base: int = 0
    record_stride: int | None = None  # None: 1 for short genomes, else 10

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if self.record_stride is not None and self.record_stride < 1:
            raise ValueError("record_stride must be >= 1")

    def effective_record_stride(self) -> int:
        if self.record_stride is not None:
            return self.record_stride
        return 1 if self.descriptor.span <= 8 else 10


def replicate_seed(seed_base: int, index: int) -> np.random.SeedSequence:
    """Independent, order-stable seed for replicate ``index``."""
    return np.random.SeedSequence(seed_base, spawn_key=(index,))


@dataclass(frozen=True)
class ReplicateRecord:
    """Everything kept from one replicate run."""

    index: int
    generations: Array
    one_frequencies: Array
    final_frequencies: Array
    dominant_schema: str
    dominant_fraction: float
    queries: int


@dataclass(frozen=True)
class ExperimentSummary:
    """Aggregate statistics over all replicates."""

    replicates: int
    generations: int
    span: int
    fixed_counts: list[int]
    inner_band_counts: list[int]
    dominant_fraction_mean: float
    dominant_fraction_se: float | None
    trajectory_quantiles: dict
    total_queries: int
    significance_bound: float


def significance_bound(successes_required: int, per_trial_probability: float) -> float:
    """(1 - a)^n: chance of n straight successes if failures had rate >= a."""
    if not 0.0 < per_trial_probability < 1.0:
        raise ValueError("per-trial probability must be in (0, 1)")
    if successes_required < 1:
        raise ValueError("successes_required must be >= 1")
    return (1.0 - per_trial_probability) ** successes_required


def _run_replicate(config: ExperimentConfig, index: int,
                   backend: str | None) -> ReplicateRecord:
    trace = engine.run(config.descriptor, config.ga,
                       replicate_seed(config.seed_base, index),
                       record_stride=config.effective_record_stride(),
                       backend=backend)
    partition = SchemaPartition(config.descriptor.loci)
    schema, fraction = dominant_schema(trace.final_population, partition)
    return ReplicateRecord(
        index=index,
        generations=trace.generations,
        one_frequencies=trace.one_frequencies,
        final_frequencies=trace.final_one_frequencies(),
        dominant_schema=schema,
        dominant_fraction=fraction,
        queries=trace.queries,
    )


def _replicate_job(args):
    return _run_replicate(*args)


def run_replicates(config: ExperimentConfig, threads: int = 1,
                   backend: str | None = None) -> list[ReplicateRecord]:
    """Execute all replicates; results are ordered by replicate index."""
    jobs = [(config, i, backend) for i in range(config.replicates)]
    if threads <= 1:
        return [_replicate_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_replicate_job, jobs))


def summarize(config: ExperimentConfig,
              records: list[ReplicateRecord]) -> ExperimentSummary:
    """Aggregate replicate records; pure and order-independent."""
    records = sorted(records, key=lambda r: r.index)
    finals = np.vstack([r.final_frequencies for r in records])
    fixed = (finals < FIXED_LOW) | (finals > FIXED_HIGH)
    inner = (finals >= INNER_LOW) & (finals <= INNER_HIGH)
    fractions = np.array([r.dominant_fraction for r in records])
    n = len(records)
    se = float(fractions.std(ddof=1) / np.sqrt(n)) if n > 1 else None

    stack = np.stack([r.one_frequencies for r in records])  # (R, T, span)
    quantiles = {
        "generations": records[0].generations.tolist(),
        "q10": np.quantile(stack, 0.10, axis=0).tolist(),
        "q50": np.quantile(stack, 0.50, axis=0).tolist(),
        "q90": np.quantile(stack, 0.90, axis=0).tolist(),
    }
    return ExperimentSummary(
        replicates=n,
        generations=int(config.ga.generations),
        span=config.descriptor.span,
        fixed_counts=fixed.sum(axis=0).tolist(),
        inner_band_counts=inner.sum(axis=0).tolist(),
        dominant_fraction_mean=float(fractions.mean()),
        dominant_fraction_se=se,
        trajectory_quantiles=quantiles,
        total_queries=int(sum(r.queries for r in records)),
        significance_bound=significance_bound(n, 0.005),
    )


def run_experiment(config: ExperimentConfig, threads: int = 1,
                   backend: str | None = None,
                   ) -> tuple[ExperimentSummary, list[ReplicateRecord]]:
    records = run_replicates(config, threads=threads, backend=backend)
    return summarize(config, records), records


# ---------------------------------------------------------------------------
# persistence

TRACE_HEADER = "run,generation,locus,one_frequency"


def export_traces(records, path) -> None:
    """Write trajectories as delimited text, one row per (run, gen, locus).

    Frequencies are the exact rationals count/N rendered to 6 decimals.
    """
    records = list(records)
    if not records:
        raise ValueError("no traces to export")
    with open(path, "w") as fh:
        fh.write(TRACE_HEADER + "\n")
        for i, rec in enumerate(records):
            run_id = getattr(rec, "index", i)
            for g, row in zip(rec.generations, rec.one_frequencies):
                for locus, freq in enumerate(row, start=1):
                    fh.write(f"{run_id},{g},{locus},{freq:.6f}\n")


@dataclass(frozen=True)
class LoadedTrace:
    """One run's trajectory as re-read from a trace file."""

    index: int
    generations: Array
    one_frequencies: Array


def load_traces(path) -> list[LoadedTrace]:
    """Parse a trace file back into per-run trajectories.

    Errors mention the offending row number. Values are the file's printed
    values, so export -> load -> export reproduces the bytes exactly.
    """
    runs: dict[int, dict[int, dict[int, float]]] = {}
    with open(path) as fh:
        header = fh.readline().rstrip("\n")
        if header != TRACE_HEADER:
            raise ValueError(f"{path}:1: expected header {TRACE_HEADER!r}, "
                             f"got {header!r}")
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 4:
                raise ValueError(f"{path}:{lineno}: expected 4 fields, "
                                 f"got {len(parts)}")
            try:
                run_id, gen, locus = int(parts[0]), int(parts[1]), int(parts[2])
                freq = float(parts[3])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            runs.setdefault(run_id, {}).setdefault(gen, {})[locus] = freq

    out = []
    for run_id in sorted(runs):
        gens = sorted(runs[run_id])
        span = max(max(g.keys()) for g in runs[run_id].values())
        freqs = np.full((len(gens), span), np.nan)
        for gi, g in enumerate(gens):
            for locus, val in runs[run_id][g].items():
                freqs[gi, locus - 1] = val
        out.append(LoadedTrace(index=run_id,
                               generations=np.asarray(gens, dtype=np.int64),
                               one_frequencies=freqs))
    return out


def write_summary(summary: ExperimentSummary, path) -> None:
    with open(path, "w") as fh:
        json.dump(asdict(summary), fh, indent=2)
        fh.write("\n")


def load_summary(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# configuration files

def _build_ga_config(section: dict) -> GAConfig:
    known = {"population_size", "mutation_rate", "crossover_probability",
             "generations"}
    unknown = set(section) - known
    if unknown:
        raise ValueError(f"unrecognized ga fields: {sorted(unknown)}")
    if "generations" not in section:
        raise ValueError("ga section needs 'generations'")
    return GAConfig(
        generations=int(section["generations"]),
        population_size=int(section.get("population_size", 1500)),
        mutation_rate=float(section.get("mutation_rate", 0.003)),
        crossover_prob=float(section.get("crossover_probability", 1.0)),
    )


def load_config(path) -> ExperimentConfig:
    """Read the sectioned config format: function, ga, experiment."""
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    for section in ("function", "ga"):
        if section not in data:
            raise ValueError(f"{path}: missing [{section}] section")
    descriptor = descriptor_from_dict(data["function"])
    ga = _build_ga_config(data["ga"])
    exp = data.get("experiment", {})
    stride = exp.get("record_stride")
    return ExperimentConfig(
        descriptor=descriptor,
        ga=ga,
        replicates=int(exp.get("replicates", 1)),
        seed_base=int(exp.get("seed_base", 0)),
        record_stride=None if stride is None else int(stride),
    )
