"""Randomized self-checks of the exact-marginal calculator.

Draws randomized descriptors and asserts the structural facts the design
rests on: no single locus has a main effect, no sub-order combination of a
parity function has a differentiated marginal, and the full pivotal-block
tables show exactly the two-level pattern (target/complement up, everything
else down) or the parity pattern. Descriptors short enough for full domain
enumeration are additionally cross-checked against a brute-force oracle.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .pivotal import (Descriptor, Type1Descriptor, Type2Descriptor,
                      conditional_means, exact_marginal)

RNG = np.random.Generator

TOLERANCE = 1e-12
ENUMERABLE_SPAN = 16


def random_type1(rng: RNG, max_span: int = 30) -> Type1Descriptor:
    order = int(rng.integers(2, 7))
    span = int(rng.integers(order + 1, max_span + 1))
    loci = tuple(sorted(int(k) for k in
                        rng.choice(span, size=order, replace=False) + 1))
    values = tuple(int(v) for v in rng.integers(0, 2, size=order))
    delta = float(rng.uniform(0.05, 0.5))
    return Type1Descriptor(order=order, sigma=1.0, delta=delta, span=span,
                           loci=loci, values=values)


def random_type2(rng: RNG, max_span: int = 30) -> Type2Descriptor:
    order = int(rng.choice([2, 4, 6]))
    span = int(rng.integers(order + 1, max_span + 1))
    loci = tuple(sorted(int(k) for k in
                        rng.choice(span, size=order, replace=False) + 1))
    delta = float(rng.uniform(0.05, 0.5))
    return Type2Descriptor(order=order, sigma=1.0, delta=delta, span=span,
                           loci=loci)


def brute_force_marginal(d: Descriptor, combo: tuple[int, ...]) -> dict[str, float]:
    """Enumerate the whole domain; only sensible for short spans."""
    span = d.span
    codes = np.arange(1 << span, dtype=np.int64)
    genomes = ((codes[:, None] >> np.arange(span - 1, -1, -1)) & 1)
    means = conditional_means(d, genomes.astype(np.uint8))
    cols = np.asarray(combo, dtype=np.int64) - 1
    cell_codes = genomes[:, cols] @ (1 << np.arange(len(combo) - 1, -1, -1))
    out = {}
    for cell in range(1 << len(combo)):
        out[format(cell, f"0{len(combo)}b")] = float(means[cell_codes == cell].mean())
    return out


def _check_type1(d: Type1Descriptor, rng: RNG) -> list[str]:
    failures = []
    for k in range(1, d.span + 1):
        table = exact_marginal(d, (k,))
        if any(abs(v) > TOLERANCE for v in table.entries.values()):
            failures.append(f"{d}: single-locus marginal of {k} not null")
    target = "".join(map(str, d.values))
    complement = "".join(str(1 - v) for v in d.values)
    table = exact_marginal(d, d.loci)
    for key, got in table.entries.items():
        want = d.delta if key in (target, complement) else d.off_mean()
        if abs(got - want) > TOLERANCE:
            failures.append(f"{d}: pivotal cell {key} = {got}, wanted {want}")
    failures += _check_enumerable(d, rng)
    return failures


def _check_type2(d: Type2Descriptor, rng: RNG) -> list[str]:
    failures = []
    for k in range(1, d.span + 1):
        table = exact_marginal(d, (k,))
        if any(abs(v) > TOLERANCE for v in table.entries.values()):
            failures.append(f"{d}: single-locus marginal of {k} not null")
    # every proper subset of the pivotal loci is balanced ...
    for size in range(1, d.order):
        for combo in combinations(d.loci, size):
            table = exact_marginal(d, combo)
            if any(abs(v) > TOLERANCE for v in table.entries.values()):
                failures.append(f"{d}: sub-order combo {combo} not null")
    # ... and so is any random combination that misses a pivotal locus
    for _ in range(10):
        size = int(rng.integers(1, d.order + 1))
        combo = tuple(sorted(int(k) for k in
                             rng.choice(d.span, size=size, replace=False) + 1))
        if set(combo) >= set(d.loci):
            continue
        table = exact_marginal(d, combo)
        if any(abs(v) > TOLERANCE for v in table.entries.values()):
            failures.append(f"{d}: combo {combo} not null")
    table = exact_marginal(d, d.loci)
    for key, got in table.entries.items():
        want = d.delta if key.count("1") % 2 else -d.delta
        if abs(got - want) > TOLERANCE:
            failures.append(f"{d}: parity cell {key} = {got}, wanted {want}")
    failures += _check_enumerable(d, rng)
    return failures


def _check_enumerable(d: Descriptor, rng: RNG) -> list[str]:
    if d.span > ENUMERABLE_SPAN:
        return []
    failures = []
    probes = [d.loci[:1], d.loci]
    for _ in range(2):
        size = int(rng.integers(1, min(5, d.span) + 1))
        probes.append(tuple(sorted(int(k) for k in
                                   rng.choice(d.span, size=size,
                                              replace=False) + 1)))
    for combo in probes:
        want = brute_force_marginal(d, combo)
        got = exact_marginal(d, combo).entries
        for key in want:
            if abs(got[key] - want[key]) > TOLERANCE:
                failures.append(f"{d}: combo {combo} cell {key} disagrees "
                                f"with enumeration")
    return failures


def run_suite(seed: int = 0, type1_count: int = 50,
              type2_count: int = 50) -> tuple[int, list[str]]:
    """Check randomized descriptors; returns (descriptors checked, failures)."""
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(type1_count):
        failures += _check_type1(random_type1(rng), rng)
    for _ in range(type2_count):
        failures += _check_type2(random_type2(rng), rng)
    return type1_count + type2_count, failures
