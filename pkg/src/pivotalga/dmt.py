"""Differentiated-marginal-testing baseline: the brute-force alternative.

To find which loci a black-box fitness function depends on, this scan
estimates the marginal of every m-locus combination by sampling and flags
the combinations whose marginal is differentiated (some cell mean
significantly away from zero). Its query cost is C(span, m) * 2^m *
samples_per_cell — polynomial of degree m in the span — which is the cost
the GA-based classifier undercuts with its span-independent budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .pivotal import Descriptor, MarginalTable, query_batch

Array = np.ndarray
RNG = np.random.Generator


def count_combinations(span: int, m: int) -> int:
    """Exact C(span, m), with the (span/m)^m lower bound asserted."""
    if m < 1 or m > span:
        raise ValueError(f"need 1 <= m <= span, got m={m}, span={span}")
    n = math.comb(span, m)
    # (span/m)^m <= C(span, m), checked in exact integer arithmetic
    assert span ** m <= n * m ** m
    return n


@dataclass(frozen=True)
class DmtScanReport:
    """Outcome of a full order-m scan."""

    order_scanned: int
    combos_tested: int
    detected_combos: frozenset[tuple[int, ...]]
    queries_used: int
    threshold: float

    def format(self) -> str:
        lines = [
            f"order_scanned: {self.order_scanned}",
            f"combos_tested: {self.combos_tested}",
            f"queries_used: {self.queries_used}",
            f"threshold: {self.threshold}",
            f"detected_count: {len(self.detected_combos)}",
        ]
        for combo in sorted(self.detected_combos):
            lines.append("detected: " + ",".join(map(str, combo)))
        return "\n".join(lines) + "\n"


def sampled_marginal(descriptor: Descriptor, combo: tuple[int, ...],
                     samples_per_cell: int, rng: RNG) -> MarginalTable:
    """Monte-Carlo estimate of a combination's marginal, with standard errors.

    For each bit-assignment of ``combo`` (lexicographic order), draws
    ``samples_per_cell`` genomes uniform on all other loci, pins the combo
    bits, and queries the function once per genome. Costs exactly
    ``2**len(combo) * samples_per_cell`` queries.
    """
    if samples_per_cell < 2:
        raise ValueError("samples_per_cell must be >= 2 to estimate errors")
    combo = tuple(int(k) for k in combo)
    cols = np.asarray(combo, dtype=np.int64) - 1
    if len(set(combo)) != len(combo) or not combo:
        raise ValueError(f"combo {combo} must be non-empty and distinct")
    if cols.min() < 0 or cols.max() >= descriptor.span:
        raise ValueError(f"combo {combo} outside 1..{descriptor.span}")

    entries: dict[str, float] = {}
    errors: dict[str, float] = {}
    for bits in product((0, 1), repeat=len(combo)):
        genomes = (rng.random((samples_per_cell, descriptor.span)) < 0.5)
        genomes = genomes.astype(np.uint8)
        genomes[:, cols] = np.asarray(bits, dtype=np.uint8)
        values = query_batch(descriptor, genomes, rng)
        key = "".join(map(str, bits))
        entries[key] = float(values.mean())
        errors[key] = float(values.std(ddof=1) / np.sqrt(samples_per_cell))
    return MarginalTable(combo=combo, entries=entries, errors=errors)


def is_differentiated(table: MarginalTable, z_threshold: float) -> bool:
    """True when any cell mean sits more than ``z_threshold`` errors from 0.

    A cell whose samples were all identical has zero standard error; it
    counts as differentiated exactly when its mean is nonzero (infinite z).
    """
    if table.errors is None:
        return any(v != 0.0 for v in table.entries.values())
    for key, mean in table.entries.items():
        se = table.errors[key]
        if se == 0.0:
            if mean != 0.0:
                return True
        elif abs(mean) > z_threshold * se:
            return True
    return False


def dmt_scan(descriptor: Descriptor, m: int, samples_per_cell: int,
             z_threshold: float, rng: RNG) -> DmtScanReport:
    """Test every m-combination of loci for a differentiated marginal.

    Combinations are visited in lexicographic order, each paying its full
    sampling cost (no early exit), so ``queries_used`` is exactly the
    complexity-argument figure C(span, m) * 2^m * samples_per_cell.
    """
    span = descriptor.span
    total = count_combinations(span, m)
    detected = []
    for combo in combinations(range(1, span + 1), m):
        table = sampled_marginal(descriptor, combo, samples_per_cell, rng)
        if is_differentiated(table, z_threshold):
            detected.append(combo)
    return DmtScanReport(
        order_scanned=m,
        combos_tested=total,
        detected_combos=frozenset(detected),
        queries_used=total * 2 ** m * samples_per_cell,
        threshold=z_threshold,
    )
