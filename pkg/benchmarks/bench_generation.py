"""Benchmark: compiled kernel vs numpy engine for the generation step.

Usage:
    python3 benchmarks/bench_generation.py [--generations 100] [--repeats 3]

Both engines produce bit-identical populations (asserted here on top of the
test suite), so the only question is speed across genome lengths.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from pivotalga import engine, pivotal as pv, sga


def time_backend(descriptor, config, backend: str, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        engine.run(descriptor, config, seed=7, backend=backend,
                   record_stride=config.generations)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--generations", type=int, default=100)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if not engine.HAVE_COMPILED:
        print("compiled kernel not built; nothing to compare")
        return

    config = sga.GAConfig(generations=args.generations)
    print(f"population 1500, {args.generations} generations, "
          f"best of {args.repeats}")
    print(f"{'span':>6} {'numpy':>10} {'compiled':>10} {'speedup':>8}")
    for span in (4, 20, 100, 1000):
        d = pv.Type1Descriptor(order=3, sigma=1.0, delta=0.18, span=span,
                               loci=(1, 2, 3), values=(1, 1, 1))
        a = engine.run(d, config, seed=7, backend="numpy",
                       record_stride=config.generations)
        b = engine.run(d, config, seed=7, backend="compiled",
                       record_stride=config.generations)
        assert np.array_equal(a.final_population, b.final_population)

        t_np = time_backend(d, config, "numpy", args.repeats)
        t_c = time_backend(d, config, "compiled", args.repeats)
        print(f"{span:>6} {t_np:>9.3f}s {t_c:>9.3f}s {t_np / t_c:>7.2f}x")


if __name__ == "__main__":
    main()
