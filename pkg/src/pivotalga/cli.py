"""Command-line front end.

Subcommands:
  run         one seeded GA run, trajectory written as CSV
  experiment  replicated runs with trace and summary files
  classify    locus classification from one run
  dmt         marginal-scan baseline over m-locus combinations
  verify      randomized exact-marginal self-checks
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import classify as classify_mod
from . import dmt as dmt_mod
from . import engine, harness, verify


def _add_common(sub, config_required=True):
    sub.add_argument("--config", required=config_required,
                     help="path to the experiment config file")
    sub.add_argument("--seed", type=int, default=None,
                     help="seed override (defaults to the config's seed_base)")
    sub.add_argument("--backend", choices=["numpy", "compiled"], default=None,
                     help="engine selection (default: compiled if built)")


def _seed_for(args, cfg):
    return args.seed if args.seed is not None else cfg.seed_base


def cmd_run(args) -> int:
    cfg = harness.load_config(args.config)
    trace = engine.run(cfg.descriptor, cfg.ga, _seed_for(args, cfg),
                       record_stride=cfg.effective_record_stride(),
                       backend=args.backend)
    harness.export_traces([trace], args.out)
    final = trace.final_one_frequencies()
    print(f"run complete: {cfg.ga.generations} generations, "
          f"{trace.queries} queries")
    shown = " ".join(f"{x:.4f}" for x in final[:40])
    if final.shape[0] > 40:
        shown += " ..."
    print("final one-frequencies: " + shown)
    print(f"trace written to {args.out}")
    return 0


def cmd_experiment(args) -> int:
    cfg = harness.load_config(args.config)
    if args.replicates is not None:
        cfg = harness.ExperimentConfig(
            descriptor=cfg.descriptor, ga=cfg.ga,
            replicates=args.replicates, seed_base=cfg.seed_base,
            record_stride=cfg.record_stride)
    if args.seed is not None:
        cfg = harness.ExperimentConfig(
            descriptor=cfg.descriptor, ga=cfg.ga,
            replicates=cfg.replicates, seed_base=args.seed,
            record_stride=cfg.record_stride)
    summary, records = harness.run_experiment(cfg, threads=args.threads,
                                              backend=args.backend)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    harness.export_traces(records, out / "traces.csv")
    harness.write_summary(summary, out / "summary.json")
    print(f"{summary.replicates} replicates, {summary.total_queries} queries")
    print(f"fixed counts (outside [0.1,0.9]): {summary.fixed_counts}")
    print(f"dominant fraction: {summary.dominant_fraction_mean:.4f}"
          + (f" (se {summary.dominant_fraction_se:.2e})"
             if summary.dominant_fraction_se is not None else ""))
    print(f"results written to {out}")
    return 0


def cmd_classify(args) -> int:
    cfg = harness.load_config(args.config)
    generations = args.generations or cfg.ga.generations
    result = classify_mod.classify_loci(cfg.descriptor, generations, cfg.ga,
                                        _seed_for(args, cfg),
                                        backend=args.backend)
    pivotal = sorted(result.pivotal_loci)
    non_pivotal = sorted(result.non_pivotal_loci)
    print(f"generations: {result.generation_used}")
    print(f"queries: {result.queries}")
    print(f"pivotal loci: {pivotal}")
    print(f"non-pivotal loci: {non_pivotal}")
    if args.out:
        payload = {
            "pivotal_loci": pivotal,
            "non_pivotal_loci": non_pivotal,
            "generation_used": result.generation_used,
            "queries": result.queries,
            "frequencies": [round(float(x), 6) for x in result.frequencies],
        }
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        print(f"result written to {args.out}")
    return 0


def cmd_dmt(args) -> int:
    cfg = harness.load_config(args.config)
    rng = np.random.default_rng(_seed_for(args, cfg))
    report = dmt_mod.dmt_scan(cfg.descriptor, args.order, args.samples,
                              args.threshold, rng)
    text = report.format()
    print(text, end="")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"report written to {args.out}")
    return 0


def cmd_verify(args) -> int:
    count, failures = verify.run_suite(seed=args.seed or 0,
                                       type1_count=args.count,
                                       type2_count=args.count)
    for failure in failures:
        print(f"FAIL: {failure}")
    status = "FAIL" if failures else "PASS"
    print(f"{status}: {count} randomized descriptors, "
          f"{len(failures)} failures")
    return 1 if failures else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pivotalga",
        description="GA test bench for fitness functions with null marginals")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="single seeded run")
    _add_common(p_run)
    p_run.add_argument("--out", default="trace.csv",
                       help="trace CSV destination")
    p_run.set_defaults(func=cmd_run)

    p_exp = sub.add_parser("experiment", help="replicated runs + summary")
    _add_common(p_exp)
    p_exp.add_argument("--replicates", type=int, default=None,
                       help="override the config's replicate count")
    p_exp.add_argument("--threads", type=int, default=1,
                       help="worker processes (replicates are independent)")
    p_exp.add_argument("--out", default="results",
                       help="output directory for traces.csv / summary.json")
    p_exp.set_defaults(func=cmd_experiment)

    p_cls = sub.add_parser("classify", help="classify loci from one run")
    _add_common(p_cls)
    p_cls.add_argument("--generations", type=int, default=None,
                       help="override the config's generation count")
    p_cls.add_argument("--out", default=None, help="optional JSON result path")
    p_cls.set_defaults(func=cmd_classify)

    p_dmt = sub.add_parser("dmt", help="marginal-scan baseline")
    _add_common(p_dmt)
    p_dmt.add_argument("--order", type=int, required=True,
                       help="combination size m to scan")
    p_dmt.add_argument("--samples", type=int, default=2000,
                       help="samples per marginal cell")
    p_dmt.add_argument("--threshold", type=float, default=5.0,
                       help="z threshold for differentiation")
    p_dmt.add_argument("--out", default=None, help="optional report path")
    p_dmt.set_defaults(func=cmd_dmt)

    p_ver = sub.add_parser("verify", help="exact-marginal self-checks")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--count", type=int, default=50,
                       help="descriptors per function type")
    p_ver.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
