"""Acceptance gate: every quantitative guarantee the package ships with.

Each test is one criterion at its stated tolerance, so the -v run reads as
a checklist. The replicated experiments are expensive and shared through
module-scoped fixtures; everything is fixed-seed and deterministic.
"""

import numpy as np
import pytest
from scipy import stats

from pivotalga import classify, dmt, engine, harness, pivotal as pv, sga, verify

R = 300                  # replicates for the experiment criteria
ALLOWED_MISSES = 3       # 297/300


def experiment(descriptor, generations, seed_base, replicates=R):
    cfg = harness.ExperimentConfig(
        descriptor=descriptor,
        ga=sga.GAConfig(generations=generations),
        replicates=replicates,
        seed_base=seed_base,
    )
    return harness.run_experiment(cfg)


@pytest.fixture(scope="module")
def exp1():
    """300 runs, pattern function o=3, delta=0.18, sigma=1, span 4, 200 gens."""
    return experiment(pv.basic_type1(3, delta=0.18, sigma=1.0), 200, 2024)


@pytest.fixture(scope="module")
def exp2():
    """300 runs, parity function o=4, delta=0.25, sigma=1, span 5, 1000 gens."""
    return experiment(pv.basic_type2(4, delta=0.25, sigma=1.0), 1000, 77)


# ---------------------------------------------------------------------------
# experiment 1: pattern function, reduced scale

def test_experiment1_locus1_fixates(exp1):
    summary, _ = exp1
    assert summary.fixed_counts[0] >= R - ALLOWED_MISSES


def test_experiment1_locus4_stays_inside(exp1):
    summary, _ = exp1
    assert summary.inner_band_counts[3] >= R - ALLOWED_MISSES


def test_experiment1_dominant_fraction(exp1):
    summary, _ = exp1
    assert 0.946 <= summary.dominant_fraction_mean <= 0.966


def test_experiment1_query_ledger(exp1):
    summary, _ = exp1
    assert summary.total_queries == R * 1500 * 200


# ---------------------------------------------------------------------------
# experiment 2: parity function, reduced scale

def test_experiment2_fixation_pattern(exp2):
    _, records = exp2
    good = 0
    for rec in records:
        f = rec.final_frequencies
        pivotal_fixed = all(x < 0.1 or x > 0.9 for x in f[:4])
        last_inside = 0.1 <= f[4] <= 0.9
        good += pivotal_fixed and last_inside
    assert good >= R - ALLOWED_MISSES


def test_experiment2_dominant_fraction(exp2):
    summary, _ = exp2
    assert 0.953 <= summary.dominant_fraction_mean <= 0.973


def test_experiment2_dominant_schema_has_odd_parity(exp2):
    _, records = exp2
    checked = 0
    for rec in records:
        if all(x < 0.1 or x > 0.9 for x in rec.final_frequencies[:4]):
            assert classify.schema_parity(rec.dominant_schema) == 1, rec.index
            checked += 1
    assert checked >= R - ALLOWED_MISSES


def test_experiment2_query_ledger(exp2):
    summary, _ = exp2
    assert summary.total_queries == R * 1500 * 1000


# ---------------------------------------------------------------------------
# classification competency at full span, pattern functions

@pytest.fixture(scope="module")
def type1_wide():
    rng = np.random.default_rng(11)
    loci = tuple(sorted(int(k) for k in rng.choice(100, 3, replace=False) + 1))
    values = tuple(int(v) for v in rng.integers(0, 2, 3))
    return pv.Type1Descriptor(order=3, sigma=1.0, delta=0.18, span=100,
                              loci=loci, values=values)


@pytest.fixture(scope="module")
def type1_classifications(type1_wide):
    cfg = sga.GAConfig(generations=200)
    return [classify.classify_loci(type1_wide, 200, cfg,
                                   harness.replicate_seed(4001, i))
            for i in range(100)]


def test_type1_competency_misclassifications(type1_wide, type1_classifications):
    truth = set(type1_wide.loci)
    misses = sum(len(res.pivotal_loci ^ truth) for res in type1_classifications)
    assert misses <= 10  # out of 100 runs x 100 loci


def test_type1_competency_query_count_constant_in_span(type1_classifications):
    assert {res.queries for res in type1_classifications} == {300_000}
    cfg = sga.GAConfig(generations=200)
    for span in (10, 1000):
        d = pv.Type1Descriptor(order=3, sigma=1.0, delta=0.18, span=span,
                               loci=(1, 2, 3), values=(1, 1, 1))
        res = classify.classify_loci(d, 200, cfg, harness.replicate_seed(4002, span))
        assert res.queries == 300_000


# ---------------------------------------------------------------------------
# classification competency, parity functions

@pytest.fixture(scope="module")
def type2_wide():
    rng = np.random.default_rng(12)
    loci = tuple(sorted(int(k) for k in rng.choice(50, 4, replace=False) + 1))
    return pv.Type2Descriptor(order=4, sigma=1.0, delta=0.25, span=50,
                              loci=loci)


@pytest.fixture(scope="module")
def type2_classifications(type2_wide):
    cfg = sga.GAConfig(generations=1000)
    return [classify.classify_loci(type2_wide, 1000, cfg,
                                   harness.replicate_seed(4003, i))
            for i in range(100)]


def test_type2_competency_misclassifications(type2_wide, type2_classifications):
    truth = set(type2_wide.loci)
    misses = sum(len(res.pivotal_loci ^ truth) for res in type2_classifications)
    assert misses <= 10  # out of 100 runs x 50 loci


def test_type2_competency_query_count_constant_in_span(type2_classifications):
    assert {res.queries for res in type2_classifications} == {1_500_000}
    d = pv.Type2Descriptor(order=4, sigma=1.0, delta=0.25, span=10,
                           loci=(1, 4, 7, 10))
    res = classify.classify_loci(d, 1000, sga.GAConfig(generations=1000),
                                 harness.replicate_seed(4004, 0))
    assert res.queries == 1_500_000


# ---------------------------------------------------------------------------
# significance arithmetic

def test_significance_bound_criterion():
    assert harness.significance_bound(3000, 0.005) < 3e-7


# ---------------------------------------------------------------------------
# exact marginal suite

def test_exact_marginal_randomized_suite():
    checked, failures = verify.run_suite(seed=2718, type1_count=50,
                                         type2_count=50)
    assert checked == 100
    assert failures == []


# ---------------------------------------------------------------------------
# marginal-scan baseline agrees with the exact oracle (noise-free)

def test_dmt_type1_oracle_agreement():
    rng = np.random.default_rng(9001)
    d = pv.Type1Descriptor(order=3, sigma=0.0, delta=0.18, span=12,
                           loci=(3, 7, 11), values=(1, 0, 1))
    r1 = dmt.dmt_scan(d, 1, 2000, 5.0, rng)
    assert r1.detected_combos == frozenset()
    assert r1.queries_used == 12 * 2 * 2000
    r2 = dmt.dmt_scan(d, 2, 2000, 5.0, rng)
    assert r2.detected_combos == frozenset({(3, 7), (3, 11), (7, 11)})
    assert r2.queries_used == 66 * 4 * 2000


def test_dmt_type2_oracle_agreement():
    rng = np.random.default_rng(9002)
    d = pv.Type2Descriptor(order=4, sigma=0.0, delta=0.25, span=10,
                           loci=(2, 5, 6, 9))
    for m in (1, 2, 3):
        report = dmt.dmt_scan(d, m, 2000, 5.0, rng)
        assert report.detected_combos == frozenset(), f"m={m}"
    r4 = dmt.dmt_scan(d, 4, 2000, 5.0, rng)
    assert r4.detected_combos == frozenset({(2, 5, 6, 9)})
    assert r4.queries_used == 210 * 16 * 2000


# ---------------------------------------------------------------------------
# symmetry invariants

def test_symmetry_mean_final_frequency(exp1):
    _, records = exp1
    finals = np.vstack([r.final_frequencies for r in records])
    means = finals.mean(axis=0)
    assert np.all(np.abs(means - 0.5) <= 0.116)  # 4 * 0.5 / sqrt(300)


@pytest.fixture(scope="module")
def wide_pivotal_finals():
    """Final frequency of the first pivotal locus, span-20 pattern function."""
    rng = np.random.default_rng(31)
    loci = tuple(sorted(int(k) for k in rng.choice(20, 3, replace=False) + 1))
    values = tuple(int(v) for v in rng.integers(0, 2, 3))
    d = pv.Type1Descriptor(order=3, sigma=1.0, delta=0.18, span=20,
                           loci=loci, values=values)
    cfg = sga.GAConfig(generations=200)
    out = []
    for i in range(R):
        trace = engine.run(d, cfg, harness.replicate_seed(555, i),
                           record_stride=200)
        out.append(trace.final_one_frequencies()[loci[0] - 1])
    return np.array(out)


def test_symmetry_ks_across_spans(exp1, wide_pivotal_finals):
    _, records = exp1
    basic_locus1 = np.array([r.final_frequencies[0] for r in records])
    result = stats.ks_2samp(basic_locus1, wide_pivotal_finals)
    assert result.pvalue > 0.01


# ---------------------------------------------------------------------------
# operator properties

def test_sus_integrality_randomized():
    rng = np.random.default_rng(6001)
    for _ in range(10_000):
        size = int(rng.integers(2, 21))
        weights = rng.random(size)
        count = int(rng.integers(1, 61))
        idx = sga.sus_select(weights, count, rng)
        counts = np.bincount(idx, minlength=size)
        expect = count * weights / weights.sum()
        assert np.all(counts >= np.floor(expect))
        assert np.all(counts <= np.ceil(expect))


def test_sigma_scale_zero_variance_gives_ones():
    np.testing.assert_array_equal(sga.sigma_scale(np.full(1500, 2.5)),
                                  np.ones(1500))


def test_crossover_conserves_bit_pools():
    rng = np.random.default_rng(6002)
    for _ in range(200):
        parents = (rng.random((100, 30)) < rng.random()).astype(np.uint8)
        children = sga.crossover_pairs(parents, 1.0, rng)
        np.testing.assert_array_equal(children[0::2] + children[1::2],
                                      parents[0::2] + parents[1::2])


def test_mutation_rate_at_scale():
    pop = np.zeros((10_000, 100), dtype=np.uint8)
    out = sga.mutate(pop, 0.003, np.random.default_rng(6003))
    rate = out.mean()
    assert abs(rate - 0.003) <= 3e-4


def test_bit_identical_reruns():
    d = pv.basic_type1(3, delta=0.18, sigma=1.0)
    cfg = sga.GAConfig(generations=50)
    a = engine.run(d, cfg, seed=321)
    b = engine.run(d, cfg, seed=321)
    np.testing.assert_array_equal(a.final_population, b.final_population)
    np.testing.assert_array_equal(a.one_frequencies, b.one_frequencies)
    if engine.HAVE_COMPILED:
        c = engine.run(d, cfg, seed=321, backend="numpy")
        np.testing.assert_array_equal(a.final_population, c.final_population)
