from collections import Counter
from math import sqrt

import numpy as np
import pytest
from scipy import stats as sps

from tableaux_lab import diagrams as dg
from tableaux_lab import rsk
from tableaux_lab import sampling as sp
from tableaux_lab import transition as tr

from _properties import random_diagram


def test_stream_determinism():
    a = sp.make_rng(123, 5)
    b = sp.make_rng(123, 5)
    assert a.random(8).tolist() == b.random(8).tolist()
    c = sp.make_rng(123, 6)
    assert a.random(8).tolist() != c.random(8).tolist()
    with pytest.raises(ValueError):
        sp.make_rng(-1)
    with pytest.raises(ValueError):
        sp.make_rng(0, 1 << 64)


def test_sample_reproducibility_across_runs():
    t1 = sp.poissonized(dg.from_parts([3, 2, 1]), sp.make_rng(7, 3))
    t2 = sp.poissonized(dg.from_parts([3, 2, 1]), sp.make_rng(7, 3))
    assert t1 == t2
    s1 = sp.uniform_syt(dg.from_parts([4, 2]), sp.make_rng(9, 1))
    s2 = sp.uniform_syt(dg.from_parts([4, 2]), sp.make_rng(9, 1))
    assert s1 == s2


def test_uniform_syt_validity():
    rng = sp.make_rng(41, 0)
    assert sp.uniform_syt(dg.from_parts([1]), rng).rows == ((1,),)
    for _ in range(60):
        d = random_diagram(rng, int(rng.integers(1, 35)))
        rsk.validate_standard_tableau(sp.uniform_syt(d, rng))
    with pytest.raises(ValueError):
        sp.uniform_syt(dg.YoungDiagram(()), rng)


def test_uniform_syt_frequencies_2_1():
    rng = sp.make_rng(42, 0)
    d = dg.from_parts([2, 1])
    samples = 100_000
    counts = Counter(sp.uniform_syt(d, rng).rows for _ in range(samples))
    assert len(counts) == 2 == tr.hook_count(d)
    se = sqrt(0.25 / samples)
    for freq in counts.values():
        assert abs(freq / samples - 0.5) < 4 * se


def test_uniform_syt_chi_square_3_2():
    rng = sp.make_rng(43, 0)
    d = dg.from_parts([3, 2])
    samples = 100_000
    counts = Counter(sp.uniform_syt(d, rng).rows for _ in range(samples))
    assert len(counts) == 5 == tr.hook_count(d)
    _, p = sps.chisquare(list(counts.values()))
    assert p > 0.001


def test_poissonized_validity_and_single_box():
    rng = sp.make_rng(44, 0)
    t = sp.poissonized(dg.from_parts([1]), rng)
    assert len(t.rows) == 1 and len(t.rows[0]) == 1
    for _ in range(40):
        d = random_diagram(rng, int(rng.integers(1, 35)))
        rsk.validate_real_tableau(sp.poissonized(d, rng))


def test_poissonized_min_entry_beta_mean():
    # the smallest of n i.i.d. uniforms has mean 1/(n+1)
    rng = sp.make_rng(45, 0)
    d = dg.from_parts([3, 2, 1])
    samples = 20_000
    mins = np.array([min(sp.poissonized_array(d, rng).sorted_entries.min(), 1.0) for _ in range(samples)])
    target = 1.0 / (d.n + 1)
    assert abs(mins.mean() - target) < 4 * mins.std(ddof=1) / sqrt(samples)


def test_poissonized_matches_rejection_oracle_small_shapes():
    # two-sample KS per box entry, Bonferroni-corrected over all shapes with n <= 5
    rng = sp.make_rng(46, 0)
    shapes = [d for n in range(1, 6) for d in dg.partitions_of(n)]
    n_boxes = sum(d.n for d in shapes)
    alpha = 0.001 / n_boxes
    draws = 12_000
    for d in shapes:
        ours = sp.poissonized_entries_batch(d, rng, draws)
        accepted = np.empty((0, d.n))
        while len(accepted) < draws:
            batch, _ = sp.rejection_batch(d, rng, 40_000)
            accepted = np.vstack([accepted, batch])
        theirs = accepted[:draws]
        for j in range(d.n):
            p = sps.ks_2samp(ours[:, j], theirs[:, j]).pvalue
            assert p > alpha, (d.parts, j, p)


def test_rejection_oracle_guards():
    rng = sp.make_rng(47, 0)
    with pytest.raises(ValueError):
        sp.rejection_poissonized_oracle(dg.from_parts([3, 3, 3]), rng)
    with pytest.raises(ValueError):
        sp.rejection_poissonized_oracle(dg.YoungDiagram(()), rng)
    t = sp.rejection_poissonized_oracle(dg.from_parts([2, 1]), rng)
    rsk.validate_real_tableau(t)


def test_rejection_acceptance_rates():
    rng = sp.make_rng(48, 0)
    for parts, attempts in (((1,), 2000), ((2, 1), 60_000), ((2, 2), 120_000)):
        d = dg.from_parts(parts)
        rate = sp.expected_rejection_rate(d)
        _, accepted = sp.rejection_batch(d, rng, attempts)
        se = sqrt(rate * (1 - rate) / attempts) if 0 < rate < 1 else 1e-9
        assert abs(accepted / attempts - rate) <= 4 * se + 1e-12, parts


def test_plancherel_poissonized_shapes():
    rng = sp.make_rng(49, 0)
    assert sp.plancherel_poissonized(0, rng).rows == ()
    samples = 100_000
    counts = Counter(sp.plancherel_poissonized_array(3, rng).shape().parts for _ in range(samples))
    for d in dg.partitions_of(3):
        pmf = tr.plancherel_pmf(d)
        se = sqrt(pmf * (1 - pmf) / samples)
        assert abs(counts[d.parts] / samples - pmf) < 4 * se, d.parts


def test_plancherel_poissonized_equals_p_tableau():
    # the array sampler is the insertion tableau of the same uniforms
    at = sp.plancherel_poissonized_array(300, sp.make_rng(50, 2))
    ws = sp.make_rng(50, 2).random(300)
    assert at.to_real_tableau() == rsk.p_tableau(ws)


def test_shape_law_matches_growth_process():
    # same shape histogram at n = 4 from RSK sampling and from growth steps
    rng = sp.make_rng(51, 0)
    samples = 30_000
    from_rsk = Counter(sp.plancherel_poissonized_array(4, rng).shape().parts for _ in range(samples))
    from_growth = Counter()
    for _ in range(samples):
        d = dg.YoungDiagram(())
        for _ in range(4):
            d = tr.growth_step(d, rng)
        from_growth[d.parts] += 1
    keys = sorted(set(from_rsk) | set(from_growth))
    table = np.array([[from_rsk[k] for k in keys], [from_growth[k] for k in keys]])
    _, p, _, _ = sps.chi2_contingency(table)
    assert p > 0.001


def test_array_tableau_matches_pure_rsk_ops():
    rng = sp.make_rng(52, 0)
    for _ in range(30):
        n = int(rng.integers(1, 45))
        at = sp.plancherel_poissonized_array(n, rng)
        t = at.to_real_tableau()
        for z in rng.random(4):
            assert at.u_ins(z) == rsk.u_ins(t, z)
        for u in rng.integers(-9, 9, 4):
            assert at.cumulative_f(float(u)) == rsk.cumulative_F(t, float(u))
        f = at.f_values(np.array([-2.0, 0.0, 2.0]))
        assert f.tolist() == [rsk.cumulative_F(t, u) for u in (-2.0, 0.0, 2.0)]


def test_moment_oracle_crown():
    # MC mean and variance of F_T(u) against the exact transition-measure formulas
    rng = sp.make_rng(53, 0)
    samples = 100_000
    u_values = np.array([-1.0, 0.0, 1.0])
    for parts in ((1,), (2, 1), (3, 1)):
        d = dg.from_parts(parts)
        m = tr.transition_measure(d)
        sampler = sp.FixedShapeSampler(d)
        f_vals = np.empty((samples, 3))
        for i in range(samples):
            f_vals[i] = sampler.poissonized_array(rng).f_values(u_values)
        for j, u in enumerate(u_values):
            x = f_vals[:, j]
            exact_mean = tr.cumulative_K(m, u)
            exact_var = tr.interaction_energy(m, u, eps=1.0)
            se_mean = x.std(ddof=1) / sqrt(samples)
            assert abs(x.mean() - exact_mean) <= 4 * max(se_mean, 1e-12), (parts, u)
            var = x.var(ddof=1)
            d4 = ((x - x.mean()) ** 4).mean()
            se_var = sqrt(max(d4 / samples - var**2 * (samples - 3) / (samples * (samples - 1)), 1e-18))
            assert abs(var - exact_var) <= 4 * max(se_var, 1e-12), (parts, u)


def test_ground_truth_moment_values():
    # frozen instances: (1) at u=0 and (2,1) at u=-1
    m1 = tr.transition_measure(dg.from_parts([1]))
    assert tr.cumulative_K(m1, 0.0) == pytest.approx(0.5)
    assert tr.interaction_energy(m1, 0.0, 1.0) == pytest.approx(1 / 12)
    m21 = tr.transition_measure(dg.from_parts([2, 1]))
    assert tr.cumulative_K(m21, -1.0) == pytest.approx(3 / 8)
    assert tr.interaction_energy(m21, -1.0, 1.0) == pytest.approx(19 / 320)


def test_third_cumulant_bound_spot_check():
    # |k3 of F_T(0)| for shape (3,1) against 2! * G+(0)^2 plus a block-bootstrap error
    from tableaux_lab.stats import empirical_cumulants

    d = dg.from_parts([3, 1])
    m = tr.transition_measure(d)
    g_plus = tr.cauchy_plus(m, 0.0)
    assert g_plus == pytest.approx(8 / 15)

    rng = sp.make_rng(54, 0)
    samples = 1_000_000
    sampler = sp.FixedShapeSampler(d)
    vals = np.empty(samples)
    u0 = np.array([0.0])
    for i in range(samples):
        vals[i] = sampler.poissonized_array(rng).f_values(u0)[0]
    k3 = empirical_cumulants(vals, 3)[2]

    blocks = vals.reshape(100, -1)
    block_k3 = np.array([empirical_cumulants(b, 3)[2] for b in blocks])
    boot = rng.choice(block_k3, size=(1000, 100), replace=True).mean(axis=1)
    se = boot.std(ddof=1)
    assert abs(k3) <= 2.0 * g_plus**2 + 5.0 * se
