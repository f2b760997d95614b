import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import naive_fringe_score, naive_tv
from twoslit.analysis import (
    AnalysisReport,
    Thresholds,
    contextual_report,
    fringe_score,
    mirror,
    moving_average,
    symmetry_defect,
    tv_distance,
)
from twoslit.experiment import run
from twoslit.model import Context, Histogram, ModelParams

counts = st.lists(st.integers(0, 1000), min_size=180, max_size=180).filter(lambda c: sum(c) > 0)


def hist(bins, tag="total"):
    return Histogram(np.asarray(bins), tag)


def test_tv_examples():
    h = hist(np.arange(180))
    assert tv_distance(h, h) == 0.0
    a, b = np.zeros(180), np.zeros(180)
    a[:90], b[90:] = 1, 1
    assert tv_distance(hist(a), hist(b)) == 1.0
    assert tv_distance([1, 0], [0.5, 0.5]) == 0.5


def test_tv_zero_total():
    with pytest.raises(ValueError):
        tv_distance(hist(np.zeros(180)), hist(np.ones(180)))


@given(counts, counts)
def test_tv_matches_oracle_and_is_symmetric(p, q):
    d = tv_distance(p, q)
    assert d == pytest.approx(naive_tv(p, q), abs=1e-12)
    assert d == pytest.approx(tv_distance(q, p), abs=1e-15)
    assert 0.0 <= d <= 1.0


@given(counts, counts, counts)
def test_tv_triangle(p, q, r):
    assert tv_distance(p, r) <= tv_distance(p, q) + tv_distance(q, r) + 1e-12


@given(counts, st.integers(2, 50))
def test_tv_identity_on_normalised(p, k):
    assert tv_distance(p, [k * c for c in p]) == pytest.approx(0.0, abs=1e-12)


def test_moving_average_edges():
    m = moving_average(np.array([0.0, 3.0, 6.0, 9.0]), window=3)
    np.testing.assert_allclose(m, [1.5, 3.0, 6.0, 7.5])


def test_fringe_score_constant():
    assert fringe_score(hist(np.full(180, 40))) == 0.0


def test_fringe_score_alternating():
    c = 50
    bins = np.where(np.arange(180) % 2 == 0, 0, 2 * c)
    got = fringe_score(hist(bins))
    assert got == pytest.approx(naive_fringe_score(list(bins)), abs=1e-12)
    # an odd window over a period-2 pattern averages to c(1 +- 1/15), so the
    # score lands slightly below the ideal 1
    assert got == pytest.approx(1.0, abs=0.08)


@given(counts)
def test_fringe_score_matches_oracle(bins):
    assume(sum(bins[30:150]) > 0)
    assert fringe_score(bins) == pytest.approx(naive_fringe_score(bins), rel=1e-9, abs=1e-12)


@given(counts, st.integers(2, 20))
def test_fringe_score_scale_invariant(bins, k):
    assume(sum(bins[30:150]) > 0)
    assert fringe_score(bins) == pytest.approx(fringe_score([k * b for b in bins]), rel=1e-9)


def test_fringe_score_ignores_grazing_bins():
    bins = np.full(180, 10)
    bins[:29] = 1000
    bins[151:] = 0
    assert fringe_score(hist(bins)) == 0.0


def test_fringe_score_zero():
    with pytest.raises(ValueError):
        fringe_score(hist(np.zeros(180)))


def test_mirror():
    bins = np.zeros(180, dtype=int)
    bins[100] = 7  # bin +10 degrees, [10, 11)
    m = mirror(hist(bins))
    assert m.count(-11) == 7
    assert mirror(m) == hist(bins)
    assert symmetry_defect(hist(bins)) == 1.0


@given(st.lists(st.integers(0, 500), min_size=90, max_size=90).filter(any))
def test_symmetric_histogram_has_zero_defect(half):
    bins = np.array(half[::-1] + half)
    assert symmetry_defect(hist(bins)) == 0.0


def test_seed42_calibration_values(seed42_runs):
    # frozen from the first calibrated run (default geometry, n=200000, seed 42)
    s1 = fringe_score(seed42_runs[Context.S1_ONLY].total)
    both = fringe_score(seed42_runs[Context.BOTH_RANDOM].total)
    assert s1 == pytest.approx(0.0320898731697659, rel=1e-9)
    assert both == pytest.approx(0.442750349313411, rel=1e-9)
    assert symmetry_defect(seed42_runs[Context.BOTH_RANDOM].total) < 0.05


def test_report_seed42(seed42_runs):
    r = seed42_runs
    rep = contextual_report(r[Context.S1_ONLY], r[Context.S2_ONLY], r[Context.BOTH_RANDOM])
    assert rep.verdicts["additivity"] is True
    assert rep.passed
    assert rep.fringe_scores["both"] > 3 * rep.fringe_scores["s1"]
    assert rep.tv_distances["slit1_both_vs_s1_total"] > rep.tv_distances["slit1_vs_slit2_both"]
    assert AnalysisReport.from_dict(rep.to_dict()) == rep


def test_report_rejects_mismatch():
    p = ModelParams()
    s1 = run(p, Context.S1_ONLY, 1000, 1)
    s2 = run(p, Context.S2_ONLY, 1000, 1)
    both = run(p, Context.BOTH_RANDOM, 1000, 1)
    with pytest.raises(ValueError):
        contextual_report(s2, s1, both)
    with pytest.raises(ValueError):
        contextual_report(s1, s2, run(p, Context.BOTH_RANDOM, 2000, 1))
    with pytest.raises(ValueError):
        contextual_report(s1, s2, run(ModelParams(n_orbits=5), Context.BOTH_RANDOM, 1000, 1))


def test_report_flags_failures():
    p = ModelParams()
    s1 = run(p, Context.S1_ONLY, 20_000, 1)
    s2 = run(p, Context.S2_ONLY, 20_000, 1)
    both = run(p, Context.BOTH_RANDOM, 20_000, 1)
    rep = contextual_report(s1, s2, both, Thresholds(fringe_ratio_min=1e6))
    assert rep.verdicts["both_slits_fringed"] is False
    assert not rep.passed
