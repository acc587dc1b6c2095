"""Nonparametric estimators: order statistics, step estimates, spacings."""
import math

import numpy as np
import pytest

import qrigf as q

GAMMA_EULER = 0.5772156649015329


def two_point():
    return q.order_sample([0.75, 0.25])


# ---------------------------------------------------------------------------
# sample construction
# ---------------------------------------------------------------------------

def test_order_sample_sorts():
    s = two_point()
    assert np.array_equal(s.z, [0.25, 0.75])
    assert s.z0 == 0.0
    assert s.n == 2


def test_tie_ladder():
    s = q.order_sample([0.5, 0.5, 0.9])
    assert s.z[0] == 0.5
    assert s.z[1] == 0.5 + 1e-12
    assert s.z[2] == 0.9
    assert np.all(np.diff(s.z) > 0)


def test_tie_ladder_at_upper_bound():
    s = q.order_sample([1.0, 1.0])
    assert s.z[1] == 1.0
    assert s.z[0] == 1.0 - 1e-12


def test_small_overshoot_clamped():
    s = q.order_sample([0.5, 1.0 + 5e-13])
    assert s.z[1] == 1.0


def test_out_of_range_rejected():
    with pytest.raises(q.DomainError):
        q.order_sample([0.5, 1.5])
    with pytest.raises(q.DomainError):
        q.order_sample([-0.2, 0.5])


def test_too_small():
    with pytest.raises(q.TooSmall):
        q.order_sample([0.4])


def test_ordered_sample_validation():
    with pytest.raises(q.DomainError):
        q.OrderedSample(np.array([0.5, 0.3]))  # not sorted
    with pytest.raises(q.DomainError):
        q.OrderedSample(np.array([0.5, 1.2]))


# ---------------------------------------------------------------------------
# step quantile / density
# ---------------------------------------------------------------------------

def test_step_quantile_hand_values():
    s = two_point()
    assert q.parzen_Q3(s, 0.5) == 0.25
    assert q.parzen_Q3(s, 0.75) == 0.5
    assert q.parzen_Q3(s, 0.0) == 0.0
    assert q.parzen_Q3(s, 1.0) == 0.75


def test_step_quantile_piecewise_linear_monotone():
    rng = np.random.default_rng(3)
    s = q.order_sample(rng.uniform(size=25))
    us = np.linspace(0.0, 1.0, 401)
    vals = q.parzen_Q3(s, us)
    assert np.all(np.diff(vals) >= -1e-15)
    # exact at the knots
    knots = np.arange(1, 26) / 25.0
    assert np.allclose(q.parzen_Q3(s, knots), s.z, atol=1e-12)


def test_step_density_hand_values():
    s = two_point()
    assert q.parzen_q3(s, 0.3) == 0.5
    assert q.parzen_q3(s, 0.8) == 1.0


def test_step_density_telescopes_to_top_order_statistic():
    rng = np.random.default_rng(5)
    s = q.order_sample(rng.uniform(size=40))
    knots = np.arange(1, 41) / 40.0
    total = np.sum(q.parzen_q3(s, knots)) / 40.0
    assert total == pytest.approx(s.z[-1], abs=1e-12)


def test_step_domain_checks():
    s = two_point()
    with pytest.raises(q.DomainError):
        q.parzen_Q3(s, 1.2)
    with pytest.raises(q.DomainError):
        q.parzen_q3(s, 0.0)


def test_density_is_derivative_of_quantile_inside_cells():
    rng = np.random.default_rng(11)
    s = q.order_sample(rng.uniform(size=10))
    h = 1e-9
    for u in (0.05, 0.33, 0.61, 0.98):
        fd = (q.parzen_Q3(s, u + h) - q.parzen_Q3(s, u - h)) / (2 * h)
        assert q.parzen_q3(s, u) == pytest.approx(fd, rel=1e-5)


# ---------------------------------------------------------------------------
# spacing statistics
# ---------------------------------------------------------------------------

def test_estimate_igf_hand_value():
    s = two_point()
    expected = (math.sqrt(0.5) + 1.0) / 2.0
    assert q.estimate_igf(s, 0.5).estimate == pytest.approx(expected, abs=1e-12)


def test_estimate_residual_hand_value():
    s = two_point()
    expected = (1 - 0.25) ** (-0.5) / 0.5 ** 0.5 * (0.5 * 1.0 ** 0.5)
    report = q.estimate_residual(s, 0.5, 0.5)
    assert report.estimate == pytest.approx(expected, abs=1e-12)
    assert report.estimate == pytest.approx(0.8164965809277259, abs=1e-12)


def test_estimate_past_hand_value():
    s = two_point()
    expected = 0.25 ** (-0.5) / 0.5 ** 0.5 * (0.5 * 0.5 ** 0.5)
    report = q.estimate_past(s, 0.5, 0.5)
    assert report.estimate == pytest.approx(expected, abs=1e-12)
    assert report.estimate == pytest.approx(1.0, abs=1e-12)


def test_truncated_statistics_reduce_bitwise():
    rng = np.random.default_rng(9)
    s = q.order_sample(rng.uniform(size=31))
    for alpha in (0.3, 0.5, 1.7):
        base = q.estimate_igf(s, alpha).estimate
        assert q.estimate_residual(s, alpha, 0.0).estimate == base
        assert q.estimate_past(s, alpha, 1.0).estimate == base


def test_alpha_one_returns_exactly_one():
    rng = np.random.default_rng(13)
    s = q.order_sample(rng.uniform(size=17))
    assert q.estimate_igf(s, 1.0).estimate == 1.0
    assert q.estimate_residual(s, 1.0, 0.4).estimate == 1.0
    assert q.estimate_past(s, 1.0, 0.4).estimate == 1.0


def test_zero_spacing_raises_for_alpha_above_one():
    s = q.OrderedSample(np.array([0.2, 0.2, 0.4]))  # bypasses the ladder
    with pytest.raises(q.ZeroSpacing):
        q.estimate_igf(s, 1.5)
    with pytest.raises(q.ZeroSpacing):
        q.estimate_kl(s)
    # powers are harmless below one
    assert q.estimate_igf(s, 0.5).estimate > 0


def test_report_metadata():
    s = q.order_sample([0.2, 0.6], source="file")
    report = q.estimate_igf(s, 0.5)
    assert report.kind == "igf"
    assert report.n == 2
    assert report.source == "file"
    assert report.u is None


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def test_sample_matches_uniform_stream_elementwise():
    ph = q.distortion_to_composed(q.DistortionSpec("ph", theta=2.0))
    s = q.sample_from_Q3(ph, 5, seed=1)
    u = np.random.default_rng(1).uniform(size=5)
    assert np.array_equal(s.z, np.sort(1.0 - (1.0 - u) ** 2.0))
    assert s.seed == 1
    assert s.source == "model"


def test_sample_determinism():
    ph = q.distortion_to_composed(q.DistortionSpec("ph", theta=2.0))
    a = q.sample_from_Q3(ph, 100, seed=42)
    b = q.sample_from_Q3(ph, 100, seed=42)
    assert np.array_equal(a.z, b.z)
    c = q.sample_from_Q3(ph, 100, seed=43)
    assert not np.array_equal(a.z, c.z)


def test_identity_sample_equals_sorted_uniforms():
    ident = q.compose(q.Power(1.0, 1.0), q.Power(1.0, 1.0))
    s = q.sample_from_Q3(ident, 1000, seed=7)
    u = np.sort(np.random.default_rng(7).uniform(size=1000))
    assert np.array_equal(s.z, u)
    assert s.z[0] >= 0.0 and s.z[-1] <= 1.0


def test_sample_too_small():
    ident = q.compose(q.Power(1.0, 1.0), q.Power(1.0, 1.0))
    with pytest.raises(q.TooSmall):
        q.sample_from_Q3(ident, 1, seed=0)


# ---------------------------------------------------------------------------
# two-sample mode
# ---------------------------------------------------------------------------

def test_empirical_ranks():
    s = q.empirical_Q3_sample([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    assert np.allclose(s.z, [0.25, 0.5, 0.75], atol=1e-12)


def test_empirical_all_below_support():
    s = q.empirical_Q3_sample([0.1, 0.2, 0.3], [5.0, 6.0, 7.0])
    # all values clamp to rank 1 -> 1/(n2+1); the tie ladder then
    # separates the equal values by 1e-12 steps
    assert np.max(np.abs(s.z - 0.25)) <= 1e-9


def test_empirical_identity_distortion_recovers_uniform():
    rng = np.random.default_rng(7)
    x1 = rng.exponential(2.0, size=4000)
    x2 = rng.exponential(2.0, size=4000)
    s = q.empirical_Q3_sample(x1, x2)
    grid = np.linspace(0.05, 0.95, 19)
    assert np.max(np.abs(q.parzen_Q3(s, grid) - grid)) <= 0.05
    assert q.estimate_igf(s, 1.0).estimate == 1.0


# ---------------------------------------------------------------------------
# sampling distribution of the statistics (seeded)
# ---------------------------------------------------------------------------

def test_igf_statistic_concentrates_on_gamma_weighted_target():
    # spacings scale like unit exponentials, so the statistic targets
    # Gamma(2-alpha) * igf rather than igf itself; the offset is a
    # documented property of the plug-in
    ph = q.distortion_to_composed(q.DistortionSpec("ph", theta=2.0))
    truth = q.igf(ph, 0.5).value
    target = math.gamma(1.5) * truth
    s = q.sample_from_Q3(ph, 10_000, seed=42)
    assert q.estimate_igf(s, 0.5).estimate == pytest.approx(target, abs=0.02)


def test_residual_statistic_concentrates_similarly():
    ph = q.distortion_to_composed(q.DistortionSpec("ph", theta=2.0))
    target = math.gamma(1.5) * q.igf_residual(ph, 0.5, 0.3).value
    s = q.sample_from_Q3(ph, 10_000, seed=7)
    assert q.estimate_residual(s, 0.5, 0.3).estimate == pytest.approx(target, abs=0.03)


def test_past_statistic_constancy_for_reversed_ph():
    m = q.distortion_to_composed(q.DistortionSpec("reversed_ph", theta=2.0))
    s = q.sample_from_Q3(m, 10_000, seed=11)
    a = q.estimate_past(s, 0.7, 0.3).estimate
    b = q.estimate_past(s, 0.7, 0.6).estimate
    assert abs(a - b) <= 0.03


def test_kl_statistic_offset_on_identity():
    # -(1/n) sum log(n D_j) on uniforms converges to the Euler constant
    ident = q.compose(q.Power(1.0, 1.0), q.Power(1.0, 1.0))
    s = q.sample_from_Q3(ident, 10_000, seed=3)
    assert q.estimate_kl(s).estimate == pytest.approx(GAMMA_EULER, abs=0.05)


# ---------------------------------------------------------------------------
# sample files
# ---------------------------------------------------------------------------

def test_sample_file_roundtrip(tmp_path):
    path = tmp_path / "z.txt"
    values = np.random.default_rng(2).uniform(size=50)
    q.write_sample_file(path, values, header="demo\nsecond line")
    back = q.read_sample_file(path)
    assert np.array_equal(back, values)


def test_sample_file_comments_and_errors(tmp_path):
    path = tmp_path / "z.txt"
    path.write_text("# comment\n0.5\n\n0.25  # inline\n")
    assert np.array_equal(q.read_sample_file(path), [0.5, 0.25])
    path.write_text("0.5\nnot-a-number\n")
    with pytest.raises(q.DomainError):
        q.read_sample_file(path)
