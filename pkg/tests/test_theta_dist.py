import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats

from cbeta.montecarlo import batch_means_se
from cbeta.pruefer import gamma_stream_seed, gamma_block
from cbeta.rng import SplitMix64, replica_seeds, stream_uniforms
from cbeta.theta_dist import (
    MAX_RADIUS_SQ,
    log_rate,
    radius_sq_from_uniform,
    sample_theta_nu,
    theta_nu_from_uniforms,
    theta_nu_log_moment,
    theta_nu_moments,
)


def draws(nu, count, seed=1):
    s = replica_seeds(seed, count)
    return theta_nu_from_uniforms(nu, stream_uniforms(s, 1), stream_uniforms(s, 2))


@pytest.mark.parametrize("nu, m2, m4", [(3, 1 / 2, 1 / 3), (5, 1 / 3, 1 / 6)])
def test_moment_formulas(nu, m2, m4):
    mom = theta_nu_moments(nu)
    assert mom.m2 == pytest.approx(m2, rel=1e-15)
    assert mom.m4 == pytest.approx(m4, rel=1e-15)


def test_moments_decrease_to_zero():
    nus = np.geomspace(1.01, 1e8, 200)
    m = np.array([theta_nu_moments(v) for v in nus])
    assert np.all(np.diff(m[:, 0]) < 0) and np.all(np.diff(m[:, 1]) < 0)
    assert m[-1, 0] < 1e-7


def test_log_moment_values():
    assert theta_nu_log_moment(3, 1) == 1.0
    assert theta_nu_log_moment(5, 2) == pytest.approx(0.5)
    for nu in (1.5, 7.0, 1e4):
        assert theta_nu_log_moment(nu, 0) == 1.0
    assert log_rate(5) == 2.0


@pytest.mark.parametrize("bad", [1.0, 0.5, -3.0])
def test_domain_errors(bad):
    with pytest.raises(ValueError):
        theta_nu_moments(bad)
    with pytest.raises(ValueError):
        theta_nu_log_moment(bad, 1)
    with pytest.raises(ValueError):
        sample_theta_nu(bad, SplitMix64(0))


def test_uniform_disk_at_nu_three():
    x = draws(3.0, 1_000_000)
    r2 = np.abs(x) ** 2
    assert abs(r2.mean() - 0.5) <= 4 * batch_means_se(r2)


def test_large_nu_radius():
    nu = 1e6
    r2 = np.abs(draws(nu, 200_000, seed=3)) ** 2
    assert abs(r2.mean() - 2 / (nu + 1)) <= 4 * batch_means_se(r2)
    assert np.all(r2 > 0)


def test_angle_is_uniform():
    x = draws(11.0, 200_000, seed=5)
    angle = np.mod(np.angle(x), 2 * math.pi)
    observed = np.histogram(angle, bins=64, range=(0, 2 * math.pi))[0]
    assert stats.chisquare(observed).pvalue > 1e-3


def test_squared_log_moment_by_simulation():
    r2 = np.abs(draws(5.0, 1_000_000, seed=9)) ** 2
    sample = np.log1p(-r2) ** 2
    assert abs(sample.mean() - 0.5) <= 4 * batch_means_se(sample)


def test_log_radius_is_exponential():
    nu = 4.0
    r2 = np.abs(draws(nu, 100_000, seed=11)) ** 2
    e = -np.log1p(-r2) * log_rate(nu)
    assert stats.kstest(e, "expon").statistic <= 0.01


def test_scalar_sampler_uses_exactly_two_uniforms():
    g = SplitMix64(7)
    sample_theta_nu(4.0, g)
    assert g.draws == 2


def test_scalar_sampler_reproduces_batched_coefficients():
    seed, beta = 2024, 2.0
    block = gamma_block(np.array([seed], dtype=np.uint64), 0, 5, beta)[:, 0]
    for j in range(5):
        z = sample_theta_nu(beta * (j + 1) + 1, SplitMix64(gamma_stream_seed(seed, j)))
        assert z == block[j]


@given(
    st.floats(min_value=1.0 + 1e-9, max_value=1e12),
    st.floats(min_value=2.0**-53, max_value=1.0),
    st.floats(min_value=0.0, max_value=1.0),
)
def test_points_stay_inside_the_disk(nu, u1, u2):
    z = theta_nu_from_uniforms(nu, np.array([u1]), np.array([u2]))[0]
    assert abs(z) ** 2 < 1.0
    assert radius_sq_from_uniform(nu, np.array([u1]))[0] <= MAX_RADIUS_SQ
