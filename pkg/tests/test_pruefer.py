import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cbeta import pruefer as P
from cbeta.montecarlo import batch_means_se
from cbeta.rng import replica_seeds

TWO_PI = 2 * math.pi


def series_upsilon(psi, alpha, terms=400):
    # -2 Im log(1 - w) = 2 sum_l Im(w^l) / l
    w = alpha * np.exp(1j * psi)
    l = np.arange(1, terms + 1)
    return 2.0 * np.sum(np.imag(w**l) / l)


def test_upsilon_examples():
    assert P.upsilon(1.3, 0.0) == 0.0
    assert P.upsilon(0.0, 0.4) == 0.0
    value = P.upsilon(0.0, 0.5j)
    assert value == pytest.approx(-2 * math.atan2(-0.5, 1.0), abs=1e-15)
    assert value == pytest.approx(0.9272952180016122, abs=1e-12)
    assert value == pytest.approx(series_upsilon(0.0, 0.5j), abs=1e-12)


@given(st.floats(-10, 10), st.floats(0, 0.95), st.floats(0, 2 * math.pi))
def test_upsilon_matches_power_series(psi, r, arg):
    alpha = r * complex(math.cos(arg), math.sin(arg))
    assert P.upsilon(psi, alpha) == pytest.approx(series_upsilon(psi, alpha, 2000), abs=1e-9)
    assert abs(P.upsilon(psi, alpha)) < math.pi


def test_upsilon_tilde_examples():
    assert P.upsilon_tilde(0.0, 0.5) == 0.0
    assert P.upsilon_tilde(0.0, 0.5j) == 1.0
    alpha = 0.3 * np.exp(1j * math.pi / 4)
    assert P.upsilon_tilde(math.pi / 4, alpha) == pytest.approx(0.6, abs=1e-15)


def test_upsilon1_examples():
    alpha = 0.6 * np.exp(0.4j)
    assert P.upsilon1(0.0, alpha) == 0.0
    assert P.upsilon1(2.0, 0.0) == 0.0
    assert P.upsilon1(TWO_PI, alpha) == pytest.approx(0.0, abs=1e-14)


def test_disk_domain_errors():
    for f in (P.upsilon, P.upsilon1):
        with pytest.raises(ValueError):
            f(0.1, 1.0)
        with pytest.raises(ValueError):
            f(0.1, 0.8 + 0.8j)


def test_draw_gamma_sequence_contract():
    assert P.draw_gamma_sequence(2.0, 1, 5).gammas.size == 0
    a = P.draw_gamma_sequence(2.0, 50, 5)
    b = P.draw_gamma_sequence(2.0, 50, 5)
    np.testing.assert_array_equal(a.gammas, b.gammas)
    longer = P.draw_gamma_sequence(2.0, 80, 5)
    np.testing.assert_array_equal(a.gammas, longer.gammas[:49])
    assert not a.gammas.flags.writeable
    for beta, n in ((0.0, 3), (-1.0, 3), (1.0, 0)):
        with pytest.raises(ValueError):
            P.draw_gamma_sequence(beta, n, 1)


def test_coefficient_radii_follow_index_law():
    beta, n = 2.0, 10_000
    seeds = replica_seeds(77, 200)
    g = P.gamma_block(seeds, 0, n - 1, beta)
    r2 = np.abs(g) ** 2
    edges = [0, 10, 100, 1000, n - 1]
    for a, b in zip(edges, edges[1:]):
        k = np.arange(a, b)
        # normalise each index by its predicted mean, then pool the bin
        ratio = (r2[a:b] / (2.0 / (beta * (k[:, None] + 1) + 2))).ravel()
        assert abs(ratio.mean() - 1.0) <= 4 * batch_means_se(ratio)


def test_zero_coefficients_give_linear_phase():
    gs = P.GammaSequence.from_coefficients(2.0, np.zeros(9))
    for theta in (0.0, 0.3, 2.0, TWO_PI):
        assert P.pruefer_phase(gs, theta).psi == pytest.approx(10 * theta, abs=1e-12)
    ps, sl = P.phase_and_slope(gs, np.array([0.3, 2.0]))
    np.testing.assert_allclose(ps, [3.0, 20.0], atol=1e-12)
    np.testing.assert_allclose(sl, [10.0, 10.0], atol=1e-12)


@pytest.mark.parametrize("beta, n, seed", [(2.0, 1024, 1), (0.5, 300, 2), (4.0, 17, 3)])
def test_phase_endpoints(beta, n, seed):
    gs = P.draw_gamma_sequence(beta, n, seed)
    assert P.pruefer_phase(gs, 0.0).psi == 0.0
    assert P.pruefer_phase(gs, TWO_PI).psi == pytest.approx(TWO_PI * n, abs=1e-9)


def test_trajectory_is_recorded():
    gs = P.draw_gamma_sequence(2.0, 20, 4)
    ev = P.pruefer_phase(gs, 0.7, want_trajectory=True)
    assert ev.trajectory.shape == (20,)
    assert ev.trajectory[0] == 0.7
    assert ev.trajectory[-1] == ev.psi
    assert P.pruefer_phase(gs, 0.7).trajectory is None


@pytest.mark.parametrize("beta, n", [(2.0, 1024), (0.5, 200), (8.0, 64)])
def test_rotation_kernel_matches_literal_recursion(beta, n):
    gs = P.draw_gamma_sequence(beta, n, 10)
    thetas = np.linspace(0.0, TWO_PI, 41)
    literal = np.array([P.pruefer_phase(gs, t).psi for t in thetas])
    psi, slope = P.phase_and_slope(gs, thetas)
    np.testing.assert_allclose(psi, literal, atol=1e-9 * n)
    assert np.all(slope > 0)


def test_slope_matches_finite_difference():
    gs = P.draw_gamma_sequence(2.0, 200, 12)
    t = np.linspace(0.1, 6.1, 25)
    h = 1e-6
    _, slope = P.phase_and_slope(gs, t)
    fd = (P.phase_and_slope(gs, t + h)[0] - P.phase_and_slope(gs, t - h)[0]) / (2 * h)
    np.testing.assert_allclose(slope, fd, rtol=1e-5)


def test_batch_kernel_matches_literal_and_numpy_paths():
    seeds = replica_seeds(8, 40)
    thetas = np.array([0.05, 1.0, math.pi, 5.5])
    ns = [1, 2, 33, 200]
    out = P.phase_batch(seeds, 1.5, thetas, ns, chunk=13)
    for b in (0, 17, 39):
        for s, n in enumerate(ns):
            gs = P.draw_gamma_sequence(1.5, n, int(seeds[b]))
            for a, t in enumerate(thetas):
                assert out[s, a, b] == pytest.approx(P.pruefer_phase(gs, t).psi, abs=1e-10)
    traj, _ = P.phase_trajectories(seeds, 1.5, 1.0, 199)
    np.testing.assert_allclose(out[3, 1], traj[-1], atol=1e-10)


def test_phase_batch_is_independent_of_chunking():
    seeds = replica_seeds(9, 16)
    a = P.phase_batch(seeds, 2.0, [0.4, 2.0], [50, 300], chunk=7)
    b = P.phase_batch(seeds, 2.0, [0.4, 2.0], [50, 300], chunk=128)
    np.testing.assert_allclose(a, b, atol=1e-11)


def test_mean_phase_is_linear():
    psi = P.phase_batch(replica_seeds(31, 100_000), 2.0, [1.0], [64])[0, 0]
    assert abs(psi.mean() - 64.0) <= 4 * batch_means_se(psi)


def test_increment_identity_and_second_moment_bound():
    seeds = replica_seeds(32, 40_000)
    psi, inc = P.phase_trajectories(seeds, 2.0, 1.0, 40)
    k, m = 5, 40
    diff = (psi[m] - psi[k] - (m - k)) ** 2 - np.sum(inc[k:m] ** 2, axis=0)
    assert abs(diff.mean()) <= 4 * batch_means_se(diff)
    second = (psi[m] - (m + 1)) ** 2
    assert second.mean() <= 8 * m * 1.0 / 2.0 + 4 * batch_means_se(second)


def test_phase_is_increasing_per_draw():
    grid = TWO_PI * np.arange(1024) / 1024
    for seed in range(10):
        gs = P.draw_gamma_sequence(1.0, 300, seed)
        psi, _ = P.phase_and_slope(gs, grid)
        assert np.all(np.diff(psi) > 0)


def test_picket_fence():
    n, eta = 8, 0.3
    gs = P.GammaSequence.from_coefficients(2.0, np.zeros(n - 1))
    res = P.eigenangles(gs, eta)
    np.testing.assert_allclose(res.angles, (eta + TWO_PI * np.arange(n)) / n, atol=1e-12)


def test_single_point_ensemble():
    gs = P.draw_gamma_sequence(2.0, 1, 3)
    res = P.eigenangles(gs, 1.25)
    assert list(res.angles) == [1.25]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**63), st.sampled_from([0.5, 1.0, 2.0, 4.0]), st.integers(2, 200))
def test_eigenangles_solve_the_level_equation(seed, beta, n):
    gs = P.draw_gamma_sequence(beta, n, seed)
    res = P.eigenangles(gs)
    a = res.angles
    assert len(res) == n
    assert np.all(np.diff(a) > 0) and a[0] >= 0 and a[-1] < TWO_PI
    psi, slope = P.phase_and_slope(gs, a)
    resid = (psi - res.eta) / TWO_PI - np.arange(n)
    # residual in phase is at most tol times the local slope plus rounding
    assert np.all(np.abs(resid * TWO_PI) <= 1e-12 * slope + 1e-9 * n)


def test_eigenangle_errors():
    gs = P.draw_gamma_sequence(2.0, 5, 1)
    with pytest.raises(ValueError):
        P.eigenangles(gs, eta=TWO_PI)
    with pytest.raises(ValueError):
        P.eigenangles(gs, eta=0.1, tol=0.0)


def test_non_monotone_phase_is_reported(monkeypatch):
    gs = P.draw_gamma_sequence(2.0, 6, 1)

    def broken(gs_, thetas):
        t = np.asarray(thetas, dtype=float)
        return np.cos(7 * t), np.ones_like(t)

    monkeypatch.setattr(P, "phase_and_slope", broken)
    with pytest.raises(P.BracketError):
        P.eigenangles(gs, 0.5)


def test_two_point_gap_law():
    # circle distance u of the two angles has density (2 - 2 cos u) / (2 pi) on [0, pi]
    from scipy import stats

    draws = 20_000
    gaps = np.empty(draws)
    for i, s in enumerate(replica_seeds(55, draws)):
        a = P.eigenangles(P.draw_gamma_sequence(2.0, 2, int(s))).angles
        d = abs(a[1] - a[0])
        gaps[i] = min(d, TWO_PI - d)
    edges = np.linspace(0, math.pi, 65)
    cdf = (edges - np.sin(edges)) / math.pi
    observed = np.histogram(gaps, bins=edges)[0]
    expected = np.diff(cdf) * draws
    keep = expected >= 5
    obs = np.append(observed[keep], observed[~keep].sum())
    exp = np.append(expected[keep], expected[~keep].sum())
    assert stats.chisquare(obs, exp).pvalue > 1e-3


def test_eigenangles_escape_newton_cycle():
    # this draw sends plain Newton into a two-cycle inside one bracket
    gs = P.draw_gamma_sequence(2.0, 1024, 5638379831320998679)
    res = P.eigenangles(gs)
    assert len(res) == 1024
    psi, slope = P.phase_and_slope(gs, res.angles)
    levels = gs.eta + TWO_PI * np.arange(1024)
    assert np.all(np.abs(psi - levels) <= 1e-12 * slope + 1e-9 * 1024)
