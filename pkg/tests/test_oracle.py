import math

import numpy as np
import pytest
from scipy import integrate, stats

from cbeta import oracle as O
from cbeta.counting import count_in_arc
from cbeta.montecarlo import batch_means_se, sample_phases

TWO_PI = 2 * math.pi


def test_normalization_examples():
    for beta in (0.5, 2.0, 7.0):
        assert O.normalization_const(beta, 1) == pytest.approx(TWO_PI)
    assert O.normalization_const(2.0, 2) == pytest.approx(8 * math.pi**2)
    with pytest.raises(OverflowError):
        O.normalization_const(2.0, 400)
    with pytest.raises(ValueError):
        O.normalization_const(0.0, 2)


def test_normalization_by_quadrature():
    val = integrate.dblquad(lambda y, x: 2 - 2 * math.cos(x - y), 0, TWO_PI, 0, TWO_PI, epsabs=1e-11)[0]
    assert val == pytest.approx(O.normalization_const(2.0, 2), rel=1e-6)
    val3 = integrate.tplquad(
        lambda z, y, x: (2 - 2 * math.cos(x - y)) * (2 - 2 * math.cos(x - z)) * (2 - 2 * math.cos(y - z)),
        0, TWO_PI, 0, TWO_PI, 0, TWO_PI, epsabs=1e-6,
    )[0]
    assert val3 == pytest.approx(O.normalization_const(2.0, 3), rel=1e-6)


def one_dimensional_p2(beta, theta):
    # int_{[0,L]^2} g(x - y) = int_{-L}^{L} (L - |u|) g(u) du
    g = lambda u: (2 - 2 * math.cos(u)) ** (beta / 2) * (theta - abs(u))  # noqa: E731
    return 2 * integrate.quad(g, 0, theta, epsabs=1e-13)[0] / O.normalization_const(beta, 2)


def test_half_circle_pmf_closed_form():
    pmf = O.count_pmf_n2(2.0, math.pi, 2048)
    p2 = (math.pi**2 - 4) / (4 * math.pi**2)
    assert pmf.probs[2] == pytest.approx(p2, abs=1e-6)
    assert pmf.probs[2] == pytest.approx(0.148679, abs=1e-6)
    assert pmf.variance == pytest.approx(0.297359, abs=2e-6)
    assert pmf.probs[0] == pytest.approx(pmf.probs[2], abs=1e-12)


@pytest.mark.parametrize("beta", [0.7, 1.0, 2.0, 4.0, 5.5])
@pytest.mark.parametrize("theta", [0.3, math.pi / 2, 2.5, math.pi])
def test_pmf_matches_one_dimensional_reduction(beta, theta):
    pmf = O.count_pmf_n2(beta, theta, 2048)
    assert pmf.probs[2] == pytest.approx(one_dimensional_p2(beta, theta), abs=max(1e-6, 2 * pmf.quad_error))
    assert pmf.probs[0] == pytest.approx(one_dimensional_p2(beta, TWO_PI - theta), abs=max(1e-6, 2 * pmf.quad_error))
    assert pmf.mean == pytest.approx(2 * theta / TWO_PI, abs=pmf.quad_error + 1e-9)


def test_symmetry_and_vanishing_arc():
    for beta in (1.0, 3.0):
        pmf = O.count_pmf_n2(beta, math.pi, 512)
        assert pmf.probs[0] == pytest.approx(pmf.probs[2], abs=1e-12)
    small = O.count_pmf_n2(2.0, 1e-2, 256)
    assert small.probs[2] < 1e-8 and small.probs[0] > 0.99


def test_quadrature_converges_under_doubling():
    a = O.count_pmf_n2(2.0, math.pi / 2, 2048).probs[2]
    b = O.count_pmf_n2(2.0, math.pi / 2, 4096).probs[2]
    assert abs(a - b) < 1e-6
    r = O.integrate_joint_n2(2.0, 0, 1.0, 2048)
    assert abs(O.integrate_joint_n2(2.0, 0, 1.0, 4096).value - r.value) < r.quad_error


def test_rejection_sampler_two_points():
    angles, rate = O.rejection_sample(2.0, 2, seed=1, size=200_000)
    assert angles.shape == (200_000, 2)
    assert rate == pytest.approx(0.5, abs=0.01)
    hist = np.histogram(angles[:, 0], bins=64, range=(0, TWO_PI))[0]
    assert stats.chisquare(hist).pvalue > 1e-3
    ind = (np.sum(angles < math.pi, axis=1) == 2).astype(float)
    exact = O.count_pmf_n2(2.0, math.pi).probs[2]
    assert abs(ind.mean() - exact) <= 4 * batch_means_se(ind)


def test_rejection_sampler_domain():
    with pytest.raises(ValueError):
        O.rejection_sample(2.0, 4, 0)
    with pytest.raises(ValueError):
        O.rejection_sample(9.0, 2, 0)


@pytest.mark.parametrize("beta, n", [(1.0, 2), (4.0, 2), (2.0, 3)])
def test_pruefer_pathway_against_rejection(beta, n):
    reps = 100_000
    theta = math.pi / 2
    psi, eta = sample_phases(beta, [theta], [n], reps, 17)
    N = count_in_arc(psi[0, 0], eta)
    probs, ses = O.rejection_count_pmf(beta, n, theta, 18, reps)
    for k in range(n + 1):
        ind = (N == k).astype(float)
        assert abs(ind.mean() - probs[k]) <= 4 * math.hypot(batch_means_se(ind), ses[k])
