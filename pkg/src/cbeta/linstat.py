"""Linear statistics ``sum_j f(theta_j)`` of eigenangle configurations.

Test functions are represented by their Fourier coefficients
``a_j = (1 / 2 pi) int_0^{2 pi} f(x) e^{-i j x} dx``. For zero-mean ``f`` the
statistic has a centered Gaussian limit with variance ``2 sigma^2`` where
``sigma^2 = (2 / beta) sum_{j >= 1} j |a_j|^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np

from . import pruefer
from .montecarlo import map_chunks
from .rng import replica_seeds

TWO_PI = 2.0 * math.pi
DEFAULT_NODES = 8192


@dataclass(frozen=True)
class FourierSeries:
    """Coefficients ``a_{-N} .. a_N`` stored as an array indexed by ``j + N``."""

    max_index: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.coeffs.shape != (2 * self.max_index + 1,):
            raise ValueError("coeffs must have length 2 * max_index + 1")

    @classmethod
    def from_positive(cls, positive: Mapping[int, complex], a0: complex = 0.0) -> "FourierSeries":
        """Real-function series from ``{j: a_j}`` for ``j >= 1``; ``a_{-j} = conj(a_j)``."""
        N = max(positive, default=0)
        c = np.zeros(2 * N + 1, dtype=complex)
        c[N] = a0
        for j, a in positive.items():
            if j < 1:
                raise ValueError("keys must be positive indices")
            c[N + j] = a
            c[N - j] = np.conj(a)
        return cls(N, c)

    @classmethod
    def from_function(cls, f: Callable, max_index: int, nodes: int = DEFAULT_NODES) -> "FourierSeries":
        """Trapezoid-rule coefficients of ``f`` for ``|j| <= max_index``."""
        _check_nodes(max_index, nodes)
        x = TWO_PI * np.arange(nodes) / nodes
        c = np.fft.fft(np.asarray(f(x), dtype=float)) / nodes
        j = np.arange(-max_index, max_index + 1)
        return cls(max_index, c[j % nodes])

    def coeff(self, j: int) -> complex:
        if abs(j) > self.max_index:
            return 0j
        return complex(self.coeffs[j + self.max_index])

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.max_index, self.max_index + 1)

    def __call__(self, x):
        """Evaluate the (real part of the) trigonometric polynomial."""
        x = np.asarray(x, dtype=float)
        ph = np.exp(1j * np.multiply.outer(x, self.indices))
        return np.real(ph @ self.coeffs)

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        ph = np.exp(1j * np.multiply.outer(x, self.indices))
        return np.real(ph @ (1j * self.indices * self.coeffs))

    def is_real(self, tol: float = 1e-12) -> bool:
        return bool(np.allclose(self.coeffs, np.conj(self.coeffs[::-1]), atol=tol, rtol=0))


def _check_nodes(j: int, nodes: int):
    if nodes < 4 * abs(j) + 16:
        raise ValueError(f"need at least {4 * abs(j) + 16} quadrature nodes for index {j}")


def fourier_coeff(f: Callable, j: int, quad_nodes: int = DEFAULT_NODES) -> complex:
    """Trapezoid rule for ``(1 / 2 pi) int f(x) e^{-i j x} dx`` on ``[0, 2 pi)``."""
    _check_nodes(j, quad_nodes)
    x = TWO_PI * np.arange(quad_nodes) / quad_nodes
    return complex(np.mean(np.asarray(f(x), dtype=float) * np.exp(-1j * j * x)))


def fejer_kernel(N: int, x):
    """``(N / 2 pi) (sin(N x / 2) / (N sin(x / 2)))^2`` with value ``N / 2 pi`` at ``x = 0 mod 2 pi``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    x = np.asarray(x, dtype=float)
    s = np.sin(0.5 * x)
    near = np.abs(s) < 1e-8
    safe = np.where(near, 1.0, s)
    val = N / TWO_PI * (np.sin(0.5 * N * x) / (N * safe)) ** 2
    out = np.where(near, N / TWO_PI, val)
    return float(out) if out.ndim == 0 else out


def fejer_weights(N: int, indices) -> np.ndarray:
    return np.clip(1.0 - np.abs(indices) / N, 0.0, None)


def fejer_smooth(series: FourierSeries, N: int) -> FourierSeries:
    """Multiply ``a_j`` by ``1 - |j| / N`` (zero for ``|j| >= N``)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    M = min(series.max_index, N - 1)
    j = np.arange(-M, M + 1)
    c = series.coeffs[j + series.max_index] * fejer_weights(N, j)
    return FourierSeries(M, c)


@dataclass(frozen=True)
class LimitVariance:
    sigma_sq: float
    limit_var: float
    sigma_sq_smoothed: Optional[float] = None


def limit_variance(beta: float, series: FourierSeries, fejer_N: Optional[int] = None, tol: float = 1e-12) -> LimitVariance:
    """``sigma^2 = (2 / beta) sum_{j >= 1} j |a_j|^2`` and ``limit_var = 2 sigma^2``.

    With ``fejer_N`` also returns the smoothed value
    ``(2 / beta) sum_{j=1}^{N} j (1 - j / N)^2 |a_j|^2``.
    """
    if abs(series.coeff(0)) > tol:
        raise ValueError("the test function must have zero mean (a_0 = 0)")
    N = series.max_index
    j = np.arange(1, N + 1)
    a2 = np.abs(series.coeffs[N + 1 :]) ** 2
    sigma_sq = 2.0 / beta * float(np.sum(j * a2))
    smoothed = None
    if fejer_N is not None:
        smoothed = 2.0 / beta * float(np.sum(j * fejer_weights(fejer_N, j) ** 2 * a2))
    return LimitVariance(sigma_sq=sigma_sq, limit_var=2.0 * sigma_sq, sigma_sq_smoothed=smoothed)


def linear_statistic(angles, f: Callable) -> float:
    """``sum_j f(theta_j)`` over an :class:`EigenangleSet` or an array of angles."""
    a = angles.angles if hasattr(angles, "angles") else np.asarray(angles, dtype=float)
    return float(np.sum(f(a)))


# test-function library -------------------------------------------------------


def cosine(k: int = 1, amplitude: float = 2.0) -> FourierSeries:
    """``amplitude * cos(k x)``."""
    return FourierSeries.from_positive({k: amplitude / 2.0})


def cos_plus_sin3() -> FourierSeries:
    """``2 cos(x) + sin(3 x)``."""
    return FourierSeries.from_positive({1: 1.0, 3: -0.5j})


def hat(width: float = 1.0):
    """Zero-mean tent ``max(0, 1 - |x|_circ / w) - w / (2 pi)`` (Lipschitz, not C^1).

    Returns ``(f, coefficient)`` with the exact coefficient function
    ``a_j = (1 - cos(j w)) / (pi w j^2)`` for ``j != 0``.
    """
    if not 0 < width <= math.pi:
        raise ValueError("width must lie in (0, pi]")

    def f(x):
        d = np.abs(np.mod(np.asarray(x, dtype=float) + math.pi, TWO_PI) - math.pi)
        return np.clip(1.0 - d / width, 0.0, None) - width / TWO_PI

    def f_prime(x):
        r = np.mod(np.asarray(x, dtype=float) + math.pi, TWO_PI) - math.pi
        inside = np.abs(r) < width
        return np.where(inside, -np.sign(r) / width, 0.0)

    def coefficient(j: int) -> float:
        if j == 0:
            return 0.0
        return (1.0 - math.cos(j * width)) / (math.pi * width * j * j)

    f.derivative = f_prime
    return f, coefficient


def hat_series(width: float, max_index: int) -> FourierSeries:
    _, coefficient = hat(width)
    return FourierSeries.from_positive({j: coefficient(j) for j in range(1, max_index + 1)})


# spectra ---------------------------------------------------------------------


def sample_spectra(beta: float, n: int, replicas: int, master_seed: int, parallelism: int = 1) -> np.ndarray:
    """Eigenangles of ``replicas`` draws, shape ``(n, replicas)``."""

    def work(a, b):
        seeds = replica_seeds(master_seed, b - a, a)
        out = np.empty((n, b - a))
        for i, s in enumerate(seeds):
            out[:, i] = pruefer.eigenangles(pruefer.draw_gamma_sequence(beta, n, int(s))).angles
        return out

    return map_chunks(work, replicas, parallelism, size=256)


def series_statistics(spectra: np.ndarray, series: FourierSeries) -> np.ndarray:
    """Linear statistic of a trigonometric polynomial for every column of ``spectra``.

    Uses power sums ``sum_m e^{i j theta_m}``, so the cost is ``O(n N)`` per draw.
    """
    out = np.zeros(spectra.shape[1])
    for j in range(1, series.max_index + 1):
        a = series.coeff(j)
        if a == 0:
            continue
        p = np.exp(1j * j * spectra).sum(axis=0)
        out += 2.0 * np.real(a * p)
    return out + spectra.shape[0] * np.real(series.coeff(0))
