"""Exact small-n ground truth for the ensemble density.

The joint density of the angles is

    J(theta_1, ..., theta_n) = prod_{j<k} |e^{i theta_j} - e^{i theta_k}|^beta / C_{beta,n}

with ``C_{beta,n} = (2 pi)^n Gamma(1 + beta n / 2) / Gamma(1 + beta / 2)^n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

TWO_PI = 2.0 * math.pi


class QuadratureError(RuntimeError):
    """Refinement did not settle to the requested accuracy."""


def log_normalization_const(beta: float, n: int) -> float:
    if not beta > 0 or n < 1:
        raise ValueError("beta must be positive and n at least 1")
    return n * math.log(TWO_PI) + math.lgamma(1.0 + beta * n / 2.0) - n * math.lgamma(1.0 + beta / 2.0)


def normalization_const(beta: float, n: int) -> float:
    """``C_{beta,n}``; raises ``OverflowError`` when it exceeds double range."""
    log_c = log_normalization_const(beta, n)
    if log_c > 709.0:
        raise OverflowError(f"C_beta,n = exp({log_c:.1f}) overflows double precision")
    return math.exp(log_c)


def pair_weight(delta, beta: float):
    """``|e^{i a} - e^{i b}|^beta`` written as ``(2 - 2 cos(a - b))^(beta / 2)``."""
    return np.maximum(2.0 - 2.0 * np.cos(delta), 0.0) ** (beta / 2.0)


@dataclass(frozen=True)
class OracleResult:
    value: float
    quad_error: float
    nodes: int


@dataclass(frozen=True)
class CountPmf:
    probs: np.ndarray
    quad_error: float = 0.0
    nodes: int = 0

    def __post_init__(self):
        if np.any(self.probs < -1e-12) or abs(self.probs.sum() - 1.0) > 1e-8:
            raise ValueError("probabilities must be non-negative and sum to one")

    @property
    def mean(self) -> float:
        return float(np.dot(np.arange(self.probs.size), self.probs))

    @property
    def variance(self) -> float:
        k = np.arange(self.probs.size)
        return float(np.dot(k * k, self.probs) - self.mean**2)


def _square_integral(beta: float, a: float, b: float, nodes: int) -> float:
    """Tensor trapezoid rule for ``int_{[a,b]^2} (2 - 2 cos(x - y))^(beta/2)``."""
    x = np.linspace(a, b, nodes + 1)
    w = np.full(nodes + 1, (b - a) / nodes)
    w[0] *= 0.5
    w[-1] *= 0.5
    f = pair_weight(x[:, None] - x[None, :], beta)
    return float(w @ f @ w)


def integrate_joint_n2(beta: float, a: float, b: float, nodes: int) -> OracleResult:
    """``P(theta_1, theta_2 both in [a, b])`` for ``n = 2`` with a doubling error estimate."""
    c = normalization_const(beta, 2)
    fine = _square_integral(beta, a, b, nodes) / c
    coarse = _square_integral(beta, a, b, max(nodes // 2, 1)) / c
    return OracleResult(value=fine, quad_error=abs(fine - coarse), nodes=nodes)


def count_pmf_n2(beta: float, theta: float, nodes: int = 2048, max_error: float = 1e-4) -> CountPmf:
    """Law of the number of points of a two-point ensemble in ``(0, theta)``.

    ``p_2`` integrates the density over ``(0, theta)^2`` and ``p_0`` over
    ``(theta, 2 pi)^2``; ``p_1`` is the remainder.
    """
    if not 0.0 < theta <= math.pi:
        raise ValueError("theta must lie in (0, pi]")
    if nodes < 2:
        raise ValueError("nodes must be at least 2")
    p2 = integrate_joint_n2(beta, 0.0, theta, nodes)
    p0 = integrate_joint_n2(beta, theta, TWO_PI, nodes)
    err = p2.quad_error + p0.quad_error
    if err > max_error:
        raise QuadratureError(f"quadrature error estimate {err:.2e} exceeds {max_error:.1e}")
    probs = np.array([p0.value, 1.0 - p0.value - p2.value, p2.value])
    return CountPmf(probs=probs, quad_error=err, nodes=nodes)


def count_variance_n2(beta: float, theta: float, nodes: int = 2048) -> OracleResult:
    """Variance of the two-point arc count, ``p_0 + p_2 - (p_2 - p_0)^2``."""
    fine = count_pmf_n2(beta, theta, nodes)
    coarse = count_pmf_n2(beta, theta, max(nodes // 2, 2))
    return OracleResult(fine.variance, abs(fine.variance - coarse.variance) + fine.quad_error, nodes)


def rejection_sample(beta: float, n: int, seed: int, size: int = 1, batch: int = 1 << 16):
    """Exact draws of ``n`` angles by uniform proposals.

    A proposal is accepted with probability
    ``prod_{j<k} (2 - 2 cos(theta_j - theta_k))^(beta / 2) / 2^(beta n (n - 1) / 2)``.

    Returns
    -------
    angles : ndarray, shape (size, n)
    acceptance_rate : float
    """
    if n not in (2, 3):
        raise ValueError("rejection sampling is provided for n = 2 and n = 3")
    if not 0 < beta <= 8:
        raise ValueError("beta must lie in (0, 8]")
    rng = np.random.default_rng(seed)
    log_top = beta * n * (n - 1) / 2.0 * math.log(2.0)
    kept = []
    have = proposed = 0
    while have < size:
        th = rng.uniform(0.0, TWO_PI, size=(batch, n))
        log_w = np.zeros(batch)
        for j, k in combinations(range(n), 2):
            log_w += beta / 2.0 * np.log(np.maximum(2.0 - 2.0 * np.cos(th[:, j] - th[:, k]), 1e-300))
        accept = np.log(rng.uniform(size=batch)) < log_w - log_top
        kept.append(th[accept])
        have += int(accept.sum())
        proposed += batch
    angles = np.concatenate(kept)[:size]
    return angles, have / proposed


def rejection_count_pmf(beta: float, n: int, theta: float, seed: int, size: int):
    """Empirical arc-count law from rejection draws, with per-cell standard errors."""
    angles, _ = rejection_sample(beta, n, seed, size)
    counts = np.sum(angles < theta, axis=1)
    probs = np.bincount(counts, minlength=n + 1) / size
    return probs, np.sqrt(probs * (1.0 - probs) / size)
