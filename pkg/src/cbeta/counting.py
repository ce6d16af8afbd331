"""Arc counts, their closed-form predictors, and the deterministic eps/s sequences.

The number of eigenangles in ``(0, theta)`` has the law of

    floor((psi_{n-1}(theta) - eta) / (2 pi)) + 1

with ``eta`` uniform and independent of the phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

TWO_PI = 2.0 * math.pi


def count_in_arc(psi, eta):
    """Arc count from a phase and a rotation; vectorized over both arguments."""
    c = np.floor((np.asarray(psi, dtype=float) - np.asarray(eta, dtype=float)) / TWO_PI) + 1.0
    c = c.astype(np.int64)
    return int(c) if c.ndim == 0 else c


@dataclass(frozen=True)
class CountSample:
    count: int
    psi: float
    eta: float

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be non-negative")
        if abs(self.count - self.psi / TWO_PI) > 1.0 + 1e-12:
            raise ValueError("count is inconsistent with psi")

    @classmethod
    def from_phase(cls, psi: float, eta: float) -> "CountSample":
        return cls(count=count_in_arc(psi, eta), psi=float(psi), eta=float(eta))


class Predictors(NamedTuple):
    mean: float
    count_var: float
    phase_var: float
    scale: float


def _check_arc(theta: float) -> float:
    theta = float(theta)
    if not 0.0 < theta <= math.pi:
        raise ValueError(
            "theta must lie in (0, pi]; use N(0, 2 pi - theta) = n - N(0, theta) for larger arcs"
        )
    return theta


def predictors(beta: float, n: int, theta: float) -> Predictors:
    """Mean, count variance, phase variance and CLT scale for an arc of length ``theta``.

    Examples
    --------
    >>> p = predictors(2.0, 100, math.pi)
    >>> round(p.mean, 6), round(p.count_var, 4)
    (50.0, 0.5832)
    """
    theta = _check_arc(theta)
    if not beta > 0 or n < 1:
        raise ValueError("beta must be positive and n at least 1")
    log_term = math.log(2.0 + n * theta)
    count_var = 2.0 * log_term / (math.pi**2 * beta)
    return Predictors(
        mean=n * theta / TWO_PI,
        count_var=count_var,
        phase_var=8.0 / beta * log_term,
        scale=math.sqrt(math.pi**2 * beta / (2.0 * log_term)),
    )


def standardize(count, beta: float, n: int, theta: float):
    """``scale * (count - mean)``; accepts arrays of counts."""
    p = predictors(beta, n, theta)
    return p.scale * (np.asarray(count, dtype=float) - p.mean)


def standardize_phase(psi, beta: float, n: int, theta: float):
    """``sqrt(beta / (8 ln(2 + n theta))) * (psi - n theta)``."""
    theta = _check_arc(theta)
    return math.sqrt(beta / (8.0 * math.log(2.0 + n * theta))) * (np.asarray(psi, dtype=float) - n * theta)


class EpsilonS(NamedTuple):
    eps_k: float
    s_k: float
    gap_k: float


def epsilon_s_sequences(beta: float, k: int) -> EpsilonS:
    """``eps_k = 4 / (beta (k + 1) + 2)``, ``s_k = eps_0 + ... + eps_{k-1}``
    and ``gap_k = |s_k - (4 / beta) ln(k + 1)|``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    eps, s, gap = epsilon_s_table(beta, k)
    return EpsilonS(float(eps[k]), float(s[k]), float(gap[k]))


def epsilon_s_table(beta: float, k_max: int):
    """Arrays ``eps, s, gap`` for ``k = 0 .. k_max``."""
    if not beta > 0:
        raise ValueError("beta must be positive")
    k = np.arange(k_max + 1, dtype=float)
    eps = 4.0 / (beta * (k + 1.0) + 2.0)
    s = np.zeros_like(eps)
    np.cumsum(eps[:-1], out=s[1:])
    gap = np.abs(s - 4.0 / beta * np.log1p(k))
    return eps, s, gap


def gap_bound(beta: float) -> float:
    """``(8 / beta^2 + 2 / beta) * pi^2 / 6``, the uniform bound on ``gap_k``."""
    return (8.0 / beta**2 + 2.0 / beta) * math.pi**2 / 6.0
