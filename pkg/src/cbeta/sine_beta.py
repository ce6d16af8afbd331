"""Interval counts of the Sine_beta process through a finite-n proxy.

``Card(L cap [0, x])`` is approximated by the arc count ``N_n(0, x / n)`` of a
size-``n`` circular ensemble, which converges in law as ``n`` grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .counting import count_in_arc
from .montecarlo import sample_phases
from .pruefer import draw_gamma_sequence, pruefer_phase

MIN_PROXY_SIZE = 4096


def default_proxy_size(x: float) -> int:
    return max(MIN_PROXY_SIZE, math.ceil(100.0 * x))


@dataclass(frozen=True)
class SineBetaConfig:
    beta: float
    x: float
    n_approx: Optional[int] = None
    replicas: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if not self.beta > 0 or not self.x > 0:
            raise ValueError("beta and x must be positive")
        if self.n_approx is None:
            object.__setattr__(self, "n_approx", default_proxy_size(self.x))
        if not 0 < self.x / self.n_approx <= math.pi:
            raise ValueError("x / n_approx must lie in (0, pi]")

    @property
    def theta(self) -> float:
        return self.x / self.n_approx


def sample_sine_count(config: SineBetaConfig, seed: Optional[int] = None) -> int:
    """One draw of ``N_n(0, x / n)`` with ``n = config.n_approx``."""
    gs = draw_gamma_sequence(config.beta, config.n_approx, config.seed if seed is None else seed)
    return count_in_arc(pruefer_phase(gs, config.theta).psi, gs.eta)


def sample_sine_counts(beta: float, xs, n_approx, replicas: int, seed: int, parallelism: int = 1):
    """Counts for several interval lengths from one shared set of draws.

    ``n_approx`` gives the proxy size per length. Returns an integer array of
    shape ``(len(xs), replicas)``.
    """
    xs = [float(v) for v in np.atleast_1d(xs)]
    sizes = [int(v) for v in np.atleast_1d(n_approx)]
    if len(sizes) != len(xs):
        raise ValueError("one proxy size per length is required")
    for x, n in zip(xs, sizes):
        SineBetaConfig(beta, x, n)
    ns = sorted(set(sizes))
    thetas = sorted({x / n for x, n in zip(xs, sizes)})
    psi, eta = sample_phases(beta, thetas, ns, replicas, seed, parallelism)
    out = np.empty((len(xs), replicas), dtype=np.int64)
    for i, (x, n) in enumerate(zip(xs, sizes)):
        out[i] = count_in_arc(psi[ns.index(n), thetas.index(x / n)], eta)
    return out


def predicted_sine_variance(beta: float, x: float) -> float:
    """``2 ln(2 + x) / (beta pi^2)``."""
    if not x > 0:
        raise ValueError("x must be positive")
    return 2.0 * math.log(2.0 + x) / (beta * math.pi**2)


def standardize_sine(count, beta: float, x: float):
    """``sqrt(pi^2 beta / (2 ln(2 + x))) * (count - x / (2 pi))``."""
    return math.sqrt(math.pi**2 * beta / (2.0 * math.log(2.0 + x))) * (
        np.asarray(count, dtype=float) - x / (2.0 * math.pi)
    )
