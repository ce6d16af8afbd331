"""Deterministic replica engine and the statistics used to judge its output.

Replica ``r`` of a run always receives the seed
``avalanche(master_seed ^ (r * 0xD1B54A32D192ED03))``; work is cut into
fixed-size chunks whose results are concatenated in replica order, so the
output never depends on the number of worker threads.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import ndtr

from . import pruefer
from .rng import replica_seed, replica_seeds

CHUNK = 2048
DEFAULT_BATCHES = 100


class ReplicaError(RuntimeError):
    """An estimator failed; ``first`` and ``last`` bound the failing replica indices."""

    def __init__(self, first: int, last: int, cause: BaseException):
        where = f"replica {first}" if first == last else f"replicas {first}..{last}"
        super().__init__(f"estimator failed at {where}: {cause!r}")
        self.first = first
        self.last = last
        self.__cause__ = cause


def default_threads() -> int:
    """``CBETA_THREADS`` if set, else 1."""
    value = os.environ.get("CBETA_THREADS", "").strip()
    if not value:
        return 1
    threads = int(value)
    if threads < 1:
        raise ValueError("CBETA_THREADS must be a positive integer")
    return threads


@dataclass(frozen=True)
class McConfig:
    beta: float
    n: int
    theta: float
    replicas: int
    master_seed: int
    parallelism: int = 1

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if self.n < 1 or self.replicas < 1 or self.parallelism < 1:
            raise ValueError("n, replicas and parallelism must be positive")
        if not 0.0 < self.theta <= math.pi:
            raise ValueError("theta must lie in (0, pi]")

    def seeds(self, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        stop = self.replicas if stop is None else stop
        return replica_seeds(self.master_seed, stop - start, start)


@dataclass(frozen=True)
class SummaryStats:
    """Count, mean and central power sums ``m2 = sum (x - mean)^2`` etc.

    Standard errors use the delta method: ``se_variance`` is
    ``sqrt((mu4 - var^2) / count)``.
    """

    count: int
    mean: float
    m2: float
    m3: float = 0.0
    m4: float = 0.0

    @classmethod
    def from_samples(cls, x) -> "SummaryStats":
        x = np.asarray(x, dtype=float).reshape(-1)
        if x.size == 0:
            raise ValueError("no samples")
        mean = float(np.mean(x))
        d = x - mean
        d2 = d * d
        return cls(x.size, mean, float(d2.sum()), float((d2 * d).sum()), float((d2 * d2).sum()))

    def merge(self, other: "SummaryStats") -> "SummaryStats":
        """Combine two disjoint samples (pairwise update of central sums)."""
        na, nb = self.count, other.count
        n = na + nb
        delta = other.mean - self.mean
        dn = delta / n
        mean = self.mean + nb * dn
        m2 = self.m2 + other.m2 + delta * dn * na * nb
        m3 = (
            self.m3
            + other.m3
            + delta * dn * dn * na * nb * (na - nb)
            + 3.0 * dn * (na * other.m2 - nb * self.m2)
        )
        m4 = (
            self.m4
            + other.m4
            + delta * dn**3 * na * nb * (na * na - na * nb + nb * nb)
            + 6.0 * dn * dn * (na * na * other.m2 + nb * nb * self.m2)
            + 4.0 * dn * (na * other.m3 - nb * self.m3)
        )
        return SummaryStats(n, mean, m2, m3, m4)

    @property
    def variance(self) -> float:
        return self.m2 / (self.count - 1) if self.count > 1 else 0.0

    @property
    def se_mean(self) -> float:
        return math.sqrt(self.variance / self.count)

    @property
    def se_variance(self) -> float:
        if self.count < 2:
            return 0.0
        mu2 = self.m2 / self.count
        mu4 = self.m4 / self.count
        return math.sqrt(max(mu4 - mu2 * mu2, 0.0) / self.count)

    def as_dict(self) -> dict:
        return dict(
            count=self.count,
            mean=self.mean,
            variance=self.variance,
            se_mean=self.se_mean,
            se_variance=self.se_variance,
        )


def _chunks(total: int, size: int = CHUNK):
    return [(a, min(a + size, total)) for a in range(0, total, size)]


def map_chunks(func: Callable[[int, int], np.ndarray], total: int, parallelism: int = 1, size: int = CHUNK):
    """Evaluate ``func(start, stop)`` on fixed chunks and concatenate in order.

    Results are concatenated along the last axis. Exceptions are re-raised
    as :class:`ReplicaError` carrying the chunk's replica range.
    """

    def guarded(bounds):
        a, b = bounds
        try:
            return func(a, b)
        except ReplicaError:
            raise
        except Exception as exc:  # noqa: BLE001
            raise ReplicaError(a, b - 1, exc) from exc

    bounds = _chunks(total, size)
    if parallelism <= 1 or len(bounds) == 1:
        parts = [guarded(bd) for bd in bounds]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            parts = list(pool.map(guarded, bounds))
    return np.concatenate(parts, axis=-1)


def run_replicas(
    config: McConfig,
    estimator: Callable,
    vectorized: bool = False,
    return_samples: bool = False,
):
    """Evaluate ``estimator`` once per replica and reduce.

    Parameters
    ----------
    estimator
        ``estimator(seed, config) -> float`` or, with ``vectorized=True``,
        ``estimator(seeds, config) -> array`` for a chunk of seeds.
    return_samples
        Also return the raw sample vector in replica order.
    """
    if vectorized:

        def work(a, b):
            return np.asarray(estimator(config.seeds(a, b), config), dtype=float).reshape(-1)

    else:

        def work(a, b):
            out = np.empty(b - a)
            for i, r in enumerate(range(a, b)):
                try:
                    out[i] = estimator(replica_seed(config.master_seed, r), config)
                except Exception as exc:  # noqa: BLE001
                    raise ReplicaError(r, r, exc) from exc
            return out

    samples = map_chunks(work, config.replicas, config.parallelism)
    stats = SummaryStats.from_samples(samples)
    return (stats, samples) if return_samples else stats


def sample_phases(beta: float, thetas, ns, replicas: int, master_seed: int, parallelism: int = 1):
    """Phases ``psi_{n-1}(theta)`` and rotations ``eta`` of ``replicas`` draws.

    Returns ``(psi, eta)`` with shapes ``(len(ns), len(thetas), replicas)``
    and ``(replicas,)``. All sizes and angles share the same coefficients.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    ns = np.atleast_1d(ns)

    def work(a, b):
        return pruefer.phase_batch(replica_seeds(master_seed, b - a, a), beta, thetas, ns)

    psi = map_chunks(work, replicas, parallelism)
    eta = pruefer.eta_from_seeds(replica_seeds(master_seed, replicas))
    return psi, eta


def batch_means_se(x, batches: int = DEFAULT_BATCHES, statistic: Callable = np.mean) -> float:
    """Standard error of ``statistic`` from contiguous batch estimates.

    Complex samples give the root of the summed real and imaginary variances.
    """
    x = np.asarray(x)
    count = x.shape[-1]
    batches = min(batches, count)
    if batches < 2:
        return math.inf
    usable = count - count % batches
    parts = x[..., :usable].reshape(x.shape[:-1] + (batches, usable // batches))
    est = statistic(parts, axis=-1)
    if np.iscomplexobj(est):
        spread = np.var(est.real, axis=-1, ddof=1) + np.var(est.imag, axis=-1, ddof=1)
    else:
        spread = np.var(est, axis=-1, ddof=1)
    return np.sqrt(spread / batches) if np.ndim(spread) else math.sqrt(spread / batches)


def sample_variance(x, axis=-1):
    return np.var(x, axis=axis, ddof=1)


@dataclass(frozen=True)
class CharFnEstimate:
    lambdas: np.ndarray
    estimates: np.ndarray
    ses: np.ndarray


def empirical_char_fn(samples, lambdas: Sequence[float], batches: int = DEFAULT_BATCHES) -> CharFnEstimate:
    """Mean of ``exp(i lambda x)`` with batch-means standard errors."""
    x = np.asarray(samples, dtype=float).reshape(-1)
    if x.size == 0:
        raise ValueError("no samples")
    lam = np.asarray(lambdas, dtype=float).reshape(-1)
    est = np.empty(lam.size, dtype=complex)
    ses = np.empty(lam.size)
    for i, l in enumerate(lam):
        e = np.exp(1j * l * x)
        est[i] = e.mean()
        ses[i] = batch_means_se(e, batches) if x.size > 1 else 0.0
    return CharFnEstimate(lambdas=lam, estimates=est, ses=ses)


def predicted_char_fn(beta: float, n: int, theta: float, lam: float) -> float:
    """``exp(-(4 lambda^2 / beta) ln(2 + n theta))`` for ``lambda^2 <= beta / 8``."""
    if lam * lam > beta / 8.0:
        raise ValueError("lambda^2 must not exceed beta / 8")
    return math.exp(-4.0 * lam * lam / beta * math.log(2.0 + n * theta))


def predicted_count_char_fn(beta: float, n: int, theta: float, lam: float) -> float:
    """``exp(-lambda^2 ln(2 + n theta) / (beta pi^2))`` for ``|lambda| <= 2 pi sqrt(beta / 8)``."""
    if abs(lam) > 2.0 * math.pi * math.sqrt(beta / 8.0):
        raise ValueError("|lambda| must not exceed 2 pi sqrt(beta / 8)")
    return math.exp(-lam * lam * math.log(2.0 + n * theta) / (beta * math.pi**2))


def gaussian_cdf(x):
    """Standard normal distribution function (erfc based, absolute error < 1e-15)."""
    out = ndtr(np.asarray(x, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class KsResult:
    d_stat: float
    sample_size: int
    critical: float = math.nan

    @property
    def rejects(self) -> bool:
        return self.d_stat > self.critical


def ks_critical(m: int, alpha: float = 0.01) -> float:
    """Asymptotic one-sample critical value ``sqrt(-ln(alpha / 2) / 2) / sqrt(m)``."""
    return math.sqrt(-0.5 * math.log(alpha / 2.0)) / math.sqrt(m)


def ks_distance(samples, alpha: float = 0.01) -> KsResult:
    """Exact one-sample KS statistic against the standard normal law."""
    x = np.sort(np.asarray(samples, dtype=float).reshape(-1))
    m = x.size
    if m == 0:
        raise ValueError("no samples")
    g = ndtr(x)
    i = np.arange(1, m + 1)
    d = max(float(np.max(i / m - g)), float(np.max(g - (i - 1) / m)))
    return KsResult(d_stat=d, sample_size=m, critical=ks_critical(m, alpha))


def ks_2samp(a, b, alpha: float = 0.01) -> KsResult:
    """Two-sample KS statistic; ties are handled by evaluating both empirical
    distribution functions on the pooled distinct values."""
    a = np.sort(np.asarray(a, dtype=float).reshape(-1))
    b = np.sort(np.asarray(b, dtype=float).reshape(-1))
    if a.size == 0 or b.size == 0:
        raise ValueError("no samples")
    pooled = np.unique(np.concatenate([a, b]))
    fa = np.searchsorted(a, pooled, side="right") / a.size
    fb = np.searchsorted(b, pooled, side="right") / b.size
    d = float(np.max(np.abs(fa - fb)))
    eff = a.size * b.size / (a.size + b.size)
    return KsResult(d_stat=d, sample_size=int(a.size + b.size), critical=ks_critical(eff, alpha))
