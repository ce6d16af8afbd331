"""Pruefer phases of the circular beta-ensemble.

Given independent ``gamma_k ~ Theta_{beta (k + 1) + 1}`` the phases obey

    psi_0(theta) = theta,
    psi_{k+1}(theta) = psi_k(theta) + theta + U1(psi_k(theta), gamma_k),

and the solutions of ``psi_{n-1}(theta) = eta (mod 2 pi)`` for an independent
uniform ``eta`` are distributed as the eigenangles of a CbetaE(n) draw.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .rng import GOLDEN, MASK64, avalanche, eta_uniforms, index_seeds, stream_uniforms
from .theta_dist import theta_nu_from_uniforms

TWO_PI = 2.0 * np.pi


class BracketError(RuntimeError):
    """Root bracketing failed because the computed phase was not monotone."""


def _check_disk(alpha):
    if np.any(np.abs(alpha) >= 1.0):
        raise ValueError("alpha must lie in the open unit disk")


def upsilon(psi, alpha):
    """``-2 Im log(1 - alpha e^{i psi})`` on the principal branch.

    ``Re(1 - alpha e^{i psi}) > 0`` for ``|alpha| < 1``, so the result lies in
    ``(-pi, pi)``. Accepts scalars or broadcasting arrays.
    """
    _check_disk(alpha)
    w = 1.0 - np.asarray(alpha) * np.exp(1j * np.asarray(psi, dtype=float))
    return -2.0 * np.angle(w)


def upsilon_tilde(psi, alpha):
    """Linearization ``2 Im(alpha e^{i psi})`` of :func:`upsilon`."""
    return 2.0 * np.imag(np.asarray(alpha) * np.exp(1j * np.asarray(psi, dtype=float)))


def upsilon1(psi, alpha):
    """``upsilon(psi, alpha) - upsilon(0, alpha)``, the recursion increment."""
    return upsilon(psi, alpha) - upsilon(0.0, alpha)


def coefficient_law(beta: float, k):
    """Shape ``nu = beta (k + 1) + 1`` of the coefficient with index ``k``."""
    return beta * (np.asarray(k, dtype=float) + 1.0) + 1.0


def gamma_block(seeds, k0: int, k1: int, beta: float) -> np.ndarray:
    """Coefficients ``gamma_k0 .. gamma_{k1-1}`` of many sequences.

    Returns a complex array of shape ``(k1 - k0, len(seeds))``. Coefficient
    ``k`` of a sequence depends only on its seed and ``k``.
    """
    sub = index_seeds(seeds, k0, k1)
    nu = coefficient_law(beta, np.arange(k0, k1))[:, None]
    return theta_nu_from_uniforms(nu, stream_uniforms(sub, 1), stream_uniforms(sub, 2))


def eta_from_seeds(seeds) -> np.ndarray:
    """The uniform rotation in ``[0, 2 pi)`` attached to each sequence seed."""
    return np.mod(TWO_PI * eta_uniforms(seeds), TWO_PI)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GammaSequence:
    """The coefficients ``gamma_0 .. gamma_{n-2}`` of one ensemble draw."""

    beta: float
    n: int
    seed: int
    gammas: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(self.gammas) != self.n - 1:
            raise ValueError("a size-n draw needs exactly n - 1 coefficients")
        if np.any(np.abs(self.gammas) >= 1.0):
            raise ValueError("coefficients must lie in the open unit disk")

    @classmethod
    def from_coefficients(cls, beta: float, gammas, seed: int = 0) -> "GammaSequence":
        """Wrap explicit coefficients, e.g. all zeros for the picket fence."""
        g = _readonly(np.array(gammas, dtype=complex).reshape(-1))
        return cls(beta=float(beta), n=g.size + 1, seed=int(seed), gammas=g)

    @property
    def eta(self) -> float:
        """Rotation variable paired with this draw's seed."""
        return float(eta_from_seeds(np.array([self.seed], dtype=np.uint64))[0])


def draw_gamma_sequence(beta: float, n: int, seed: int) -> GammaSequence:
    """Draw the coefficients of a CbetaE(n) sample, deterministically in the seed.

    Coefficient ``j`` uses its own sub-stream, so the first ``m`` coefficients
    agree for every ``n >= m + 1``.
    """
    if not beta > 0:
        raise ValueError("beta must be positive")
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    seed = int(seed) & MASK64
    g = gamma_block(np.array([seed], dtype=np.uint64), 0, int(n) - 1, float(beta))[:, 0]
    return GammaSequence(beta=float(beta), n=int(n), seed=seed, gammas=_readonly(g.copy()))


def gamma_stream_seed(seed: int, j: int) -> int:
    """Sub-seed of coefficient ``j``; ``SplitMix64(gamma_stream_seed(s, j))``
    fed to :func:`cbeta.theta_dist.sample_theta_nu` reproduces it."""
    return avalanche(int(seed) ^ ((j * GOLDEN) & MASK64))


@dataclass(frozen=True)
class PrueferEval:
    theta: float
    psi: float
    trajectory: Optional[np.ndarray] = field(default=None, repr=False)


def pruefer_phase(gs: GammaSequence, theta: float, want_trajectory: bool = False) -> PrueferEval:
    """Run the recursion at one angle.

    ``psi`` is accumulated unreduced. ``psi_{n-1}(0) = 0`` exactly and
    ``psi_{n-1}(2 pi) = 2 pi n`` up to rounding.
    """
    g = gs.gammas
    traj = np.empty(gs.n if want_trajectory else 0)
    psi = _kernels.literal_phase(
        np.ascontiguousarray(g.real), np.ascontiguousarray(g.imag), float(theta), traj
    )
    return PrueferEval(theta=float(theta), psi=float(psi), trajectory=traj if want_trajectory else None)


def phase_and_slope(gs: GammaSequence, thetas) -> tuple[np.ndarray, np.ndarray]:
    """``psi_{n-1}`` and ``d psi_{n-1} / d theta`` at many angles at once."""
    thetas = np.ascontiguousarray(thetas, dtype=float)
    psi = np.empty_like(thetas)
    slope = np.empty_like(thetas)
    g = gs.gammas
    _kernels.phase_and_slope(
        np.ascontiguousarray(g.real), np.ascontiguousarray(g.imag), thetas, psi, slope
    )
    return psi, slope


@dataclass(frozen=True)
class EigenangleSet:
    angles: np.ndarray
    eta: float

    def __len__(self):
        return len(self.angles)


def eigenangles(gs: GammaSequence, eta: Optional[float] = None, tol: float = 1e-12, grid_factor: int = 4) -> EigenangleSet:
    """Solve ``psi_{n-1}(theta) = eta + 2 pi m`` for ``m = 0 .. n - 1``.

    The phase is tabulated on a uniform grid of ``4 n`` angles, every level is
    bracketed by the grid, and each root is refined by Newton steps that fall
    back to bisection whenever they leave the current bracket or fail to
    halve the previous step. Iteration
    stops once the last step or the bracket is below ``tol``.

    Raises
    ------
    BracketError
        If the tabulated phase is not strictly increasing.
    """
    if eta is None:
        eta = gs.eta
    eta = float(eta)
    if not 0.0 <= eta < TWO_PI:
        raise ValueError("eta must lie in [0, 2 pi)")
    if not tol > 0:
        raise ValueError("tol must be positive")
    n = gs.n
    if n == 1:
        return EigenangleSet(angles=_readonly(np.array([eta])), eta=eta)

    grid_size = grid_factor * n
    grid = TWO_PI * np.arange(grid_size) / grid_size
    psi_grid, slope_grid = phase_and_slope(gs, grid)
    psi_grid[0] = 0.0
    grid = np.append(grid, TWO_PI)
    psi_grid = np.append(psi_grid, TWO_PI * n)
    slope_grid = np.append(slope_grid, slope_grid[0])
    if not np.all(np.diff(psi_grid) > 0):
        raise BracketError("phase is not strictly increasing on the bracketing grid")

    levels = eta + TWO_PI * np.arange(n)
    idx = np.searchsorted(psi_grid, levels, side="right") - 1
    lo = grid[idx]
    hi = grid[idx + 1]
    f_lo = psi_grid[idx] - levels
    f_hi = psi_grid[idx + 1] - levels
    roots = np.where(f_lo == 0.0, lo, np.nan)

    # start from the secant point inside each bracket
    x = lo - f_lo * (hi - lo) / (f_hi - f_lo)
    last_step = hi - lo
    active = np.flatnonzero(f_lo != 0.0)
    for _ in range(200):
        if active.size == 0:
            break
        xa = x[active]
        psi_a, slope_a = phase_and_slope(gs, xa)
        f = psi_a - levels[active]
        lo_a = np.where(f < 0.0, xa, lo[active])
        hi_a = np.where(f > 0.0, xa, hi[active])
        step = f / slope_a
        x_new = xa - step
        # bisect when Newton leaves the bracket or stalls in a cycle
        slow = np.abs(step) > 0.5 * last_step[active]
        outside = ~((x_new > lo_a) & (x_new < hi_a)) | slow
        x_new = np.where(outside, 0.5 * (lo_a + hi_a), x_new)
        done = (f == 0.0) | (np.abs(x_new - xa) <= tol) | (hi_a - lo_a <= tol)
        x_final = np.where(f == 0.0, xa, x_new)
        roots[active[done]] = x_final[done]
        lo[active] = lo_a
        hi[active] = hi_a
        last_step[active] = np.abs(x_new - xa)
        x[active] = x_new
        active = active[~done]
    if active.size:
        raise BracketError(f"{active.size} roots failed to converge")
    if not np.all(np.diff(roots) > 0):
        raise BracketError("roots are not strictly increasing")
    return EigenangleSet(angles=_readonly(roots), eta=eta)


def phase_batch(seeds, beta: float, thetas, ns, chunk: int = 128) -> np.ndarray:
    """``psi_{n-1}(theta)`` for many sequences, several angles and sizes.

    Parameters
    ----------
    seeds : uint64 array, shape (B,)
        Sequence seeds; sequence ``b`` uses the same coefficients as
        ``draw_gamma_sequence(beta, n, seeds[b])``.
    thetas : array of angles, shape (m,)
    ns : increasing sizes, shape (S,)
        All sizes share one pass, since coefficient ``k`` does not depend
        on ``n``.

    Returns
    -------
    ndarray, shape (S, m, B)
    """
    seeds = np.ascontiguousarray(seeds, dtype=np.uint64)
    thetas = np.ascontiguousarray(np.atleast_1d(thetas), dtype=float)
    ns = [int(v) for v in np.atleast_1d(ns)]
    if any(v < 1 for v in ns) or ns != sorted(set(ns)):
        raise ValueError("ns must be strictly increasing positive sizes")
    B, m = seeds.size, thetas.size
    out = np.zeros((len(ns), m, B))
    tr = np.ones((m, B))
    ti = np.zeros((m, B))
    wind = np.zeros((m, B))
    slot_of_steps = {v - 1: s for s, v in enumerate(ns)}
    total = ns[-1] - 1
    for k0 in range(0, total, chunk):
        k1 = min(k0 + chunk, total)
        g = gamma_block(seeds, k0, k1, beta)
        record = np.array([slot_of_steps.get(k + 1, -1) for k in range(k0, k1)], dtype=np.int64)
        _kernels.advance_batch(
            np.ascontiguousarray(g.real), np.ascontiguousarray(g.imag), thetas, k0, tr, ti, wind, record, out
        )
    for s, v in enumerate(ns):
        if v == 1:
            out[s] = thetas[:, None]
    return out


def phase_trajectories(seeds, beta: float, theta: float, steps: int):
    """Literal recursion for many sequences at once, keeping every step.

    Returns ``(psi, increments)`` with ``psi[k] = psi_k(theta)`` of shape
    ``(steps + 1, B)`` and ``increments[k] = U1(psi_k, gamma_k)`` of shape
    ``(steps, B)``. Plain numpy; serves as an independent check of the
    compiled kernels.
    """
    seeds = np.ascontiguousarray(seeds, dtype=np.uint64)
    g = gamma_block(seeds, 0, steps, beta)
    psi = np.empty((steps + 1, seeds.size))
    inc = np.empty((steps, seeds.size))
    psi[0] = theta
    for k in range(steps):
        inc[k] = upsilon1(psi[k], g[k])
        psi[k + 1] = psi[k] + theta + inc[k]
    return psi, inc
