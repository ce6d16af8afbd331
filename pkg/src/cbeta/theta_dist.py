"""The Theta_nu law on the open unit disk.

A point ``X`` is Theta_nu distributed (``nu > 1``) when its density with
respect to area is ``(nu - 1) / (2 pi) * (1 - |z|^2) ** ((nu - 3) / 2)``.
Then ``|X|^2 ~ Beta(1, (nu - 1) / 2)`` independently of a uniform angle, and
``-log(1 - |X|^2)`` is exponential with rate ``(nu - 1) / 2``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

# |X|^2 is clamped below 1 so that log(1 - alpha e^{i psi}) stays finite.
MAX_RADIUS_SQ = 1.0 - 2.0**-50


class ThetaMoments(NamedTuple):
    m2: float
    m4: float


def _check_nu(nu: float) -> float:
    nu = float(nu)
    if not nu > 1.0:
        raise ValueError(f"Theta_nu requires nu > 1, got {nu}")
    return nu


def radius_sq_from_uniform(nu, u):
    """Inverse-CDF map ``u -> |X|^2 = 1 - u ** (2 / (nu - 1))``.

    Evaluated as ``-expm1(2 log(u) / (nu - 1))`` so that very large ``nu``
    (tiny radii) keeps full relative precision. ``nu`` may be an array
    broadcasting against ``u``.
    """
    s = -np.expm1((2.0 / (np.asarray(nu, dtype=float) - 1.0)) * np.log(u))
    return np.minimum(s, MAX_RADIUS_SQ)


def theta_nu_from_uniforms(nu, u_radius, u_angle):
    """Deterministic transform of two uniforms in (0, 1] into Theta_nu points.

    Vectorized; this is the single code path used by every sampler in the
    package, scalar or batched.
    """
    r = np.sqrt(radius_sq_from_uniform(nu, u_radius))
    angle = (2.0 * np.pi) * np.asarray(u_angle, dtype=float)
    out = np.empty(np.broadcast(r, angle).shape, dtype=complex)
    out.real = r * np.cos(angle)
    out.imag = r * np.sin(angle)
    return out


def sample_theta_nu(nu: float, rng) -> complex:
    """Draw one Theta_nu point.

    Parameters
    ----------
    nu : float
        Shape parameter, ``nu > 1``.
    rng : object with a ``random()`` method
        Consumed exactly twice: the first uniform sets the radius, the
        second the angle. :class:`cbeta.rng.SplitMix64` and
        :class:`numpy.random.Generator` both qualify.

    Returns
    -------
    complex
        A point with modulus strictly below one.
    """
    nu = _check_nu(nu)
    u_radius = rng.random()
    u_angle = rng.random()
    if u_radius <= 0.0:  # numpy generators can return exactly 0
        u_radius = 2.0**-53
    return complex(theta_nu_from_uniforms(nu, np.array([u_radius]), np.array([u_angle]))[0])


def theta_nu_moments(nu: float) -> ThetaMoments:
    """Second and fourth absolute moments ``E|X|^2`` and ``E|X|^4``."""
    nu = _check_nu(nu)
    return ThetaMoments(m2=2.0 / (nu + 1.0), m4=8.0 / ((nu + 1.0) * (nu + 3.0)))


def theta_nu_log_moment(nu: float, m: int) -> float:
    """``E[(-log(1 - |X|^2)) ** m] = m! * (2 / (nu - 1)) ** m``."""
    nu = _check_nu(nu)
    if m < 0 or int(m) != m:
        raise ValueError("m must be a non-negative integer")
    return math.gamma(m + 1) * (2.0 / (nu - 1.0)) ** m


def log_rate(nu: float) -> float:
    """Rate of the exponential law of ``-log(1 - |X|^2)``."""
    return (_check_nu(nu) - 1.0) / 2.0
