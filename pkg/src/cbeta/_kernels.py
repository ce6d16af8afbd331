"""Compiled inner loops of the Pruefer recursion.

Two equivalent forms of one step ``psi -> psi + theta + U1(psi, g)`` are used.

* literal: ``U1 = 2 (arg(1 - g) - arg(1 - g e^{i psi}))`` with ``atan2``.
* rotation: carry ``t_k = exp(i (psi_k - (k + 1) theta))`` on the unit circle. One
  step multiplies ``t`` by ``c conj(u) / u`` with ``u = 1 - g e^{i psi}`` and
  ``c = (1 - g) / (1 - conj g)``, a rotation by ``U1``. The integer winding of
  ``t`` is counted from sign changes of ``Im t``; this needs the rotation
  angle to lie in ``(-pi, pi)``, which holds for ``|g| < 1/sqrt(2)``. Larger
  ``|g|`` is split into two half rotations ``e conj(u) / |u|`` with
  ``e = (1 - g) / |1 - g|``. At the end
  ``psi_k = (k + 1) theta + atan2(t) + 2 pi winding``.

The recursion starts from ``psi_0(theta) = theta``.

The rotation form also carries the theta-derivative
``d_{k+1} = 1 + d_k (1 - |g|^2) / |u|^2`` with ``d_0 = 1``, which is positive, so each
``psi_k`` is increasing in theta.
"""

from __future__ import annotations

import math

import numba as nb
import numpy as np

_JIT = dict(nogil=True, cache=True, error_model="numpy")
# |g|^2 below this keeps |U1| < pi (the single-rotation path).
_ONE_ROTATION_MAX_SQ = 0.49


@nb.njit(**_JIT)
def literal_phase(g_re, g_im, theta, trajectory):
    """Literal recursion; fills ``trajectory[k] = psi_k`` when its size is n."""
    n1 = g_re.size
    keep = trajectory.size == n1 + 1
    psi = theta
    if keep:
        trajectory[0] = theta
    for k in range(n1):
        gr = g_re[k]
        gi = g_im[k]
        a0 = math.atan2(-gi, 1.0 - gr)
        c = math.cos(psi)
        s = math.sin(psi)
        wr = gr * c - gi * s
        wi = gr * s + gi * c
        psi = psi + theta + 2.0 * (a0 - math.atan2(-wi, 1.0 - wr))
        if keep:
            trajectory[k + 1] = psi
    return psi


@nb.njit(fastmath=True, **_JIT)
def phase_and_slope(g_re, g_im, thetas, psi_out, slope_out):
    """``psi_{n-1}`` and its theta-derivative at each point of ``thetas``.

    One coefficient sequence, many angles; the inner loop runs over angles.
    """
    n1 = g_re.size
    m = thetas.size
    tr = np.ones(m)
    ti = np.zeros(m)
    zr = np.cos(thetas)
    zi = np.sin(thetas)
    pr = zr.copy()
    pim = zi.copy()
    wind = np.zeros(m)
    d = np.ones(m)
    for k in range(n1):
        gr = g_re[k]
        gi = g_im[k]
        g2 = gr * gr + gi * gi
        om = 1.0 - g2
        ar = 1.0 - gr
        ai = -gi
        am = math.sqrt(ar * ar + ai * ai)
        er = ar / am
        ei = ai / am
        if g2 < _ONE_ROTATION_MAX_SQ:
            cr = er * er - ei * ei
            ci = 2.0 * er * ei
            for i in range(m):
                br = tr[i] * pr[i] - ti[i] * pim[i]
                bi = tr[i] * pim[i] + ti[i] * pr[i]
                ur = 1.0 - (gr * br - gi * bi)
                ui = -(gr * bi + gi * br)
                inv = 1.0 / (ur * ur + ui * ui)
                # c * conj(u)^2 / |u|^2
                vr = (ur * ur - ui * ui) * inv
                vi = -2.0 * ur * ui * inv
                hr = cr * vr - ci * vi
                hi = cr * vi + ci * vr
                nr = tr[i] * hr - ti[i] * hi
                ni = tr[i] * hi + ti[i] * hr
                a0 = 1.0 if ti[i] >= 0.0 else 0.0
                a1 = 1.0 if ni >= 0.0 else 0.0
                ccw = 1.0 if hi > 0.0 else 0.0
                wind[i] += ccw * a0 * (1.0 - a1) - (1.0 - ccw) * (1.0 - a0) * a1
                tr[i] = nr
                ti[i] = ni
                d[i] = 1.0 + d[i] * om * inv
                qr = pr[i] * zr[i] - pim[i] * zi[i]
                pim[i] = pr[i] * zi[i] + pim[i] * zr[i]
                pr[i] = qr
        else:
            for i in range(m):
                br = tr[i] * pr[i] - ti[i] * pim[i]
                bi = tr[i] * pim[i] + ti[i] * pr[i]
                ur = 1.0 - (gr * br - gi * bi)
                ui = -(gr * bi + gi * br)
                inv = 1.0 / (ur * ur + ui * ui)
                s = math.sqrt(inv)
                hr = (er * ur + ei * ui) * s
                hi = (ei * ur - er * ui) * s
                qr = tr[i] * hr - ti[i] * hi
                qi = tr[i] * hi + ti[i] * hr
                nr = qr * hr - qi * hi
                ni = qr * hi + qi * hr
                a0 = 1.0 if ti[i] >= 0.0 else 0.0
                a1 = 1.0 if qi >= 0.0 else 0.0
                a2 = 1.0 if ni >= 0.0 else 0.0
                ccw = 1.0 if hi > 0.0 else 0.0
                wind[i] += ccw * (a0 * (1.0 - a1) + a1 * (1.0 - a2)) - (1.0 - ccw) * (
                    (1.0 - a0) * a1 + (1.0 - a1) * a2
                )
                tr[i] = nr
                ti[i] = ni
                d[i] = 1.0 + d[i] * om * inv
                zr_ = pr[i] * zr[i] - pim[i] * zi[i]
                pim[i] = pr[i] * zi[i] + pim[i] * zr[i]
                pr[i] = zr_
    for i in range(m):
        psi_out[i] = (n1 + 1) * thetas[i] + math.atan2(ti[i], tr[i]) + 2.0 * math.pi * wind[i]
        slope_out[i] = d[i]


@nb.njit(fastmath=True, **_JIT)
def advance_batch(g_re, g_im, thetas, k0, tr, ti, wind, record_slot, out):
    """Advance many independent sequences through steps ``k0 .. k0 + K - 1``.

    Shapes: ``g_re, g_im`` are ``(K, B)`` (coefficients of B sequences),
    state arrays ``tr, ti, wind`` are ``(m, B)`` for ``m`` angles. When
    ``record_slot[j] >= 0`` the phase ``psi_{k0 + j + 1}`` is written to
    ``out[record_slot[j], :, :]`` (shape ``(slots, m, B)``).
    """
    K, B = g_re.shape
    m = thetas.size
    for a in range(m):
        th = thetas[a]
        # z^(k+1) recomputed exactly at the start of every chunk
        pr = math.cos((k0 + 1) * th)
        pim = math.sin((k0 + 1) * th)
        zr = math.cos(th)
        zi = math.sin(th)
        for j in range(K):
            for r in range(B):
                gr = g_re[j, r]
                gi = g_im[j, r]
                ar = 1.0 - gr
                ai = -gi
                am = 1.0 / math.sqrt(ar * ar + ai * ai)
                er = ar * am
                ei = ai * am
                br = tr[a, r] * pr - ti[a, r] * pim
                bi = tr[a, r] * pim + ti[a, r] * pr
                ur = 1.0 - (gr * br - gi * bi)
                ui = -(gr * bi + gi * br)
                s = 1.0 / math.sqrt(ur * ur + ui * ui)
                hr = (er * ur + ei * ui) * s
                hi = (ei * ur - er * ui) * s
                qr = tr[a, r] * hr - ti[a, r] * hi
                qi = tr[a, r] * hi + ti[a, r] * hr
                nr = qr * hr - qi * hi
                ni = qr * hi + qi * hr
                a0 = 1.0 if ti[a, r] >= 0.0 else 0.0
                a1 = 1.0 if qi >= 0.0 else 0.0
                a2 = 1.0 if ni >= 0.0 else 0.0
                ccw = 1.0 if hi > 0.0 else 0.0
                wind[a, r] += ccw * (a0 * (1.0 - a1) + a1 * (1.0 - a2)) - (1.0 - ccw) * (
                    (1.0 - a0) * a1 + (1.0 - a1) * a2
                )
                tr[a, r] = nr
                ti[a, r] = ni
            slot = record_slot[j]
            if slot >= 0:
                steps = k0 + j + 2
                for r in range(B):
                    out[slot, a, r] = (
                        steps * th + math.atan2(ti[a, r], tr[a, r]) + 2.0 * math.pi * wind[a, r]
                    )
            q = pr * zr - pim * zi
            pim = pr * zi + pim * zr
            pr = q
