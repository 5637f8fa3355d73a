"""Compiled inner loop for forward-Euler stepping.

Mirrors ``stepper.step`` operation for operation but fuses everything into one
numba loop.  Preset coefficients are passed as (code, scale) pairs.
"""
from __future__ import annotations

import numpy as np
from numba import njit

# amplitude codes for the h-factor of a kernel
AMP_CONST, AMP_GAUSS_SHIFT, AMP_HOLLING3, AMP_TABLE = 0, 1, 2, 3
# rate codes
RATE_CONST, RATE_LINEAR, RATE_SATURATING = 0, 1, 2
# source codes
SRC_CONST, SRC_SATURATING_SUM = 0, 1

STATUS_RUNNING, STATUS_BLOWUP = 0, 1


@njit(cache=True)
def _amplitude(code, h, tab_h, tab_v):
    if code == AMP_GAUSS_SHIFT:
        return h / (1.0 + h) + 0.1
    if code == AMP_HOLLING3:
        h2 = h * h
        return h2 / (2.0 * (1.0 + h2))
    if code == AMP_TABLE:
        return np.interp(h, tab_h, tab_v)
    return 1.0


@njit(cache=True)
def _rate(code, scale, h):
    if code == RATE_LINEAR:
        return scale * h
    if code == RATE_SATURATING:
        return scale * h / (1.0 + h)
    return scale


@njit(cache=True)
def _power(x, p):
    if p == 1.0:
        return x
    return x**p


@njit(cache=True)
def advance(
    u, w, h, M, spatial1, spatial2, amp, tables, wt, dx, dt,
    step0, nsteps, last_refresh, refresh_interval,
    alpha, beta, gamma, mu1, psi, D_H, lam,
    rates, src_code, src_scale, f_saturating, reduced, threshold,
    counters, fmin, fmax,
):
    """Advance ``(u, w, h)`` in place by at most ``nsteps`` steps.

    ``M`` is the stacked ``[mat1 | mat2]`` matrix, rebuilt in place when due.
    ``rates`` rows are (code, scale) of mu2, mu3, mu3_tilde.
    ``counters`` = [u clamps, w clamps, h clamps, refreshes, positivity violations].
    Returns ``(status, steps_done, last_refresh, node, field, value)``; on blow-up the
    arrays hold the last accepted state and ``field`` is 0/1/2 for u/w/h.
    """
    n = u.size
    v = np.empty(2 * n)
    un = np.empty(n)
    wn = np.empty(n)
    hn = np.empty(n)
    inv_dx2 = 1.0 / (dx * dx)
    for s in range(nsteps):
        step = step0 + s
        if last_refresh < 0 or step == 0 or step - last_refresh >= refresh_interval:
            for j in range(n):
                hj = h[j]
                if hj < 0.0:
                    counters[2] += 1
                    hj = 0.0
                a1 = _amplitude(amp[0], hj, tables[0], tables[1])
                a2 = _amplitude(amp[1], hj, tables[2], tables[3])
                for i in range(n):
                    M[i, j] = spatial1[i, j] * a1
                    M[i, n + j] = spatial2[i, j] * a2
            last_refresh = step
            counters[3] += 1
        for j in range(n):
            uj = u[j]
            if uj < 0.0:
                counters[0] += 1
                if uj < -1e-12:
                    counters[4] += 1
                uj = 0.0
            v[j] = wt[j] * _power(uj, beta)
            if reduced:
                v[n + j] = 0.0
            else:
                wj = w[j]
                if wj < 0.0:
                    counters[1] += 1
                    if wj < -1e-12:
                        counters[4] += 1
                    wj = 0.0
                v[n + j] = wt[j] * _power(wj, gamma)
        # stacked product gives J1*u^beta + J2*w^gamma in one pass
        conv = M @ v
        for i in range(n):
            im = i - 1 if i > 0 else 0
            ip = i + 1 if i < n - 1 else n - 1
            ui = u[i]
            hi = h[i]
            up = ui if ui > 0.0 else 0.0
            diff_u = psi * ((u[im] - 2.0 * ui + u[ip]) * inv_dx2)
            growth = mu1 * _power(up, alpha)
            if reduced:
                wi = 0.0
                du = diff_u + growth * (1.0 - conv[i])
                wn[i] = 0.0
            else:
                wi = w[i]
                Fw = wi / (1.0 + wi) if f_saturating else wi
                du = diff_u + growth * (1.0 - conv[i]) + _rate(rates[2, 0], rates[2, 1], hi) * Fw
                dw = _rate(rates[0, 0], rates[0, 1], hi) * (1.0 - wi) * ui - _rate(rates[1, 0], rates[1, 1], hi) * Fw
                wn[i] = wi + dt * dw
            if src_code == SRC_SATURATING_SUM:
                g = src_scale * (ui + wi) / (1.0 + (ui + wi))
            else:
                g = src_scale
            dh = D_H * ((h[im] - 2.0 * hi + h[ip]) * inv_dx2) + g - lam * hi
            un[i] = ui + dt * du
            hn[i] = hi + dt * dh
        for i in range(n):
            x = un[i]
            if not np.isfinite(x) or abs(x) > threshold:
                return STATUS_BLOWUP, s + 1, last_refresh, i, 0, x
        for i in range(n):
            if not np.isfinite(wn[i]):
                return STATUS_BLOWUP, s + 1, last_refresh, i, 1, wn[i]
        for i in range(n):
            if not np.isfinite(hn[i]):
                return STATUS_BLOWUP, s + 1, last_refresh, i, 2, hn[i]
        for i in range(n):
            u[i] = un[i]
            w[i] = wn[i]
            h[i] = hn[i]
            if un[i] < fmin[0]:
                fmin[0] = un[i]
            if un[i] > fmax[0]:
                fmax[0] = un[i]
            if wn[i] < fmin[1]:
                fmin[1] = wn[i]
            if wn[i] > fmax[1]:
                fmax[1] = wn[i]
            if hn[i] < fmin[2]:
                fmin[2] = hn[i]
            if hn[i] > fmax[2]:
                fmax[2] = hn[i]
    return STATUS_RUNNING, nsteps, last_refresh, -1, -1, 0.0
