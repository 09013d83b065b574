"""Jitted fixed-step RK4 core for the vote / fan-pool system.

Regimes: 0 upcoming, 1 front page, 2 upcoming window expired (friends only).
Everything here is scalar float math so numba can compile it.
"""

import math

import numpy as np
from numba import njit

UPCOMING, FRONT, EXPIRED = 0, 1, 2
EVENT_TOL = 1e-3


@njit(cache=True)
def _vis(p, mu, lam, boost):
    if p <= 1.0:
        return 1.0
    x = p - 1.0
    alpha = math.sqrt(lam / (2.0 * x))
    first = math.erfc(alpha * (x - mu) / mu)
    tail = math.erfc(alpha * (x + mu) / mu)
    second = 0.0
    if tail > 0.0:
        second = math.exp(boost + math.log(tail))
    v = 0.5 * (first - second)
    if v < 0.0:
        return 0.0
    if v > 1.0:
        return 1.0
    return v


@njit(cache=True)
def _rhs(t, n, s, regime, tp, r, prm):
    # prm: nu, c, omega, mu, lam, a, b, h, v_up, v_front, window, boost
    if regime == UPCOMING:
        k = prm[1] * prm[0] * _vis(1.0 + prm[8] * t, prm[3], prm[4], prm[11])
    elif regime == FRONT:
        k = prm[0] * _vis(1.0 + prm[9] * (t - tp), prm[3], prm[4], prm[11])
    else:
        k = 0.0
    if s < 0.0:
        s = 0.0
    dn = r * (k + prm[2] * s)
    ds = -prm[2] * s + prm[5] * n ** (-prm[6]) * dn
    return dn, ds


@njit(cache=True)
def _step(t, n, s, dt, regime, tp, r, prm, k1n, k1s):
    h2 = 0.5 * dt
    k2n, k2s = _rhs(t + h2, n + h2 * k1n, s + h2 * k1s, regime, tp, r, prm)
    k3n, k3s = _rhs(t + h2, n + h2 * k2n, s + h2 * k2s, regime, tp, r, prm)
    k4n, k4s = _rhs(t + dt, n + dt * k3n, s + dt * k3s, regime, tp, r, prm)
    n1 = n + dt / 6.0 * (k1n + 2.0 * k2n + 2.0 * k3n + k4n)
    s1 = s + dt / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s)
    if n1 < n:
        n1 = n
    if s1 < 0.0:
        s1 = 0.0
    return n1, s1


@njit(cache=True)
def integrate(r, s0, prm, horizon, step):
    """Integrate from (t=0, N=1, s=s0) to ``horizon``.

    Returns grid samples (t, N, s), promotion time (-1 if none) and the
    Hermite nodes (t, N, dN/dt) of every accepted sub-step, left and right
    derivatives taken in the sub-step's own regime.
    """
    h_votes = prm[7]
    window = prm[10]
    n_grid = int(math.ceil(horizon / step - 1e-9))
    gt = np.empty(n_grid + 1)
    gn = np.empty(n_grid + 1)
    gs = np.empty(n_grid + 1)
    cap = n_grid + 4
    nt0 = np.empty(cap)
    nn0 = np.empty(cap)
    nd0 = np.empty(cap)
    nt1 = np.empty(cap)
    nn1 = np.empty(cap)
    nd1 = np.empty(cap)
    m = 0

    t = 0.0
    n = 1.0
    s = s0
    regime = UPCOMING
    tp = -1.0
    gt[0] = t
    gn[0] = n
    gs[0] = s
    k1n, k1s = _rhs(t, n, s, regime, tp, r, prm)
    for i in range(1, n_grid + 1):
        t_next = i * step
        if t_next > horizon:
            t_next = horizon
        while t < t_next:
            t_end = t_next
            if regime == UPCOMING and t_end > window:
                t_end = window
            if t_end <= t:
                # sitting exactly on the window edge
                regime = EXPIRED
                k1n, k1s = _rhs(t, n, s, regime, tp, r, prm)
                continue
            dt = t_end - t
            n1, s1 = _step(t, n, s, dt, regime, tp, r, prm, k1n, k1s)
            if regime == UPCOMING and n1 >= h_votes:
                lo = 0.0
                hi = dt
                while hi - lo > EVENT_TOL:
                    mid = 0.5 * (lo + hi)
                    nm, sm = _step(t, n, s, mid, regime, tp, r, prm, k1n, k1s)
                    if nm >= h_votes:
                        hi = mid
                    else:
                        lo = mid
                n1, s1 = _step(t, n, s, hi, regime, tp, r, prm, k1n, k1s)
                t1 = t + hi
                dn_left, ds_left = _rhs(t1, n1, s1, regime, tp, r, prm)
                nt0[m] = t
                nn0[m] = n
                nd0[m] = k1n
                nt1[m] = t1
                nn1[m] = n1
                nd1[m] = dn_left
                m += 1
                t, n, s = t1, n1, s1
                regime = FRONT
                tp = t1
                k1n, k1s = _rhs(t, n, s, regime, tp, r, prm)
                continue
            k1n_next, k1s_next = _rhs(t_end, n1, s1, regime, tp, r, prm)
            nt0[m] = t
            nn0[m] = n
            nd0[m] = k1n
            nt1[m] = t_end
            nn1[m] = n1
            nd1[m] = k1n_next
            m += 1
            t, n, s = t_end, n1, s1
            k1n, k1s = k1n_next, k1s_next
            if regime == UPCOMING and t >= window:
                regime = EXPIRED
                k1n, k1s = _rhs(t, n, s, regime, tp, r, prm)
        gt[i] = t
        gn[i] = n
        gs[i] = s
    return gt, gn, gs, tp, nt0[:m], nn0[:m], nd0[:m], nt1[:m], nn1[:m], nd1[:m]


@njit(cache=True)
def hermite_eval(query, nt0, nn0, nd0, nt1, nn1, nd1):
    """Cubic Hermite interpolation of N at sorted-or-not ``query`` times."""
    out = np.empty(query.shape[0])
    m = nt0.shape[0]
    for j in range(query.shape[0]):
        q = query[j]
        # binary search for the interval with nt0 <= q <= nt1
        lo = 0
        hi = m - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if nt0[mid] <= q:
                lo = mid
            else:
                hi = mid - 1
        if m == 0:
            out[j] = 1.0
            continue
        a = nt0[lo]
        b = nt1[lo]
        if q >= b:
            out[j] = nn1[lo]
            continue
        if q <= a:
            out[j] = nn0[lo]
            continue
        w = b - a
        u = (q - a) / w
        h00 = (1.0 + 2.0 * u) * (1.0 - u) ** 2
        h10 = u * (1.0 - u) ** 2
        h01 = u * u * (3.0 - 2.0 * u)
        h11 = u * u * (u - 1.0)
        v = h00 * nn0[lo] + h10 * w * nd0[lo] + h01 * nn1[lo] + h11 * w * nd1[lo]
        # keep interpolant inside the bracketing values
        if v < nn0[lo]:
            v = nn0[lo]
        if v > nn1[lo]:
            v = nn1[lo]
        out[j] = v
    return out


def pack_params(params):
    return np.array([
        params.nu, params.c, params.omega, params.mu, params.lambda_,
        params.a, params.b, float(params.h), params.v_upcoming,
        params.v_front, params.upcoming_window,
        2.0 * params.lambda_ / params.mu,
    ])
