import numpy as np
import pytest

from socialvote import ModelParams
from socialvote.model import page_visibility


@pytest.fixture
def params():
    return ModelParams()


def quad_visibility(p, mu=0.6, lam=0.6):
    """Survival of the inverse-Gaussian page depth by adaptive quadrature."""
    from scipy import integrate

    if p <= 1:
        return 1.0

    def density(x):
        return np.sqrt(lam / (2 * np.pi * x ** 3)) * np.exp(-lam * (x - mu) ** 2 / (2 * mu ** 2 * x))

    value, _ = integrate.quad(density, p - 1, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200)
    return value


def ivp_solve(r, S, params, horizon, t_eval):
    """Reference solution with scipy's adaptive RK45 and terminal events.

    Shares only the pointwise model functions with the package; the
    integration path, step control and event handling are scipy's.
    """
    from scipy.integrate import solve_ivp

    f = lambda p: page_visibility(max(p, 1.0), params.mu, params.lambda_)  # noqa: E731

    def rhs_factory(regime, tp):
        def rhs(t, y):
            n, s = y
            if regime == "up":
                k = params.c * params.nu * f(1 + params.v_upcoming * t)
            elif regime == "front":
                k = params.nu * f(1 + params.v_front * (t - tp))
            else:
                k = 0.0
            dn = r * (k + params.omega * max(s, 0.0))
            return [dn, -params.omega * s + params.a * n ** (-params.b) * dn]
        return rhs

    def hit(t, y):
        return y[0] - params.h
    hit.terminal = True
    hit.direction = 1

    t_eval = np.asarray(t_eval, dtype=float)
    kw = dict(method="RK45", rtol=1e-10, atol=1e-10, dense_output=True)
    y0 = [1.0, float(S)]
    end_up = min(horizon, params.upcoming_window)
    sol = solve_ivp(rhs_factory("up", None), (0, end_up), y0, events=hit, **kw)
    pieces = [(0.0, sol.t[-1], sol)]
    promoted_at = None
    if sol.status == 1:
        promoted_at = float(sol.t_events[0][0])
        sol2 = solve_ivp(rhs_factory("front", promoted_at), (promoted_at, horizon),
                         sol.y[:, -1], **kw)
        pieces.append((promoted_at, horizon, sol2))
    elif horizon > end_up:
        sol2 = solve_ivp(rhs_factory("expired", None), (end_up, horizon), sol.y[:, -1], **kw)
        pieces.append((end_up, horizon, sol2))
    out = np.empty((2, t_eval.size))
    for j, t in enumerate(t_eval):
        for a, b, s in pieces:
            if a <= t <= b:
                out[:, j] = s.sol(t)
                break
    return out, promoted_at
