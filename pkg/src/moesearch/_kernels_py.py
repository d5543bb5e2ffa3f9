"""Reference kernels for rollout and adjoint sweeps (NumPy, sequential loops).

These are the hot per-iteration loops of the trajectory optimizer. The
compiled twin in _speedups.pyx implements the same contracts; parity between
the two is enforced by tests. Keep the arithmetic order identical in both.

Conventions shared by both backends:
  - states[0] is the start state, states has N+1 rows for N controls.
  - over[i] is the pre-clamp overshoot of step i (zeros for the start row);
    a coordinate was clamped at row i iff over[i, j] != 0.
  - field_grad has one row per state: the gradient of the spectral residual
    term with respect to that sample's workspace position.
"""

import numpy as np


def rollout_diffdrive(u, start, dt, lx, ly):
    n = u.shape[0]
    states = np.empty((n + 1, 3))
    over = np.zeros((n + 1, 2))
    states[0] = start
    x, y, th = start
    for i in range(n):
        v, w = u[i, 0], u[i, 1]
        zx = x + v * np.cos(th) * dt
        zy = y + v * np.sin(th) * dt
        th = th + w * dt
        x = min(max(zx, 0.0), lx)
        y = min(max(zy, 0.0), ly)
        over[i + 1, 0] = zx - x
        over[i + 1, 1] = zy - y
        states[i + 1] = (x, y, th)
    return states, over


def rollout_integrator(u, start, dt, lx, ly):
    n = u.shape[0]
    states = np.empty((n + 1, 2))
    over = np.zeros((n + 1, 2))
    states[0] = start
    x, y = start
    for i in range(n):
        zx = x + u[i, 0] * dt
        zy = y + u[i, 1] * dt
        x = min(max(zx, 0.0), lx)
        y = min(max(zy, 0.0), ly)
        over[i + 1, 0] = zx - x
        over[i + 1, 1] = zy - y
        states[i + 1] = (x, y)
    return states, over


def adjoint_diffdrive(u, states, over, field_grad, dt, beta):
    """Reverse sweep through the clamped Euler rollout.

    Accumulators (ax, ay, ath) carry the objective's derivative with respect
    to the state at the current row; mu_* is the derivative with respect to
    the pre-clamp position, where the quadratic boundary penalty enters.
    """
    n = u.shape[0]
    grad = np.empty((n, 2))
    ax = field_grad[n, 0]
    ay = field_grad[n, 1]
    ath = 0.0
    for i in range(n - 1, -1, -1):
        mx = 0.0 if over[i + 1, 0] != 0.0 else 1.0
        my = 0.0 if over[i + 1, 1] != 0.0 else 1.0
        mux = ax * mx + 2.0 * beta * over[i + 1, 0]
        muy = ay * my + 2.0 * beta * over[i + 1, 1]
        muth = ath
        ct = np.cos(states[i, 2])
        st = np.sin(states[i, 2])
        grad[i, 0] = (mux * ct + muy * st) * dt
        grad[i, 1] = muth * dt
        ax = field_grad[i, 0] + mux
        ay = field_grad[i, 1] + muy
        ath = muth - u[i, 0] * st * dt * mux + u[i, 0] * ct * dt * muy
    return grad


def adjoint_integrator(over, field_grad, dt, beta):
    n = over.shape[0] - 1
    grad = np.empty((n, 2))
    ax = field_grad[n, 0]
    ay = field_grad[n, 1]
    for i in range(n - 1, -1, -1):
        mx = 0.0 if over[i + 1, 0] != 0.0 else 1.0
        my = 0.0 if over[i + 1, 1] != 0.0 else 1.0
        mux = ax * mx + 2.0 * beta * over[i + 1, 0]
        muy = ay * my + 2.0 * beta * over[i + 1, 1]
        grad[i, 0] = mux * dt
        grad[i, 1] = muy * dt
        ax = field_grad[i, 0] + mux
        ay = field_grad[i, 1] + muy
    return grad
