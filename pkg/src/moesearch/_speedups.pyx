# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the reference kernels in _kernels_py.

Same contracts, same arithmetic order; the parity tests hold the two
backends to ~1e-12 (libm vs NumPy trig may differ in the last ulp).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()


def rollout_diffdrive(double[:, ::1] u, double[::1] start, double dt,
                      double lx, double ly):
    cdef Py_ssize_t n = u.shape[0]
    states_arr = np.empty((n + 1, 3))
    over_arr = np.zeros((n + 1, 2))
    cdef double[:, ::1] states = states_arr
    cdef double[:, ::1] over = over_arr
    cdef double x = start[0], y = start[1], th = start[2]
    cdef double v, w, zx, zy
    cdef Py_ssize_t i
    states[0, 0] = x
    states[0, 1] = y
    states[0, 2] = th
    for i in range(n):
        v = u[i, 0]
        w = u[i, 1]
        zx = x + v * cos(th) * dt
        zy = y + v * sin(th) * dt
        th = th + w * dt
        x = min(max(zx, 0.0), lx)
        y = min(max(zy, 0.0), ly)
        over[i + 1, 0] = zx - x
        over[i + 1, 1] = zy - y
        states[i + 1, 0] = x
        states[i + 1, 1] = y
        states[i + 1, 2] = th
    return states_arr, over_arr


def rollout_integrator(double[:, ::1] u, double[::1] start, double dt,
                       double lx, double ly):
    cdef Py_ssize_t n = u.shape[0]
    states_arr = np.empty((n + 1, 2))
    over_arr = np.zeros((n + 1, 2))
    cdef double[:, ::1] states = states_arr
    cdef double[:, ::1] over = over_arr
    cdef double x = start[0], y = start[1]
    cdef double zx, zy
    cdef Py_ssize_t i
    states[0, 0] = x
    states[0, 1] = y
    for i in range(n):
        zx = x + u[i, 0] * dt
        zy = y + u[i, 1] * dt
        x = min(max(zx, 0.0), lx)
        y = min(max(zy, 0.0), ly)
        over[i + 1, 0] = zx - x
        over[i + 1, 1] = zy - y
        states[i + 1, 0] = x
        states[i + 1, 1] = y
    return states_arr, over_arr


def adjoint_diffdrive(double[:, ::1] u, double[:, ::1] states,
                      double[:, ::1] over, double[:, ::1] field_grad,
                      double dt, double beta):
    cdef Py_ssize_t n = u.shape[0]
    grad_arr = np.empty((n, 2))
    cdef double[:, ::1] grad = grad_arr
    cdef double ax = field_grad[n, 0]
    cdef double ay = field_grad[n, 1]
    cdef double ath = 0.0
    cdef double mx, my, mux, muy, muth, ct, st
    cdef Py_ssize_t i
    for i in range(n - 1, -1, -1):
        mx = 0.0 if over[i + 1, 0] != 0.0 else 1.0
        my = 0.0 if over[i + 1, 1] != 0.0 else 1.0
        mux = ax * mx + 2.0 * beta * over[i + 1, 0]
        muy = ay * my + 2.0 * beta * over[i + 1, 1]
        muth = ath
        ct = cos(states[i, 2])
        st = sin(states[i, 2])
        grad[i, 0] = (mux * ct + muy * st) * dt
        grad[i, 1] = muth * dt
        ax = field_grad[i, 0] + mux
        ay = field_grad[i, 1] + muy
        ath = muth - u[i, 0] * st * dt * mux + u[i, 0] * ct * dt * muy
    return grad_arr


def adjoint_integrator(double[:, ::1] over, double[:, ::1] field_grad,
                       double dt, double beta):
    cdef Py_ssize_t n = over.shape[0] - 1
    grad_arr = np.empty((n, 2))
    cdef double[:, ::1] grad = grad_arr
    cdef double ax = field_grad[n, 0]
    cdef double ay = field_grad[n, 1]
    cdef double mx, my, mux, muy
    cdef Py_ssize_t i
    for i in range(n - 1, -1, -1):
        mx = 0.0 if over[i + 1, 0] != 0.0 else 1.0
        my = 0.0 if over[i + 1, 1] != 0.0 else 1.0
        mux = ax * mx + 2.0 * beta * over[i + 1, 0]
        muy = ay * my + 2.0 * beta * over[i + 1, 1]
        grad[i, 0] = mux * dt
        grad[i, 1] = muy * dt
        ax = field_grad[i, 0] + mux
        ay = field_grad[i, 1] + muy
    return grad_arr
