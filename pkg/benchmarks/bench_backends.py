"""Timing comparison of the compiled and pure-Python kernel backends.

Measures the raw rollout and adjoint kernels plus one full optimizer
iteration (gradient + line-search evaluation) at a few horizon lengths.

Run:  python3 benchmarks/bench_backends.py [--repeats 200]
"""

import argparse
import time

import numpy as np

from moesearch import build_basis, differential_drive, infomap_from_mixture
from moesearch._backend import get_kernels
from moesearch.ergopt import ErgOptConfig, _evaluate, _gradient_at

MIXTURE = [
    {"mean": [0.35, 0.4], "sigma": 0.18, "weight": 0.5},
    {"mean": [0.65, 0.6], "sigma": 0.19, "weight": 0.5},
]


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(kern, n, repeats):
    rng = np.random.default_rng(0)
    u = np.ascontiguousarray(rng.uniform(0.0, 0.3, (n, 2)))
    u[:, 1] = rng.uniform(-2.0, 2.0, n)
    s0 = np.array([0.5, 0.5, 0.0])
    states, over = kern.rollout_diffdrive(u, s0, 0.1, 1.0, 1.0)
    fg = np.ascontiguousarray(rng.normal(size=(n + 1, 2)))
    t_roll = _time(lambda: kern.rollout_diffdrive(u, s0, 0.1, 1.0, 1.0), repeats)
    t_adj = _time(lambda: kern.adjoint_diffdrive(u, states, over, fg, 0.1, 100.0),
                  repeats)
    return t_roll, t_adj


def bench_iteration(backend, n, repeats):
    """One gradient + one objective evaluation, the optimizer's unit of work."""
    import moesearch.dynamics as dyn
    import moesearch.ergopt as eo
    kern = get_kernels(backend)
    saved = (dyn.rollout_diffdrive, dyn.rollout_integrator,
             eo.adjoint_diffdrive, eo.adjoint_integrator)
    dyn.rollout_diffdrive = kern.rollout_diffdrive
    dyn.rollout_integrator = kern.rollout_integrator
    eo.adjoint_diffdrive = kern.adjoint_diffdrive
    eo.adjoint_integrator = kern.adjoint_integrator
    try:
        basis = build_basis(2, (1.0, 1.0), 10)
        phi = infomap_from_mixture(MIXTURE, basis).coeffs
        model = differential_drive(n_steps=n)
        rng = np.random.default_rng(1)
        u = np.ascontiguousarray(rng.uniform(0.0, 0.3, (n, 2)))
        cfg = ErgOptConfig()

        def one_iteration():
            traj, val = _evaluate(u, phi, model, basis, cfg.beta)
            _gradient_at(u, traj, phi, model, basis, cfg.beta)

        return _time(one_iteration, repeats)
    finally:
        (dyn.rollout_diffdrive, dyn.rollout_integrator,
         eo.adjoint_diffdrive, eo.adjoint_integrator) = saved


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    print(f"{'horizon':>8} {'kernel':>10} {'python':>12} {'compiled':>12} {'speedup':>8}")
    for n in (100, 300, 1000):
        rows = {}
        for backend in ("python", "compiled"):
            try:
                rows[backend] = bench_kernels(get_kernels(backend), n, args.repeats)
            except (ImportError, RuntimeError) as exc:
                print(f"backend {backend} unavailable: {exc}")
                return
        for idx, name in enumerate(("rollout", "adjoint")):
            tp, tc = rows["python"][idx], rows["compiled"][idx]
            print(f"{n:>8} {name:>10} {tp * 1e6:>10.1f}us {tc * 1e6:>10.1f}us "
                  f"{tp / tc:>7.1f}x")

    print()
    print(f"{'horizon':>8} {'full optimizer iteration':>25} {'speedup':>8}")
    for n in (100, 300, 1000):
        tp = bench_iteration("python", n, max(args.repeats // 4, 10))
        tc = bench_iteration("compiled", n, max(args.repeats // 4, 10))
        print(f"{n:>8} {tp * 1e3:>11.3f}ms vs {tc * 1e3:>8.3f}ms {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
