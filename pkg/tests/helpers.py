"""Independent oracles for the test suite.

Everything here is deliberately written from the definitions, not by
calling back into the package code paths it checks: quadrature from the
raw cosine-product integrals, hypervolume by Monte Carlo, Pareto filtering
by quadratic brute force, gradients by central differences.
"""

import numpy as np

from moesearch import rollout
from moesearch.ergopt import scalarized_objective


def oracle_basis_tables(lengths, k_max):
    """Normalization and Sobolev weights recomputed from the definitions."""
    l1, l2 = lengths
    ks = np.arange(k_max + 1)
    h1 = np.where(ks == 0, l1, l1 / 2.0)
    h2 = np.where(ks == 0, l2, l2 / 2.0)
    h = np.sqrt(h1[:, None] * h2[None, :])
    ksq = ks[:, None] ** 2 + ks[None, :] ** 2
    lam = (1.0 + ksq) ** -1.5
    return h, lam


def mixture_density(components, xs, ys):
    """Unnormalized mixture values on the meshgrid of xs, ys."""
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    g = np.zeros_like(gx)
    for comp in components:
        cx, cy = comp["mean"]
        s = comp["sigma"]
        g += comp["weight"] * np.exp(-((gx - cx) ** 2 + (gy - cy) ** 2) / (2 * s * s))
    return g


def quadrature_coeffs_oracle(components, lengths, k_max, resolution):
    """Spectral coefficients of a mixture by direct midpoint quadrature.

    Normalizes the density to unit mass on the same grid, then integrates
    against each cosine product with an independently computed h_k.
    """
    l1, l2 = lengths
    xs = (np.arange(resolution) + 0.5) * (l1 / resolution)
    ys = (np.arange(resolution) + 0.5) * (l2 / resolution)
    cell = (l1 / resolution) * (l2 / resolution)
    g = mixture_density(components, xs, ys)
    g = g / (g.sum() * cell)
    h, _ = oracle_basis_tables(lengths, k_max)
    ks = np.arange(k_max + 1)
    cos_x = np.cos(np.pi * np.outer(ks, xs) / l1)
    cos_y = np.cos(np.pi * np.outer(ks, ys) / l2)
    out = np.empty((k_max + 1, k_max + 1))
    for i in range(k_max + 1):
        for j in range(k_max + 1):
            out[i, j] = (g * np.outer(cos_x[i], cos_y[j])).sum() * cell / h[i, j]
    return out


def trajectory_coeffs_oracle(points, lengths, k_max):
    """Sample-average spectral statistics by an explicit per-sample loop."""
    h, _ = oracle_basis_tables(lengths, k_max)
    ks = np.arange(k_max + 1)
    acc = np.zeros((k_max + 1, k_max + 1))
    for x, y in points:
        fx = np.cos(np.pi * ks * x / lengths[0])
        fy = np.cos(np.pi * ks * y / lengths[1])
        acc += np.outer(fx, fy)
    return acc / (len(points) * h)


def fd_gradient(u, phi, model, basis, beta=100.0, h=1e-6):
    """Central-difference gradient of the penalized scalarized objective."""
    grad = np.empty_like(u)
    for i in range(u.shape[0]):
        for j in range(u.shape[1]):
            up = u.copy()
            up[i, j] += h
            um = u.copy()
            um[i, j] -= h
            fp = scalarized_objective(up, phi, model, basis, beta).total
            fm = scalarized_objective(um, phi, model, basis, beta).total
            grad[i, j] = (fp - fm) / (2 * h)
    return grad


def clamp_free_controls(rng, model, v_range=(0.02, 0.15), w_range=(-4.0, 4.0)):
    """Random in-bound controls whose rollout never touches the walls."""
    for _ in range(200):
        u = np.column_stack([
            rng.uniform(*v_range, model.n_steps),
            rng.uniform(*w_range, model.n_steps),
        ])
        if rollout(model, u).clamp_count == 0:
            return np.ascontiguousarray(u)
    raise RuntimeError("no clamp-free control found; retune the sampling ranges")


def brute_force_pareto(vectors):
    """Indices of nondominated vectors by the O(n^2) definition."""
    vectors = np.asarray(vectors)
    keep = []
    for i, a in enumerate(vectors):
        dominated = False
        for j, b in enumerate(vectors):
            if i != j and (b <= a).all() and (b < a).any():
                dominated = True
                break
        if not dominated:
            keep.append(i)
    return keep


def mc_hypervolume(front, ref, n_samples, rng):
    """Monte Carlo hypervolume estimate and its standard error."""
    front = np.asarray(front, dtype=float)
    ref = np.asarray(ref, dtype=float)
    lo = front.min(axis=0)
    box = np.prod(ref - lo)
    if box <= 0:
        return 0.0, 0.0
    x = rng.uniform(lo, ref, size=(n_samples, front.shape[1]))
    hit = np.zeros(n_samples, dtype=bool)
    for p in front:
        hit |= (x >= p).all(axis=1)
    frac = hit.mean()
    sigma = box * np.sqrt(frac * (1.0 - frac) / n_samples)
    return box * frac, sigma
