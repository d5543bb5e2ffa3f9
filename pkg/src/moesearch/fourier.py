"""Cosine-basis spectral representation of maps and trajectory statistics.

A probability map on a box workspace and the time-averaged statistics of a
trajectory are both reduced to coefficient tables over the same cosine basis.
The coverage mismatch between them is then a weighted quadratic form on the
coefficient gap, which is what the planner minimizes.

Basis functions are L2-orthonormal on the box:

    F_k(x) = (1/h_k) * prod_j cos(k_j pi x_j / L_j)

with h_k = sqrt(prod_j (L_j if k_j == 0 else L_j / 2)). Coefficient weights
decay with frequency as lambda_k = (1 + ||k||^2)^(-(dims+1)/2), so low modes
dominate the metric.
"""

import csv
import json
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """Shared basis: index set, weights lambda_k and normalizers h_k.

    Immutable; one instance is shared by every map and trajectory in a run.
    ``lam`` and ``h`` are tensors of shape (k_max+1,) * dims indexed by the
    multi-index k directly.
    """

    dims: int
    lengths: tuple
    k_max: int
    lam: np.ndarray = field(repr=False)
    h: np.ndarray = field(repr=False)

    @property
    def index_set(self):
        """All multi-indices k, shape ((k_max+1)**dims, dims), C-ordered."""
        ranges = [np.arange(self.k_max + 1)] * self.dims
        mesh = np.meshgrid(*ranges, indexing="ij")
        return np.stack(mesh, axis=-1).reshape(-1, self.dims)

    @property
    def table_shape(self):
        return (self.k_max + 1,) * self.dims

    def same_layout(self, other):
        return (
            self.dims == other.dims
            and self.k_max == other.k_max
            and self.lengths == other.lengths
        )


def build_basis(dims, lengths, k_max):
    """Construct a SpectralBasis.

    Args:
        dims: workspace dimension (>= 1).
        lengths: per-dimension box lengths, all positive.
        k_max: per-dimension index bound (>= 0).
    """
    if dims < 1:
        raise ValueError("dims must be >= 1")
    lengths = tuple(float(x) for x in np.atleast_1d(lengths))
    if len(lengths) != dims:
        raise ValueError(f"expected {dims} lengths, got {len(lengths)}")
    if any(x <= 0 for x in lengths):
        raise ValueError("lengths must be positive")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    kk = np.arange(k_max + 1)
    sq = np.zeros((k_max + 1,) * dims)
    hh = np.ones((k_max + 1,) * dims)
    for j in range(dims):
        shape = [1] * dims
        shape[j] = k_max + 1
        sq = sq + (kk ** 2).reshape(shape)
        hj = np.where(kk == 0, lengths[j], lengths[j] / 2.0)
        hh = hh * hj.reshape(shape)
    lam = (1.0 + sq) ** (-(dims + 1) / 2.0)
    return SpectralBasis(dims=dims, lengths=lengths, k_max=int(k_max), lam=lam, h=np.sqrt(hh))


def axis_cosines(points, basis, axis, deriv=False):
    """Per-axis table cos(k pi x / L) of shape (len(points), k_max+1).

    With deriv=True returns the x-derivative table -(k pi / L) sin(k pi x / L).
    """
    k = np.arange(basis.k_max + 1)
    arg = np.outer(points, k * np.pi / basis.lengths[axis])
    if deriv:
        return -(k * np.pi / basis.lengths[axis]) * np.sin(arg)
    return np.cos(arg)


@dataclass(frozen=True, eq=False)
class InfoMap:
    """A probability distribution on the workspace plus its coefficients.

    grid holds nonnegative density values at the centers of a regular
    lattice covering the box; coeffs is the (k_max+1,)*dims table phi_k.
    """

    grid: np.ndarray
    basis: SpectralBasis
    coeffs: np.ndarray

    @property
    def cell_size(self):
        return tuple(L / n for L, n in zip(self.basis.lengths, self.grid.shape))


def map_coefficients(grid, basis):
    """Coefficient table of a density grid by midpoint quadrature.

    phi_k = integral of grid(x) * F_k(x) over the box, the grid cells being
    centered on a regular lattice. The grid must resolve the basis: at least
    2*(k_max+1) cells per dimension.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != basis.dims:
        raise ValueError(f"grid must be {basis.dims}-dimensional")
    need = 2 * (basis.k_max + 1)
    if any(n < need for n in grid.shape):
        raise ValueError(
            f"grid under-resolved for k_max={basis.k_max}: need >= {need} cells per dimension"
        )
    cellvol = np.prod([L / n for L, n in zip(basis.lengths, grid.shape)])
    acc = grid * cellvol
    for j in range(basis.dims):
        n = grid.shape[j]
        centers = (np.arange(n) + 0.5) * (basis.lengths[j] / n)
        # consume the leading axis each pass; result axes stay in k order
        acc = np.tensordot(acc, axis_cosines(centers, basis, j), axes=([0], [0]))
    return acc / basis.h


def infomap_from_grid(grid, basis, normalize=False):
    """Wrap a density grid as an InfoMap, computing its coefficients.

    The grid must be nonnegative and integrate to 1 over the box within
    1e-9; pass normalize=True to rescale it instead of rejecting it.
    """
    grid = np.asarray(grid, dtype=float)
    if (grid < 0).any():
        raise ValueError("grid values must be nonnegative")
    cellvol = np.prod([L / n for L, n in zip(basis.lengths, grid.shape)])
    total = grid.sum() * cellvol
    if normalize:
        if total <= 0:
            raise ValueError("grid has zero mass")
        grid = grid / total
    elif abs(total - 1.0) > 1e-9:
        raise ValueError(f"grid mass is {total!r}, expected 1 within 1e-9")
    return InfoMap(grid=grid, basis=basis, coeffs=map_coefficients(grid, basis))


def uniform_map(basis, resolution=64):
    """The uniform distribution on the box."""
    shape = (resolution,) * basis.dims
    vol = float(np.prod(basis.lengths))
    return infomap_from_grid(np.full(shape, 1.0 / vol), basis)


def mixture_grid(components, basis, resolution=200):
    """Rasterize a Gaussian mixture onto cell centers and renormalize.

    components: iterable of {"mean": [...], "sigma": s, "weight": w} with
    mean inside the box. Isotropic components; weights are relative masses.
    """
    components = list(components)
    if not components:
        raise ValueError("mixture needs at least one component")
    axes = [
        (np.arange(resolution) + 0.5) * (L / resolution) for L in basis.lengths
    ]
    mesh = np.meshgrid(*axes, indexing="ij")
    g = np.zeros((resolution,) * basis.dims)
    for comp in components:
        mean = np.asarray(comp["mean"], dtype=float)
        sigma = float(comp["sigma"])
        weight = float(comp["weight"])
        if sigma <= 0:
            raise ValueError("mixture sigma must be positive")
        if weight < 0:
            raise ValueError("mixture weight must be nonnegative")
        d2 = sum((m - c) ** 2 for m, c in zip(mesh, mean))
        g += weight * np.exp(-d2 / (2.0 * sigma * sigma))
    return g


def infomap_from_mixture(components, basis, resolution=200):
    grid = mixture_grid(components, basis, resolution)
    return infomap_from_grid(grid, basis, normalize=True)


def load_map_csv(path, basis, normalize=True):
    """Load a grid map from CSV with header line 'rows,cols,L1,L2'.

    The header's box lengths must match the basis; the body is the grid in
    row-major order, one grid row per CSV line.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        if len(header) != 4:
            raise ValueError(f"{path}: header must be rows,cols,L1,L2")
        rows, cols = int(header[0]), int(header[1])
        l1, l2 = float(header[2]), float(header[3])
        if basis.dims != 2:
            raise ValueError("CSV maps are 2-dimensional")
        if not np.allclose((l1, l2), basis.lengths):
            raise ValueError(
                f"{path}: box lengths ({l1}, {l2}) do not match basis {basis.lengths}"
            )
        body = [[float(x) for x in line] for line in reader if line]
    grid = np.asarray(body)
    if grid.shape != (rows, cols):
        raise ValueError(f"{path}: expected {rows}x{cols} grid, got {grid.shape}")
    return infomap_from_grid(grid, basis, normalize=normalize)


def load_map_json(path, basis, resolution=200):
    """Load a Gaussian-mixture map spec: a JSON list of components."""
    with open(path) as fh:
        spec = json.load(fh)
    if not isinstance(spec, list):
        raise ValueError(f"{path}: mixture spec must be a JSON list")
    return infomap_from_mixture(spec, basis, resolution)


@dataclass(frozen=True, eq=False)
class TrajectoryCoefficients:
    """Spectral statistics c_k of a sampled trajectory."""

    c: np.ndarray
    basis: SpectralBasis
    n_samples: int
    horizon: float | None = None


def trajectory_coefficients(points, basis, horizon=None):
    """c_k = (1/N) sum_i F_k(q(t_i)) for uniformly spaced time samples."""
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[None, :]
    if points.shape[0] == 0:
        raise ValueError("trajectory has no samples")
    if points.shape[1] != basis.dims:
        raise ValueError(f"points must have {basis.dims} columns")
    tables = [axis_cosines(points[:, j], basis, j) for j in range(basis.dims)]
    letters = "abcdef"[: basis.dims]
    sub = ",".join(f"i{c}" for c in letters) + "->" + letters
    c = np.einsum(sub, *tables) / (points.shape[0] * basis.h)
    return TrajectoryCoefficients(c=c, basis=basis, n_samples=points.shape[0], horizon=horizon)


def _coeff_table(obj, basis):
    if isinstance(obj, TrajectoryCoefficients):
        if not obj.basis.same_layout(basis):
            raise ValueError("coefficient table built on a different basis")
        return obj.c
    if isinstance(obj, InfoMap):
        if not obj.basis.same_layout(basis):
            raise ValueError("map built on a different basis")
        return obj.coeffs
    arr = np.asarray(obj, dtype=float)
    if arr.shape != basis.table_shape:
        raise ValueError(
            f"coefficient table shape {arr.shape} does not match basis {basis.table_shape}"
        )
    return arr


def ergodic_metric(c, phi, basis):
    """Coverage mismatch sum_k lambda_k (c_k - phi_k)^2.

    Accepts TrajectoryCoefficients, InfoMap or raw coefficient tables for
    either argument; both must live on the given basis.
    """
    ct = _coeff_table(c, basis)
    pt = _coeff_table(phi, basis)
    gap = ct - pt
    return float((basis.lam * gap * gap).sum())
