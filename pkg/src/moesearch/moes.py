"""Multi-objective layer: weight simplex, scalarization, lattice planners.

The planner covers the interior of the weight simplex with a deterministic
lattice, solves one scalarized coverage problem per weight, and reuses each
solution as the warm start of its lattice neighbors (breadth-first order, so
a parent is always solved before its children). The naive baseline solves
the same weights independently from the zero guess.

Weights are never accumulated through floating-point chains: every lattice
point carries an integer key and its weight is recomputed from the key, so
OPEN/CLOSED membership is exact.

Adaptive sampling remaps the simplex onto a space whose corner distances
equal the pairwise map distances (square roots of the weighted squared
coefficient gaps, which satisfy the triangle inequality). A uniform lattice
there spends fewer samples along directions where maps are similar.
"""

import logging
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import fourier
from .dynamics import rollout
from .ergopt import EpisodeTrace, ErgOptConfig, ergodic_search
from .metrics import map_distance

log = logging.getLogger(__name__)

WEIGHT_TOL = 1e-12
CORNER_CLIP = 1e-6
CONTAIN_TOL = 1e-9
DEGENERATE_TOL = 1e-9


def validate_weight(w, m=None):
    """Check simplex membership: strictly positive entries summing to 1."""
    w = np.asarray(w, dtype=float)
    if m is not None and w.shape != (m,):
        raise ValueError(f"weight vector must have {m} entries, got {w.shape}")
    if (w <= 0).any():
        raise ValueError(f"weight components must be strictly positive: {w}")
    if abs(w.sum() - 1.0) > 1e-9:
        raise ValueError(f"weight components must sum to 1: {w}")
    return w


@dataclass(frozen=True, eq=False)
class MapFamily:
    """A tuple of maps on one shared basis, plus their distance table."""

    maps: tuple
    basis: object = None

    def __post_init__(self):
        if not self.maps:
            raise ValueError("family needs at least one map")
        basis = self.maps[0].basis if self.basis is None else self.basis
        object.__setattr__(self, "basis", basis)
        for m_ in self.maps:
            if not m_.basis.same_layout(basis):
                raise ValueError("family maps must share one basis")
        object.__setattr__(self, "maps", tuple(self.maps))

    def __len__(self):
        return len(self.maps)

    @property
    def coeff_stack(self):
        return np.stack([m_.coeffs for m_ in self.maps])

    @property
    def distances(self):
        """Pairwise weighted squared coefficient gaps, zero diagonal."""
        m = len(self.maps)
        table = np.zeros((m, m))
        for i in range(m):
            for j in range(i + 1, m):
                table[i, j] = table[j, i] = map_distance(
                    self.maps[i], self.maps[j], self.basis)
        return table


def scalarize(family, w):
    """Coefficient table of the weighted-sum map: per-index dot product."""
    w = np.asarray(w, dtype=float)
    if w.shape != (len(family),):
        raise ValueError(f"expected {len(family)} weights, got {w.shape}")
    return np.tensordot(w, family.coeff_stack, axes=(0, 0))


def ergodic_vector(traj, family):
    """Coverage mismatch of one trajectory against every family member."""
    positions = traj.positions if hasattr(traj, "positions") else np.asarray(traj)
    c = fourier.trajectory_coefficients(positions, family.basis).c
    gaps = family.coeff_stack - c[None]
    axes = tuple(range(1, gaps.ndim))
    return (family.basis.lam[None] * gaps * gaps).sum(axis=axes)


# ---------------------------------------------------------------------------
# basic (untransformed) lattice

def _basic_weight(key, w_init, d):
    """Weight at an integer lattice key; computed fresh, never accumulated."""
    m = len(w_init)
    w = np.array(w_init, dtype=float)
    if m == 2:
        (a,) = key
        w[0] += a * d
        w[1] -= a * d
    else:
        a, b = key
        w[0] += a * d
        w[1] += b * d
        w[2] -= (a + b) * d
    return w


def _basic_neighbor_keys(key, m):
    """Neighbor keys in fixed push order: +/- for m=2; +b, -b, +a, -a for m=3."""
    if m == 2:
        (a,) = key
        return [(a + 1,), (a - 1,)]
    a, b = key
    return [(a, b + 1), (a, b - 1), (a + 1, b), (a - 1, b)]


def basic_neighbors(w, d, m=None):
    """Weights one lattice step away along the simplex chart axes.

    m = 2: (w1 +- d, w2 -+ d); m = 3: +-d moves on the (w1, w2) chart with
    w3 implied. Candidates with any component <= 0 are discarded, so the
    list can be empty near a corner.
    """
    w = np.asarray(w, dtype=float)
    m = len(w) if m is None else m
    if m not in (2, 3):
        raise ValueError("lattice sampling supports 2 or 3 maps")
    if not 0.0 < d < 1.0:
        raise ValueError("step d must be in (0, 1)")
    root = (0,) * (m - 1)
    out = []
    for key in _basic_neighbor_keys(root, m):
        cand = _basic_weight(key, w, d)
        if (cand > WEIGHT_TOL).all():
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# adaptive lattice in the distance-scaled space

@dataclass(frozen=True, eq=False)
class AffineWeightSpace:
    """Simplex remapped so corner distances match map dissimilarity.

    corners holds the remapped corner coordinates (one row per map, m-1
    columns); corner_weights the weight vector each corner stands for (unit
    preference clipped into the open simplex). to_weight/from_weight are
    inverse affine maps between the two representations.
    """

    corners: np.ndarray
    corner_weights: np.ndarray
    degenerate: bool

    def _require_valid(self):
        if self.degenerate:
            raise ValueError("degenerate weight space: corners are (near-)collinear")

    def from_weight(self, w):
        """Coordinates of a weight vector (barycentric through the corners)."""
        self._require_valid()
        w = np.asarray(w, dtype=float)
        lam = np.linalg.solve(self.corner_weights.T, w)
        return lam @ self.corners

    def to_weight(self, p):
        """Weight vector at remapped coordinates p (must lie in the space)."""
        self._require_valid()
        lam = self._barycentric(p)
        lam = np.maximum(lam, 0.0)
        lam = lam / lam.sum()
        w = lam @ self.corner_weights
        w = np.maximum(w, CORNER_CLIP)
        return w / w.sum()

    def _barycentric(self, p):
        p = np.atleast_1d(np.asarray(p, dtype=float))
        m = self.corners.shape[0]
        base = self.corners[-1]
        span = (self.corners[:-1] - base).T
        lam_head = np.linalg.solve(span, p - base)
        return np.append(lam_head, 1.0 - lam_head.sum())

    def contains(self, p, tol=CONTAIN_TOL):
        self._require_valid()
        return bool((self._barycentric(p) >= -tol).all())


def space_from_edges(edge):
    """Remapped weight space from an explicit edge-length matrix.

    Corner 0 sits at the origin, corner 1 on the positive first axis, and
    for m=3 corner 2 is placed by the law of cosines. The degenerate flag
    is set when the corners carry no length/area; edge lengths violating
    the triangle inequality raise, since a metric cannot produce them.
    """
    edge = np.asarray(edge, dtype=float)
    m = edge.shape[0]
    if edge.shape != (m, m) or m not in (2, 3):
        raise ValueError("edge matrix must be 2x2 or 3x3")
    eye = np.eye(m)
    corner_weights = np.maximum(eye, CORNER_CLIP)
    corner_weights /= corner_weights.sum(axis=1, keepdims=True)
    if m == 2:
        d01 = edge[0, 1]
        corners = np.array([[0.0], [d01]])
        return AffineWeightSpace(corners, corner_weights, degenerate=d01 < DEGENERATE_TOL)
    d01, d02, d12 = edge[0, 1], edge[0, 2], edge[1, 2]
    if d01 < DEGENERATE_TOL:
        return AffineWeightSpace(np.zeros((3, 2)), corner_weights, degenerate=True)
    x2 = (d01 ** 2 + d02 ** 2 - d12 ** 2) / (2.0 * d01)
    y2sq = d02 ** 2 - x2 ** 2
    if y2sq < -1e-9 * max(d02 ** 2, 1e-30):
        raise ValueError(
            f"edge lengths ({d01}, {d02}, {d12}) violate the triangle inequality")
    y2 = float(np.sqrt(max(y2sq, 0.0)))
    corners = np.array([[0.0, 0.0], [d01, 0.0], [x2, y2]])
    area = 0.5 * d01 * y2
    return AffineWeightSpace(corners, corner_weights, degenerate=area < DEGENERATE_TOL)


def build_affine_space(family, squared_edges=False):
    """Construct the remapped weight space from the family's distances.

    Edge lengths default to sqrt of the pairwise distance values (the
    metric form); squared_edges=True uses the raw values instead.
    """
    if len(family) not in (2, 3):
        raise ValueError("adaptive sampling supports 2 or 3 maps")
    dist = family.distances
    return space_from_edges(dist if squared_edges else np.sqrt(dist))


def _adaptive_deltas(d_prime, m):
    if m == 2:
        return [np.array([d_prime]), np.array([-d_prime])]
    return [np.array([0.0, d_prime]), np.array([0.0, -d_prime]),
            np.array([d_prime, 0.0]), np.array([-d_prime, 0.0])]


def adaptive_neighbors(w, space, d_prime):
    """Weights one remapped-lattice step from w, clipped to the space."""
    if d_prime <= 0:
        raise ValueError("step d_prime must be positive")
    space._require_valid()
    p = space.from_weight(np.asarray(w, dtype=float))
    out = []
    for delta in _adaptive_deltas(d_prime, space.corners.shape[0]):
        cand = p + delta
        if space.contains(cand):
            out.append(space.to_weight(cand))
    return out


# ---------------------------------------------------------------------------
# planners

@dataclass(frozen=True)
class PlannerConfig:
    """Lattice planner settings.

    mode selects the lattice: 'basic' steps directly on the simplex chart
    at step d; 'adaptive' steps at d_prime in the distance-scaled space.
    w_init defaults to the barycenter. rho, when set, stops expansion at
    the given L1 lattice radius (in steps) around w_init. squared_edges
    switches the adaptive space to raw squared-gap edge lengths.
    include_corners additionally expands basic-lattice candidates that
    land exactly on a simplex corner, as that corner's clipped weight
    (pure single-map solutions); by default such candidates are discarded
    like any other boundary violation.
    """

    mode: str = "basic"
    d: float = 0.1
    d_prime: float = 0.2
    w_init: tuple = None
    rho: int = None
    squared_edges: bool = False
    include_corners: bool = False
    opt: ErgOptConfig = field(default_factory=ErgOptConfig)

    def __post_init__(self):
        if self.mode not in ("basic", "adaptive"):
            raise ValueError(f"mode must be basic or adaptive, got {self.mode!r}")
        if not 0.0 < self.d < 1.0:
            raise ValueError("step d must be in (0, 1)")
        if self.d_prime <= 0:
            raise ValueError("step d_prime must be positive")
        if self.rho is not None and self.rho < 0:
            raise ValueError("rho must be nonnegative")


@dataclass
class SolutionRecord:
    """One solved weight: controls, per-map mismatches, episode bookkeeping."""

    weight: np.ndarray
    key: tuple
    controls: np.ndarray
    ergodic_vector: np.ndarray
    iterations: int
    reason: str
    trace: EpisodeTrace = None


def _check_setup(family, model):
    if len(family) not in (2, 3):
        raise ValueError("planning needs 2 or 3 maps")
    if tuple(model.lengths) != tuple(family.basis.lengths):
        raise ValueError(
            f"model box {model.lengths} does not match basis box {family.basis.lengths}")


def _lattice_bfs(family, cfg):
    """Yield (key, weight, parent_key) in FIFO expansion order.

    Feasibility is geometric only, so the enumeration is identical whether
    or not episodes get solved along the way; sles and the baseline share
    one lattice through this. parent_key is the expanded key that first
    pushed this one (None for the root).
    """
    m = len(family)
    w_init = (np.full(m, 1.0 / m) if cfg.w_init is None
              else validate_weight(cfg.w_init, m))
    mode = cfg.mode
    space = None
    p_init = None
    if mode == "adaptive":
        space = build_affine_space(family, cfg.squared_edges)
        if space.degenerate:
            log.warning("adaptive space is degenerate; falling back to basic sampling")
            mode = "basic"
        else:
            p_init = space.from_weight(w_init)

    def corner_index(w):
        # exact corner landing only; overshoots stay rejected
        hits = np.flatnonzero(np.abs(w - 1.0) <= WEIGHT_TOL)
        if len(hits) == 1 and (np.delete(w, hits[0]) <= WEIGHT_TOL).all():
            return int(hits[0])
        return None

    def weight_at(key):
        if mode == "basic":
            w = _basic_weight(key, w_init, cfg.d)
            if (w > WEIGHT_TOL).all():
                return w
            eye = np.maximum(np.eye(m)[corner_index(w)], CORNER_CLIP)
            return eye / eye.sum()
        if key == (0,) * (m - 1):
            return w_init.copy()
        return space.to_weight(p_init + np.asarray(key, dtype=float) * cfg.d_prime)

    def feasible(key):
        if cfg.rho is not None and sum(abs(k) for k in key) > cfg.rho:
            return False
        if mode == "basic":
            w = _basic_weight(key, w_init, cfg.d)
            if (w > WEIGHT_TOL).all():
                return True
            return cfg.include_corners and corner_index(w) is not None
        return space.contains(p_init + np.asarray(key, dtype=float) * cfg.d_prime)

    root = (0,) * (m - 1)
    open_q = deque([root])
    seen = {root}
    parent = {root: None}
    while open_q:
        key = open_q.popleft()
        yield key, weight_at(key), parent[key]
        for nkey in _basic_neighbor_keys(key, m):
            if nkey not in seen and feasible(nkey):
                seen.add(nkey)
                parent[nkey] = key
                open_q.append(nkey)


def lattice_weights(family, cfg=None):
    """The (key, weight) sequence a planner run would expand, without solving."""
    cfg = cfg or PlannerConfig()
    return [(key, w) for key, w, _ in _lattice_bfs(family, cfg)]


def sles(family, model, cfg=None):
    """Breadth-first lattice coverage with warm-started episodes.

    Expands weights outward from w_init in FIFO order; the first episode
    starts from the zero control and every other episode starts from its
    parent's solution. Returns one SolutionRecord per expanded key, in
    expansion order.
    """
    cfg = cfg or PlannerConfig()
    _check_setup(family, model)
    records = []
    solved = {}
    for key, w, parent in _lattice_bfs(family, cfg):
        u0 = (np.zeros((model.n_steps, model.control_dim)) if parent is None
              else solved[parent])
        phi_prime = scalarize(family, w)
        u, trace = ergodic_search(phi_prime, u0, model, family.basis, cfg.opt)
        solved[key] = u
        vec = ergodic_vector(rollout(model, u), family)
        records.append(SolutionRecord(weight=w, key=key, controls=u,
                                      ergodic_vector=vec, iterations=trace.iterations,
                                      reason=trace.reason, trace=trace))
    return records


def naive_scalarization(family, model, weights, opt=None):
    """Independent zero-start episode per weight; the warm-start baseline."""
    opt = opt or ErgOptConfig()
    _check_setup(family, model)
    records = []
    for w in weights:
        w = validate_weight(w, len(family))
        phi_prime = scalarize(family, w)
        u0 = np.zeros((model.n_steps, model.control_dim))
        u, trace = ergodic_search(phi_prime, u0, model, family.basis, opt)
        vec = ergodic_vector(rollout(model, u), family)
        records.append(SolutionRecord(weight=w, key=None, controls=u,
                                      ergodic_vector=vec, iterations=trace.iterations,
                                      reason=trace.reason, trace=trace))
    return records
