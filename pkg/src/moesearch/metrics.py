"""Multi-objective evaluation: dominance, Pareto filtering, hypervolume.

All comparisons are minimization. Hypervolume is the Lebesgue measure of
the region dominated by a front and bounded by a reference point, computed
exactly: a sorted sweep for two objectives and slicing into 2-D sweeps for
three. Points beyond the reference point cannot contribute and are clipped
out with a log message rather than treated as errors; capped episodes can
legitimately produce them.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from . import fourier

log = logging.getLogger(__name__)


def dominates(a, b):
    """True iff a is componentwise <= b and strictly better somewhere."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"vector length mismatch: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def pareto_filter(points):
    """Indices of the nondominated rows, in input order.

    A row is kept unless some other row dominates it. Duplicate rows never
    dominate each other, so they are all kept.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError("expected a 2-D array of objective vectors")
    n = pts.shape[0]
    if n == 0:
        return np.empty(0, dtype=int)
    le = np.all(pts[:, None, :] <= pts[None, :, :], axis=2)
    lt = np.any(pts[:, None, :] < pts[None, :, :], axis=2)
    dominated = np.any(le & lt, axis=0)
    return np.flatnonzero(~dominated)


def _clip_front(front, ref):
    front = np.asarray(front, dtype=float)
    if front.ndim != 2:
        raise ValueError("front must be a 2-D array")
    ref = np.asarray(ref, dtype=float)
    if front.shape[1] != ref.shape[0]:
        raise ValueError("front and reference point dimensions differ")
    keep = np.all(front <= ref, axis=1)
    if not keep.all():
        log.warning("hypervolume: clipped %d point(s) beyond the reference %s",
                    int((~keep).sum()), ref.tolist())
    return front[keep], ref


def _hv2(front, ref):
    order = np.argsort(front[:, 0], kind="stable")
    vol = 0.0
    ceiling = ref[1]
    for x, y in front[order]:
        if y < ceiling:
            vol += (ref[0] - x) * (ceiling - y)
            ceiling = y
    return vol


def _hv3(front, ref):
    order = np.argsort(front[:, 2], kind="stable")
    pts = front[order]
    levels = np.unique(pts[:, 2])
    vol = 0.0
    for i, z in enumerate(levels):
        depth = (levels[i + 1] if i + 1 < len(levels) else ref[2]) - z
        if depth <= 0:
            continue
        active = pts[pts[:, 2] <= z][:, :2]
        vol += _hv2(active, ref[:2]) * depth
    return vol


def hypervolume(front, ref):
    """Hypervolume of a front against a reference point (m in {2, 3})."""
    front = np.atleast_2d(np.asarray(front, dtype=float))
    if front.size == 0:
        log.warning("hypervolume of an empty front is 0")
        return 0.0
    front, ref = _clip_front(front, ref)
    if front.shape[0] == 0:
        log.warning("hypervolume: no points remain after clipping")
        return 0.0
    m = front.shape[1]
    if m == 2:
        return float(_hv2(front, ref))
    if m == 3:
        return float(_hv3(front, ref))
    raise ValueError(f"hypervolume supports 2 or 3 objectives, got {m}")


def map_distance(phi_i, phi_j, basis):
    """Weighted squared coefficient gap between two maps.

    The planner's affine weight-space construction consumes the square
    root of this value, which is a proper metric (the squared form does
    not satisfy the triangle inequality).
    """
    return fourier.ergodic_metric(phi_i, phi_j, basis)


@dataclass
class ParetoArchive:
    """Solution records plus their nondominated subset and hypervolume.

    records is a list of objects exposing an ergodic_vector attribute
    (moes.SolutionRecord); reference is the hypervolume reference point.
    """

    records: list
    reference: np.ndarray = field(default_factory=lambda: np.array([1.0, 1.0]))
    nondominated: np.ndarray = field(init=False)

    def __post_init__(self):
        self.reference = np.asarray(self.reference, dtype=float)
        vectors = self.vectors()
        self.nondominated = (pareto_filter(vectors) if len(vectors)
                             else np.empty(0, dtype=int))

    def vectors(self):
        return np.array([r.ergodic_vector for r in self.records], dtype=float)

    def front(self):
        return self.vectors()[self.nondominated]

    def hypervolume(self):
        if len(self.records) == 0:
            log.warning("hypervolume of an empty archive is 0")
            return 0.0
        return hypervolume(self.front(), self.reference)
