"""Robot models, forward rollout, and control-feasibility projection.

Two planar models are supported: a forward-moving-only differential drive
with controls (v, omega), v in [0, v_max], and a single integrator with
per-axis velocity controls. Integration is explicit Euler at fixed dt.
Positions are clamped to the workspace box; each clamp is recorded as the
pre-clamp overshoot so the optimizer can penalize boundary violations.
"""

from dataclasses import dataclass, field

import numpy as np

from ._backend import rollout_diffdrive, rollout_integrator

DIFFERENTIAL_DRIVE = "differential_drive"
SINGLE_INTEGRATOR = "single_integrator"


@dataclass(frozen=True)
class RobotModel:
    kind: str
    dt: float = 0.1
    n_steps: int = 100
    lengths: tuple = (1.0, 1.0)
    start: tuple = (0.5, 0.5, 0.0)
    v_max: float = 1.0
    omega_max: float = 2.0 * np.pi

    def __post_init__(self):
        if self.kind not in (DIFFERENTIAL_DRIVE, SINGLE_INTEGRATOR):
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")
        if self.v_max <= 0 or self.omega_max <= 0:
            raise ValueError("control bounds must be positive")
        if len(self.start) != self.state_dim:
            raise ValueError(
                f"{self.kind} start state needs {self.state_dim} entries, got {len(self.start)}"
            )
        for p, L in zip(self.start, self.lengths):
            if not (0.0 <= p <= L):
                raise ValueError(f"start position {self.start} outside the workspace box")

    @property
    def state_dim(self):
        return 3 if self.kind == DIFFERENTIAL_DRIVE else 2

    @property
    def control_dim(self):
        return 2

    @property
    def horizon(self):
        return self.n_steps * self.dt


def differential_drive(v_max=1.0, omega_max=2.0 * np.pi, dt=0.1, n_steps=100,
                       lengths=(1.0, 1.0), start=(0.5, 0.5, 0.0)):
    return RobotModel(kind=DIFFERENTIAL_DRIVE, dt=dt, n_steps=n_steps,
                      lengths=tuple(lengths), start=tuple(start),
                      v_max=v_max, omega_max=omega_max)


def single_integrator(speed_max=1.0, dt=0.1, n_steps=100,
                      lengths=(1.0, 1.0), start=(0.5, 0.5)):
    # per-axis speed bound is carried in v_max; omega_max is unused
    return RobotModel(kind=SINGLE_INTEGRATOR, dt=dt, n_steps=n_steps,
                      lengths=tuple(lengths), start=tuple(start),
                      v_max=speed_max, omega_max=1.0)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States of one rollout plus the recorded boundary overshoots.

    states has n_steps+1 rows (row 0 is the start state); overshoot[i] is
    the amount step i tried to leave the box by, zero where no clamp
    happened.
    """

    states: np.ndarray
    overshoot: np.ndarray = field(repr=False)

    @property
    def positions(self):
        return self.states[:, :2]

    @property
    def clamp_count(self):
        return int(np.count_nonzero(self.overshoot.any(axis=1)))


def rollout(model, u, start=None):
    """Integrate a control sequence; returns a Trajectory.

    Controls are expected to be within bounds (run project_controls first
    after gradient steps); boundary clamping is an event, not an error.
    """
    u = np.ascontiguousarray(u, dtype=float)
    if u.ndim != 2 or u.shape[1] != model.control_dim:
        raise ValueError(f"controls must be (N, {model.control_dim})")
    s0 = np.asarray(model.start if start is None else start, dtype=float)
    if s0.shape != (model.state_dim,):
        raise ValueError(f"start state needs {model.state_dim} entries")
    lx, ly = model.lengths
    if model.kind == DIFFERENTIAL_DRIVE:
        states, over = rollout_diffdrive(u, s0, model.dt, lx, ly)
    else:
        states, over = rollout_integrator(u, s0, model.dt, lx, ly)
    return Trajectory(states=states, overshoot=over)


def project_controls(model, u):
    """Componentwise clamp of controls to the model bounds; idempotent."""
    u = np.asarray(u, dtype=float)
    out = u.copy()
    if model.kind == DIFFERENTIAL_DRIVE:
        out[:, 0] = np.clip(out[:, 0], 0.0, model.v_max)
        out[:, 1] = np.clip(out[:, 1], -model.omega_max, model.omega_max)
    else:
        out[:, :] = np.clip(out, -model.v_max, model.v_max)
    return out
