"""Method-of-lines integrator for the full PDE system.

Classical RK4 in time over 2nd-order central differences in space, with
either periodic or zero-flux (ghost-point reflection) boundaries.  Kept
explicit and dependency-free on purpose: the simulator is an independent
oracle for the closed-form solutions, so it must not share machinery with
them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import BlowUpError, StabilityError, TrackingError

STABILITY_SAFETY = 0.8


@dataclass(frozen=True)
class GridField:
    """Sampled (u, v) on a uniform spatial grid at time t."""

    x0: float
    dx: float
    u: np.ndarray
    v: np.ndarray
    t: float

    def __post_init__(self):
        if self.dx <= 0:
            raise ValueError("dx must be positive")
        if len(self.u) != len(self.v) or len(self.u) < 8:
            raise ValueError("u, v must have equal length >= 8")

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(len(self.u))


@dataclass(frozen=True)
class SimConfig:
    """Reaction parameters and integration controls; m = beta by construction."""

    k: float
    delta: float
    beta: float
    dt: float
    t_end: float
    bc: str = "neumann"          # 'neumann' (zero-flux) or 'periodic'
    snapshot_every: int = 100    # in steps

    def __post_init__(self):
        # k = beta = 0 is allowed so the pure-diffusion limit stays runnable
        if self.k < 0 or self.beta < 0 or self.delta <= 0:
            raise ValueError("need k >= 0, beta >= 0, delta > 0")
        if self.dt <= 0 or self.t_end <= 0:
            raise ValueError("dt and t_end must be positive")
        if self.bc not in ("neumann", "periodic"):
            raise ValueError(f"bc must be 'neumann' or 'periodic', got {self.bc!r}")
        if self.snapshot_every < 1:
            raise ValueError("snapshot_every must be >= 1")


def check_stability(cfg: SimConfig, dx: float):
    limit = STABILITY_SAFETY * dx * dx / 2.0
    if cfg.dt > limit:
        raise StabilityError(
            f"dt={cfg.dt:.6g} exceeds {STABILITY_SAFETY}*dx^2/2={limit:.6g}"
        )


def _laplacian(f, dx, bc):
    lap = np.empty_like(f)
    inv = 1.0 / (dx * dx)
    lap[1:-1] = (f[:-2] - 2.0 * f[1:-1] + f[2:]) * inv
    if bc == "periodic":
        lap[0] = (f[-1] - 2.0 * f[0] + f[1]) * inv
        lap[-1] = (f[-2] - 2.0 * f[-1] + f[0]) * inv
    else:  # ghost-point reflection: f[-1] := f[1], f[n] := f[n-2]
        lap[0] = 2.0 * (f[1] - f[0]) * inv
        lap[-1] = 2.0 * (f[-2] - f[-1]) * inv
    return lap


def _rhs(u, v, dx, cfg: SimConfig):
    s = 1.0 / math.sqrt(cfg.delta)
    fu = _laplacian(u, dx, cfg.bc) - cfg.beta * u + (cfg.k + s) * u * u \
        - u**3 - u * v
    fv = _laplacian(v, dx, cfg.bc) + cfg.k * u * v - cfg.beta * v \
        - cfg.delta * v**3
    return fu, fv


def step(field: GridField, cfg: SimConfig) -> GridField:
    """One classical RK4 step."""
    check_stability(cfg, field.dx)
    dt = cfg.dt
    u, v = field.u, field.v
    k1u, k1v = _rhs(u, v, field.dx, cfg)
    k2u, k2v = _rhs(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v, field.dx, cfg)
    k3u, k3v = _rhs(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v, field.dx, cfg)
    k4u, k4v = _rhs(u + dt * k3u, v + dt * k3v, field.dx, cfg)
    un = u + (dt / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
    vn = v + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    tn = field.t + dt
    if not (np.isfinite(un).all() and np.isfinite(vn).all()):
        bad = np.nonzero(~(np.isfinite(un) & np.isfinite(vn)))[0][0]
        raise BlowUpError(tn, field.x0 + field.dx * bad)
    return replace(field, u=un, v=vn, t=tn)


def simulate(initial: GridField, cfg: SimConfig):
    """Integrate to t_end, returning snapshots every snapshot_every steps.

    The initial field is always the first snapshot and the final field the
    last one.  Deterministic for identical inputs.
    """
    check_stability(cfg, initial.dx)
    n_steps = int(round(cfg.t_end / cfg.dt))
    snapshots = [initial]
    f = initial
    for i in range(1, n_steps + 1):
        f = step(f, cfg)
        if i % cfg.snapshot_every == 0 or i == n_steps:
            snapshots.append(f)
    return snapshots


def _crossing_position(x, f, level):
    d = f - level
    exact = np.nonzero(d == 0)[0]
    sign_change = np.nonzero(d[:-1] * d[1:] < 0)[0]
    n = len(exact) + len(sign_change)
    if n == 0:
        raise TrackingError("level not crossed")
    if n > 1:
        raise TrackingError(f"level crossed {n} times")
    if len(exact):
        return float(x[exact[0]])
    i = sign_change[0]
    frac = d[i] / (d[i] - d[i + 1])
    return float(x[i] + frac * (x[i + 1] - x[i]))


def measure_wave_speed(snapshots, level, component="u") -> float:
    """Least-squares slope of the tracked level-crossing position vs time."""
    if component not in ("u", "v"):
        raise ValueError("component must be 'u' or 'v'")
    if len(snapshots) < 2:
        raise ValueError("need at least two snapshots")
    ts, xs = [], []
    for i, f in enumerate(snapshots):
        vals = f.u if component == "u" else f.v
        try:
            pos = _crossing_position(f.x, vals, level)
        except TrackingError as exc:
            raise TrackingError(f"snapshot {i} (t={f.t:.6g}): {exc}") from None
        ts.append(f.t)
        xs.append(pos)
    slope = np.polyfit(ts, xs, 1)[0]
    return float(slope)
