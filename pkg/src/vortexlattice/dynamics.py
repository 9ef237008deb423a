"""Semiclassical point-particle trajectories in the two-beam force field.

A classic fixed-step fourth-order Runge-Kutta integrator advances the atom in
Cartesian coordinates (the cylindrical frame is singular on the axis); forces
are evaluated in the local cylindrical frame at every substage.  The force
model is either the reduced sum-of-beams scattering picture or the full
total-field one, with optional dipole contribution and optional velocity
coupling in the detuning.
"""

import math
from dataclasses import dataclass

import numpy as np

from .atom_forces import (ForceVec, Velocity, central_ring_radius, dipole_force,
                          scattering_force, spring_constant_k0)
from .errors import DegenerateGeometryError, DivergenceError, StepSizeError
from .lg_mode import CylPoint, waist_at
from .superpose import PairSpec

__all__ = [
    "IntegratorConfig",
    "TrajectoryState",
    "angular_momentum",
    "estimate_frequency",
    "integrate",
    "trap_frequency",
]

_FORCE_MODELS = ("reduced-sum", "full-total")

# Trajectories further out than this multiple of the beam extent abort
DIVERGENCE_FACTOR = 10.0

# Minimum resolution of one trap period, in steps
MIN_STEPS_PER_PERIOD = 50


@dataclass(frozen=True)
class TrajectoryState:
    """Snapshot of the atom: cylindrical position, cylindrical velocity and
    the elapsed time."""

    position: CylPoint
    velocity: Velocity
    time: float


@dataclass(frozen=True)
class IntegratorConfig:
    """Integration controls.

    ``force_model`` selects "reduced-sum" (per-beam reduced phase gradients,
    forces added) or "full-total" (full gradient of the interfered field).
    ``velocity_coupling`` feeds v . grad(Theta) into the detuning.  The
    scattering and dipole contributions toggle independently, and
    ``include_azimuthal`` can zero the azimuthal scattering component to
    isolate the conservative trap motion from the spin-up torque.
    """

    step: float
    duration: float
    force_model: str = "reduced-sum"
    velocity_coupling: bool = False
    include_scattering: bool = True
    include_dipole: bool = False
    include_azimuthal: bool = True
    sample_every: int = 1

    def __post_init__(self):
        if self.step <= 0.0:
            raise ValueError("step must be positive")
        if self.duration < self.step:
            raise ValueError("duration must be at least one step")
        if self.force_model not in _FORCE_MODELS:
            raise ValueError(f"force_model must be one of {_FORCE_MODELS}")
        if self.sample_every < 1:
            raise ValueError("sample_every must be >= 1")


def trap_frequency(atom, pair):
    """Harmonic axial frequency sqrt(K0 / m) on the central ring (rad/s)."""
    k0 = spring_constant_k0(atom, pair)
    if k0 <= 0.0:
        raise DegenerateGeometryError("no axial trap: K0 <= 0 for this geometry")
    return math.sqrt(k0 / atom.mass)


def angular_momentum(atom, state):
    """Axial angular momentum m rho v_phi of a trajectory state."""
    return atom.mass * state.position.rho * state.velocity.v_phi


def _force_cartesian(atom, pair, cfg, x, y, z, vx, vy, vz):
    rho = math.hypot(x, y)
    phi = math.atan2(y, x)
    c, s = math.cos(phi), math.sin(phi)
    pt = CylPoint(rho=rho, phi=phi, z=z)
    vel = None
    if cfg.velocity_coupling:
        vel = Velocity(v_rho=vx * c + vy * s, v_phi=vy * c - vx * s, v_z=vz)
    mode, combine = ("reduced", "sum-of-beams") if cfg.force_model == "reduced-sum" \
        else ("full", "total-field")
    f = ForceVec(0.0, 0.0, 0.0)
    if cfg.include_scattering:
        fs = scattering_force(atom, pair, pt, vel=vel, mode=mode, combine=combine)
        if not cfg.include_azimuthal:
            fs = ForceVec(fs.f_rho, 0.0, fs.f_z)
        f = f + fs
    if cfg.include_dipole:
        f = f + dipole_force(atom, pair, pt, vel=vel, mode=mode, combine=combine)
    fx = f.f_rho * c - f.f_phi * s
    fy = f.f_rho * s + f.f_phi * c
    return fx, fy, f.f_z


def _extents(pair):
    b = pair.beam1
    w_far = waist_at(b, pair.separation_d)
    radial = central_ring_radius(pair) + 4.0 * w_far
    axial = 0.5 * pair.separation_d + 2.0 * b.rayleigh_range
    return radial, axial


def integrate(atom, pair, init, cfg):
    """Advance a TrajectoryState through the pair's force field.

    Returns the sampled states, always including the initial and final ones.
    Raises StepSizeError when the step resolves the axial trap period with
    fewer than MIN_STEPS_PER_PERIOD points, and DivergenceError if the atom
    leaves DIVERGENCE_FACTOR times the beam extent.
    """
    if pair.separation_d > 0.0:
        k0 = spring_constant_k0(atom, pair)
        if k0 > 0.0:
            period = 2.0 * math.pi / math.sqrt(k0 / atom.mass)
            if cfg.step > period / MIN_STEPS_PER_PERIOD:
                raise StepSizeError(
                    f"step {cfg.step:.3e} s too coarse for trap period {period:.3e} s; "
                    f"need <= {period / MIN_STEPS_PER_PERIOD:.3e} s")

    radial_max, axial_max = _extents(pair)
    radial_max *= DIVERGENCE_FACTOR
    axial_max *= DIVERGENCE_FACTOR

    p, v = init.position, init.velocity
    c, s = math.cos(p.phi), math.sin(p.phi)
    y = np.array([p.rho * c, p.rho * s, p.z,
                  v.v_rho * c - v.v_phi * s, v.v_rho * s + v.v_phi * c, v.v_z])
    inv_m = 1.0 / atom.mass

    def deriv(state):
        fx, fy, fz = _force_cartesian(atom, pair, cfg, *state)
        return np.array([state[3], state[4], state[5],
                         fx * inv_m, fy * inv_m, fz * inv_m])

    def snapshot(state, time):
        rho = math.hypot(state[0], state[1])
        phi = math.atan2(state[1], state[0])
        cc, ss = math.cos(phi), math.sin(phi)
        return TrajectoryState(
            position=CylPoint(rho=rho, phi=phi, z=state[2]),
            velocity=Velocity(v_rho=state[3] * cc + state[4] * ss,
                              v_phi=state[4] * cc - state[3] * ss,
                              v_z=state[5]),
            time=time)

    n_steps = max(1, round(cfg.duration / cfg.step))
    h = cfg.step
    samples = [snapshot(y, init.time)]
    for n in range(1, n_steps + 1):
        k1 = deriv(y)
        k2 = deriv(y + 0.5 * h * k1)
        k3 = deriv(y + 0.5 * h * k2)
        k4 = deriv(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if math.hypot(y[0], y[1]) > radial_max or abs(y[2]) > axial_max:
            raise DivergenceError(f"trajectory left the beam region at step {n}")
        if n % cfg.sample_every == 0 or n == n_steps:
            samples.append(snapshot(y, init.time + n * h))
    return samples


def estimate_frequency(times, values):
    """Angular frequency of an oscillating series from its zero crossings.

    The series is demeaned, crossing times are linearly interpolated, and the
    mean half-period gives omega = pi / mean(gap).  Returns NaN when fewer
    than three crossings exist.
    """
    t = np.asarray(times, dtype=float)
    x = np.asarray(values, dtype=float)
    x = x - x.mean()
    sign = np.sign(x)
    nz = sign != 0.0
    idx = np.where(np.diff(sign[nz]) != 0.0)[0]
    t_nz, x_nz = t[nz], x[nz]
    if idx.size < 3:
        return float("nan")
    crossings = t_nz[idx] - x_nz[idx] * (t_nz[idx + 1] - t_nz[idx]) \
        / (x_nz[idx + 1] - x_nz[idx])
    return math.pi / float(np.mean(np.diff(crossings)))
