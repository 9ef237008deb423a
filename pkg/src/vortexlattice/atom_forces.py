"""Radiation forces of one or two Laguerre-Gaussian beams on a two-level atom.

Scattering (dissipative) and dipole (reactive) forces in the steady-state
two-level model, plus the closed-form trap quantities of the near-resonant
counter-propagating pair: saturation factors, the axial spring constant and
its value on the central ring, the ring radius, and the axial torque.

Two evaluation modes exist for the phase gradient.  "reduced" keeps only the
dominant slopes each beam imposes in its own frame, exactly
(0, l / rho, direction * k); "full" differentiates the complete phase.  Two
combination rules exist for a pair: "sum-of-beams" adds the two single-beam
forces, "total-field" applies the force formulas to the interfered field.
"""

from dataclasses import dataclass

import numpy as np

from .constants import HBAR
from .errors import DarkPointError, DegenerateGeometryError
from .lg_mode import BeamSpec, CylPoint, mode_amplitude, mode_phase
from .superpose import DARK_FRACTION, PairSpec, pair_complex, total_amplitude

__all__ = [
    "AtomSpec",
    "ForceVec",
    "Velocity",
    "axial_force_slope",
    "central_ring_radius",
    "detuning_eff",
    "dipole_force",
    "dipole_potential",
    "ferris_rate",
    "lift_speed",
    "phase_gradient",
    "q_minus",
    "q_plus",
    "rabi_at",
    "scattering_force",
    "spring_constant",
    "spring_constant_k0",
    "harmonic_potential_v0",
    "torque_axial",
]

# Radius below which azimuthal gradient components are taken as 0 (m)
AXIS_RHO = 1e-15

_REDUCED, _FULL = "reduced", "full"
_SUM_ALIASES = ("sum-of-beams", "sum")
_TOTAL_ALIASES = ("total-field", "total")


@dataclass(frozen=True)
class AtomSpec:
    """Two-level atom: mass (kg), natural linewidth gamma (rad/s), static
    detuning detuning0 = omega_light - omega_atom (rad/s), and the Rabi
    frequency rabi_omega0 (rad/s) an amplitude equal to the reference
    amp_scale would drive."""

    mass: float
    gamma: float
    detuning0: float
    rabi_omega0: float

    def __post_init__(self):
        if self.mass <= 0.0:
            raise ValueError("mass must be positive")
        if self.gamma <= 0.0:
            raise ValueError("gamma must be positive")
        if self.rabi_omega0 < 0.0:
            raise ValueError("rabi_omega0 must be >= 0")


@dataclass(frozen=True)
class Velocity:
    """Velocity in the local cylindrical frame (m/s); v_phi is the linear
    azimuthal speed, not an angular rate."""

    v_rho: float = 0.0
    v_phi: float = 0.0
    v_z: float = 0.0

    def as_array(self):
        return np.array([self.v_rho, self.v_phi, self.v_z])


@dataclass(frozen=True)
class ForceVec:
    """Force components along (rho^, phi^, z^) at the evaluation point (N)."""

    f_rho: float
    f_phi: float
    f_z: float

    def as_array(self):
        return np.array([self.f_rho, self.f_phi, self.f_z])

    def __add__(self, other):
        return ForceVec(self.f_rho + other.f_rho,
                        self.f_phi + other.f_phi,
                        self.f_z + other.f_z)


def rabi_at(atom, amplitude, amp_scale_ref):
    """Local Rabi frequency: rabi_omega0 scaled by amplitude / amp_scale_ref."""
    if amp_scale_ref <= 0.0:
        raise ValueError("amp_scale_ref must be positive")
    return atom.rabi_omega0 * np.asarray(amplitude) / amp_scale_ref


def _pair_amp_ref(pair):
    """Reference amplitude the atom's rabi_omega0 corresponds to: beam 1's
    amp_scale, falling back to beam 2's when beam 1 is switched off."""
    ref = pair.beam1.amp_scale
    if ref <= 0.0:
        ref = pair.beam2.amp_scale
    if ref <= 0.0:
        raise ValueError("at least one beam must have a positive amp_scale")
    return ref


def _fd_step(field):
    beams = (field,) if isinstance(field, BeamSpec) else (field.beam1, field.beam2)
    return min(min(b.wavelength, b.waist_w0) for b in beams) / 200.0


def _with_rho(pt, rho):
    # amplitude and the closed-form phase depend on rho only through rho^2,
    # so an even extension across the axis keeps radial stencils valid
    return CylPoint(rho=np.abs(rho), phi=pt.phi, z=pt.z)


def _with_phi(pt, phi):
    return CylPoint(rho=pt.rho, phi=phi, z=pt.z)


def _with_z(pt, z):
    return CylPoint(rho=pt.rho, phi=pt.phi, z=z)


def _fd(values, h, refine):
    """Derivative from samples (f(+h), f(-h)) or, refined,
    (f(+h), f(-h), f(+2h), f(-2h))."""
    if refine:
        a, b, c, d = values
        return (8.0 * (a - b) - (c - d)) / (12.0 * h)
    a, b = values
    return (a - b) / (2.0 * h)


def _stencil(pt, axis, h, refine):
    make = {"rho": lambda s: _with_rho(pt, np.asarray(pt.rho) + s),
            "phi": lambda s: _with_phi(pt, np.asarray(pt.phi) + s),
            "z": lambda s: _with_z(pt, np.asarray(pt.z) + s)}[axis]
    steps = (h, -h, 2.0 * h, -2.0 * h) if refine else (h, -h)
    return [make(s) for s in steps]


def _scalar_grad(func, pt, h, refine=True):
    """Gradient (d/drho, (1/rho) d/dphi, d/dz) of a scalar field given as
    func(CylPoint)."""
    g_rho = _fd([func(p) for p in _stencil(pt, "rho", h, refine)], h, refine)
    g_z = _fd([func(p) for p in _stencil(pt, "z", h, refine)], h, refine)
    rho = np.asarray(pt.rho)
    on_axis = rho <= AXIS_RHO
    hp = h / np.where(on_axis, 1.0, rho)
    dphi = _fd([func(p) for p in _stencil(pt, "phi", hp, refine)], hp, refine)
    g_phi = np.where(on_axis, 0.0, dphi / np.where(on_axis, 1.0, rho))
    return np.stack(np.broadcast_arrays(g_rho, g_phi, g_z))


def _angle_diff(e_plus, e_minus):
    return np.angle(e_plus * np.conj(e_minus))


def _arg_grad(cfunc, pt, h, refine=True):
    """Gradient of the argument of a complex field, from phase increments of
    ratios so no unwrapping is needed (stencil spans must stay < pi)."""

    def along(axis, step):
        pts = _stencil(pt, axis, step, refine)
        if refine:
            d1 = _angle_diff(cfunc(pts[0]), cfunc(pts[1]))
            d2 = _angle_diff(cfunc(pts[2]), cfunc(pts[3]))
            return (8.0 * d1 - d2) / (12.0 * step)
        return _angle_diff(cfunc(pts[0]), cfunc(pts[1])) / (2.0 * step)

    g_rho = along("rho", h)
    g_z = along("z", h)
    rho = np.asarray(pt.rho)
    on_axis = rho <= AXIS_RHO
    hp = h / np.where(on_axis, 1.0, rho)
    g_phi = np.where(on_axis, 0.0, along("phi", hp) / np.where(on_axis, 1.0, rho))
    return np.stack(np.broadcast_arrays(g_rho, g_phi, g_z))


def _beam_phase_gradient(beam, pt, mode, refine=True):
    if mode == _REDUCED:
        rho = np.asarray(pt.rho)
        on_axis = rho <= AXIS_RHO
        # own-frame azimuthal slope l / rho: every beam advances its phase in
        # its own handedness, so no lab-frame azimuthal_sign appears here
        g_phi = np.where(on_axis, 0.0, beam.winding_l / np.where(on_axis, 1.0, rho))
        g_z = np.broadcast_to(float(beam.direction) * beam.wavenumber, g_phi.shape)
        return np.stack(np.broadcast_arrays(np.zeros_like(g_phi), g_phi, g_z))
    h = _fd_step(beam)
    grad = _scalar_grad(lambda p: mode_phase(beam, p), pt, h, refine)
    rho = np.asarray(pt.rho)
    on_axis = rho <= AXIS_RHO
    grad[1] = np.where(on_axis, 0.0,
                       beam.azimuthal_sign * beam.winding_l / np.where(on_axis, 1.0, rho))
    return grad


def _pair_dark_mask(pair, pt, t):
    u1 = mode_amplitude(pair.beam1, pt)
    u2 = mode_amplitude(pair.beam2, pt)
    u = np.abs(pair_complex(pair, pt, t))
    return u <= DARK_FRACTION * np.maximum(u1, u2)


def phase_gradient(field, pt, mode="reduced", t=0.0, refine=True):
    """Gradient of the optical phase as an array [g_rho, g_phi, g_z].

    For a BeamSpec, ``mode="reduced"`` returns exactly
    (0, l / rho, direction * k) with the azimuthal entry zeroed on the axis;
    ``mode="full"`` finite-differences the closed-form phase in rho and z and
    keeps the azimuthal slope analytic.  For a PairSpec the gradient of the
    total-field phase is computed by finite differences of complex-field
    ratios; only ``mode="full"`` is meaningful there, and a DarkPointError is
    raised if any evaluation point is dark.
    """
    if mode not in (_REDUCED, _FULL):
        raise ValueError("mode must be 'reduced' or 'full'")
    if isinstance(field, BeamSpec):
        return _beam_phase_gradient(field, pt, mode, refine)
    if mode == _REDUCED:
        raise ValueError("a pair has no single reduced gradient; evaluate per beam")
    if np.any(_pair_dark_mask(field, pt, t)):
        raise DarkPointError("total phase undefined at a dark point")
    return _arg_grad(lambda p: pair_complex(field, p, t), pt, _fd_step(field), refine)


def detuning_eff(atom, vel, grad):
    """Doppler-corrected detuning detuning0 - v . grad(Theta)."""
    if vel is None:
        return atom.detuning0
    return atom.detuning0 - (vel.v_rho * grad[0] + vel.v_phi * grad[1] + vel.v_z * grad[2])


def _normalize_combine(combine):
    if combine in _SUM_ALIASES:
        return "sum"
    if combine in _TOTAL_ALIASES:
        return "total"
    raise ValueError("combine must be 'sum-of-beams' or 'total-field'")


def _force_prefactor(atom, omega, delta):
    return 0.25 * HBAR * atom.gamma * omega * omega \
        / (delta * delta + 0.5 * omega * omega + 0.25 * atom.gamma ** 2)


def _single_scattering(atom, beam, pt, vel, mode, amp_ref, refine):
    omega = rabi_at(atom, mode_amplitude(beam, pt), amp_ref)
    grad = _beam_phase_gradient(beam, pt, mode, refine)
    pref = _force_prefactor(atom, omega, detuning_eff(atom, vel, grad))
    return ForceVec(pref * grad[0], pref * grad[1], pref * grad[2])


def scattering_force(atom, field, pt, vel=None, mode="reduced",
                     combine="sum-of-beams", t=0.0, refine=True):
    """Scattering force (hbar Gamma / 4) Omega^2 grad(Theta) /
    (Delta_eff^2 + Omega^2 / 2 + Gamma^2 / 4).

    ``field`` is a BeamSpec or a PairSpec.  For a pair, ``combine`` picks the
    sum of the two single-beam forces (each beam's phase gradient taken in
    ``mode``) or the force of the interfered total field, which always uses
    the full gradient and is set to zero at dark points.
    """
    if isinstance(field, BeamSpec):
        return _single_scattering(atom, field, pt, vel, mode, field.amp_scale, refine)
    ref = _pair_amp_ref(field)
    if _normalize_combine(combine) == "sum":
        return _single_scattering(atom, field.beam1, pt, vel, mode, ref, refine) \
            + _single_scattering(atom, field.beam2, pt, vel, mode, ref, refine)
    dark = _pair_dark_mask(field, pt, t)
    if np.ndim(dark) == 0 and dark:
        return ForceVec(0.0, 0.0, 0.0)
    grad = _arg_grad(lambda p: pair_complex(field, p, t), pt, _fd_step(field), refine)
    omega = rabi_at(atom, total_amplitude(field, pt, t=t), ref)
    pref = _force_prefactor(atom, omega, detuning_eff(atom, vel, grad))
    comp = [np.where(dark, 0.0, pref * grad[i]) for i in range(3)]
    return ForceVec(*comp)


def _dipole_from_amp(atom, omega, grad_omega, delta):
    den = delta * delta + 0.5 * omega * omega + 0.25 * atom.gamma ** 2
    scale = -0.5 * HBAR * delta * omega / den
    return ForceVec(scale * grad_omega[0], scale * grad_omega[1], scale * grad_omega[2])


def _single_dipole(atom, beam, pt, vel, mode, amp_ref, refine):
    h = _fd_step(beam)
    scale = atom.rabi_omega0 / amp_ref
    omega = scale * mode_amplitude(beam, pt)
    grad_omega = scale * _scalar_grad(lambda p: mode_amplitude(beam, p), pt, h, refine)
    delta = detuning_eff(atom, vel, _beam_phase_gradient(beam, pt, mode, refine)) \
        if vel is not None else atom.detuning0
    return _dipole_from_amp(atom, omega, grad_omega, delta)


def dipole_force(atom, field, pt, vel=None, mode="reduced",
                 combine="sum-of-beams", t=0.0, refine=True):
    """Dipole force -(hbar / 2) Omega grad(Omega) Delta_eff /
    (Delta_eff^2 + Omega^2 / 2 + Gamma^2 / 4), with grad(Omega) from central
    finite differences of the Rabi field (Richardson-refined by default).
    """
    if isinstance(field, BeamSpec):
        return _single_dipole(atom, field, pt, vel, mode, field.amp_scale, refine)
    ref = _pair_amp_ref(field)
    if _normalize_combine(combine) == "sum":
        return _single_dipole(atom, field.beam1, pt, vel, mode, ref, refine) \
            + _single_dipole(atom, field.beam2, pt, vel, mode, ref, refine)
    if vel is not None and mode != _FULL:
        raise ValueError("velocity coupling with the total field needs mode='full'")
    scale = atom.rabi_omega0 / ref
    omega = scale * total_amplitude(field, pt, t=t)
    h = _fd_step(field)
    grad_omega = scale * _scalar_grad(lambda p: total_amplitude(field, p, t=t), pt, h, refine)
    delta = atom.detuning0
    if vel is not None:
        delta = detuning_eff(atom, vel, phase_gradient(field, pt, mode=_FULL, t=t, refine=refine))
    return _dipole_from_amp(atom, omega, grad_omega, delta)


def _potential(atom, omega, delta):
    sat = 0.5 * omega * omega / (delta * delta + 0.25 * atom.gamma ** 2)
    return 0.5 * HBAR * delta * np.log1p(sat)


def dipole_potential(atom, field, pt, vel=None, mode="reduced",
                     combine="sum-of-beams", t=0.0, refine=True):
    """Dipole potential (hbar Delta_eff / 2) ln(1 + (Omega^2/2) /
    (Delta_eff^2 + Gamma^2/4)); its negative gradient is the dipole force
    when the velocity is zero."""
    def beam_potential(beam, amp_ref):
        omega = rabi_at(atom, mode_amplitude(beam, pt), amp_ref)
        delta = atom.detuning0
        if vel is not None:
            delta = detuning_eff(atom, vel, _beam_phase_gradient(beam, pt, mode, refine))
        return _potential(atom, omega, delta)

    if isinstance(field, BeamSpec):
        return beam_potential(field, field.amp_scale)
    ref = _pair_amp_ref(field)
    if _normalize_combine(combine) == "sum":
        return beam_potential(field.beam1, ref) + beam_potential(field.beam2, ref)
    omega = rabi_at(atom, total_amplitude(field, pt, t=t), ref)
    delta = atom.detuning0
    if vel is not None:
        delta = detuning_eff(atom, vel, phase_gradient(field, pt, mode=_FULL, t=t, refine=refine))
    return _potential(atom, omega, delta)


def _sat_q(atom, omega_sq):
    return omega_sq / (atom.detuning0 ** 2 + 0.25 * atom.gamma ** 2 + 0.5 * omega_sq)


def q_plus(atom, pair, pt):
    """Saturation factor of the co-propagating beam (beam 1):
    Omega1^2 / (Delta0^2 + Gamma^2/4 + Omega1^2/2).  Monotone in Omega1^2 and
    bounded above by 2."""
    omega = rabi_at(atom, mode_amplitude(pair.beam1, pt), _pair_amp_ref(pair))
    return _sat_q(atom, omega * omega)


def q_minus(atom, pair, pt):
    """Saturation factor of the counter-propagating beam (beam 2)."""
    omega = rabi_at(atom, mode_amplitude(pair.beam2, pt), _pair_amp_ref(pair))
    return _sat_q(atom, omega * omega)


def central_ring_radius(pair):
    """Radius of the midplane intensity ring:
    w0 sqrt(|l|/2) sqrt(1 + d^2 / (4 z_R^2)); 0 for l = 0."""
    b = pair.beam1
    l = abs(b.winding_l)
    if l == 0:
        return 0.0
    u = 0.5 * pair.separation_d / b.rayleigh_range
    return b.waist_w0 * np.sqrt(0.5 * l) * np.sqrt(1.0 + u * u)


def _omega_sq_midplane(atom, pair, rho):
    pt = CylPoint(rho=rho, phi=0.0, z=0.0)
    omega = rabi_at(atom, mode_amplitude(pair.beam1, pt), _pair_amp_ref(pair))
    return omega * omega


def spring_constant(atom, pair, rho):
    """Axial spring constant -dF_z/dz at z = 0 of the reduced sum-of-beams
    scattering force, at radius rho (N/m).

    K(rho) = (hbar Gamma k / 2) d D X / (D + X/2)^2
             * [(|l|+1)(z_R^2 + d^2/4) - 2 rho^2 z_R^2 / w0^2]
             / (z_R^2 + d^2/4)^2,
    with D = Delta0^2 + Gamma^2/4 and X = Omega^2(rho) evaluated at the
    midplane.  Positive (restoring) on the central ring, zero at d = 0.
    """
    b = pair.beam1
    d = pair.separation_d
    zr = b.rayleigh_range
    dd = atom.detuning0 ** 2 + 0.25 * atom.gamma ** 2
    x = _omega_sq_midplane(atom, pair, rho)
    a2 = zr * zr + 0.25 * d * d
    bracket = (abs(b.winding_l) + 1.0) * a2 - 2.0 * np.asarray(rho) ** 2 * zr * zr / b.waist_w0 ** 2
    return 0.5 * HBAR * atom.gamma * b.wavenumber * d * dd * x \
        / (dd + 0.5 * x) ** 2 * bracket / (a2 * a2)


def spring_constant_k0(atom, pair):
    """Spring constant on the central ring, where the radial bracket of
    spring_constant collapses:
    K0 = (hbar Gamma k / 2) d D X0 / (D + X0/2)^2 / (z_R^2 + d^2/4)."""
    b = pair.beam1
    d = pair.separation_d
    zr = b.rayleigh_range
    dd = atom.detuning0 ** 2 + 0.25 * atom.gamma ** 2
    x0 = _omega_sq_midplane(atom, pair, central_ring_radius(pair))
    return 0.5 * HBAR * atom.gamma * b.wavenumber * d * dd * x0 \
        / (dd + 0.5 * x0) ** 2 / (zr * zr + 0.25 * d * d)


def harmonic_potential_v0(atom, pair, z):
    """Harmonic axial trap potential (1/2) K0 z^2 about the central ring."""
    return 0.5 * spring_constant_k0(atom, pair) * np.asarray(z) ** 2


def axial_force_slope(atom, pair, rho, z=0.0, h=None):
    """dF_z/dz of the reduced sum-of-beams scattering force by five-point
    central differences; -slope at z = 0 is the numeric spring constant."""
    b = pair.beam1
    if h is None:
        h = 0.01 * b.rayleigh_range

    def fz(zz):
        f = scattering_force(atom, pair, CylPoint(rho=rho, phi=0.0, z=zz),
                             mode=_REDUCED, combine="sum-of-beams")
        return f.f_z

    return (8.0 * (fz(z + h) - fz(z - h)) - (fz(z + 2.0 * h) - fz(z - 2.0 * h))) / (12.0 * h)


def torque_axial(atom, pair):
    """Axial radiation torque on the central ring:
    (hbar Gamma l / 2) Q_plus(rho_0, 0); zero for l = 0."""
    l = pair.beam1.winding_l
    if l == 0:
        return 0.0
    pt = CylPoint(rho=central_ring_radius(pair), phi=0.0, z=0.0)
    return 0.5 * HBAR * atom.gamma * l * q_plus(atom, pair, pt)


def ferris_rate(pair):
    """Angular rate Delta_omega / (l1 + l2) at which the spoke pattern of a
    frequency-offset pair revolves (rad/s)."""
    m = pair.azimuthal_order
    if m == 0:
        raise DegenerateGeometryError("pattern rotation undefined: no azimuthal spokes")
    return pair.delta_omega / m


def lift_speed(pair):
    """Axial crawl speed Delta_omega / (2 k) of the fringe lattice (m/s)."""
    return pair.delta_omega / (2.0 * pair.beam1.wavenumber)
