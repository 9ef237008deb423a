"""Superposition of two counter-propagating Laguerre-Gaussian beams.

The pair interferes into an axial fringe lattice; this module evaluates the
total amplitude/phase, the phase difference split into its physical parts,
and sampled intensity maps on half-plane (rho, z) or transverse (x, y) grids.
"""

import concurrent.futures
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .lg_mode import BeamSpec, CylPoint, FieldSample, mode_amplitude, mode_phase, wrap_phase

__all__ = [
    "DARK_FRACTION",
    "FieldMap",
    "GridSpec",
    "PairSpec",
    "PhaseDifference",
    "curvature_difference_closed_form",
    "gouy_difference_closed_form",
    "intensity_map",
    "pair_complex",
    "pair_field",
    "phase_difference",
    "total_amplitude",
    "total_phase",
]

# Fraction of max(U1, U2) below which the total amplitude counts as a dark
# point and the total phase is undefined
DARK_FRACTION = 1e-9


@dataclass(frozen=True)
class PairSpec:
    """Two beams sharing an axis, foci separated by ``separation_d``.

    Beam 1 travels along +z with its focus at z = -d/2; beam 2 travels along
    -z with its focus at z = +d/2.  ``delta_omega`` and ``delta_k`` are the
    frequency and wavenumber offsets of beam 2 relative to beam 1, applied as
    an extra phase delta_k * z + delta_omega * t on beam 2.
    """

    beam1: BeamSpec
    beam2: BeamSpec
    separation_d: float
    delta_omega: float = 0.0
    delta_k: float = 0.0

    def __post_init__(self):
        d = self.separation_d
        if d < 0.0:
            raise ValueError("separation_d must be >= 0")
        if self.beam1.direction != 1 or self.beam2.direction != -1:
            raise ValueError("beam1 must travel along +z and beam2 along -z")
        tol = 1e-12 * max(1.0, abs(d))
        if abs(self.beam1.focal_z + 0.5 * d) > tol or abs(self.beam2.focal_z - 0.5 * d) > tol:
            raise ValueError("foci must sit at z = -d/2 (beam1) and z = +d/2 (beam2)")

    @classmethod
    def counterpropagating(cls, wavelength, waist, l1, l2=None, separation_d=0.0,
                           delta_omega=0.0, delta_k=0.0, radial_p=0,
                           amp1=1.0, amp2=1.0, azimuthal_sign2=-1):
        """Build the standard pair: equal wavelength and waist, beam 2
        reversed in direction and (by default) in azimuthal handedness."""
        if l2 is None:
            l2 = l1
        b1 = BeamSpec(wavelength, waist, l1, radial_p, direction=1,
                      focal_z=-0.5 * separation_d, amp_scale=amp1, azimuthal_sign=1)
        b2 = BeamSpec(wavelength, waist, l2, radial_p, direction=-1,
                      focal_z=+0.5 * separation_d, amp_scale=amp2, azimuthal_sign=azimuthal_sign2)
        return cls(b1, b2, separation_d, delta_omega, delta_k)

    @property
    def azimuthal_order(self):
        """Number of bright spokes: the phi coefficient of the static phase
        difference."""
        return (self.beam1.azimuthal_sign * self.beam1.winding_l
                - self.beam2.azimuthal_sign * self.beam2.winding_l)


@dataclass(frozen=True)
class PhaseDifference:
    """Static phase difference Theta1 - Theta2 split into its parts."""

    plane: float        # k1 (z - f1) + k2 (z - f2); 2 k z for the standard pair
    azimuthal: float    # (s1 l1 - s2 l2) phi
    gouy: float         # difference of the two Gouy terms
    curvature: float    # difference of the two wavefront-curvature terms

    @property
    def total(self):
        return self.plane + self.azimuthal + self.gouy + self.curvature


def phase_difference(pair, pt):
    """Split Theta1 - Theta2 (at equal frequencies, time terms cancelling)
    into plane, azimuthal, Gouy and curvature parts.

    Each part is the exact difference of the per-beam closed-form terms; the
    parts sum to mode_phase(beam1) - mode_phase(beam2) up to float rounding.
    """
    b1, b2 = pair.beam1, pair.beam2
    z = np.asarray(pt.z)
    rho = np.asarray(pt.rho)
    z1 = b1.direction * (z - b1.focal_z)
    z2 = b2.direction * (z - b2.focal_z)
    zr1, zr2 = b1.rayleigh_range, b2.rayleigh_range
    plane = b1.direction * b1.wavenumber * (z - b1.focal_z) \
        - b2.direction * b2.wavenumber * (z - b2.focal_z)
    azimuthal = (b1.azimuthal_sign * b1.winding_l - b2.azimuthal_sign * b2.winding_l) \
        * np.asarray(pt.phi)
    n1 = 2.0 * b1.radial_p + abs(b1.winding_l) + 1.0
    n2 = 2.0 * b2.radial_p + abs(b2.winding_l) + 1.0
    gouy = -n1 * np.arctan(z1 / zr1) + n2 * np.arctan(z2 / zr2)
    curvature = b1.wavenumber * rho * rho * z1 / (2.0 * (z1 * z1 + zr1 * zr1)) \
        - b2.wavenumber * rho * rho * z2 / (2.0 * (z2 * z2 + zr2 * zr2))
    return PhaseDifference(plane, azimuthal, gouy, curvature)


def gouy_difference_closed_form(pair, z, offset_subtracted=False):
    """Single-arctangent form of the Gouy part of the phase difference, for
    equal beams.

    With ``offset_subtracted=False`` this evaluates
    -(|l| + 1) * atan2(2 z z_R, z_R^2 - z^2 + d^2/4), which reproduces the
    sum of the two per-beam arctangent terms exactly (two-argument form keeps
    the branch right).  ``offset_subtracted=True`` instead groups the focal
    offset with z^2 in the denominator, z_R^2 - (z^2 + d^2/4); that variant
    fails the arctangent addition identity and is kept only as a diagnostic.
    """
    b = pair.beam1
    l = abs(b.winding_l)
    zr = b.rayleigh_range
    d = pair.separation_d
    z = np.asarray(z)
    if offset_subtracted:
        den = zr * zr - (z * z + 0.25 * d * d)
    else:
        den = zr * zr - z * z + 0.25 * d * d
    return -(l + 1.0) * np.arctan2(2.0 * z * zr, den)


def curvature_difference_closed_form(pair, rho, z):
    """Small-separation estimate k rho^2 d / (2 (z^2 + z_R^2)) of the
    curvature part of the phase difference.

    Diagnostic only: the exact curvature difference of the mirror-symmetric
    pair is odd in z and vanishes at z = 0, while this expression is even in
    z and proportional to d, so the two agree nowhere except at rho = 0.
    Compare against ``phase_difference(...).curvature`` to see the gap.
    """
    b = pair.beam1
    zr = b.rayleigh_range
    z = np.asarray(z)
    rho = np.asarray(rho)
    return b.wavenumber * rho * rho * pair.separation_d / (2.0 * (z * z + zr * zr))


def _static_phases(pair, pt, t):
    """Per-beam phases with the common optical-frequency term dropped.

    The two beams share omega, so omega * t cancels identically in any
    interference quantity; evaluating at t = 0 and adding only the offsets
    delta_k * z + delta_omega * t of beam 2 avoids forming huge phases whose
    difference would lose precision.
    """
    th1 = mode_phase(pair.beam1, pt)
    th2 = mode_phase(pair.beam2, pt) + pair.delta_k * np.asarray(pt.z) \
        + pair.delta_omega * t
    return th1, th2


def total_amplitude(pair, pt, t=0.0):
    """Amplitude of the two-beam field:
    sqrt(U1^2 + U2^2 + 2 U1 U2 cos(Theta1 - Theta2)).

    Clamped into the exact envelope [||U1| - |U2||, |U1| + |U2|].  The signed
    amplitudes can be negative where the radial polynomial oscillates
    (radial_p > 0), so the envelope is built from magnitudes.
    """
    u1 = mode_amplitude(pair.beam1, pt)
    u2 = mode_amplitude(pair.beam2, pt)
    th1, th2 = _static_phases(pair, pt, t)
    radicand = u1 * u1 + u2 * u2 + 2.0 * u1 * u2 * np.cos(th1 - th2)
    a1 = np.abs(u1)
    a2 = np.abs(u2)
    return np.clip(np.sqrt(np.maximum(radicand, 0.0)), np.abs(a1 - a2), a1 + a2)


def pair_complex(pair, pt, t=0.0):
    """Complex field U1 e^{i Theta1} + U2 e^{i (Theta2 + dk z + dw t)} with the
    common optical carrier divided out."""
    u1 = mode_amplitude(pair.beam1, pt)
    u2 = mode_amplitude(pair.beam2, pt)
    th1, th2 = _static_phases(pair, pt, t)
    return u1 * np.exp(1j * th1) + u2 * np.exp(1j * th2)


def total_phase(pair, pt, t=0.0):
    """Principal-value phase of the two-beam field; NaN at dark points
    (total amplitude <= DARK_FRACTION * max(U1, U2))."""
    u1 = mode_amplitude(pair.beam1, pt)
    u2 = mode_amplitude(pair.beam2, pt)
    th1, th2 = _static_phases(pair, pt, t)
    re = u1 * np.cos(th1) + u2 * np.cos(th2)
    im = u1 * np.sin(th1) + u2 * np.sin(th2)
    dark = np.hypot(re, im) <= DARK_FRACTION * np.maximum(np.abs(u1), np.abs(u2))
    phase = np.arctan2(im, re)
    return np.where(dark, np.nan, phase)


def pair_field(pair, pt, t=0.0):
    """Total amplitude and phase as a FieldSample (phase NaN at dark points)."""
    return FieldSample(amplitude=total_amplitude(pair, pt, t=t),
                       phase=total_phase(pair, pt, t=t))


@dataclass(frozen=True)
class GridSpec:
    """Sampling grid for field maps.

    ``kind`` is "rho_z" (axis1 = rho, axis2 = z, at fixed ``phi``) or "xy"
    (axis1 = x, axis2 = y, at fixed ``z_slice``).  Maps are evaluated at the
    fixed ``time``.
    """

    kind: str
    axis1: np.ndarray
    axis2: np.ndarray
    phi: float = 0.0
    z_slice: float = 0.0
    time: float = 0.0

    def __post_init__(self):
        if self.kind not in ("rho_z", "xy"):
            raise ConfigError("grid kind must be 'rho_z' or 'xy'")
        for name, ax in (("axis1", self.axis1), ("axis2", self.axis2)):
            ax = np.asarray(ax, dtype=float)
            if ax.ndim != 1 or ax.size < 2:
                raise ConfigError(f"{name} must be a 1-D array of at least 2 samples")
            if np.any(np.diff(ax) <= 0.0):
                raise ConfigError(f"{name} must be strictly increasing")
            object.__setattr__(self, name, ax)
        if self.kind == "rho_z" and self.axis1[0] < 0.0:
            raise ConfigError("rho samples must be >= 0")

    @classmethod
    def rho_z(cls, rho_max, n_rho, z_min, z_max, n_z, rho_min=0.0, phi=0.0, time=0.0):
        if rho_max <= rho_min:
            raise ConfigError("rho_max must exceed rho_min")
        if z_max <= z_min:
            raise ConfigError("z_max must exceed z_min")
        return cls(kind="rho_z",
                   axis1=np.linspace(rho_min, rho_max, int(n_rho)),
                   axis2=np.linspace(z_min, z_max, int(n_z)),
                   phi=phi, time=time)

    @classmethod
    def xy(cls, half_width, n, z=0.0, time=0.0):
        if half_width <= 0.0:
            raise ConfigError("half_width must be positive")
        ax = np.linspace(-half_width, half_width, int(n))
        return cls(kind="xy", axis1=ax, axis2=ax, z_slice=z, time=time)

    @property
    def spacing1(self):
        return (self.axis1[-1] - self.axis1[0]) / (self.axis1.size - 1)

    @property
    def spacing2(self):
        return (self.axis2[-1] - self.axis2[0]) / (self.axis2.size - 1)

    def point_block(self, rows=None):
        """CylPoint broadcasting to shape (len(axis2 slice), len(axis1))."""
        sel = slice(None) if rows is None else rows
        a2 = self.axis2[sel][:, None]
        a1 = self.axis1[None, :]
        if self.kind == "rho_z":
            return CylPoint(rho=np.broadcast_to(a1, (a2.shape[0], a1.shape[1])),
                            phi=self.phi, z=np.broadcast_to(a2, (a2.shape[0], a1.shape[1])))
        return CylPoint.from_cartesian(np.broadcast_to(a1, (a2.shape[0], a1.shape[1])),
                                       np.broadcast_to(a2, (a2.shape[0], a1.shape[1])),
                                       self.z_slice)


@dataclass(frozen=True)
class FieldMap:
    """Sampled total field on a grid; arrays indexed [axis2, axis1]."""

    grid: GridSpec
    amplitude: np.ndarray
    phase: np.ndarray
    intensity: np.ndarray

    def to_csv(self, path):
        """Write rows (coord1, coord2, amplitude, phase, intensity), one per
        grid point, axis2-major; 17 significant digits, LF newlines."""
        n2, n1 = self.amplitude.shape
        c1 = np.tile(self.grid.axis1, n2)
        c2 = np.repeat(self.grid.axis2, n1)
        data = np.column_stack([c1, c2, self.amplitude.ravel(),
                                self.phase.ravel(), self.intensity.ravel()])
        with open(path, "w", newline="\n") as fh:
            np.savetxt(fh, data, fmt="%.17g", delimiter=",",
                       header="coord1,coord2,amplitude,phase,intensity", comments="")


def intensity_map(pair, grid, n_threads=1):
    """Evaluate the pair field over a grid, optionally splitting the rows of
    axis2 across worker threads.  Output is independent of n_threads."""
    n2, n1 = grid.axis2.size, grid.axis1.size
    amplitude = np.empty((n2, n1))
    phase = np.empty((n2, n1))

    def fill(rows):
        sample = pair_field(pair, grid.point_block(rows), t=grid.time)
        amplitude[rows] = sample.amplitude
        phase[rows] = sample.phase

    n_threads = max(1, int(n_threads))
    if n_threads == 1 or n2 < 2 * n_threads:
        fill(slice(None))
    else:
        bounds = np.linspace(0, n2, n_threads + 1, dtype=int)
        chunks = [slice(a, b) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        with concurrent.futures.ThreadPoolExecutor(max_workers=n_threads) as pool:
            list(pool.map(fill, chunks))
    return FieldMap(grid=grid, amplitude=amplitude, phase=phase,
                    intensity=amplitude ** 2)
