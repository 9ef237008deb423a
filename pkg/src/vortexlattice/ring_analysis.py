"""Detection and geometry of the bright rings of the interference lattice.

Locates intensity maxima on a half-plane (rho, z) map, measures the axial
fringe spacing, classifies the central ring, and measures the splitting of
the off-centre double rings.  Also provides the closed-form double-ring radii
and the rotation/drift measurements for frequency-offset pairs.
"""

import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.signal import find_peaks

from .errors import DegenerateGeometryError, ResolutionError, RingDetectionError
from .lg_mode import CylPoint
from .superpose import GridSpec, intensity_map, total_amplitude

__all__ = [
    "RadialSplit",
    "Ring",
    "RingSet",
    "RingSplit",
    "double_ring_radii",
    "find_rings",
    "measure_axial_drift",
    "measure_rotation_rate",
    "radial_separation",
    "suggested_sample_dt",
]

# Peak prominence threshold relative to the strongest ridge value; data are
# noise-free so this only rejects float-level wiggles
RIDGE_PROMINENCE = 1e-6

# Secondary radial maxima must reach these fractions of the row maximum to
# count as a resolved double-ring partner
SPLIT_PROMINENCE = 0.05
SPLIT_HEIGHT = 0.10


@dataclass(frozen=True)
class Ring:
    """One detected bright ring: axial position, radius and peak intensity,
    classified as the central ring or a member of a double-ring pair."""

    z_pos: float
    radius: float
    peak_intensity: float
    classification: str


@dataclass(frozen=True)
class RingSplit:
    """Resolved radial splitting of a double ring at axial position z."""

    z_pos: float
    delta_rho: float
    r_inner: float
    r_outer: float


@dataclass(frozen=True)
class RingSet:
    """All rings found on a map, with the median axial fringe spacing and the
    resolved radial splittings."""

    rings: list
    fringe_delta: float
    splittings: list = field(default_factory=list)

    def to_json_dict(self):
        return {
            "fringe_delta": None if math.isnan(self.fringe_delta) else self.fringe_delta,
            "rings": [{"z": r.z_pos, "radius": r.radius, "peak": r.peak_intensity,
                       "class": r.classification} for r in self.rings],
            "splittings": [{"z": s.z_pos, "delta_rho": s.delta_rho}
                           for s in self.splittings],
        }

    def write_json(self, path):
        with open(path, "w", newline="\n") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def _parabolic_vertex(x0, h, y_minus, y0, y_plus):
    """Vertex of the parabola through three equally spaced samples; falls
    back to the middle sample when the triple is degenerate."""
    den = y_minus - 2.0 * y0 + y_plus
    if den >= 0.0:
        return x0, y0
    dx = 0.5 * h * (y_minus - y_plus) / den
    return x0 + dx, y0 - 0.125 * (y_minus - y_plus) ** 2 / den


def _refine_row(axis, values, idx):
    if idx <= 0 or idx >= values.size - 1:
        return axis[idx], values[idx]
    h = axis[idx + 1] - axis[idx]
    return _parabolic_vertex(axis[idx], h, values[idx - 1], values[idx], values[idx + 1])


def find_rings(pair, region, n_threads=1):
    """Detect the bright rings of the pair's interference pattern.

    ``region`` must be a "rho_z" GridSpec covering |z| <= d/2 with axial
    spacing <= lambda/20 and radial spacing <= w0/100, otherwise a
    ResolutionError is raised.  Along each z row the radial maximum is
    refined by a parabolic fit; local maxima of that ridge along z give the
    rings, again refined parabolically.  The fringe spacing is the median
    gap between adjacent rings near the midplane (|z| <= d/4 when d > 0).
    The ring nearest z = 0 is classified "central" when it sits within half
    a fringe of the midplane; every other ring belongs to a double-ring pair
    and its radial splitting is recorded where a second radial maximum is
    resolved.

    Raises RingDetectionError when no interference maxima exist in the
    region.
    """
    b = pair.beam1
    if region.kind != "rho_z":
        raise ResolutionError("ring detection needs a rho_z region")
    dz_max = b.wavelength / 20.0
    drho_max = b.waist_w0 / 100.0
    dz, drho = region.spacing2, region.spacing1
    if dz > dz_max * (1.0 + 1e-9) or drho > drho_max * (1.0 + 1e-9):
        raise ResolutionError(
            f"grid spacing (drho={drho:.3e} m, dz={dz:.3e} m) too coarse; "
            f"need drho <= {drho_max:.3e} m and dz <= {dz_max:.3e} m")
    half_d = 0.5 * pair.separation_d
    if region.axis2[0] > -half_d + dz or region.axis2[-1] < half_d - dz:
        raise ResolutionError("region must cover |z| <= d/2 between the foci")

    fmap = intensity_map(pair, region, n_threads=n_threads)
    intensity = fmap.intensity
    ridge_idx = np.argmax(intensity, axis=1)
    rows = np.arange(intensity.shape[0])
    ridge_val = intensity[rows, ridge_idx]

    peak_rows, _ = find_peaks(ridge_val, prominence=RIDGE_PROMINENCE * ridge_val.max())
    if peak_rows.size == 0:
        raise RingDetectionError("no interference maxima found in the region")

    z_axis, rho_axis = region.axis2, region.axis1
    raw = []
    for j in peak_rows:
        z_ref, i_ref = _refine_row(z_axis, ridge_val, j)
        rho_ref, _ = _refine_row(rho_axis, intensity[j], ridge_idx[j])
        raw.append((z_ref, rho_ref, i_ref, j))
    raw.sort(key=lambda item: item[0])

    z_vals = np.array([item[0] for item in raw])
    if z_vals.size >= 2:
        gaps = np.diff(z_vals)
        if pair.separation_d > 0.0:
            near = (np.abs(z_vals[:-1]) <= 0.25 * pair.separation_d) \
                & (np.abs(z_vals[1:]) <= 0.25 * pair.separation_d)
            fringe_delta = float(np.median(gaps[near])) if np.any(near) \
                else float(np.median(gaps))
        else:
            fringe_delta = float(np.median(gaps))
    else:
        fringe_delta = float("nan")

    central_tol = max(1.5 * dz, 0.51 * fringe_delta) if math.isfinite(fringe_delta) \
        else 1.5 * dz
    nearest = int(np.argmin(np.abs(z_vals)))

    rings, splittings = [], []
    for n, (z_ref, rho_ref, i_ref, j) in enumerate(raw):
        central = (n == nearest) and abs(z_ref) <= central_tol
        rings.append(Ring(z_pos=float(z_ref), radius=float(rho_ref),
                          peak_intensity=float(i_ref),
                          classification="central" if central else "double"))
        if central:
            continue
        profile = intensity[j]
        cand, _ = find_peaks(profile, prominence=SPLIT_PROMINENCE * profile.max(),
                             height=SPLIT_HEIGHT * profile.max())
        if cand.size < 2:
            continue
        top = cand[np.argsort(profile[cand])[-2:]]
        radii = sorted(_refine_row(rho_axis, profile, i)[0] for i in top)
        splittings.append(RingSplit(z_pos=float(z_ref),
                                    delta_rho=float(radii[1] - radii[0]),
                                    r_inner=float(radii[0]), r_outer=float(radii[1])))

    return RingSet(rings=rings, fringe_delta=fringe_delta, splittings=splittings)


def double_ring_radii(pair, delta):
    """Radii (w1, w2) of the two rings crossing the plane a distance
    ``delta`` from the midplane: each beam's ring radius at axial distances
    d/2 -+ delta from its focus.  Requires 0 <= delta < d/2."""
    b = pair.beam1
    d = pair.separation_d
    if not 0.0 <= delta < 0.5 * d:
        raise DegenerateGeometryError("delta must lie in [0, d/2)")
    l = abs(b.winding_l)
    zr = b.rayleigh_range
    base = b.waist_w0 * np.sqrt(0.5 * l)
    w1 = base * np.sqrt(1.0 + ((0.5 * d - delta) / zr) ** 2)
    w2 = base * np.sqrt(1.0 + ((0.5 * d + delta) / zr) ** 2)
    return w1, w2


class RadialSplit(NamedTuple):
    """Exact and linearised double-ring separations plus the closeness
    parameter alpha = sqrt(2 |l|) d delta / z_R^2."""

    exact: float
    approx: float
    alpha: float


def radial_separation(pair, delta):
    """Separation w2 - w1 of the double rings at offset ``delta``.

    ``approx`` is the leading order in d delta / z_R^2:
    w0 sqrt(2 |l|) d delta / (2 z_R^2), i.e. w0 * alpha / 2.  (Dropping that
    factor of 2, w0 * alpha, overestimates the separation twofold and does
    not converge to ``exact`` as d shrinks.)  Rings merge optically when
    alpha < 1.
    """
    b = pair.beam1
    w1, w2 = double_ring_radii(pair, delta)
    alpha = math.sqrt(2.0 * abs(b.winding_l)) * pair.separation_d * delta \
        / b.rayleigh_range ** 2
    return RadialSplit(exact=float(w2 - w1), approx=0.5 * b.waist_w0 * alpha, alpha=alpha)


def suggested_sample_dt(pair):
    """Sampling interval keeping rotation/drift phase steps safely inside one
    fringe: 0.25 pi / |delta_omega|."""
    if pair.delta_omega == 0.0:
        raise DegenerateGeometryError("pattern is static: delta_omega = 0")
    return 0.25 * math.pi / abs(pair.delta_omega)


def measure_rotation_rate(pair, rho, z, t0, t1, n_phi=None):
    """Angular velocity of the spoke pattern from the phase of its azimuthal
    harmonic.

    Samples the intensity on the circle (rho, z) at t0 and t1, reads the
    phase of the harmonic l1 + l2 from an FFT, and converts the phase advance
    into a rotation rate.  |delta_omega| * (t1 - t0) must stay below pi so
    the advance is unambiguous.
    """
    m = pair.azimuthal_order
    if m == 0:
        raise DegenerateGeometryError("no azimuthal spokes to track")
    n = int(n_phi) if n_phi else max(8 * abs(m), 64)
    phi = 2.0 * np.pi * np.arange(n) / n

    def harmonic_phase(t):
        amp = total_amplitude(pair, CylPoint(rho=rho, phi=phi, z=z), t=t)
        spec = np.fft.rfft(amp * amp)
        psi = np.angle(spec[abs(m)])
        return psi if m > 0 else -psi

    dpsi = harmonic_phase(t1) - harmonic_phase(t0)
    dpsi = (dpsi + np.pi) % (2.0 * np.pi) - np.pi
    return -dpsi / (m * (t1 - t0))


def measure_axial_drift(pair, rho, t0, t1, z_center=0.0, half_span=None, n_z=1201):
    """Axial crawl speed of the fringe lattice from peak tracking.

    Follows the fringe maximum nearest ``z_center`` on the line (rho, phi=0)
    between t0 and t1.  The displacement over t1 - t0 must stay well inside
    one fringe; ``suggested_sample_dt`` satisfies this.
    """
    if half_span is None:
        half_span = 1.5 * np.pi / pair.beam1.wavenumber
    z = np.linspace(z_center - half_span, z_center + half_span, int(n_z))

    def peak_near_center(t):
        amp = total_amplitude(pair, CylPoint(rho=rho, phi=0.0, z=z), t=t)
        intensity = amp * amp
        cand, _ = find_peaks(intensity)
        if cand.size == 0:
            raise RingDetectionError("no fringe maximum on the sampling line")
        j = cand[np.argmin(np.abs(z[cand] - z_center))]
        z_ref, _ = _refine_row(z, intensity, j)
        return z_ref

    return (peak_near_center(t1) - peak_near_center(t0)) / (t1 - t0)
