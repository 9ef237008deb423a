"""JSON run configuration with unit-suffixed quantities.

Numbers are taken as bare SI values; strings carry a unit suffix, e.g.
"8um", "10.01MHz", "0.5ms".  Frequencies given in hertz are ordinary
frequencies and are converted to angular ones (multiplied by 2 pi); bare
numbers in frequency slots are already rad/s.
"""

import json
import math
import re
from dataclasses import dataclass

from .atom_forces import AtomSpec, Velocity
from .constants import AMU
from .dynamics import IntegratorConfig, TrajectoryState
from .errors import ConfigError
from .lg_mode import CylPoint
from .superpose import GridSpec, PairSpec

__all__ = ["RunConfig", "parse_quantity"]

_TWO_PI = 2.0 * math.pi

_UNITS = {
    "length": {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "µm": 1e-6,
               "μm": 1e-6, "nm": 1e-9, "pm": 1e-12},
    "angular_frequency": {"rad/s": 1.0, "Hz": _TWO_PI, "kHz": _TWO_PI * 1e3,
                          "MHz": _TWO_PI * 1e6, "GHz": _TWO_PI * 1e9},
    "time": {"s": 1.0, "ms": 1e-3, "us": 1e-6, "µs": 1e-6, "μs": 1e-6,
             "ns": 1e-9},
    "mass": {"kg": 1.0, "amu": AMU, "u": AMU},
    "speed": {"m/s": 1.0, "mm/s": 1e-3, "um/s": 1e-6},
    "wavenumber": {"rad/m": 1.0},
    "plain": {},
}

_QUANTITY_RE = re.compile(r"^\s*([+-]?\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)\s*(\S*)\s*$")


def parse_quantity(value, kind, name="value"):
    """Convert a config entry to SI.  ``value`` may be a number (already SI,
    except hertz-kinds which are rad/s) or a string with a unit suffix."""
    if isinstance(value, bool):
        raise ConfigError(f"{name}: expected a quantity, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise ConfigError(f"{name}: expected a number or unit-suffixed string")
    m = _QUANTITY_RE.match(value)
    if not m:
        raise ConfigError(f"{name}: cannot parse quantity {value!r}")
    number, suffix = float(m.group(1)), m.group(2)
    if suffix == "":
        return number
    table = _UNITS[kind]
    if suffix not in table:
        raise ConfigError(f"{name}: unknown {kind} unit {suffix!r} in {value!r}")
    return number * table[suffix]


def _section(raw, key, required, name):
    sec = raw.get(key)
    if sec is None:
        if required:
            raise ConfigError(f"missing required config section {key!r}")
        return None
    if not isinstance(sec, dict):
        raise ConfigError(f"config section {key!r} must be an object")
    return sec


def _get(sec, key, kind, name, default=None, required=False):
    if key not in sec:
        if required:
            raise ConfigError(f"{name}: missing required key {key!r}")
        return default
    return parse_quantity(sec[key], kind, f"{name}.{key}")


def _get_int(sec, key, name, default=None, required=False):
    if key not in sec:
        if required:
            raise ConfigError(f"{name}: missing required key {key!r}")
        return default
    v = sec[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{name}.{key} must be an integer")
    return v


@dataclass
class RunConfig:
    """Validated run configuration resolved to SI quantities."""

    pair: PairSpec
    atom: AtomSpec = None
    mode_phase: str = "reduced"
    mode_combine: str = "sum-of-beams"
    grid: GridSpec = None
    rings_grid: GridSpec = None
    xy_half_width: float = None
    xy_n: int = None
    xy_z_slices: tuple = ()
    xy_time: float = 0.0
    sweep: tuple = None                 # (d_min, d_max, steps)
    ferris_times: tuple = ()
    trajectory_init: TrajectoryState = None
    trajectory_config: IntegratorConfig = None
    seed: int = 0

    @classmethod
    def from_file(cls, path):
        try:
            with open(path) as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(raw)

    @classmethod
    def from_dict(cls, raw):
        if not isinstance(raw, dict):
            raise ConfigError("config root must be a JSON object")

        beams = _section(raw, "beams", True, "beams")
        pair_sec = _section(raw, "pair", False, "pair") or {}
        d = _get(pair_sec, "d", "length", "pair", default=0.0)
        if d < 0.0:
            raise ConfigError("pair.d must be >= 0")
        try:
            pair = PairSpec.counterpropagating(
                wavelength=_get(beams, "wavelength", "length", "beams", required=True),
                waist=_get(beams, "waist", "length", "beams", required=True),
                l1=_get_int(beams, "l1", "beams", required=True),
                l2=_get_int(beams, "l2", "beams"),
                separation_d=d,
                delta_omega=_get(pair_sec, "delta_omega", "angular_frequency", "pair",
                                 default=0.0),
                delta_k=_get(pair_sec, "delta_k", "wavenumber", "pair", default=0.0),
                radial_p=_get_int(beams, "p", "beams", default=0),
                amp1=_get(beams, "amp1", "plain", "beams", default=1.0),
                amp2=_get(beams, "amp2", "plain", "beams", default=1.0),
                azimuthal_sign2=_get_int(beams, "azimuthal_sign2", "beams", default=-1),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

        atom = None
        atom_sec = _section(raw, "atom", False, "atom")
        if atom_sec is not None:
            try:
                atom = AtomSpec(
                    mass=_get(atom_sec, "mass", "mass", "atom", required=True),
                    gamma=_get(atom_sec, "gamma", "angular_frequency", "atom", required=True),
                    detuning0=_get(atom_sec, "delta0", "angular_frequency", "atom",
                                   required=True),
                    rabi_omega0=_get(atom_sec, "rabi", "angular_frequency", "atom",
                                     required=True),
                )
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc

        mode_sec = _section(raw, "mode", False, "mode") or {}
        phase = mode_sec.get("phase", "reduced")
        combine = mode_sec.get("combine", "sum-of-beams")
        if phase not in ("reduced", "full"):
            raise ConfigError("mode.phase must be 'reduced' or 'full'")
        if combine not in ("sum-of-beams", "total-field", "sum", "total"):
            raise ConfigError("mode.combine must be 'sum-of-beams' or 'total-field'")

        cfg = cls(pair=pair, atom=atom, mode_phase=phase, mode_combine=combine)
        cfg.grid = cls._grid(raw, "grid")
        cfg.rings_grid = cls._grid(raw, "rings_grid")

        xy = _section(raw, "xy_grid", False, "xy_grid")
        if xy is not None:
            cfg.xy_half_width = _get(xy, "half_width", "length", "xy_grid", required=True)
            cfg.xy_n = _get_int(xy, "n", "xy_grid", required=True)
            if cfg.xy_n < 2:
                raise ConfigError("xy_grid.n must be >= 2")
            slices = xy.get("z_slices", [0.0])
            if not isinstance(slices, list) or not slices:
                raise ConfigError("xy_grid.z_slices must be a non-empty list")
            cfg.xy_z_slices = tuple(parse_quantity(s, "length", "xy_grid.z_slices")
                                    for s in slices)
            cfg.xy_time = _get(xy, "time", "time", "xy_grid", default=0.0)

        sweep = _section(raw, "sweep", False, "sweep")
        if sweep is not None:
            steps = _get_int(sweep, "steps", "sweep", required=True)
            if steps < 2:
                raise ConfigError("sweep.steps must be >= 2")
            cfg.sweep = (_get(sweep, "d_min", "length", "sweep", required=True),
                         _get(sweep, "d_max", "length", "sweep", required=True),
                         steps)
            if cfg.sweep[1] <= cfg.sweep[0]:
                raise ConfigError("sweep.d_max must exceed sweep.d_min")

        ferris = _section(raw, "ferris", False, "ferris")
        if ferris is not None:
            samples = ferris.get("t_samples")
            if not isinstance(samples, list) or len(samples) < 1:
                raise ConfigError("ferris.t_samples must be a non-empty list")
            cfg.ferris_times = tuple(parse_quantity(s, "time", "ferris.t_samples")
                                     for s in samples)

        traj = _section(raw, "trajectory", False, "trajectory")
        if traj is not None:
            pos = CylPoint(rho=_get(traj, "rho", "length", "trajectory", required=True),
                           phi=_get(traj, "phi", "plain", "trajectory", default=0.0),
                           z=_get(traj, "z", "length", "trajectory", required=True))
            vel = Velocity(v_rho=_get(traj, "v_rho", "speed", "trajectory", default=0.0),
                           v_phi=_get(traj, "v_phi", "speed", "trajectory", default=0.0),
                           v_z=_get(traj, "v_z", "speed", "trajectory", default=0.0))
            cfg.trajectory_init = TrajectoryState(position=pos, velocity=vel, time=0.0)
            force_model = "reduced-sum" if phase == "reduced" else "full-total"
            try:
                cfg.trajectory_config = IntegratorConfig(
                    step=_get(traj, "step", "time", "trajectory", required=True),
                    duration=_get(traj, "duration", "time", "trajectory", required=True),
                    force_model=force_model,
                    velocity_coupling=bool(traj.get("velocity_coupling", False)),
                    include_scattering=bool(traj.get("include_scattering", True)),
                    include_dipole=bool(traj.get("include_dipole", False)),
                    include_azimuthal=bool(traj.get("include_azimuthal", True)),
                    sample_every=_get_int(traj, "sample_every", "trajectory", default=1),
                )
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc

        seed = raw.get("seed", 0)
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ConfigError("seed must be an integer")
        cfg.seed = seed
        return cfg

    @staticmethod
    def _grid(raw, key):
        sec = _section(raw, key, False, key)
        if sec is None:
            return None
        kind = sec.get("kind", "rho_z")
        if kind != "rho_z":
            raise ConfigError(f"{key}.kind must be 'rho_z'")
        try:
            return GridSpec.rho_z(
                rho_min=_get(sec, "rho_min", "length", key, default=0.0),
                rho_max=_get(sec, "rho_max", "length", key, required=True),
                n_rho=_get_int(sec, "n_rho", key, required=True),
                z_min=_get(sec, "z_min", "length", key, required=True),
                z_max=_get(sec, "z_max", "length", key, required=True),
                n_z=_get_int(sec, "n_z", key, required=True),
                phi=_get(sec, "phi", "plain", key, default=0.0),
                time=_get(sec, "time", "time", key, default=0.0),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def xy_grids(self):
        """One xy GridSpec per configured z slice."""
        if self.xy_half_width is None:
            return []
        return [GridSpec.xy(self.xy_half_width, self.xy_n, z=z, time=self.xy_time)
                for z in self.xy_z_slices]

    def to_si_dict(self):
        """SI echo of the resolved configuration, for run metadata."""
        b1, b2 = self.pair.beam1, self.pair.beam2
        out = {
            "seed": self.seed,
            "mode": {"phase": self.mode_phase, "combine": self.mode_combine},
            "beams": {"wavelength": b1.wavelength, "waist": b1.waist_w0,
                      "l1": b1.winding_l, "l2": b2.winding_l, "p": b1.radial_p,
                      "amp1": b1.amp_scale, "amp2": b2.amp_scale,
                      "azimuthal_sign2": b2.azimuthal_sign},
            "pair": {"d": self.pair.separation_d,
                     "delta_omega": self.pair.delta_omega,
                     "delta_k": self.pair.delta_k},
        }
        if self.atom is not None:
            out["atom"] = {"mass": self.atom.mass, "gamma": self.atom.gamma,
                           "delta0": self.atom.detuning0,
                           "rabi": self.atom.rabi_omega0}
        if self.sweep is not None:
            out["sweep"] = {"d_min": self.sweep[0], "d_max": self.sweep[1],
                            "steps": self.sweep[2]}
        if self.ferris_times:
            out["ferris"] = {"t_samples": list(self.ferris_times)}
        return out
