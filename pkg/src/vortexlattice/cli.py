"""Command-line interface.

Subcommands: field-map, spring-sweep, rings, ferris, trajectory.  All take
--config (JSON run configuration), --out (output directory), --threads and
--mode; the VL_THREADS environment variable overrides --threads.  Exit codes:
0 success, 2 configuration problems, 3 numerical or resolution failures,
4 I/O failures.
"""

import argparse
import dataclasses
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .atom_forces import central_ring_radius, ferris_rate, lift_speed, \
    axial_force_slope, spring_constant_k0
from .config import RunConfig
from .dynamics import angular_momentum, estimate_frequency, integrate, trap_frequency
from .errors import ConfigError, DegenerateGeometryError, DivergenceError, \
    ResolutionError, RingDetectionError, StepSizeError, VortexLatticeError
from .ring_analysis import double_ring_radii, find_rings, measure_axial_drift, \
    measure_rotation_rate, radial_separation, suggested_sample_dt
from .superpose import GridSpec, PairSpec, intensity_map

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

_NUMERICAL_ERRORS = (ResolutionError, RingDetectionError, StepSizeError,
                     DivergenceError, DegenerateGeometryError)


def _write_csv(path, header, rows):
    data = np.atleast_2d(np.asarray(rows, dtype=float))
    with open(path, "w", newline="\n") as fh:
        np.savetxt(fh, data, fmt="%.17g", delimiter=",", header=header, comments="")


def _write_json(path, payload):
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _metadata(out, command, cfg, threads, outputs):
    path = out / f"{command}_metadata.json"
    _write_json(path, {"command": command, "threads": threads,
                       "config": cfg.to_si_dict(),
                       "outputs": [p.name for p in outputs]})
    return path


def _need_atom(cfg):
    if cfg.atom is None:
        raise ConfigError("this command needs an 'atom' config section")
    return cfg.atom


def _pair_with_d(pair, d):
    b1 = dataclasses.replace(pair.beam1, focal_z=-0.5 * d)
    b2 = dataclasses.replace(pair.beam2, focal_z=+0.5 * d)
    return PairSpec(b1, b2, d, pair.delta_omega, pair.delta_k)


def cmd_field_map(cfg, args, out, threads):
    written = []
    if cfg.grid is not None:
        fmap = intensity_map(cfg.pair, cfg.grid, n_threads=threads)
        path = out / "field_map_rho_z.csv"
        fmap.to_csv(path)
        written.append(path)
    for j, grid in enumerate(cfg.xy_grids()):
        fmap = intensity_map(cfg.pair, grid, n_threads=threads)
        path = out / f"field_map_xy_{j}.csv"
        fmap.to_csv(path)
        written.append(path)
    if not written:
        raise ConfigError("field-map needs a 'grid' or 'xy_grid' section")
    return written


def cmd_spring_sweep(cfg, args, out, threads):
    atom = _need_atom(cfg)
    if args.d_min is not None and args.d_max is not None and args.steps is not None:
        d_min, d_max, steps = args.d_min, args.d_max, args.steps
    elif cfg.sweep is not None:
        d_min, d_max, steps = cfg.sweep
    else:
        raise ConfigError("spring-sweep needs --d-min/--d-max/--steps or a "
                          "'sweep' config section")
    if steps < 2 or d_max <= d_min or d_min < 0.0:
        raise ConfigError("invalid sweep range")
    rows = []
    for d in np.linspace(d_min, d_max, steps):
        pair_d = _pair_with_d(cfg.pair, float(d))
        k0 = spring_constant_k0(atom, pair_d)
        numeric = -axial_force_slope(atom, pair_d, central_ring_radius(pair_d))
        rows.append((d, k0, numeric))
    path = out / "spring_sweep.csv"
    _write_csv(path, "d,K0_analytic,K0_numeric", rows)
    return [path]


def cmd_rings(cfg, args, out, threads):
    region = cfg.rings_grid if cfg.rings_grid is not None else cfg.grid
    if region is None:
        raise ConfigError("rings needs a 'rings_grid' (or 'grid') section")
    ringset = find_rings(cfg.pair, region, n_threads=threads)
    json_path = out / "rings.json"
    ringset.write_json(json_path)
    written = [json_path]

    pair = cfg.pair
    half_d = 0.5 * pair.separation_d
    rows = []
    for split in ringset.splittings:
        delta = abs(split.z_pos)
        if not 0.0 < delta < half_d:
            continue
        w1, w2 = double_ring_radii(pair, delta)
        sep = radial_separation(pair, delta)
        rows.append((split.z_pos, split.r_inner, split.r_outer, w1, w2,
                     split.delta_rho, sep.exact, sep.approx, sep.alpha))
    if rows:
        csv_path = out / "ring_comparison.csv"
        _write_csv(csv_path, "z,r_inner,r_outer,w1,w2,delta_rho_measured,"
                             "delta_rho_exact,delta_rho_approx,alpha", rows)
        written.append(csv_path)

    central = [r for r in ringset.rings if r.classification == "central"]
    summary = {
        "n_rings": len(ringset.rings),
        "fringe_delta": None if math.isnan(ringset.fringe_delta)
        else ringset.fringe_delta,
        "half_wavelength": math.pi / pair.beam1.wavenumber,
        "central_radius_formula": central_ring_radius(pair),
    }
    if central:
        summary["central_z"] = central[0].z_pos
        summary["central_radius"] = central[0].radius
    if rows:
        # compare the two readings of the offset delta in the double-ring
        # radii: distance from the midplane vs distance from a focal plane
        z0, r_in, r_out = rows[0][0], rows[0][1], rows[0][2]
        w1_mid, w2_mid = double_ring_radii(pair, abs(z0))
        err_mid = abs(w1_mid - r_in) / r_in + abs(w2_mid - r_out) / r_out
        summary["delta_reading"] = {"midplane_offset_err": err_mid}
        alt = half_d - abs(z0)
        if 0.0 < alt < half_d:
            w1_alt, w2_alt = double_ring_radii(pair, alt)
            err_alt = abs(w1_alt - r_in) / r_in + abs(w2_alt - r_out) / r_out
            summary["delta_reading"]["focal_plane_offset_err"] = err_alt
            summary["delta_reading"]["matching"] = (
                "midplane_offset" if err_mid <= err_alt else "focal_plane_offset")
        alpha_first = rows[0][8]
        summary["alpha_first_split"] = alpha_first
        summary["alpha_lt_1"] = bool(alpha_first < 1.0)
    summary_path = out / "rings_summary.json"
    _write_json(summary_path, summary)
    written.append(summary_path)
    return written


def cmd_ferris(cfg, args, out, threads):
    pair = cfg.pair
    if pair.delta_omega == 0.0:
        raise ConfigError("ferris needs pair.delta_omega != 0")
    if pair.azimuthal_order == 0:
        raise ConfigError("ferris needs beams with azimuthal spokes (l1 + l2 != 0)")
    if not cfg.ferris_times:
        raise ConfigError("ferris needs a 'ferris.t_samples' config section")
    grids = cfg.xy_grids()
    if not grids:
        raise ConfigError("ferris needs an 'xy_grid' section")

    written = []
    for i, t in enumerate(cfg.ferris_times):
        for j, grid in enumerate(grids):
            shifted = GridSpec(kind="xy", axis1=grid.axis1, axis2=grid.axis2,
                               z_slice=grid.z_slice, time=t)
            fmap = intensity_map(pair, shifted, n_threads=threads)
            path = out / f"ferris_xy_t{i}_z{j}.csv"
            fmap.to_csv(path)
            written.append(path)

    rho_probe = central_ring_radius(pair)
    if rho_probe == 0.0:
        rho_probe = pair.beam1.waist_w0
    t0 = cfg.ferris_times[0]
    dt = suggested_sample_dt(pair)
    rot = measure_rotation_rate(pair, rho_probe, grids[0].z_slice, t0, t0 + dt)
    drift = measure_axial_drift(pair, rho_probe, t0, t0 + dt)
    rot_ref = ferris_rate(pair)
    drift_ref = lift_speed(pair)
    summary = {
        "rotation_rate_measured": rot,
        "rotation_rate_analytic": rot_ref,
        "rotation_rel_err": abs(rot - rot_ref) / abs(rot_ref),
        "drift_speed_measured": drift,
        "drift_speed_analytic": drift_ref,
        "drift_rel_err": abs(drift - drift_ref) / abs(drift_ref),
        "measurement_times": [t0, t0 + dt],
        "probe_radius": rho_probe,
    }
    path = out / "ferris_summary.json"
    _write_json(path, summary)
    written.append(path)
    return written


def cmd_trajectory(cfg, args, out, threads):
    atom = _need_atom(cfg)
    if cfg.trajectory_init is None or cfg.trajectory_config is None:
        raise ConfigError("trajectory needs a 'trajectory' config section")
    states = integrate(atom, cfg.pair, cfg.trajectory_init, cfg.trajectory_config)
    rows = []
    for st in states:
        p, v = st.position, st.velocity
        c, s = math.cos(p.phi), math.sin(p.phi)
        rows.append((st.time, p.rho * c, p.rho * s, p.z,
                     v.v_rho * c - v.v_phi * s, v.v_rho * s + v.v_phi * c, v.v_z,
                     p.rho, p.phi))
    path = out / "trajectory.csv"
    _write_csv(path, "t,x,y,z,vx,vy,vz,rho,phi", rows)

    times = [st.time for st in states]
    z_vals = [st.position.z for st in states]
    lz = [angular_momentum(atom, st) for st in states]
    summary = {
        "n_samples": len(states),
        "oscillation_omega_measured": estimate_frequency(times, z_vals),
        "lz_initial": lz[0],
        "lz_final": lz[-1],
        "lz_monotone_nondecreasing": bool(np.all(np.diff(lz) >= -1e-12 * max(
            1e-60, float(np.max(np.abs(lz)))))),
        "final": {"rho": states[-1].position.rho, "phi": states[-1].position.phi,
                  "z": states[-1].position.z},
    }
    try:
        summary["oscillation_omega_analytic"] = trap_frequency(atom, cfg.pair)
    except DegenerateGeometryError:
        summary["oscillation_omega_analytic"] = None
    spath = out / "trajectory_summary.json"
    _write_json(spath, summary)
    return [path, spath]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="JSON run configuration")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads for map evaluation "
                             "(VL_THREADS overrides)")
    common.add_argument("--mode", choices=("reduced", "full"), default=None,
                        help="force/phase model override")

    parser = argparse.ArgumentParser(
        prog="vortexlattice",
        description="Interference lattices of counter-propagating "
                    "Laguerre-Gaussian beams and the traps they form")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-map", parents=[common],
                       help="amplitude/phase/intensity maps on configured grids")
    p.set_defaults(func=cmd_field_map)

    p = sub.add_parser("spring-sweep", parents=[common],
                       help="axial spring constant vs focal-plane separation")
    p.add_argument("--d-min", type=float, default=None, help="smallest d (m)")
    p.add_argument("--d-max", type=float, default=None, help="largest d (m)")
    p.add_argument("--steps", type=int, default=None, help="number of d samples")
    p.set_defaults(func=cmd_spring_sweep)

    p = sub.add_parser("rings", parents=[common],
                       help="detect bright rings and compare with closed forms")
    p.set_defaults(func=cmd_rings)

    p = sub.add_parser("ferris", parents=[common],
                       help="rotating-pattern maps and rotation/drift rates")
    p.set_defaults(func=cmd_ferris)

    p = sub.add_parser("trajectory", parents=[common],
                       help="integrate one atom trajectory")
    p.set_defaults(func=cmd_trajectory)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_file(args.config)
        if args.mode is not None:
            cfg.mode_phase = args.mode
            cfg.mode_combine = "sum-of-beams" if args.mode == "reduced" else "total-field"
            if cfg.trajectory_config is not None:
                cfg.trajectory_config = dataclasses.replace(
                    cfg.trajectory_config,
                    force_model="reduced-sum" if args.mode == "reduced" else "full-total")
        threads = args.threads
        env_threads = os.environ.get("VL_THREADS")
        if env_threads is not None:
            try:
                threads = int(env_threads)
            except ValueError:
                raise ConfigError(f"VL_THREADS must be an integer, got {env_threads!r}")
        if threads < 1:
            raise ConfigError("thread count must be >= 1")
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        written = args.func(cfg, args, out, threads)
        written.append(_metadata(out, args.command, cfg, threads, written))
        for path in written:
            print(path)
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
