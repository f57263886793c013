"""Command-line front end: ``nls5 {soliton,validate,simulate,figures}``.

Exit codes: 0 success, 1 validation or simulation failure, 2 invalid input.
Settings are resolved in the order preset < config file < flags, and the
resolved configuration is written to ``<out>/config.json``; passing that file
back with ``--config`` reproduces the run.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import io
from .errors import BlowUpError, NLS5Error
from .evolve import (
    SCHEMES,
    IntegratorConfig,
    frame_peaks,
    run_simulation,
    self_convergence_order,
    track_peak_velocity,
)
from .field import (
    DiagnosticsReport,
    Grid1D,
    Verdict,
    auto_grid,
    mass,
    momentum,
    pde_residual,
    sample_field,
)
from .lax import zero_curvature_residual
from .presets import FIGURES, PRESETS, get_preset
from .soliton import (
    SolitonEvaluator,
    one_soliton_closed_form,
    peak_amplitude,
    soliton_center,
    soliton_velocity,
    two_soliton_closed_form,
)
from .spectral_data import ModelCoefficients, SpectralSet, make_set, validate_spectral_set

SUITES = ("all", "residual", "zero-curvature", "conservation", "convergence")
REDUCTIONS = ("nls", "hirota", "fourth", "fifth")
# spectral parameters for the default zero-curvature audit (fixed for reproducibility)
DEFAULT_LAX_ZETAS = (0.7 + 0.1j, -0.4 + 0.6j, 0.25 - 0.8j, -0.9 - 0.3j, 0.5 + 0.95j)
RESIDUAL_TOL = 1e-5
CURVATURE_TOL = 1e-5
COLLISION_TOL = 1e-3


class InputError(ValueError):
    """Bad command-line or config input (exit code 2)."""


# -- parsing helpers ------------------------------------------------------------

def parse_complex(text: str) -> complex:
    s = str(text).strip().replace(" ", "")
    if not s:
        raise InputError("empty complex number")
    try:
        return complex(s.replace("i", "j").replace("I", "j"))
    except ValueError:
        raise InputError(f"cannot parse complex number {text!r} (use RE+IMi)") from None


def parse_coeffs(text: str) -> ModelCoefficients:
    parts = [p for p in str(text).split(",")]
    if len(parts) != 3:
        raise InputError(f"--coeffs needs three comma-separated values, got {text!r}")
    try:
        return ModelCoefficients(*(float(p) for p in parts))
    except ValueError:
        raise InputError(f"cannot parse coefficients {text!r}") from None


def parse_times(text: str) -> list[float]:
    """Comma list ``0,5,10`` or inclusive range ``start:step:end``."""
    s = str(text).strip()
    try:
        if ":" in s:
            start, step, end = (float(v) for v in s.split(":"))
            if not step > 0 or end < start:
                raise InputError(f"bad time range {text!r}")
            count = int(math.floor((end - start) / step + 1e-9)) + 1
            return [round(start + i * step, 12) for i in range(count)]
        return [float(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"cannot parse times {text!r}") from None


def _require_finite(name: str, *vals):
    for v in vals:
        if v is not None and not math.isfinite(float(v)):
            raise InputError(f"{name} must be finite, got {v}")


# -- configuration resolution ---------------------------------------------------

def _load_config(path) -> dict:
    if not path:
        return {}
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"config file {path} not found") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"config file {path} is not valid JSON: {exc}") from None


def _spectral_from(args, cfg: dict, preset, use_zeta_flags: bool = True) -> SpectralSet | None:
    """Spectral set from flags, then config, then preset; None if nothing given."""
    sset = preset.sset if preset else None
    if "solitons" in cfg:
        try:
            sset = SpectralSet.from_dict(cfg)
        except NLS5Error as exc:
            raise InputError(str(exc)) from None
    elif "coeffs" in cfg and sset is not None:
        c = cfg["coeffs"]
        sset = sset.with_coeffs(ModelCoefficients(c.get("c3", 0.0), c.get("c4", 0.0), c.get("c5", 0.0)))
    if use_zeta_flags and args.zeta:
        zetas = [parse_complex(z) for z in args.zeta]
        alphas = [parse_complex(a) for a in args.alpha_k] if args.alpha_k else None
        betas = [parse_complex(b) for b in args.beta_k] if args.beta_k else None
        try:
            sset = make_set(zetas, alphas, betas, sset.coeffs if sset else ModelCoefficients(1, 1, 1))
        except NLS5Error as exc:
            raise InputError(str(exc)) from None
    elif sset is not None and (args.alpha_k or args.beta_k):
        data = list(sset.data)
        for flag, attr in ((args.alpha_k, "alpha_k"), (args.beta_k, "beta_k")):
            if flag:
                if len(flag) != len(data):
                    raise InputError(f"--{attr.replace('_', '-')} given {len(flag)} times for {len(data)} solitons")
                data = [type(d)(d.zeta, **{**{"alpha_k": d.alpha_k, "beta_k": d.beta_k},
                                           attr: parse_complex(v)}) for d, v in zip(data, flag)]
        sset = SpectralSet(tuple(data), sset.coeffs)
    if sset is None:
        return None
    if args.coeffs:
        sset = sset.with_coeffs(parse_coeffs(args.coeffs))
    reduce = args.reduce or cfg.get("reduce")
    if reduce:
        if reduce not in REDUCTIONS:
            raise InputError(f"unknown reduction {reduce!r}")
        sset = sset.with_coeffs(sset.coeffs.reduced(reduce))
    report = validate_spectral_set(sset)
    if not report.ok:
        raise InputError("invalid spectral data: " + "; ".join(report.violations))
    return sset


def _grid_from(args, cfg: dict, default: Grid1D) -> Grid1D:
    g = cfg.get("grid", {})
    xmin = args.xmin if args.xmin is not None else g.get("xmin", default.x_min)
    xmax = args.xmax if args.xmax is not None else g.get("xmax", default.x_max)
    nx = args.nx if args.nx is not None else g.get("nx", default.n)
    _require_finite("grid bounds", xmin, xmax)
    try:
        return Grid1D(float(xmin), float(xmax), int(nx))
    except NLS5Error as exc:
        raise InputError(str(exc)) from None


def _resolve_preset(args, cfg: dict):
    name = args.preset or cfg.get("preset")
    if not name:
        return None
    try:
        return get_preset(name)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _out_dir(args, cfg: dict, command: str) -> Path:
    out = args.out or cfg.get("output", {}).get("dir") or f"nls5_out/{command}"
    return Path(out)


def _base_echo(command: str, preset, sset: SpectralSet | None, grid: Grid1D | None, out: Path) -> dict:
    doc = {"command": command, "preset": preset.name if preset else None}
    if preset:
        doc["label"] = preset.label
    if sset is not None:
        doc.update(sset.to_dict())
    if grid is not None:
        doc["grid"] = grid.to_dict()
    doc["output"] = {"dir": str(out)}
    return doc


# -- commands -------------------------------------------------------------------

def cmd_soliton(args) -> int:
    cfg = _load_config(args.config)
    preset = _resolve_preset(args, cfg)
    sset = _spectral_from(args, cfg, preset)
    if sset is None:
        raise InputError("no spectral data: give --preset, --zeta or --config")
    if args.t is not None:
        times = parse_times(args.t)
    else:
        times = [float(t) for t in cfg.get("output", {}).get("times", preset.times if preset else (0.0,))]
    if not times:
        raise InputError("no output times")
    _require_finite("times", *times)
    # without an explicit grid the domain follows the solitons over the requested times
    grid = _grid_from(args, cfg, auto_grid(sset, times, n=2048))
    out = _out_dir(args, cfg, "soliton")
    echo = _base_echo("soliton", preset, sset, grid, out)
    echo["output"]["times"] = times
    echo["reduce"] = None

    ev = SolitonEvaluator(sset)
    frames = []
    width = max(4, len(str(len(times) - 1)))
    for i, t in enumerate(times):
        frame = sample_field(ev, grid, t)
        name = f"frame_{i:0{width}d}.csv"
        io.write_frame_csv(frame, out / name)
        frames.append({"t": t, "file": name, "max_abs": float(np.abs(frame.values).max()),
                       "mass": mass(frame), "momentum": momentum(frame)})
    solitons = []
    for d in sset.data:
        g = d.gauge_fixed()
        solitons.append({"zeta": d.zeta, "amplitude": peak_amplitude(g),
                         "velocity": soliton_velocity(d, sset.coeffs),
                         "center_t0": soliton_center(d, sset.coeffs, 0.0)})
    summary = {"label": preset.label if preset else "user parameters", "solitons": solitons, "frames": frames}
    io.write_json(out / "summary.json", summary)
    io.write_json(out / "config.json", echo)
    for s in solitons:
        print(f"soliton zeta={s['zeta']}: amplitude={s['amplitude']:.17g} velocity={s['velocity']:.17g}")
    print(f"wrote {len(frames)} frame(s), summary.json and config.json to {out}")
    return 0


def _validation_sets(args, cfg):
    preset = _resolve_preset(args, cfg)
    sset = _spectral_from(args, cfg, preset, use_zeta_flags=False)
    if sset is not None:
        return [(preset.name if preset else "user", sset)]
    return [("figure1", PRESETS["figure1"].sset), ("figure4", PRESETS["figure4"].sset)]


def cmd_validate(args) -> int:
    cfg = _load_config(args.config)
    suite = args.suite or cfg.get("suite", "all")
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}")
    sets = _validation_sets(args, cfg)
    if args.zeta:
        lax_zetas = [parse_complex(z) for z in args.zeta]
    else:
        lax_zetas = [complex(*z) if isinstance(z, list) else complex(z)
                     for z in cfg.get("lax_zetas", DEFAULT_LAX_ZETAS)]
    for z in lax_zetas:
        _require_finite("zeta", z.real, z.imag)
    out = _out_dir(args, cfg, "validate")
    grid_override = any(v is not None for v in (args.xmin, args.xmax, args.nx)) or "grid" in cfg
    run = {s: suite in ("all", s) for s in SUITES[1:]}

    report = DiagnosticsReport()
    zc_entries, sections = [], {}
    for name, sset in sets:
        ev = SolitonEvaluator(sset)
        grid = (_grid_from(args, cfg, Grid1D(-64.0, 64.0, 2048)) if grid_override
                else auto_grid(sset, [0.0, 5.0], n=2048))
        sec = {"grid": grid.to_dict()}
        if run["residual"]:
            r = pde_residual(ev, grid, 0.0, tolerance=RESIDUAL_TOL)
            v = Verdict.below(f"residual_inf[{name}]", r.residual_inf, RESIDUAL_TOL)
            report.verdicts.append(v)
            report.residual_inf = max(report.residual_inf, r.residual_inf)
            report.residual_l2 = max(report.residual_l2, r.residual_l2)
            report.mass, report.momentum = r.mass, r.momentum
        if run["zero-curvature"]:
            for z in lax_zetas:
                val = zero_curvature_residual(ev, grid, 0.0, z)
                v = Verdict.below(f"zero_curvature[{name},zeta={z}]", val, CURVATURE_TOL)
                report.verdicts.append(v)
                zc_entries.append({"set": name, "zeta": z, **v.to_dict()})
        if run["conservation"]:
            ts = (0.0, 2.5, 5.0)
            frames = [sample_field(ev, grid, t) for t in ts]
            ms = np.array([mass(f) for f in frames])
            ps = np.array([momentum(f) for f in frames])
            report.verdicts.append(Verdict.below(f"mass_variation[{name}]",
                                                 np.ptp(ms) / ms[0], 1e-10))
            report.verdicts.append(Verdict.below(f"momentum_variation[{name}]", np.ptp(ps), 1e-10))
            if sset.n == 1:
                report.verdicts.append(Verdict.below(f"mass_vs_4b[{name}]",
                                                     abs(ms[0] - 4.0 * sset.data[0].b), 1e-10))
            sec["mass"] = ms
            sec["momentum"] = ps
        if run["convergence"] and sset.n == 1:
            cgrid = grid if grid_override else Grid1D(-60.0, 60.0, 2048)
            res = self_convergence_order(sample_field(ev, cgrid, 0.0), sset.coeffs, 1.0)
            report.verdicts.append(Verdict.within(f"convergence_order[{name}]", res.order, 4.0, 0.3))
            sec["convergence"] = {"order": res.order, "errors": res.errors, "dts": res.dts,
                                  "skipped": res.skipped}
        sections[name] = sec
    report.extra["suite"] = suite
    report.extra["sets"] = sections
    if zc_entries:
        report.extra["zero_curvature"] = zc_entries

    echo = {"command": "validate", "suite": suite, "lax_zetas": lax_zetas,
            "output": {"dir": str(out)}}
    if args.preset or args.config:
        name, sset = sets[0]
        echo.update(sset.to_dict())
        echo["preset"] = name if name in PRESETS else None
    if grid_override:
        echo["grid"] = _grid_from(args, cfg, Grid1D(-64.0, 64.0, 2048)).to_dict()
    io.write_json(out / "report.json", report.to_dict())
    io.write_json(out / "config.json", echo)
    for v in report.verdicts:
        print(f"{'PASS' if v.passed else 'FAIL'} {v.name}: {v.value:.3e} (tol {v.tolerance:g})")
    print(f"report written to {out / 'report.json'}")
    return 0 if report.passed else 1


def _collision_verdicts(sset: SpectralSet, first, last) -> tuple[list[Verdict], dict]:
    expected = sorted(2.0 * d.b for d in sset.data)
    info = {"expected": expected}
    verdicts = []
    for label, frame in (("initial", first), ("final", last)):
        peaks = frame_peaks(frame, min_height=0.5 * min(expected))
        info[label] = [{"x": x, "abs": a} for x, a in peaks]
        amps = sorted(a for _, a in peaks)
        if len(amps) != len(expected):
            verdicts.append(Verdict(f"peak_count[{label}]", float(len(amps)), float(len(expected)), False))
            continue
        err = max(abs(a - e) for a, e in zip(amps, expected))
        verdicts.append(Verdict.below(f"peak_amplitudes[{label}]", err, COLLISION_TOL))
    if len(info["initial"]) == len(info["final"]) == len(expected):
        pre = sorted(p["abs"] for p in info["initial"])
        post = sorted(p["abs"] for p in info["final"])
        verdicts.append(Verdict.below("peak_amplitudes[pre_vs_post]",
                                      max(abs(a - b) for a, b in zip(pre, post)), COLLISION_TOL))
    return verdicts, info


def cmd_simulate(args) -> int:
    cfg = _load_config(args.config)
    preset = _resolve_preset(args, cfg)
    icfg = cfg.get("integrator", {})
    init = args.init or cfg.get("init")
    sset = None
    if init:
        try:
            initial = io.read_frame_csv(init)
        except FileNotFoundError:
            raise InputError(f"initial frame {init} not found") from None
        except NLS5Error as exc:
            raise InputError(str(exc)) from None
        coeffs = (parse_coeffs(args.coeffs) if args.coeffs
                  else ModelCoefficients(**cfg["coeffs"]) if "coeffs" in cfg
                  else preset.sset.coeffs if preset else ModelCoefficients(1.0, 1.0, 1.0))
        if args.reduce:
            coeffs = coeffs.reduced(args.reduce)
        if not coeffs.is_finite:
            raise InputError("equation coefficients must be finite")
        grid = initial.grid
        t_from = initial.t
    else:
        sset = _spectral_from(args, cfg, preset)
        if sset is None:
            raise InputError("no initial data: give --init, --preset, --zeta or --config")
        coeffs = sset.coeffs
        default_grid = preset.sim_grid if preset else Grid1D(-60.0, 60.0, 2048)
        grid = _grid_from(args, cfg, default_grid)
        t_from = args.t_from if args.t_from is not None else icfg.get("from", preset.t_from if preset else 0.0)
        _require_finite("--from", t_from)
    span = args.t_end if args.t_end is not None else icfg.get("t_end", preset.t_span if preset else 1.0)
    dt = args.dt if args.dt is not None else icfg.get("dt", preset.dt if preset else 1e-3)
    scheme = args.scheme or icfg.get("scheme", preset.scheme if preset else "lawson_rk4")
    stride = args.stride if args.stride is not None else icfg.get("monitor_stride",
                                                                   preset.monitor_stride if preset else 100)
    k_cut = args.k_cut if args.k_cut is not None else icfg.get("k_cut")
    compare = bool(args.compare_exact or cfg.get("compare_exact", False))
    _require_finite("--t-end/--dt", span, dt)
    if not span > 0:
        raise InputError("--t-end (run length) must be positive")
    try:
        icfg_obj = IntegratorConfig(dt=float(dt), t_end=float(t_from) + float(span), scheme=scheme,
                                    monitor_stride=int(stride), k_cut=k_cut)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if compare and sset is None:
        raise InputError("--compare-exact needs spectral initial data")

    out = _out_dir(args, cfg, "simulate")
    echo = _base_echo("simulate", preset, sset, None if init else grid, out)
    if init:
        echo["init"] = str(init)
        echo["coeffs"] = {"c3": coeffs.c3, "c4": coeffs.c4, "c5": coeffs.c5}
    echo["integrator"] = {"from": float(t_from), "t_end": float(span), "dt": float(dt), "scheme": scheme,
                          "monitor_stride": int(stride), "k_cut": k_cut}
    echo["compare_exact"] = compare
    io.write_json(out / "config.json", echo)

    if not init:
        try:
            initial = sample_field(SolitonEvaluator(sset), grid, float(t_from))
        except NLS5Error as exc:
            raise InputError(str(exc)) from None
    try:
        traj = run_simulation(initial, icfg_obj, coeffs)
    except BlowUpError as exc:
        path = out / "blowup_last_frame.csv"
        if exc.last_frame is not None:
            io.write_frame_csv(exc.last_frame, path)
        print(f"blow-up at step {exc.step}; last good frame written to {path}", file=sys.stderr)
        return 1
    except NLS5Error as exc:
        raise InputError(str(exc)) from None

    errors = None
    diag = {"dt_used": traj.dt, "steps": traj.steps, "k_band": traj.k_band,
            "mass_drift": traj.mass_drift(),
            "momentum_drift": float(np.ptp([d["momentum"] for d in traj.diagnostics]))}
    verdicts: list[Verdict] = []
    if compare:
        ev = SolitonEvaluator(sset)
        errors = [float(np.max(np.abs(f.values - ev(f.x, f.t)))) for f in traj.frames]
        diag["max_error"] = max(errors)
    if sset is not None and sset.n == 1:
        try:
            diag["peak_velocity"] = track_peak_velocity(traj)
            diag["predicted_velocity"] = soliton_velocity(sset.data[0], coeffs)
        except NLS5Error:
            diag["peak_velocity"] = None
    if sset is not None and sset.n > 1:
        vs, info = _collision_verdicts(sset, traj.frames[0], traj.frames[-1])
        verdicts.extend(vs)
        diag["peaks"] = info
    diag["verdicts"] = [v.to_dict() for v in verdicts]
    io.export_trajectory(traj, out, errors=errors)
    io.write_json(out / "diagnostics.json", diag)
    print(f"{traj.steps} steps of {scheme} (dt={traj.dt:.6g}), {len(traj.frames)} frames in {out}")
    print(f"relative mass drift {diag['mass_drift']:.3e}")
    if errors is not None:
        print(f"max error vs exact {diag['max_error']:.3e}")
    for v in verdicts:
        print(f"{'PASS' if v.passed else 'FAIL'} {v.name}: {v.value:.3e} (tol {v.tolerance:g})")
    return 0 if all(v.passed for v in verdicts) else 1


def _write_long_csv(path: Path, xs, ts, values):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as fh:
        fh.write("x,t,value\n")
        for j, t in enumerate(ts):
            tt = io.fmt(t)
            for i, x in enumerate(xs):
                fh.write(f"{io.fmt(x)},{tt},{io.fmt(values[j, i])}\n")


def _write_contour_csv(path: Path, xs, ts, values):
    with path.open("w") as fh:
        fh.write("t\\x," + ",".join(io.fmt(x) for x in xs) + "\n")
        for j, t in enumerate(ts):
            fh.write(io.fmt(t) + "," + ",".join(io.fmt(v) for v in values[j]) + "\n")


_PARTS = {"abs": np.abs, "re": np.real, "im": np.imag}


def cmd_figures(args) -> int:
    cfg = _load_config(args.config)
    fig = args.figure if args.figure is not None else cfg.get("figure")
    try:
        fig = int(fig)
    except (TypeError, ValueError):
        raise InputError(f"--figure must be one of {sorted(FIGURES)}") from None
    if fig not in FIGURES:
        raise InputError(f"unknown figure {fig}; choose from {sorted(FIGURES)}")
    spec = FIGURES[fig]
    preset = get_preset(spec.preset)
    sset = preset.sset
    out = _out_dir(args, cfg, f"figure{fig}")

    def field(x, t):
        if sset.n == 1:
            return one_soliton_closed_form(sset.data[0], sset.coeffs, x, t)
        return two_soliton_closed_form(sset, x, t)

    xs = np.linspace(*spec.x_range, spec.nx)
    meta = {"figure": fig, "label": preset.label, "parameters": sset.to_dict(),
            "x_range": spec.x_range, "t_range": spec.t_range, "files": []}
    if fig != 5:
        ts = np.linspace(*spec.t_range, spec.nt)
        q = field(xs[None, :], ts[:, None])
        for part in spec.quantities:
            vals = _PARTS[part](q)
            _write_long_csv(out / f"surface_{part}.csv", xs, ts, vals)
            _write_contour_csv(out / f"contour_{part}.csv", xs, ts, vals)
            meta["files"] += [f"surface_{part}.csv", f"contour_{part}.csv"]
            meta[f"range_{part}"] = [float(vals.min()), float(vals.max())]
        if sset.n == 1:
            d = sset.data[0]
            v = soliton_velocity(d, sset.coeffs)
            ridge = np.abs(field(v * ts + soliton_center(d, sset.coeffs, 0.0), ts))
            meta["ridge"] = {"velocity": v, "max_deviation_from_amplitude":
                             float(np.max(np.abs(ridge - peak_amplitude(d.gauge_fixed()))))}
    if spec.slice_times:
        st = np.array(spec.slice_times)
        q = field(xs[None, :], st[:, None])
        for part in spec.quantities:
            _write_long_csv(out / f"slices_{part}.csv", xs, st, _PARTS[part](q))
            meta["files"].append(f"slices_{part}.csv")
        meta["slice_times"] = list(spec.slice_times)
        meta["slice_times_note"] = "slice times chosen for this reproduction"
    io.write_json(out / "figure.json", meta)
    io.write_json(out / "config.json", {"command": "figures", "figure": fig, "output": {"dir": str(out)}})
    print(f"figure {fig} ({preset.label}): wrote {len(meta['files'])} data file(s) to {out}")
    return 0


# -- argument parser ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--out", help="output directory")
    common.add_argument("--preset", choices=sorted(PRESETS))
    common.add_argument("--zeta", action="append", help="eigenvalue RE+IMi (repeatable)")
    common.add_argument("--alpha-k", action="append", help="norming constant alpha_k (repeatable)")
    common.add_argument("--beta-k", action="append", help="norming constant beta_k (repeatable)")
    common.add_argument("--coeffs", help="c3,c4,c5")
    common.add_argument("--reduce", choices=REDUCTIONS)
    common.add_argument("--xmin", type=float)
    common.add_argument("--xmax", type=float)
    common.add_argument("--nx", type=int)

    p = argparse.ArgumentParser(prog="nls5", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("soliton", parents=[common], help="evaluate exact solitons")
    s.add_argument("--t", help="times: list 0,5,10 or start:step:end")
    s.set_defaults(func=cmd_soliton)

    v = sub.add_parser("validate", parents=[common], help="residual, Lax and conservation checks",
                       description="--zeta gives Lax spectral parameters here; "
                                   "use --preset or --config for the soliton data")
    v.add_argument("--suite", choices=SUITES)
    v.set_defaults(func=cmd_validate)

    m = sub.add_parser("simulate", parents=[common], help="time-integrate initial data")
    m.add_argument("--init", help="initial frame CSV")
    m.add_argument("--from", dest="t_from", type=float, help="initial time for spectral data")
    m.add_argument("--t-end", type=float, help="run length measured from the initial time")
    m.add_argument("--dt", type=float)
    m.add_argument("--scheme", choices=SCHEMES)
    m.add_argument("--stride", type=int, help="steps between stored frames")
    m.add_argument("--k-cut", type=float, help="override the retained wavenumber band")
    m.add_argument("--compare-exact", action="store_true")
    m.set_defaults(func=cmd_simulate)

    f = sub.add_parser("figures", parents=[common], help="data behind Figures 1-5")
    f.add_argument("--figure", type=str)
    f.set_defaults(func=cmd_figures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, NLS5Error, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
