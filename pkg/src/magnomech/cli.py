"""Command-line front end: spectra, delays, nonreciprocity and the
figure-preset registry, all emitted as CSV.

Exit codes: 0 success, 2 configuration error, 3 solver error,
4 unknown preset.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from . import analysis, oracle, presets, response
from .analysis import Method, SweepSpec
from .params import ConfigError, Mode, RawParams, derive_drive, load_validate_config
from .steady_state import (LinearizedModel, SteadyState, SteadyStateError,
                           effective_model, solve_steady_state)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_PRESET = 4

SPECTRUM_COLUMNS = ("delta_over_wb", "eps_R", "eps_I", "T_re", "T_im",
                    "T_abs", "phase_rad", "tau_s", "method")
NR_COLUMNS = ("delta_over_wb", "eps_R_neg", "eps_R_pos", "eps_NR",
              "tau_neg_s", "tau_pos_s", "tau_NR", "tau_NR_valid")
WINDOW_COLUMNS = ("index", "dip_delta_over_wb", "dip_value", "depth",
                  "width_over_wb", "asymmetry")


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return "%.17g" % float(value)


def _emit(out_path: str | None, comments: list[str], columns, rows) -> None:
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)


def _provenance(params: RawParams, model: LinearizedModel) -> list[str]:
    out = ["magnomech", "parameters (rad/s unless noted):"]
    for f in dataclasses.fields(params):
        out.append(f"  {f.name} = {getattr(params, f.name)!r}")
    out.append("linearized model:")
    for f in dataclasses.fields(model):
        out.append(f"  {f.name} = {getattr(model, f.name)!r}")
    return out


def _resolve_model(params: RawParams) -> tuple[LinearizedModel, SteadyState | None]:
    if params.mode is Mode.FIRST_PRINCIPLES:
        steady = solve_steady_state(params)
        return effective_model(params, steady), steady
    return effective_model(params), None


def _sweep_spec(args, params: RawParams, method: Method | None = None) -> SweepSpec:
    wb = params.omega_b1
    if method is None:
        method = Method(args.method)
    return SweepSpec(delta_min=args.delta_min * wb, delta_max=args.delta_max * wb,
                     n_points=args.points, method=method)


def _spectrum_rows(table: analysis.SpectrumTable, wb: float):
    for i in range(len(table.delta)):
        T = table.T[i]
        yield (table.delta[i] / wb, table.eps_R[i], table.eps_I[i],
               T.real, T.imag, abs(T), table.phase[i], table.tau[i],
               table.method)


def _run_spectrum_tables(params: RawParams, spec: SweepSpec,
                         out_path: str | None) -> None:
    model, _ = _resolve_model(params)
    if spec.method is Method.BOTH:
        tables = analysis.sweep_both(model, dataclasses.replace(
            spec, method=Method.CHAIN))
    else:
        tables = (analysis.sweep_spectrum(model, spec),)
    wb = params.omega_b1
    rows = []
    for table in tables:
        rows.extend(_spectrum_rows(table, wb))
    _emit(out_path, _provenance(params, model), SPECTRUM_COLUMNS, rows)


def _delay_table(params: RawParams, spec: SweepSpec,
                 fd_step: float | None) -> analysis.SpectrumTable:
    """Spectrum sweep whose tau column is the refined two-point phase
    derivative instead of the grid-level gradient."""
    model, _ = _resolve_model(params)
    table = analysis.sweep_spectrum(
        model, dataclasses.replace(spec, method=Method.CHAIN))
    step = None if fd_step is None else fd_step * params.omega_b1
    tau = np.array([response.group_delay(model, float(d), step=step)
                    for d in table.delta])
    return dataclasses.replace(table, tau=tau)


def cmd_spectrum(args) -> int:
    params = load_validate_config(args.config)
    _run_spectrum_tables(params, _sweep_spec(args, params), args.out)
    return EXIT_OK


def cmd_delay(args) -> int:
    params = load_validate_config(args.config)
    spec = _sweep_spec(args, params, Method.CHAIN)
    table = _delay_table(params, spec, args.fd_step)
    model, _ = _resolve_model(params)
    _emit(args.out, _provenance(params, model), SPECTRUM_COLUMNS,
          _spectrum_rows(table, params.omega_b1))
    return EXIT_OK


def _nr_rows(report: analysis.NonreciprocityReport, wb: float):
    for i in range(len(report.delta)):
        yield (report.delta[i] / wb, report.eps_R_neg[i], report.eps_R_pos[i],
               report.eps_NR[i], report.tau_neg[i], report.tau_pos[i],
               report.tau_NR[i], report.tau_NR_valid[i])


def cmd_nonreciprocity(args) -> int:
    params = load_validate_config(args.config)
    spec = _sweep_spec(args, params, Method.CHAIN)
    report = analysis.tau_nonreciprocity(
        params, abs(args.delta_b) * params.omega_b1, spec)
    model, _ = _resolve_model(params)
    _emit(args.out, _provenance(params, model), NR_COLUMNS,
          _nr_rows(report, params.omega_b1))
    return EXIT_OK


def cmd_steady_state(args) -> int:
    params = load_validate_config(args.config)
    if params.mode is not Mode.FIRST_PRINCIPLES:
        raise ConfigError("steady-state requires mode = \"first_principles\"")
    drive = derive_drive(params)
    steady = solve_steady_state(params, drive)
    def _plain(value):
        if isinstance(value, (float, np.floating)):
            return float(value)
        if isinstance(value, (complex, np.complexfloating)):
            return complex(value)
        return value

    fields = [(f.name, _plain(getattr(steady, f.name)))
              for f in dataclasses.fields(steady)]
    for name, value in fields:
        print(f"{name} = {value!r}")
    print(f"N_spins = {drive.N_spins!r}")
    print(f"Omega = {drive.Omega!r}")
    columns = [name for name, _ in fields]
    row = []
    for _, value in fields:
        if isinstance(value, complex):
            row.append(f"{_fmt(value.real)}{value.imag:+.17g}j")
        else:
            row.append(_fmt(value))
    if args.out is not None:
        _emit(args.out, ["magnomech steady state"], columns, [row])
    else:
        print(",".join(columns))
        print(",".join(row))
    return EXIT_OK


def cmd_windows(args) -> int:
    params = load_validate_config(args.config)
    spec = _sweep_spec(args, params, Method.CHAIN)
    model, _ = _resolve_model(params)
    table = analysis.sweep_spectrum(model, spec)
    windows = analysis.find_windows(table, prominence=args.prominence)
    wb = params.omega_b1
    rows = [(i, w.dip_location / wb, w.dip_value, w.depth, w.width / wb,
             w.asymmetry) for i, w in enumerate(windows)]
    _emit(args.out, _provenance(params, model), WINDOW_COLUMNS, rows)
    return EXIT_OK


def cmd_validate(args) -> int:
    if args.preset is not None:
        preset = presets.resolve_preset(args.preset)
        label, params = preset.series[0]
    elif args.config is not None:
        params = load_validate_config(args.config)
    else:
        raise ConfigError("validate needs --config or --preset")
    model, _ = _resolve_model(params)
    wb = params.omega_b1
    grid = np.linspace(args.delta_min * wb, args.delta_max * wb, args.points)
    report = oracle.cross_validate(model, grid)
    rows = [(report.grid[i] / wb, report.rel_err[i])
            for i in range(len(report.grid))]
    _emit(args.out, _provenance(params, model),
          ("delta_over_wb", "rel_err"), rows)
    print(f"max_rel_err = {report.max_rel_err:.3e} "
          f"at delta/wb = {report.argmax_delta / wb:.6f} "
          f"({int(report.flagged.sum())} flagged points)")
    return EXIT_OK


def _series_out_path(base: str | None, label: str) -> str | None:
    if base is None or not label:
        return base
    if base.endswith(".csv"):
        return f"{base[:-4]}_{label}.csv"
    return f"{base}_{label}.csv"


def cmd_preset(args) -> int:
    preset = presets.resolve_preset(args.name)
    sweep = preset.sweep
    if args.points is not None:
        sweep = dataclasses.replace(sweep, n_points=args.points)
    for label, params in preset.series:
        out = _series_out_path(args.out, label)
        wb = params.omega_b1
        spec = SweepSpec(delta_min=sweep.delta_min, delta_max=sweep.delta_max,
                         n_points=sweep.n_points, method=Method(args.method))
        if out is None and label:
            sys.stdout.write(f"# series: {label}\n")
        if preset.kind == "spectrum":
            _run_spectrum_tables(params, spec, out)
        elif preset.kind == "delay":
            table = _delay_table(params, spec, args.fd_step)
            model, _ = _resolve_model(params)
            _emit(out, _provenance(params, model), SPECTRUM_COLUMNS,
                  _spectrum_rows(table, wb))
        elif preset.kind in ("eps_nr", "tau_nr"):
            abs_dB = preset.abs_Delta_B
            if args.delta_b is not None:
                abs_dB = abs(args.delta_b) * wb
            report = analysis.tau_nonreciprocity(params, abs_dB, spec)
            model, _ = _resolve_model(params)
            _emit(out, _provenance(params, model), NR_COLUMNS,
                  _nr_rows(report, wb))
        else:  # pragma: no cover - registry is static
            raise ConfigError(f"preset {preset.name} has unknown kind")
    return EXIT_OK


def cmd_list_presets(args) -> int:
    for name in presets.list_presets():
        print(f"{name}: {presets.resolve_preset(name).description}")
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, config_required=True) -> None:
    p.add_argument("--config", required=config_required,
                   help="TOML parameter file")
    p.add_argument("--out", default=None,
                   help="output CSV path (default: stdout)")
    p.add_argument("--points", type=int, default=2001,
                   help="grid points (default 2001)")
    p.add_argument("--delta-min", type=float, default=0.0,
                   help="sweep start, units of omega_b (default 0)")
    p.add_argument("--delta-max", type=float, default=2.0,
                   help="sweep end, units of omega_b (default 2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magnomech",
        description="Probe-response simulator for a two-sphere "
                    "magnomechanical cavity with a vibrating membrane.",
        epilog="Exit codes: 0 ok, 2 config error, 3 solver error, "
               "4 unknown preset.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="absorption/dispersion sweep")
    _add_common(p)
    p.add_argument("--method", choices=[m.value for m in Method],
                   default="chain")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("delay", help="group-delay sweep (refined tau)")
    _add_common(p)
    p.add_argument("--fd-step", type=float, default=None,
                   help="tau finite-difference step, units of omega_b")
    p.set_defaults(func=cmd_delay)

    p = sub.add_parser("nonreciprocity",
                       help="contrast ratios for opposite rotation signs")
    _add_common(p)
    p.add_argument("--delta-b", type=float, required=True,
                   help="Barnett shift magnitude, units of omega_b (signed "
                        "values are folded to |delta-b|)")
    p.set_defaults(func=cmd_nonreciprocity)

    p = sub.add_parser("steady-state",
                       help="converged steady state (FirstPrinciples mode)")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_steady_state)

    p = sub.add_parser("windows", help="transparency-window inventory")
    _add_common(p)
    p.add_argument("--prominence", type=float, default=0.01,
                   help="dip prominence relative to the spectrum maximum")
    p.set_defaults(func=cmd_windows)

    p = sub.add_parser("validate",
                       help="cross-check the closed form against the "
                            "direct linear solve")
    _add_common(p, config_required=False)
    p.add_argument("--preset", default=None, help="validate a preset instead")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("preset", help="run a named figure preset")
    p.add_argument("name")
    p.add_argument("--out", default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--method", choices=[m.value for m in Method],
                   default="chain")
    p.add_argument("--fd-step", type=float, default=None)
    p.add_argument("--delta-b", type=float, default=None,
                   help="override the preset's Barnett shift magnitude")
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("list-presets", help="list available presets")
    p.set_defaults(func=cmd_list_presets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except presets.UnknownPresetError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_PRESET
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SteadyStateError, oracle.SolveError, response.PoleError,
            ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
