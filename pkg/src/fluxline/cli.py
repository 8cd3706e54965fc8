"""Command-line front end.

Exit codes: 0 success, 2 input/validation error, 3 numerical
non-convergence.  All numeric output is formatted with 12 significant
digits and '.' decimals so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import rf_network as rf
from .config import ConfigError, DeviceConfig, load_config
from .fitting import (
    DataSeries,
    FitResult,
    fit_beta,
    fit_rb,
    fit_ramsey,
    fit_t1,
    fit_tuning_curve,
)
from .modulation import (
    DEFAULT_ORDER,
    FluxDrive,
    SymmetricSquidError,
    avg_frequency,
    second_order_shift,
    time_average_oracle,
)
from .signal_chain import LineBudget, spurious_shift_report
from .transmon import FluxPoint, diagonalize, f01_asymptotic

CONFIG_ENV = "FLUXLINE_CONFIG"

FIT_COLUMNS = {
    "t1": ("time_us", "signal"),
    "ramsey": ("time_us", "signal"),
    "rb": ("sequence_length", "fidelity"),
    "tuning": ("current_a", "frequency_mhz"),
    "beta": ("amplitude_v", "frequency_mhz"),
}


def fmt(x: float) -> str:
    """Fixed 12-significant-digit rendering used for every numeric cell."""
    v = float(x)
    if v == 0.0:
        v = 0.0  # never emit -0
    return format(v, ".12g")


def _write_csv(path: str | None, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _emit_json(path: str | None, obj) -> None:
    text = _json_dump(obj)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load(args) -> DeviceConfig:
    path = args.config or os.environ.get(CONFIG_ENV)
    if not path:
        raise ConfigError(
            f"no config given: pass a path or set {CONFIG_ENV}"
        )
    return load_config(path)


def _summary(args, human_lines: list[str], payload: dict) -> None:
    if args.json:
        sys.stdout.write(_json_dump(payload))
    else:
        for line in human_lines:
            sys.stdout.write(line + "\n")


def cmd_spectrum(args) -> int:
    cfg = _load(args)
    q = cfg.qubit(args.qubit)
    grid = np.linspace(args.phi_min, args.phi_max, args.points)
    rows = []
    for phi in grid:
        spec = diagonalize(q.params, FluxPoint(phi=float(phi)))
        rows.append(
            (phi, f01_asymptotic(q.params, float(phi)), spec.f01, spec.anharmonicity)
        )
    _write_csv(
        args.out,
        ["phi", "f01_asymptotic_mhz", "f01_diag_mhz", "anharmonicity_mhz"],
        rows,
    )
    top = diagonalize(q.params, FluxPoint(phi=0.0))
    bottom = diagonalize(q.params, FluxPoint(phi=0.5))
    _summary(
        args,
        [
            f"qubit {q.name}: f_max = {fmt(top.f01)} MHz at phi=0",
            f"qubit {q.name}: f_min = {fmt(bottom.f01)} MHz at phi=0.5",
            f"qubit {q.name}: anharmonicity = {fmt(top.anharmonicity)} MHz",
        ],
        {
            "qubit": q.name,
            "f_max_mhz": float(fmt(top.f01)),
            "f_min_mhz": float(fmt(bottom.f01)),
            "anharmonicity_mhz": float(fmt(top.anharmonicity)),
        },
    )
    return 0


def cmd_modulate(args) -> int:
    cfg = _load(args)
    q = cfg.qubit(args.qubit)
    amps = np.linspace(args.amp_min, args.amp_max, args.points)
    f_ref = avg_frequency(q.params, FluxDrive(args.phi_dc, 0.0), args.order)
    header = ["phi_ac", "f_avg_series_mhz"]
    if args.with_oracle:
        header.append("f_avg_oracle_mhz")
    header += ["shift_series_hz", "shift_2nd_order_hz"]
    rows = []
    worst = 0.0
    for amp in amps:
        drive = FluxDrive(args.phi_dc, float(amp))
        f_series = avg_frequency(q.params, drive, args.order)
        row = [amp, f_series]
        if args.with_oracle:
            f_oracle = time_average_oracle(q.params, drive, args.oracle_steps)
            row.append(f_oracle)
            worst = max(worst, abs(f_series - f_oracle))
        row += [(f_series - f_ref) * 1e6, second_order_shift(q.params, float(amp))]
        rows.append(row)
    _write_csv(args.out, header, rows)
    lines = [f"qubit {q.name}: f_avg at zero drive = {fmt(f_ref)} MHz"]
    payload = {"qubit": q.name, "f_ref_mhz": float(fmt(f_ref))}
    if args.with_oracle:
        lines.append(f"max |series - oracle| = {fmt(worst)} MHz")
        payload["max_series_oracle_dev_mhz"] = float(fmt(worst))
    _summary(args, lines, payload)
    return 0


def cmd_crosstalk(args) -> int:
    cfg = _load(args)
    q = cfg.qubit(args.qubit)
    budget = LineBudget(
        gamma_db=args.gamma_db, v_p=args.v_p, r_ohm=args.r_ohm, m_fH=q.m_fH
    )
    report = spurious_shift_report(q.params, budget, linewidth_hz=args.linewidth_hz)
    payload = {
        "qubit": q.name,
        "gamma_db": args.gamma_db,
        "v_p": args.v_p,
        "r_ohm": args.r_ohm,
        "m_fH": q.m_fH,
        "phi_ac": float(fmt(report.phi_ac)),
        "delta_f_hz": float(fmt(report.delta_f_hz)),
        "detectable": report.detectable,
    }
    _emit_json(args.out, payload)
    return 0


def cmd_diplexer(args) -> int:
    cfg = _load(args)
    dpx = cfg.diplexer
    lp = rf.synth_lowpass(dpx.lp_order, dpx.spec.lp_cutoff_mhz, dpx.z0)
    bp = rf.synth_bandpass(dpx.bp_order, dpx.spec.bp_low_mhz, dpx.spec.bp_high_mhz, dpx.z0)
    grid = rf.default_frequency_grid(args.points)
    resp = rf.diplexer_eval(lp, bp, dpx.z0, grid)
    db = lambda s: 20.0 * np.log10(np.abs(s) + 1e-300)
    rows = zip(resp.frequencies_mhz, db(resp.s31), db(resp.s32), db(resp.s12))
    _write_csv(args.out, ["frequency_mhz", "s31_db", "s32_db", "s12_db"], rows)
    report = rf.check_spec(resp, dpx.spec)
    payload = {
        "passed": report.passed,
        "items": [
            {
                "name": item.name,
                "passed": item.passed,
                "measured": float(fmt(item.measured)),
                "target": float(fmt(item.target)),
                "margin": float(fmt(item.margin)),
                "worst_freq_mhz": float(fmt(item.worst_freq_mhz)),
            }
            for item in report.items
        ],
    }
    _emit_json(args.report_out, payload)
    return 0


def _load_fit_csv(path: str, kind: str) -> DataSeries:
    expected = FIT_COLUMNS[kind]
    try:
        text = Path(path).read_text()
    except FileNotFoundError:
        raise ConfigError(f"data file not found: {path}")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ConfigError(f"{path}: empty CSV")
    header = [h.strip() for h in lines[0].split(",")]
    if tuple(header[:2]) != expected or len(header) > 3 or (
        len(header) == 3 and header[2] != "sigma"
    ):
        raise ConfigError(
            f"{path}: expected columns {expected + ('sigma?',)} for kind "
            f"{kind!r}, got {tuple(header)}"
        )
    rows = []
    for i, ln in enumerate(lines[1:], start=2):
        cells = ln.split(",")
        if len(cells) != len(header):
            raise ConfigError(f"{path}:{i}: expected {len(header)} cells")
        try:
            rows.append([float(c) for c in cells])
        except ValueError as exc:
            raise ConfigError(f"{path}:{i}: {exc}")
    if not rows:
        raise ConfigError(f"{path}: no data rows")
    arr = np.array(rows)
    sigma = arr[:, 2] if arr.shape[1] == 3 else None
    try:
        return DataSeries(
            x=arr[:, 0], y=arr[:, 1], sigma=sigma, x_unit=expected[0], y_unit=expected[1]
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}")


def _model_curve(kind: str, result: FitResult, data: DataSeries, extra) -> np.ndarray:
    from . import fitting

    if kind == "t1":
        theta = [result.params[k] for k in fitting.T1_MODEL.names]
        return fitting.T1_MODEL.fn(data.x, np.array(theta))
    if kind == "ramsey":
        theta = [result.params[k] for k in fitting.RAMSEY_MODEL.names]
        return fitting.RAMSEY_MODEL.fn(data.x, np.array(theta))
    if kind == "rb":
        theta = [result.params[k] for k in fitting.RB_MODEL.names]
        return fitting.RB_MODEL.fn(data.x, np.array(theta))
    if kind == "tuning":
        model = fitting.tuning_curve_model(extra.get("fixed_e_c"))
        theta = [result.params[k] for k in model.names]
        return model.fn(data.x, np.array(theta))
    model = fitting.beta_model(extra["params"], extra["phi_dc"])
    return model.fn(data.x, np.array([result.params["beta"]]))


def cmd_fit(args) -> int:
    data = _load_fit_csv(args.data, args.kind)
    extra: dict = {}
    if args.kind == "t1":
        result = fit_t1(data)
    elif args.kind == "ramsey":
        result = fit_ramsey(data)
    elif args.kind == "rb":
        result = fit_rb(data)
    elif args.kind == "tuning":
        extra["fixed_e_c"] = args.fixed_ec
        result = fit_tuning_curve(data, fixed_e_c=args.fixed_ec)
    else:  # beta
        cfg = _load(args)
        q = cfg.qubit(args.qubit)
        extra.update({"params": q.params, "phi_dc": args.phi_dc})
        result = fit_beta(data, q.params, phi_dc=args.phi_dc)

    payload = {"kind": args.kind}
    payload.update(result.to_dict())
    payload["params"] = {k: float(fmt(v)) for k, v in payload["params"].items()}
    payload["std_errors"] = {
        k: float(fmt(v)) if np.isfinite(v) else None
        for k, v in payload["std_errors"].items()
    }
    payload["residual_norm"] = float(fmt(payload["residual_norm"]))
    _emit_json(args.out, payload)

    if args.residuals_out:
        curve = _model_curve(args.kind, result, data, extra)
        rows = zip(data.x, data.y, curve, data.y - curve)
        _write_csv(args.residuals_out, [data.x_unit, data.y_unit, "model", "residual"], rows)

    if not result.converged:
        sys.stderr.write(
            "fit did not converge: "
            + "; ".join(result.flags or ("iteration cap reached",))
            + "\n"
        )
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluxline",
        description="Spectrum, flux-modulation, crosstalk, diplexer and fitting "
        "analyses for flux-tunable transmons",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable summaries")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config(p):
        p.add_argument(
            "config",
            nargs="?",
            default=None,
            help=f"device config JSON (default: ${CONFIG_ENV})",
        )

    p = sub.add_parser("spectrum", help="tuning curve on a flux grid")
    add_config(p)
    p.add_argument("--qubit", required=True)
    p.add_argument("--phi-min", type=float, default=-0.5)
    p.add_argument("--phi-max", type=float, default=0.5)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("modulate", help="time-averaged frequency vs drive amplitude")
    add_config(p)
    p.add_argument("--qubit", required=True)
    p.add_argument("--phi-dc", type=float, default=0.0)
    p.add_argument("--amp-min", type=float, default=0.0)
    p.add_argument("--amp-max", type=float, default=0.25)
    p.add_argument("--points", type=int, default=26)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--with-oracle", action="store_true")
    p.add_argument("--oracle-steps", type=int, default=512)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_modulate)

    p = sub.add_parser("crosstalk", help="spurious shift budget for a drive line")
    add_config(p)
    p.add_argument("--qubit", required=True)
    p.add_argument("--gamma-db", type=float, required=True)
    p.add_argument("--v-p", type=float, required=True)
    p.add_argument("--r-ohm", type=float, default=50.0)
    p.add_argument("--linewidth-hz", type=float, default=10_000.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_crosstalk)

    p = sub.add_parser("diplexer", help="synthesize and sweep the diplexer model")
    add_config(p)
    p.add_argument("--points", type=int, default=2000)
    p.add_argument("--out", default=None, help="response CSV (default: stdout)")
    p.add_argument("--report-out", default=None, help="spec-check JSON")
    p.set_defaults(func=cmd_diplexer)

    p = sub.add_parser("fit", help="least-squares fit of a characterization dataset")
    p.add_argument("kind", choices=sorted(FIT_COLUMNS))
    p.add_argument("data", help="CSV with the kind's expected columns")
    add_config(p)
    p.add_argument("--qubit", default=None, help="required for beta fits")
    p.add_argument("--phi-dc", type=float, default=0.0)
    p.add_argument("--fixed-ec", type=float, default=None)
    p.add_argument("--out", default=None, help="fit result JSON (default: stdout)")
    p.add_argument("--residuals-out", default=None)
    p.set_defaults(func=cmd_fit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "fit" and args.kind == "beta" and not args.qubit:
        sys.stderr.write("error: beta fits require --qubit\n")
        return 2
    try:
        return args.func(args)
    except SymmetricSquidError as exc:
        sys.stderr.write(
            f"error: {exc}\nhint: rerun with --with-oracle for symmetric SQUIDs\n"
        )
        return 2
    except (ConfigError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
