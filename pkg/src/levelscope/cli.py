"""Command-line front end.

Subcommands:
    criterion   one level's y(n) verdict for a closed-system model
    scan        criterion table over a range of n, with threshold footer
    evolve      Fock-level populations of the diffusive mixture over time
    fidelity    neighbor fidelity F(b, t) curves
    ymean       environment-averaged criterion <y(b)> curves
    figures     canned curve families (1: fidelity, 2: survival,
                3: <y(b)> at omega/lam = 0.10, 4: omega/lam = 10)

Data files are UTF-8 CSV with a `#`-prefixed manifest header (or a JSON
mirror of the same records via --format json); figure commands also emit a
minimal SVG. Identical flags produce byte-identical data files: floats use a
fixed format and the manifest timestamp honors SOURCE_DATE_EPOCH.

Exit codes: 0 success, 2 bad arguments or out-of-domain request,
3 numerical non-convergence, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import __version__, observables, presets, spectra
from .numerics import NonConvergent, SeriesTolerance
from .open_system import DiffusiveConfig, distribution
from .svgplot import line_plot

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NONCONVERGENT = 3
EXIT_IO = 4

_FLOAT_FMT = "%.12g"


@dataclass(frozen=True)
class RunManifest:
    """Provenance block embedded in every emitted data file."""

    command: str
    parameters: dict[str, str]
    tool_version: str
    tolerances: SeriesTolerance
    timestamp: str

    def lines(self) -> list[str]:
        params = " ".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        tol = self.tolerances
        return [
            f"levelscope {self.command} v{self.tool_version}",
            f"generated: {self.timestamp}",
            f"parameters: {params}",
            f"tolerances: rel_eps={tol.rel_eps:g} max_terms={tol.max_terms} "
            f"tail_ratio_guard={tol.tail_ratio_guard:g}",
        ]

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": dict(sorted(self.parameters.items())),
            "tool_version": self.tool_version,
            "tolerances": {
                "rel_eps": self.tolerances.rel_eps,
                "max_terms": self.tolerances.max_terms,
                "tail_ratio_guard": self.tolerances.tail_ratio_guard,
            },
            "timestamp": self.timestamp,
        }


def _timestamp() -> str:
    # SOURCE_DATE_EPOCH pins the manifest for reproducible output.
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = int(epoch) if epoch else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


def _manifest(args: argparse.Namespace, command: str, extra: dict[str, str] | None = None) -> RunManifest:
    params: dict[str, str] = dict(extra or {})
    for key in ("model", "preset", "n", "n_min", "n_max", "b", "kappa", "omega", "lam", "grid"):
        if hasattr(args, key) and getattr(args, key) is not None:
            value = getattr(args, key)
            params[key.replace("_", "-")] = (
                ",".join(map(str, value)) if isinstance(value, tuple) else str(value)
            )
    return RunManifest(
        command=command,
        parameters=params,
        tool_version=__version__,
        tolerances=_tolerance(args),
        timestamp=_timestamp(),
    )


def _fmt(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _FLOAT_FMT % value
    return str(value)


class WriteFailure(OSError):
    """Output file could not be written (maps to exit code 4)."""


def _write_text(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise WriteFailure(f"cannot write {path}: {exc}") from exc


def _write_table(
    path: Path,
    manifest: RunManifest,
    header: Sequence[str],
    rows: Sequence[Sequence[object]],
    footer_comments: Sequence[str] = (),
    fmt: str = "csv",
    unit_note: str | None = None,
) -> None:
    if fmt == "json":
        payload = {
            "manifest": manifest.as_dict(),
            "units": unit_note,
            "columns": list(header),
            "rows": [[v for v in row] for row in rows],
            "footer": list(footer_comments),
        }
        _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return
    lines = [f"# {line}" for line in manifest.lines()]
    if unit_note:
        lines.append(f"# units: {unit_note}")
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    for comment in footer_comments:
        lines.append(f"# {comment}")
    _write_text(path, "\n".join(lines) + "\n")


def _tolerance(args: argparse.Namespace) -> SeriesTolerance:
    eps = getattr(args, "eps", None)
    return SeriesTolerance(rel_eps=eps) if eps else SeriesTolerance()


def _parse_grid(spec: str) -> np.ndarray:
    try:
        kind, start, stop, points = spec.split(":")
        if kind != "log":
            raise ValueError
        return observables.log_grid(float(start), float(stop), int(points))
    except ValueError:
        raise SystemExit2(f"grid must look like log:START:STOP:POINTS, got {spec!r}") from None


def _parse_b_list(spec: str) -> tuple[int, ...]:
    try:
        values = tuple(int(tok) for tok in spec.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {spec!r}") from None
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"b list must be non-negative integers, got {spec!r}")
    return values


def _model_from_args(args: argparse.Namespace) -> spectra.ModelParams:
    if args.preset:
        return presets.load_model(args.preset)
    if not args.model:
        raise SystemExit2("one of --model or --preset is required")
    name = args.model.lower()
    if name == "harmonic":
        return spectra.Harmonic(mass=args.mass, omega=args.omega)
    if name == "box":
        return spectra.Box(mass=args.mass, width=args.width)
    if name == "hydrogenoid":
        return spectra.Hydrogenoid(
            reduced_mass=args.mass, charge_number=args.charge_number, charge=args.charge
        )
    if name == "quartic":
        return spectra.Quartic(omega=args.omega, lam=args.lam)
    if name == "morse":
        raise SystemExit2("morse runs from a preset file: use --preset h2_morse or a path")
    raise SystemExit2(f"unknown model {args.model!r}")


class SystemExit2(Exception):
    """Usage-level error: message on stderr, exit code 2."""


# ---------------------------------------------------------------------------
# subcommands


def _cmd_criterion(args: argparse.Namespace) -> int:
    model = _model_from_args(args)
    try:
        point = spectra.criterion_point(model, args.n)
    except spectra.DegeneratePeriod as exc:
        # A real verdict, just not a number: report it and exit non-zero so
        # scripts cannot mistake it for a y value.
        print(f"n={args.n}: verdict: period-blind ({exc})")
        return EXIT_USAGE
    verdict = "resolvable" if point.resolvable else "unresolvable"
    if args.format == "json":
        record = {
            "n": point.n,
            "energy": point.energy,
            "tau": point.tau,
            "d_energy": point.d_energy,
            "d_tau": point.d_tau,
            "y_over_hbar": point.y,
            "verdict": verdict,
        }
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print(f"model      : {type(model).__name__}")
        print(f"n          : {point.n}")
        print(f"E_n        : {_fmt(point.energy)}")
        print(f"tau_n      : {_fmt(point.tau)}")
        print(f"dE         : {_fmt(point.d_energy)}")
        print(f"dTau       : {_fmt(point.d_tau)}")
        print(f"y / hbar   : {_fmt(point.y)}")
        print(f"verdict    : {verdict} (threshold 1/2)")
    return EXIT_OK


def _cmd_scan(args: argparse.Namespace) -> int:
    model = _model_from_args(args)
    n_max = args.n_max
    top = spectra.max_index(model)
    if n_max is None:
        if top is None:
            raise SystemExit2("--n-max is required for models without a level ceiling")
        n_max = top
    result = spectra.threshold_scan(model, args.n_min, n_max)
    rows = [
        (p.n, p.energy, p.tau, p.d_energy, p.d_tau, p.y, p.resolvable)
        for p in result.points
    ]
    footer = [
        f"first_unresolvable = {result.first_unresolvable}",
        f"note: {result.note}",
    ]
    manifest = _manifest(args, "scan", {"resolved-n-max": str(n_max)})
    _write_table(
        Path(args.out),
        manifest,
        ("n", "energy", "tau", "d_energy", "d_tau", "y_over_hbar", "resolvable"),
        rows,
        footer_comments=footer,
        fmt=args.format,
        unit_note="hbar = 1; energies and times in the model's own units; y in hbar",
    )
    print(f"wrote {args.out} ({len(rows)} rows); {footer[0]}")
    return EXIT_OK


def _cmd_evolve(args: argparse.Namespace) -> int:
    cfg = DiffusiveConfig(
        b=args.b, kappa=args.kappa, omega=args.omega, lam=args.lam, tol=_tolerance(args)
    )
    grid = _parse_grid(args.grid) if args.grid else observables.log_grid()
    rows = []
    for kt in grid.tolist():
        dist = distribution(cfg, kt / cfg.kappa)
        trace = dist.trace()
        for n, w in enumerate(dist.weights.tolist()):
            if w >= args.weight_floor:
                rows.append((kt, n, w, trace, dist.n_cut, dist.tail_bound))
    manifest = _manifest(args, "evolve", {"weight-floor": _fmt(args.weight_floor)})
    _write_table(
        Path(args.out),
        manifest,
        ("kt", "n", "weight", "trace", "n_cut", "tail_bound"),
        rows,
        footer_comments=(f"rows with weight < {_fmt(args.weight_floor)} omitted",),
        fmt=args.format,
        unit_note="kt = kappa*t (dimensionless); weights are probabilities",
    )
    print(f"wrote {args.out} ({len(rows)} rows)")
    return EXIT_OK


def _series_command(
    args: argparse.Namespace,
    command: str,
    value: Callable[[DiffusiveConfig, float], float],
    label: str,
    b_values: tuple[int, ...],
    unit_note: str,
    hline: float | None,
) -> int:
    grid = _parse_grid(args.grid) if args.grid else observables.log_grid()
    tol = _tolerance(args)
    curves = []
    for b in b_values:
        cfg = DiffusiveConfig(b=b, kappa=args.kappa, omega=args.omega, lam=args.lam, tol=tol)
        vals = np.array([value(cfg, kt / cfg.kappa) for kt in grid.tolist()])
        # TimeSeries validates the grid ordering and value finiteness.
        series = observables.TimeSeries(f"b={b}", grid, vals)
        curves.append((series.label, series.values.tolist()))
    rows = [
        tuple([grid[i]] + [vals[i] for _, vals in curves])
        for i in range(grid.shape[0])
    ]
    header = ["kt"] + [f"{label}_b{b}" for b in b_values]
    manifest = _manifest(args, command, {"b-set": ",".join(map(str, b_values))})
    out = Path(args.out)
    _write_table(out, manifest, header, rows, fmt=args.format, unit_note=unit_note)
    if args.svg:
        svg = line_plot(
            [(lab, grid.tolist(), vals) for lab, vals in curves],
            title=f"{label} over kappa*t",
            x_label="kappa t",
            y_label=label,
            hline=hline,
        )
        _write_text(Path(args.svg), svg)
    print(f"wrote {args.out} ({len(rows)} rows)")
    return EXIT_OK


def _cmd_fidelity(args: argparse.Namespace) -> int:
    def value(cfg: DiffusiveConfig, t: float) -> float:
        lower = DiffusiveConfig(
            b=cfg.b - 1, kappa=cfg.kappa, omega=cfg.omega, lam=cfg.lam, tol=cfg.tol
        )
        return observables.fidelity_overlap(cfg, lower, t)

    if any(b < 1 for b in args.b):
        raise SystemExit2("fidelity needs b >= 1 (compares |b> with |b-1>)")
    return _series_command(
        args, "fidelity", value, "F", args.b,
        "kt = kappa*t; F(b,t) = Tr[rho(t,b) rho(t,b-1)]", None,
    )


def _cmd_ymean(args: argparse.Namespace) -> int:
    if any(b < 1 for b in args.b):
        raise SystemExit2("ymean needs b >= 1")
    grid = _parse_grid(args.grid) if args.grid else observables.log_grid()
    tol = _tolerance(args)
    columns: list[tuple[int, list]] = []
    for b in args.b:
        cfg = DiffusiveConfig(b=b, kappa=args.kappa, omega=args.omega, lam=args.lam, tol=tol)
        points = observables.mean_y_series(cfg, grid)
        observables.TimeSeries(f"b={b}", grid, np.array([p.y_mean for p in points]))
        columns.append((b, points))
    header = ["kt"]
    for b, _ in columns:
        # signed ingredients ride along so the sign of d_tau stays visible
        header += [f"y_mean_b{b}", f"d_energy_b{b}", f"d_tau_b{b}"]
    rows = []
    for i in range(grid.shape[0]):
        row: list[object] = [grid[i]]
        for _, points in columns:
            row += [points[i].y_mean, points[i].d_energy, points[i].d_tau]
        rows.append(tuple(row))
    manifest = _manifest(args, "ymean", {"b-set": ",".join(map(str, args.b))})
    _write_table(
        Path(args.out), manifest, header, rows, fmt=args.format,
        unit_note="kt = kappa*t; y_mean = |d_energy * d_tau| in units of hbar "
        "(threshold 1/2); d_energy, d_tau keep their signs",
    )
    if args.svg:
        svg = line_plot(
            [(f"b={b}", grid.tolist(), [p.y_mean for p in points]) for b, points in columns],
            title="<y(b)> over kappa*t",
            x_label="kappa t",
            y_label="<y(b)> / hbar",
            hline=0.5,
        )
        _write_text(Path(args.svg), svg)
    print(f"wrote {args.out} ({len(rows)} rows)")
    return EXIT_OK


_FIGURES = {
    1: ("fidelity", (1, 5, 10, 15), None, None),
    2: ("survival", (1, 5, 10, 15), None, None),
    3: ("ymean", (2, 5, 10, 15), 0.10, 1.0),
    4: ("ymean", (2, 5, 10, 15), 10.0, 1.0),
}


def _cmd_figures(args: argparse.Namespace) -> int:
    kind, default_b, omega, lam = _FIGURES[args.which]
    b_values = args.b if args.b is not None else default_b
    grid = _parse_grid(args.grid) if args.grid else observables.log_grid()
    tol = _tolerance(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    if kind == "fidelity":
        def value(cfg: DiffusiveConfig, t: float) -> float:
            lower = DiffusiveConfig(
                b=cfg.b - 1, kappa=cfg.kappa, omega=cfg.omega, lam=cfg.lam, tol=cfg.tol
            )
            return observables.fidelity_overlap(cfg, lower, t)

        y_label, hline = "F(b,t)", None
        omega, lam = 0.0, 0.0
    elif kind == "survival":
        def value(cfg: DiffusiveConfig, t: float) -> float:
            return observables.survival(cfg, t)

        y_label, hline = "P_b(b,t)", None
        omega, lam = 0.0, 0.0
    else:
        def value(cfg: DiffusiveConfig, t: float) -> float:
            return observables.mean_y_point(cfg, t).y_mean

        y_label, hline = "<y(b)> / hbar", 0.5

    curves = []
    for b in b_values:
        cfg = DiffusiveConfig(b=b, kappa=args.kappa, omega=omega, lam=lam, tol=tol)
        vals = np.array([value(cfg, kt / cfg.kappa) for kt in grid.tolist()])
        series = observables.TimeSeries(f"b={b}", grid, vals)
        curves.append((series.label, series.values.tolist()))
    rows = [
        tuple([grid[i]] + [vals[i] for _, vals in curves])
        for i in range(grid.shape[0])
    ]
    header = ["kt"] + [f"b{b}" for b in b_values]
    extra = {"which": str(args.which), "b-set": ",".join(map(str, b_values))}
    if kind == "ymean":
        extra["omega-over-lam"] = _fmt(omega / lam)
    manifest = _manifest(args, f"figures {args.which}", extra)
    data_path = out_dir / f"figure{args.which}.{'json' if args.format == 'json' else 'csv'}"
    _write_table(
        data_path, manifest, header, rows, fmt=args.format,
        unit_note=f"kt = kappa*t; column per initial index b; values: {y_label}",
    )
    svg_path = out_dir / f"figure{args.which}.svg"
    svg = line_plot(
        [(lab, grid.tolist(), vals) for lab, vals in curves],
        title=f"figure {args.which}: {y_label}",
        x_label="kappa t",
        y_label=y_label,
        hline=hline,
    )
    _write_text(svg_path, svg)
    print(f"wrote {data_path} and {svg_path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_model_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--model", choices=("harmonic", "box", "hydrogenoid", "morse", "quartic"))
    sub.add_argument("--preset", help="bundled preset name (e.g. h2_morse) or config file path")
    sub.add_argument("--mass", type=float, default=1.0, help="mass (or reduced mass)")
    sub.add_argument("--width", type=float, default=1.0, help="box width")
    sub.add_argument("--omega", type=float, default=1.0)
    sub.add_argument("--lambda", dest="lam", type=float, default=1.0, help="quartic nonlinearity")
    sub.add_argument("--charge-number", type=int, default=1)
    sub.add_argument("--charge", type=float, default=1.0)


def _add_open_flags(sub: argparse.ArgumentParser, omega_lam: bool = True) -> None:
    sub.add_argument("--kappa", type=float, default=1.0, help="diffusion rate (times are kappa*t)")
    if omega_lam:
        sub.add_argument("--omega", type=float, default=1.0)
        sub.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sub.add_argument("--grid", default=None, metavar="log:START:STOP:POINTS",
                     help="kappa*t grid (default log:1e-3:1e2:200)")
    sub.add_argument("--eps", type=float, default=None, help="relative series tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levelscope",
        description="Classical measurability of discrete spectra and its decay under diffusion.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    crit = commands.add_parser("criterion", help="y(n) verdict for one level")
    _add_model_flags(crit)
    crit.add_argument("--n", type=int, required=True)
    crit.add_argument("--format", choices=("table", "json"), default="table")
    crit.add_argument("--eps", type=float, default=None)
    crit.set_defaults(func=_cmd_criterion)

    scan = commands.add_parser("scan", help="criterion table over a range of n")
    _add_model_flags(scan)
    scan.add_argument("--n-min", type=int, default=2)
    scan.add_argument("--n-max", type=int, default=None,
                      help="defaults to the model's level ceiling, when it has one")
    scan.add_argument("--out", required=True)
    scan.add_argument("--format", choices=("csv", "json"), default="csv")
    scan.add_argument("--eps", type=float, default=None)
    scan.set_defaults(func=_cmd_scan)

    evolve = commands.add_parser("evolve", help="Fock populations over time")
    evolve.add_argument("--b", type=int, required=True)
    _add_open_flags(evolve)
    evolve.add_argument("--weight-floor", type=float, default=1e-16,
                        help="omit rows with weight below this")
    evolve.add_argument("--out", required=True)
    evolve.add_argument("--format", choices=("csv", "json"), default="csv")
    evolve.set_defaults(func=_cmd_evolve)

    fid = commands.add_parser("fidelity", help="neighbor fidelity curves")
    fid.add_argument("--b", type=_parse_b_list, default=(1, 5, 10, 15),
                     help="comma-separated initial indices")
    _add_open_flags(fid)
    fid.add_argument("--out", required=True)
    fid.add_argument("--svg", default=None, help="also write an SVG plot here")
    fid.add_argument("--format", choices=("csv", "json"), default="csv")
    fid.set_defaults(func=_cmd_fidelity)

    ymean = commands.add_parser("ymean", help="<y(b)> curves")
    ymean.add_argument("--b", type=_parse_b_list, default=(2, 5, 10, 15))
    _add_open_flags(ymean)
    ymean.add_argument("--out", required=True)
    ymean.add_argument("--svg", default=None)
    ymean.add_argument("--format", choices=("csv", "json"), default="csv")
    ymean.set_defaults(func=_cmd_ymean)

    figs = commands.add_parser("figures", help="canned figure-analog data")
    figs.add_argument("which", type=int, choices=(1, 2, 3, 4))
    figs.add_argument("--b", type=_parse_b_list, default=None,
                      help="override the default b set")
    _add_open_flags(figs, omega_lam=False)
    figs.add_argument("--out", required=True, help="output directory")
    figs.add_argument("--format", choices=("csv", "json"), default="csv")
    figs.set_defaults(func=_cmd_figures)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (spectra.IndexOutOfSpectrum, spectra.DegeneratePeriod, spectra.NotNormalized,
            observables.MismatchedConfig, observables.ZeroEnergy,
            FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonConvergent as exc:
        print(f"error: non-convergent series: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENT
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
