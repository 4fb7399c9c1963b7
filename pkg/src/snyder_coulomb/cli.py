"""Command-line front end: deterministic CSV/JSON sweeps and checks.

Commands
--------
spectrum          solved energy levels (closed, numeric, series, undeformed)
verify-integrals  closed form vs quadrature over an (E, l, beta) grid
scan-order        fitted power of beta of the spectrum corrections
orbit             deformed-orbit drift and perihelion-precession diagnostics
l-limit           radial closed form at small l next to the 1D closed form

Output is byte-deterministic: row order is fixed, floats are printed with
17 significant digits, CSV uses '.' decimals and ',' separators, JSON is a
single object with ``meta`` (full config echo plus tool version) and
``rows``.  Exit status is 0 only when every requested check passed its
stated tolerance; configuration errors exit 2, failed checks or per-row
errors exit 1.

Option precedence: command-line flags override ``--config`` file entries,
which override built-in defaults.  Config files are flat ``key = value``
lines mirroring the long flag names (for example ``n-prime-max = 4``).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from .analytic import phase_integral_1d_closed, radial_phase_integral_closed
from .errors import (
    CollisionSingularity,
    DegenerateFit,
    InsufficientPeriods,
    OutOfWindow,
    ParameterError,
    SnyderCoulombError,
)
from .model import QuantumNumbers, energy_window, validate_params
from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    correction_order,
    phase_integral_numeric,
    spectrum_table,
)
from .dynamics import OrbitState, integrate_orbit, precession_per_orbit

__all__ = ["main", "run"]

VERIFY_THRESHOLD = 1e-8
SLOPE_BAND_1D = (0.98, 1.02)
SLOPE_BAND_3D = (1.98, 2.02)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2


# --------------------------------------------------------------------------
# option plumbing
# --------------------------------------------------------------------------


def _parse_float_list(text: str) -> list[float]:
    items = [piece.strip() for piece in text.split(",") if piece.strip()]
    if not items:
        raise ValueError("empty list")
    return [float(piece) for piece in items]


def _parse_int_list(text: str) -> list[int]:
    return [int(piece.strip()) for piece in text.split(",") if piece.strip()]


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


@dataclass(frozen=True)
class Opt:
    """One resolvable option: flag name, converter from string, default."""

    name: str
    convert: Callable[[str], Any]
    default: Any
    help: str
    is_flag: bool = False

    @property
    def dest(self) -> str:
        return self.name.replace("-", "_")


_COMMON = [
    Opt("m", float, 1.0, "particle mass (natural units)"),
    Opt("e2", float, 1.0, "Coulomb coupling e^2"),
    Opt("format", str, "csv", "output format: csv or json"),
    Opt("out", str, "-", "output path, '-' for standard output"),
    Opt("config", str, None, "flat key = value config file"),
]

_DEFAULT_SCAN_BETAS = ",".join(format(b, ".17g") for b in np.logspace(-4, -2, 7))

_OPTIONS: dict[str, list[Opt]] = {
    "spectrum": _COMMON
    + [
        Opt("beta", float, 0.0, "deformation parameter"),
        Opt("n-prime-max", int, 3, "largest principal number n'"),
        Opt("tol-quad", float, None, "relative quadrature tolerance override"),
        Opt("tol-root", float, None, "relative root tolerance override"),
    ],
    "verify-integrals": _COMMON
    + [
        Opt("beta-grid", _parse_float_list, [0.0, 0.05, 0.1], "comma list of betas"),
        Opt("l-grid", _parse_int_list, [0, 1, 2, 3], "comma list of angular momenta"),
        Opt("energies-per-cell", int, 9, "energies generated per (l, beta) cell"),
        Opt("e-grid", _parse_float_list, None, "explicit energies (overrides generation)"),
        Opt("tol-quad", float, None, "relative quadrature tolerance override"),
    ],
    "scan-order": _COMMON
    + [
        Opt("l-list", _parse_int_list, [0, 1, 2], "comma list of angular momenta"),
        Opt("n", int, 1, "radial quantum number of the scanned level"),
        Opt("beta-grid", _parse_float_list, _parse_float_list(_DEFAULT_SCAN_BETAS),
            "comma list of betas (>= 4 points over >= 1.5 decades)"),
        Opt("tol-quad", float, None, "relative quadrature tolerance override"),
        Opt("tol-root", float, None, "relative root tolerance override"),
    ],
    "orbit": _COMMON
    + [
        Opt("beta", float, 0.0, "deformation parameter"),
        Opt("x1", float, 2.0, "initial position x1"),
        Opt("x2", float, 0.0, "initial position x2"),
        Opt("p1", float, 0.0, "initial momentum p1"),
        Opt("p2", float, 0.5, "initial momentum p2"),
        Opt("t-end", float, None, "integration time (default: 100 undeformed periods)"),
        Opt("local-tol", float, 1e-12, "local error tolerance of the integrator"),
        Opt("dump-samples", _parse_bool, False, "emit sampled trajectory", is_flag=True),
    ],
    "l-limit": _COMMON
    + [
        Opt("beta-grid", _parse_float_list, [0.001, 0.01, 0.1], "comma list of betas"),
        Opt("energy", float, 0.125, "binding energy of the comparison"),
        Opt("l-grid", _parse_float_list, [0.1, 0.03, 0.01, 0.003, 0.001],
            "comma list of small angular momenta"),
    ],
}


class ConfigError(Exception):
    pass


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
                key, _, value = line.partition("=")
                values[key.strip()] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return values


def _resolve_options(command: str, args: argparse.Namespace) -> dict[str, Any]:
    opts = _OPTIONS[command]
    known = {o.name for o in opts}
    file_values: dict[str, str] = {}
    config_path = getattr(args, "config", None)
    if config_path:
        file_values = _load_config_file(config_path)
        unknown = set(file_values) - known
        if unknown:
            raise ConfigError(
                f"unknown config key(s) for {command}: {', '.join(sorted(unknown))}"
            )
    resolved: dict[str, Any] = {}
    for opt in opts:
        flag_value = getattr(args, opt.dest)
        if flag_value is not None:
            resolved[opt.dest] = flag_value
        elif opt.name in file_values:
            try:
                resolved[opt.dest] = opt.convert(file_values[opt.name])
            except ValueError as exc:
                raise ConfigError(f"config key {opt.name}: {exc}") from exc
        else:
            resolved[opt.dest] = opt.default
    return resolved


def _quad_spec(tol_quad: float | None) -> QuadratureSpec:
    if tol_quad is None:
        return DEFAULT_QUADRATURE
    if tol_quad <= 0:
        raise ConfigError("tol-quad must be > 0")
    return QuadratureSpec(
        abs_tol=tol_quad * 1e-2,
        rel_tol=tol_quad,
        max_subdivisions=DEFAULT_QUADRATURE.max_subdivisions,
    )


# --------------------------------------------------------------------------
# deterministic serialization
# --------------------------------------------------------------------------


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def _csv_quote(text: str) -> str:
    if any(ch in text for ch in (",", '"', "\n")):
        return '"' + text.replace('"', '""') + '"'
    return text


def _render_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_quote(_fmt(cell)) for cell in row))
    return "\n".join(lines) + "\n"


def _json_value(value: Any, indent: int) -> str:
    pad = " " * indent
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, float):
        if not math.isfinite(value):
            return "null"
        return format(value, ".17g")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        inner = ",\n".join(
            f'{pad}  {json.dumps(str(k))}: {_json_value(v, indent + 2)}'
            for k, v in value.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        inner = ",\n".join(f"{pad}  {_json_value(v, indent + 2)}" for v in value)
        return "[\n" + inner + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def _render_json(payload: dict[str, Any]) -> str:
    return _json_value(payload, 0) + "\n"


def _emit(
    cfg: dict[str, Any],
    command: str,
    header: Sequence[str],
    rows: Sequence[Sequence[Any]],
    summary: dict[str, Any] | None = None,
    extra: dict[str, Any] | None = None,
) -> None:
    meta: dict[str, Any] = {"tool": "snyder-coulomb", "version": __version__,
                            "command": command}
    for key, value in cfg.items():
        if key in ("config", "out", "format"):
            continue
        meta[key.replace("_", "-")] = value
    if cfg["format"] == "json":
        payload: dict[str, Any] = {"meta": meta}
        if summary is not None:
            payload["summary"] = summary
        payload["rows"] = [dict(zip(header, row)) for row in rows]
        if extra:
            payload.update(extra)
        text = _render_json(payload)
    else:
        text = _render_csv(header, rows)
        if summary is not None:
            print(
                " ".join(f"{k}={_fmt(v)}" for k, v in summary.items()),
                file=sys.stderr,
            )
    if cfg["out"] in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(cfg["out"], "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _cmd_spectrum(cfg: dict[str, Any]) -> int:
    params = validate_params(cfg["m"], cfg["e2"], cfg["beta"])
    if cfg["n_prime_max"] < 1:
        raise ConfigError("n-prime-max must be >= 1")
    kwargs = {} if cfg["tol_root"] is None else {"root_rtol": cfg["tol_root"]}
    entries = spectrum_table(
        params, cfg["n_prime_max"], _quad_spec(cfg["tol_quad"]), **kwargs
    )
    header = ["n_prime", "l", "beta", "E_newton", "E_closed", "E_numeric",
              "E_series", "rel_gap_closed_numeric", "error"]
    rows = []
    failed = False
    for entry in entries:
        if entry.error is None:
            gap = abs(entry.e_closed - entry.e_numeric) / abs(entry.e_closed)
        else:
            gap = math.nan
            failed = True
        rows.append([
            entry.qn.n_prime, entry.qn.l, params.beta, entry.e_newton,
            entry.e_closed, entry.e_numeric, entry.e_series, gap,
            entry.error or "",
        ])
    _emit(cfg, "spectrum", header, rows)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def _cell_energies(params, l: int, count: int) -> list[float]:
    # Cap the generated energies at the Coulomb scale m e2^2 so the l = 0
    # cells stay in the physically interesting range even when the window
    # itself only closes at the (much higher) deformation pole.
    window = energy_window(params, l)
    scale = min(window.e_max, params.m * params.e2**2)
    return [float(f) * scale for f in np.linspace(0.05, 0.95, count)]


def _cmd_verify_integrals(cfg: dict[str, Any]) -> int:
    if cfg["energies_per_cell"] < 1:
        raise ConfigError("energies-per-cell must be >= 1")
    spec = _quad_spec(cfg["tol_quad"])
    header = ["beta", "l", "E", "phi_closed", "phi_numeric", "rel_dev"]
    rows = []
    skipped = 0
    max_dev = 0.0
    for beta in cfg["beta_grid"]:
        params = validate_params(cfg["m"], cfg["e2"], beta)
        for l in cfg["l_grid"]:
            if l < 0:
                raise ConfigError("l-grid entries must be >= 0")
            window = energy_window(params, l)
            energies = cfg["e_grid"] or _cell_energies(params, l, cfg["energies_per_cell"])
            for energy in energies:
                if not window.contains(energy):
                    skipped += 1
                    continue
                if l == 0:
                    phi_c = phase_integral_1d_closed(params, energy).value
                else:
                    phi_c = radial_phase_integral_closed(params, energy, l).value
                phi_n = phase_integral_numeric(params, energy, l, spec).value
                dev = abs(phi_c - phi_n) / abs(phi_c)
                max_dev = max(max_dev, dev)
                rows.append([beta, l, energy, phi_c, phi_n, dev])
    passed = bool(rows) and max_dev <= VERIFY_THRESHOLD
    summary = {
        "checked": len(rows),
        "skipped": skipped,
        "max_rel_dev": max_dev,
        "threshold": VERIFY_THRESHOLD,
        "pass": passed,
    }
    _emit(cfg, "verify-integrals", header, rows, summary=summary)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _cmd_scan_order(cfg: dict[str, Any]) -> int:
    params_base = validate_params(cfg["m"], cfg["e2"], 0.0)
    if cfg["n"] < 1:
        raise ConfigError("n must be >= 1")
    betas = cfg["beta_grid"]
    if len(betas) < 4:
        raise ConfigError("beta-grid needs at least 4 points")
    if min(betas) <= 0:
        raise ConfigError("beta-grid entries must be > 0")
    if math.log10(max(betas) / min(betas)) < 1.5 - 1e-12:
        raise ConfigError("beta-grid must span at least 1.5 decades")
    spec = _quad_spec(cfg["tol_quad"])
    kwargs = {} if cfg["tol_root"] is None else {"root_rtol": cfg["tol_root"]}
    header = ["l", "slope", "rms_residual", "n_used", "pass"]
    rows = []
    all_pass = True
    for l in cfg["l_list"]:
        qn = QuantumNumbers(n=cfg["n"], l=l)
        fit = correction_order(params_base, qn, betas, spec, **kwargs)
        lo, hi = SLOPE_BAND_1D if l == 0 else SLOPE_BAND_3D
        ok = lo <= fit.slope <= hi
        all_pass = all_pass and ok
        rows.append([l, fit.slope, fit.rms_residual, fit.n_used, ok])
    _emit(cfg, "scan-order", header, rows)
    return EXIT_OK if all_pass else EXIT_CHECK_FAILED


def _undeformed_period(m: float, e2: float, state: OrbitState) -> float:
    energy_total = (state.p1**2 + state.p2**2) / (2.0 * m) - e2 / state.r
    if energy_total >= 0:
        raise ConfigError(
            "initial state is unbound at beta = 0; give --t-end explicitly"
        )
    semi_major = e2 / (2.0 * abs(energy_total))
    return 2.0 * math.pi * math.sqrt(m * semi_major**3 / e2)


def _cmd_orbit(cfg: dict[str, Any]) -> int:
    params = validate_params(cfg["m"], cfg["e2"], cfg["beta"])
    if cfg["local_tol"] <= 0:
        raise ConfigError("local-tol must be > 0")
    try:
        state0 = OrbitState(cfg["x1"], cfg["x2"], cfg["p1"], cfg["p2"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    t_end = cfg["t_end"]
    if t_end is None:
        t_end = 100.0 * _undeformed_period(params.m, params.e2, state0)
    elif t_end <= 0:
        raise ConfigError("t-end must be > 0")

    try:
        traj = integrate_orbit(state0, params, t_end, local_tol=cfg["local_tol"])
    except CollisionSingularity as exc:
        print(f"orbit: collision singularity, last good t = {exc.t_last!r}: {exc}",
              file=sys.stderr)
        return EXIT_CHECK_FAILED

    try:
        prec = precession_per_orbit(traj)
        precession, n_orbits, circular = prec.angle_per_orbit, prec.n_orbits, prec.circular
    except InsufficientPeriods:
        precession, n_orbits, circular = math.nan, 0, False

    header = ["beta", "t_end", "local_tol", "h_drift", "j_drift",
              "precession_per_orbit", "n_orbits", "circular"]
    rows = [[params.beta, t_end, cfg["local_tol"], traj.h_drift, traj.j_drift,
             precession, n_orbits, circular]]
    extra = None
    if cfg["dump_samples"]:
        samples = [
            {"t": s.t, "x1": s.x1, "x2": s.x2, "p1": s.p1, "p2": s.p2}
            for s in traj.samples
        ]
        if cfg["format"] == "json":
            extra = {"samples": samples}
        else:
            header = ["t", "x1", "x2", "p1", "p2"]
            rows = [[s.t, s.x1, s.x2, s.p1, s.p2] for s in traj.samples]
            print(
                f"h_drift={_fmt(traj.h_drift)} j_drift={_fmt(traj.j_drift)} "
                f"precession_per_orbit={_fmt(precession)}",
                file=sys.stderr,
            )
    _emit(cfg, "orbit", header, rows, extra=extra)
    return EXIT_OK


def _cmd_l_limit(cfg: dict[str, Any]) -> int:
    if cfg["energy"] <= 0:
        raise ConfigError("energy must be > 0")
    header = ["beta", "l", "phi_radial", "phi_one_dim", "gap", "error"]
    rows = []
    any_error = False
    for beta in cfg["beta_grid"]:
        params = validate_params(cfg["m"], cfg["e2"], beta)
        try:
            phi_1d = phase_integral_1d_closed(params, cfg["energy"]).value
        except OutOfWindow as exc:
            for l in cfg["l_grid"]:
                rows.append([beta, float(l), math.nan, math.nan, math.nan,
                             f"OutOfWindow: {exc}"])
            any_error = True
            continue
        for l in cfg["l_grid"]:
            try:
                phi_r = radial_phase_integral_closed(params, cfg["energy"], float(l)).value
                rows.append([beta, float(l), phi_r, phi_1d, phi_r - phi_1d, ""])
            except OutOfWindow as exc:
                rows.append([beta, float(l), math.nan, phi_1d, math.nan,
                             f"OutOfWindow: {exc}"])
                any_error = True
    _emit(cfg, "l-limit", header, rows)
    return EXIT_CHECK_FAILED if any_error else EXIT_OK


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "verify-integrals": _cmd_verify_integrals,
    "scan-order": _cmd_scan_order,
    "orbit": _cmd_orbit,
    "l-limit": _cmd_l_limit,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="snyder-coulomb",
        description="Semiclassical spectra and orbits of the Coulomb problem "
                    "in Snyder space.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, opts in _OPTIONS.items():
        sub = subparsers.add_parser(command)
        for opt in opts:
            if opt.is_flag:
                sub.add_argument(f"--{opt.name}", dest=opt.dest, default=None,
                                 action="store_const", const=True, help=opt.help)
            elif opt.convert in (_parse_float_list, _parse_int_list):
                sub.add_argument(f"--{opt.name}", dest=opt.dest, default=None,
                                 type=opt.convert, help=opt.help, metavar="LIST")
            else:
                sub.add_argument(f"--{opt.name}", dest=opt.dest, default=None,
                                 type=opt.convert if opt.convert is not str else str,
                                 help=opt.help)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the process exit status instead of raising SystemExit."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_options(args.command, args)
        return _COMMANDS[args.command](cfg)
    except (ConfigError, ParameterError, ValueError) as exc:
        print(f"{parser.prog}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DegenerateFit, SnyderCoulombError) as exc:
        print(f"{parser.prog}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
