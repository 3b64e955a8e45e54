"""Command-line runner for the verification suites.

Every subcommand assembles one system from flags, runs the named checks,
emits a machine-readable report, and exits 0 only if everything passed
(1 on any failing check, 2 on configuration errors).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import classical, coherent, heisenberg, operators, systems
from .errors import ConfigError, SincoordError
from .report import CheckReport
from .systems import AskeyWilson, DeformedOscillator, PoschlTeller, SystemSpec

SUITES = ("spectrum", "ladder", "heisenberg", "classical", "coherent", "all")
DEFAULT_T_GRID = heisenberg.DEFAULT_T_GRID


@dataclass
class RunConfig:
    """Everything one suite invocation needs."""

    system: SystemSpec
    n_dim: int | None = None
    guard: int = 4
    t_samples: tuple[float, ...] = DEFAULT_T_GRID
    lam: complex | None = None
    classical_dt: float = 1e-3
    output_path: str | None = None
    seed: int = 42
    n_states: int = 5
    n_max: int | None = None
    tol: float | None = None
    x0: float | None = None
    p0: float | None = None
    t_end: float | None = None

    def __post_init__(self):
        if self.n_dim is not None and self.n_dim < self.guard + 2:
            raise ConfigError(f"need N >= G + 2, got N={self.n_dim}, G={self.guard}")
        if self.classical_dt <= 0:
            raise ConfigError(f"dt must be positive, got {self.classical_dt}")


def _default_n(spec: SystemSpec, suite: str) -> int:
    if suite == "coherent":
        return 64
    if suite == "heisenberg" and isinstance(spec, AskeyWilson):
        # phases grow like E_n * t; 20 levels keeps them inside the
        # double-precision budget of the 1e-9 criterion
        return 20
    return 30


def _default_nmax(spec: SystemSpec) -> int:
    if isinstance(spec, AskeyWilson):
        return systems._aw_closure_cap(spec.q)
    return 40


def _default_lambda(spec: SystemSpec) -> complex:
    return 0.3 if isinstance(spec, DeformedOscillator) else 0.2


def run(config: RunConfig, suite: str) -> list[CheckReport]:
    """Run one suite (or `all`) over the configured system."""
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}")
    spec = config.system
    systems.validate(spec)
    guard = config.guard
    reports: list[CheckReport] = []

    def n_for(kind: str) -> int:
        return config.n_dim if config.n_dim is not None else _default_n(spec, kind)

    if suite in ("spectrum", "all"):
        n_max = config.n_max if config.n_max is not None else _default_nmax(spec)
        reports.append(systems.check_spectrum_closure(spec, n_max))

    if suite in ("ladder", "all"):
        n = n_for("ladder")
        reports.append(operators.check_ladder_action(spec, n, guard))
        reports.append(operators.check_two_commutator(spec, n, guard))
        reports.append(operators.check_hermitian_conjugacy(spec, n, guard))
        reports.append(operators.check_ground_state_condition(spec, n, guard))
        if isinstance(spec, DeformedOscillator):
            reports.append(operators.check_su11(spec, n, guard))

    if suite in ("heisenberg", "all"):
        n = n_for("heisenberg")
        reports.append(
            heisenberg.check_heisenberg(spec, n, guard, config.t_samples)
        )

    if suite in ("classical", "all"):
        if config.x0 is not None or config.p0 is not None:
            if config.x0 is None or config.p0 is None:
                raise ConfigError("x0 and p0 must be given together")
            states = [classical.ClassicalState(config.x0, config.p0)]
        else:
            states = classical.sample_states(spec, config.n_states, config.seed)
        if config.t_end is not None:
            worst = 0.0
            drift = 0.0
            for state in states:
                traj = classical.flow_oracle(
                    spec, state, config.t_end, config.classical_dt
                )
                closed = classical.closed_form_eta(spec, state, traj.times)
                worst = max(worst, float(max(abs(closed - traj.eta_values))))
                drift = max(drift, traj.energy_drift)
            reports.append(
                CheckReport(
                    "classical_closed_vs_flow", worst, 1e-6, worst <= 1e-6,
                    {"states": len(states), "t_end": config.t_end},
                )
            )
            reports.append(
                CheckReport(
                    "classical_energy_drift", drift, 1e-8, drift <= 1e-8,
                    {"states": len(states)},
                )
            )
        else:
            reports.extend(
                classical.check_closed_vs_flow(spec, states, dt=config.classical_dt)
            )
        closure_states = classical.sample_states(spec, 50, config.seed)
        reports.append(classical.check_poisson_closure(spec, closure_states))
        if isinstance(spec, PoschlTeller):
            reports.append(classical.check_potential_reconstruction(spec))

    if suite in ("coherent", "all"):
        n = n_for("coherent")
        truncation = n - guard
        lam = config.lam if config.lam is not None else _default_lambda(spec)
        reports.append(coherent.check_eigenvalue(spec, lam, truncation, guard))
        if isinstance(spec, DeformedOscillator):
            xs = np.linspace(-5.0, 5.0, 20)
            reports.append(
                coherent.check_mp_hypergeometric(spec.a, lam, xs, truncation)
            )

    if config.tol is not None:
        reports = [
            CheckReport(
                r.name, r.max_residual, config.tol,
                r.max_residual <= config.tol, r.details,
            )
            for r in reports
        ]
    return reports


# ---------------------------------------------------------------------------
# report emission


def _fmt_float(value: float) -> str:
    return format(float(value), ".17g")


def _render_json(obj, indent: int = 0) -> str:
    """Deterministic JSON with fixed 17-significant-digit floats."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [
            f"{inner}{json.dumps(str(k))}: {_render_json(v, indent + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rows = [f"{inner}{_render_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    return json.dumps(str(obj))


def _system_tag(spec: SystemSpec) -> str:
    return {"PoschlTeller": "pt", "DeformedOscillator": "do", "AskeyWilson": "aw"}[
        type(spec).__name__
    ]


def _system_params(spec: SystemSpec) -> dict:
    match spec:
        case PoschlTeller(g=g, h=h):
            return {"g": g, "h": h}
        case DeformedOscillator(a=a):
            return {"a": a}
        case AskeyWilson():
            return {
                "a1": spec.a1, "a2": spec.a2, "a3": spec.a3, "a4": spec.a4,
                "q": spec.q,
            }
    return {}


def _report_document(config: RunConfig, reports: list[CheckReport]) -> dict:
    return {
        "system": _system_tag(config.system),
        "params": _system_params(config.system),
        "N": config.n_dim if config.n_dim is not None else 0,
        "G": config.guard,
        "checks": [
            {
                "name": r.name,
                "max_residual": r.max_residual,
                "tolerance": r.tolerance,
                "pass": r.passed,
                "details": r.details,
            }
            for r in reports
        ],
    }


def emit_report(
    config: RunConfig, reports: list[CheckReport], fmt: str, path: str | None
) -> None:
    """Write the report document as json, csv, or a text table."""
    if fmt == "json":
        text = _render_json(_report_document(config, reports)) + "\n"
    elif fmt == "csv":
        lines = ["name,max_residual,tolerance,pass"]
        for r in reports:
            lines.append(
                f"{r.name},{_fmt_float(r.max_residual)},"
                f"{_fmt_float(r.tolerance)},{str(r.passed).lower()}"
            )
        text = "\n".join(lines) + "\n"
    elif fmt == "text":
        text = format_text_table(config, reports)
    else:
        raise ConfigError(f"unknown format {fmt!r}")
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def format_text_table(config: RunConfig, reports: list[CheckReport]) -> str:
    head = f"system={_system_tag(config.system)}"
    for key, value in _system_params(config.system).items():
        head += f" {key}={value:g}"
    lines = [head, f"{'check':<28}{'max_residual':>14}{'tolerance':>12}  status"]
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{r.name:<28}{r.max_residual:>14.3e}{r.tolerance:>12.1e}  {status}"
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parsing


def _csv_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats: {exc}")


def _parse_complex(text: str) -> complex:
    try:
        return complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a complex number: {exc}")


def build_parser(defaults: dict | None = None) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # required-ness is checked after parsing so a --config file can supply it
    common.add_argument("--system", choices=("pt", "do", "aw"), default=None)
    common.add_argument("--g", type=float, help="pt coupling g")
    common.add_argument("--h", type=float, help="pt coupling h")
    common.add_argument(
        "--a", type=_csv_floats,
        help="do parameter a, or aw parameters a1,a2,a3,a4",
    )
    common.add_argument("--q", type=float, help="aw base q")
    common.add_argument("--n", type=int, default=None, help="matrix dimension")
    common.add_argument("--guard", type=int, default=4, help="guard band size")
    common.add_argument("--nmax", type=int, default=None, help="spectrum levels")
    common.add_argument(
        "--t", type=_csv_floats, default=DEFAULT_T_GRID, help="time samples"
    )
    common.add_argument("--lambda", dest="lam", type=_parse_complex, default=None)
    common.add_argument("--dt", type=float, default=1e-3)
    common.add_argument("--tend", type=float, default=None)
    common.add_argument("--x0", type=float, default=None)
    common.add_argument("--p0", type=float, default=None)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--states", type=int, default=5)
    common.add_argument("--tol", type=float, default=None, help="tolerance override")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--out", default=None, help="report (or trajectory) path")
    common.add_argument("--config", default=None, help="key = value defaults file")

    parser = argparse.ArgumentParser(
        prog="sincoord",
        description="run closed-form identity checks for the solvable systems",
    )
    sub = parser.add_subparsers(dest="suite", required=True)
    for name in SUITES:
        sub_parser = sub.add_parser(name, parents=[common])
        if defaults:
            sub_parser.set_defaults(**defaults)
    return parser


_CONFIG_CASTS = {
    "system": str,
    "g": float,
    "h": float,
    "a": _csv_floats,
    "q": float,
    "n": int,
    "guard": int,
    "nmax": int,
    "t": _csv_floats,
    "lambda": _parse_complex,
    "dt": float,
    "tend": float,
    "x0": float,
    "p0": float,
    "seed": int,
    "states": int,
    "tol": float,
    "format": str,
    "out": str,
}


def _load_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key = value")
                key, _, value = line.partition("=")
                key = key.strip()
                if key not in _CONFIG_CASTS:
                    raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
                try:
                    values[key] = _CONFIG_CASTS[key](value.strip())
                except (ValueError, argparse.ArgumentTypeError) as exc:
                    raise ConfigError(f"{path}:{lineno}: {exc}")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}")
    return values


def _build_spec(args: argparse.Namespace) -> SystemSpec:
    if args.system is None:
        raise ConfigError("--system is required (as a flag or config-file key)")
    if args.system == "pt":
        if args.g is None or args.h is None:
            raise ConfigError("pt needs --g and --h")
        return PoschlTeller(args.g, args.h)
    if args.system == "do":
        if args.a is None or len(args.a) != 1:
            raise ConfigError("do needs --a with a single value")
        return DeformedOscillator(args.a[0])
    if args.a is None or len(args.a) != 4 or args.q is None:
        raise ConfigError("aw needs --q and --a a1,a2,a3,a4")
    return AskeyWilson(*args.a, q=args.q)


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        # pre-scan for --config so its values become flag defaults
        defaults = None
        if "--config" in argv:
            index = argv.index("--config")
            if index + 1 >= len(argv):
                raise ConfigError("--config needs a path")
            defaults = _load_config_file(argv[index + 1])
            if "lambda" in defaults:
                defaults["lam"] = defaults.pop("lambda")
        parser = build_parser(defaults)
        args = parser.parse_args(argv)
        spec = _build_spec(args)
        config = RunConfig(
            system=spec,
            n_dim=args.n,
            guard=args.guard,
            t_samples=tuple(args.t),
            lam=args.lam,
            classical_dt=args.dt,
            output_path=args.out,
            seed=args.seed,
            n_states=args.states,
            n_max=args.nmax,
            tol=args.tol,
            x0=args.x0,
            p0=args.p0,
            t_end=args.tend,
        )
        reports = run(config, args.suite)
        if (
            args.suite == "classical"
            and args.out is not None
            and args.format == "csv"
            and args.x0 is not None
            and args.p0 is not None
        ):
            # trajectory export replaces the csv report file
            state = classical.ClassicalState(args.x0, args.p0)
            t_end = args.tend if args.tend is not None else 3.0 * classical.period(
                spec, state
            )
            traj = classical.flow_oracle(spec, state, t_end, args.dt)
            closed = classical.closed_form_eta(spec, state, traj.times)
            classical.write_trajectory_csv(
                args.out, traj.times, closed, traj.eta_values
            )
            sys.stdout.write(format_text_table(config, reports))
        elif args.out is not None:
            emit_report(config, reports, args.format, args.out)
            sys.stdout.write(format_text_table(config, reports))
        else:
            emit_report(config, reports, args.format, None)
        return 0 if all(r.passed for r in reports) else 1
    except (ConfigError, SincoordError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
