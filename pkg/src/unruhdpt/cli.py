"""Command-line driver.

Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import algebra
from .correlations import PhysicalParams, critical_acceleration
from .errors import (
    ConfigError,
    IntegrationDivergedError,
    NoLocalizedPhaseError,
    NoSteadyStateError,
    OracleFailureError,
    UnruhDptError,
)
from .lindblad import (
    build_kossakowski,
    build_liouvillian,
    evolve,
    spectrum,
)
from .sweep import SweepConfig, _coefficients, _fmt, emit, run_sweep
from .symmetry import classify_phase, symmetry_residual


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_geometry_args(p):
    p.add_argument("--L", type=float, default=6e-7, help="proper separation (m)")
    p.add_argument("--omega0", type=float, default=1e14, help="Zeeman angular frequency (rad/s)")
    p.add_argument("--coupling", type=float, default=0.1, help="dimensionless coupling")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unruhdpt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="acceleration sweep of steady observables")
    p.add_argument("--alpha-min", type=float, default=1e21)
    p.add_argument("--alpha-max", type=float, default=1e25)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--log", action=argparse.BooleanOptionalAction, default=True,
                   help="log-spaced grid")
    _add_geometry_args(p)
    p.add_argument("--init", default="singlet",
                   help="named state (singlet, triplet0, product00, product11, mixed) "
                        "or JSON density matrix / path")
    p.add_argument("--epsilon-loc", type=float, default=0.01)
    p.add_argument("--mode", choices=("branch", "finite"), default="branch")
    p.add_argument("--tau-obs", type=float, default=20.0)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("spectrum", help="eigenvalue ladder of the 16x16 generator")
    p.add_argument("--a11", type=float, default=4.0)
    p.add_argument("--b11", type=float, default=1.0)
    p.add_argument("--f", type=float, default=1.0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("evolve", help="time series of the reduced observables")
    p.add_argument("--alpha", type=float, required=True)
    _add_geometry_args(p)
    p.add_argument("--init", default="singlet")
    p.add_argument("--tau-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--out", required=True)

    p = sub.add_parser("critical", help="critical acceleration for the threshold")
    _add_geometry_args(p)
    p.add_argument("--epsilon-loc", type=float, default=0.01)
    p.add_argument("--out", default=None)

    p = sub.add_parser("classify", help="phase at one acceleration")
    p.add_argument("--alpha", type=float, required=True)
    _add_geometry_args(p)
    p.add_argument("--epsilon-loc", type=float, default=0.01)
    p.add_argument("--out", default=None)

    p = sub.add_parser("symmetry", help="weak-symmetry residuals of the generator")
    p.add_argument("--a11", type=float, default=4.0)
    p.add_argument("--b11", type=float, default=1.0)
    p.add_argument("--f", type=float, default=1.0)
    p.add_argument("--kappas", type=float, nargs="+", default=[0.1, 1.0, float(np.pi), 10.0])
    p.add_argument("--out", default=None)

    return parser


def _write(text: str, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _resolve_init(spec: str) -> np.ndarray:
    if spec in algebra.NAMED_STATES:
        return algebra.NAMED_STATES[spec]()
    if Path(spec).is_file():
        spec = Path(spec).read_text()
    try:
        return algebra.density_matrix_from_json(spec)
    except Exception as exc:
        raise ConfigError(f"cannot interpret initial state: {exc}")


def _liouvillian_from_rates(a11: float, b11: float, f: float):
    from .correlations import DissipationCoefficients

    coeffs = DissipationCoefficients(A11=a11, B11=b11, A12=f * a11, B12=f * b11)
    return build_liouvillian(build_kossakowski(coeffs))


def _cmd_sweep(args) -> int:
    cfg = SweepConfig(
        alpha_min=args.alpha_min, alpha_max=args.alpha_max, points=args.points,
        log_spacing=args.log, separation=args.L, omega0=args.omega0,
        coupling=args.coupling, epsilon_loc=args.epsilon_loc,
        initial_state=args.init, mode=args.mode, tau_obs=args.tau_obs,
        out=args.out, fmt=args.format,
    )
    rows = run_sweep(cfg)
    emit(rows, cfg.fmt, cfg.out)
    return 0


def _cmd_spectrum(args) -> int:
    liou = _liouvillian_from_rates(args.a11, args.b11, args.f)
    ev = np.sort_complex(spectrum(liou).eigenvalues)  # increasing order
    lines = ["p,re,im"]
    for p, lam in enumerate(ev, start=1):
        lines.append(f"{p},{_fmt(lam.real)},{_fmt(lam.imag)}")
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_evolve(args) -> int:
    p = PhysicalParams(
        alpha=args.alpha, separation=args.L, omega0=args.omega0, coupling=args.coupling
    )
    d = p.dimensionless()
    from .correlations import f_factor

    f = f_factor(d.a_tilde, d.ell)
    liou = build_liouvillian(build_kossakowski(_coefficients(d.a_tilde, f)))
    rho0 = _resolve_init(args.init)
    traj = evolve(liou, rho0, args.tau_max, n_samples=args.points)
    bloch = traj.bloch_series()
    pur = traj.purity_series()
    q = traj.conserved_series()
    lines = ["tau,Mz,Mzz,Mc,purity,Q"]
    for i, t in enumerate(traj.times):
        lines.append(
            ",".join(
                _fmt(v) for v in (t, bloch[i, 0], bloch[i, 1], bloch[i, 2], pur[i], q[i])
            )
        )
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_critical(args) -> int:
    p = PhysicalParams(alpha=0.0, separation=args.L, omega0=args.omega0, coupling=args.coupling)
    alpha_c = critical_acceleration(p, epsilon_loc=args.epsilon_loc)
    _write(
        json.dumps({"alpha_c": alpha_c, "epsilon_loc": args.epsilon_loc}) + "\n",
        args.out,
    )
    return 0


def _cmd_classify(args) -> int:
    p = PhysicalParams(
        alpha=args.alpha, separation=args.L, omega0=args.omega0, coupling=args.coupling
    )
    result = classify_phase(p, epsilon_loc=args.epsilon_loc)
    _write(result.to_json() + "\n", args.out)
    return 0


def _cmd_symmetry(args) -> int:
    liou = _liouvillian_from_rates(args.a11, args.b11, args.f)
    report = symmetry_residual(liou, kappas=args.kappas)
    _write(
        json.dumps(
            {
                "conjugation_residual": report.conjugation_residual,
                "commutator_norm": report.commutator_norm,
                "kappas": list(report.kappas),
                "f": args.f,
            }
        )
        + "\n",
        args.out,
    )
    return 0


_COMMANDS = {
    "sweep": _cmd_sweep,
    "spectrum": _cmd_spectrum,
    "evolve": _cmd_evolve,
    "critical": _cmd_critical,
    "classify": _cmd_classify,
    "symmetry": _cmd_symmetry,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, NoLocalizedPhaseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2
    except (IntegrationDivergedError, NoSteadyStateError, OracleFailureError,
            UnruhDptError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
