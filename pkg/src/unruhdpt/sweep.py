"""Acceleration sweeps: steady observables, transition detection and file output.

Two observation modes are supported.  In "branch" mode each grid point is
assigned its phase's closed-form steady branch (the symmetry-protected branch
below the threshold, evaluated with idealized full cooperativity; the
Gibbs-like branch above), which reproduces the jump and the diverging
derivative at the critical acceleration.  In "finite" mode the master
equation is integrated to a finite observation time instead, which shows
critical slowing-down rather than a sharp jump.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from . import algebra
from .algebra import BlochState
from .correlations import (
    DissipationCoefficients,
    PhysicalParams,
    critical_acceleration,
    f_factor,
)
from .errors import ConfigError, NoLocalizedPhaseError
from .lindblad import (
    build_kossakowski,
    build_liouvillian,
    evolve,
    spectrum,
    steady_closed_form,
    steady_states,
)

CSV_HEADER = "alpha,f,phase,Mz,Mzz,Mc,concurrence,gap,degeneracy"


@dataclass
class SweepConfig:
    alpha_min: float = 1e21
    alpha_max: float = 1e25
    points: int = 200
    log_spacing: bool = True
    separation: float = 6e-7
    omega0: float = 1e14
    coupling: float = 0.1
    epsilon_loc: float = 0.01
    initial_state: Union[str, np.ndarray] = "singlet"
    mode: str = "branch"  # "branch" | "finite"
    tau_obs: float = 20.0
    out: Optional[str] = None
    fmt: str = "csv"
    # reference rates for the spectral columns (gap, degeneracy); fixed as in
    # the eigenvalue-ladder figure so only the cooperativity varies along the
    # sweep.  At physical low-acceleration rates A11 == B11 to machine
    # precision and the kernel picks up the zero-temperature dark subspace.
    ref_a11: float = 4.0
    ref_b11: float = 1.0

    def validate(self) -> None:
        if not self.alpha_min < self.alpha_max:
            raise ConfigError("alpha_min must be < alpha_max")
        if self.points < 2:
            raise ConfigError("points must be >= 2")
        if self.mode not in ("branch", "finite"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        self.resolve_initial_state()

    def resolve_initial_state(self) -> np.ndarray:
        spec = self.initial_state
        if isinstance(spec, str):
            if spec in algebra.NAMED_STATES:
                return algebra.NAMED_STATES[spec]()
            try:
                if Path(spec).is_file():
                    spec = Path(spec).read_text()
                return algebra.density_matrix_from_json(spec)
            except ConfigError:
                raise
            except Exception as exc:
                raise ConfigError(f"cannot interpret initial state {self.initial_state!r}: {exc}")
        try:
            return algebra.check_density_matrix(spec)
        except Exception as exc:
            raise ConfigError(f"invalid initial density matrix: {exc}")

    def alpha_grid(self) -> np.ndarray:
        if self.log_spacing:
            return np.logspace(
                math.log10(self.alpha_min), math.log10(self.alpha_max), self.points
            )
        return np.linspace(self.alpha_min, self.alpha_max, self.points)


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    f: float
    phase: str
    Mz: float
    Mzz: float
    Mc: float
    concurrence: float
    gap: float
    degeneracy: int

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "f": self.f,
            "phase": self.phase,
            "Mz": self.Mz,
            "Mzz": self.Mzz,
            "Mc": self.Mc,
            "concurrence": self.concurrence,
            "gap": self.gap,
            "degeneracy": self.degeneracy,
        }


def _coefficients(a_tilde: float, f_eff: float) -> DissipationCoefficients:
    """Rates in Gamma0 units at the given dimensionless acceleration."""
    coth = 1.0 if a_tilde == 0 else 1.0 / math.tanh(math.pi / a_tilde)
    return DissipationCoefficients(
        A11=coth, B11=1.0, A12=f_eff * coth, B12=f_eff,
        zero_temperature_limit=(a_tilde == 0),
    )


def run_sweep(cfg: SweepConfig) -> List[SweepRow]:
    cfg.validate()
    rho0 = cfg.resolve_initial_state()
    obs0 = algebra.observables(rho0)
    m2, m3 = obs0.Mc, obs0.Mzz

    rows = []
    for alpha in cfg.alpha_grid():
        p = PhysicalParams(
            alpha=alpha, separation=cfg.separation,
            omega0=cfg.omega0, coupling=cfg.coupling,
        )
        d = p.dimensionless()
        f = f_factor(d.a_tilde, d.ell)
        localized = (1.0 - f) < cfg.epsilon_loc
        phase = "localized" if localized else "thermal"

        if cfg.mode == "branch":
            f_eff = 1.0 if localized else f
            if localized:
                bloch = steady_closed_form("localized", d.M0, M2=m2, M3=m3)
            else:
                bloch = steady_closed_form("thermal", d.M0)
            rho_steady = algebra.reconstruct_symmetric(bloch)
        else:
            f_eff = f
            liou = build_liouvillian(build_kossakowski(_coefficients(d.a_tilde, f)))
            traj = evolve(liou, rho0, cfg.tau_obs, n_samples=2)
            rho_steady = traj.states[-1]
            bloch = algebra.observables(rho_steady, validate=False).bloch

        ref = DissipationCoefficients(
            A11=cfg.ref_a11, B11=cfg.ref_b11,
            A12=f_eff * cfg.ref_a11, B12=f_eff * cfg.ref_b11,
        )
        liou_ref = build_liouvillian(build_kossakowski(ref))
        spec = spectrum(liou_ref)
        degeneracy = steady_states(liou_ref).degeneracy

        rows.append(
            SweepRow(
                alpha=float(alpha),
                f=float(f),
                phase=phase,
                Mz=float(bloch.Mz),
                Mzz=float(bloch.Mzz),
                Mc=float(bloch.Mc),
                concurrence=float(algebra.concurrence_wootters(rho_steady)),
                gap=float(spec.gap),
                degeneracy=int(degeneracy),
            )
        )
    return rows


@dataclass(frozen=True)
class DerivativeScan:
    alphas: np.ndarray
    derivative: np.ndarray
    peak_alpha: float
    peak_value: float


def derivative_scan(rows: List[SweepRow], observable: str) -> DerivativeScan:
    """Central finite differences of a steady observable over the sweep grid."""
    if len(rows) < 3:
        raise ConfigError("derivative scan needs at least 3 rows")
    alphas = np.array([r.alpha for r in rows])
    if np.any(np.diff(alphas) <= 0):
        raise ConfigError("rows must be sorted by alpha")
    values = np.array([getattr(r, observable) for r in rows])
    d = (values[2:] - values[:-2]) / (alphas[2:] - alphas[:-2])
    mid = alphas[1:-1]
    idx = int(np.abs(d).argmax())
    return DerivativeScan(
        alphas=mid, derivative=d,
        peak_alpha=float(mid[idx]), peak_value=float(abs(d[idx])),
    )


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def emit(rows: List[SweepRow], fmt: str, path: Union[str, Path]) -> Path:
    """Write the sweep table; CSV header and 12-significant-digit floats are
    fixed so reruns are byte-identical."""
    path = Path(path)
    if fmt == "csv":
        lines = [CSV_HEADER]
        for r in rows:
            lines.append(
                ",".join(
                    [
                        _fmt(r.alpha), _fmt(r.f), r.phase,
                        _fmt(r.Mz), _fmt(r.Mzz), _fmt(r.Mc),
                        _fmt(r.concurrence), _fmt(r.gap), str(r.degeneracy),
                    ]
                )
            )
        path.write_text("\n".join(lines) + "\n")
    elif fmt == "json":
        path.write_text(json.dumps([r.as_dict() for r in rows], indent=2) + "\n")
    else:
        raise ConfigError(f"unknown format {fmt!r}")
    return path


def rows_from_json(text: str) -> List[SweepRow]:
    return [SweepRow(**d) for d in json.loads(text)]
