"""Weak-symmetry machinery: the exchange operator, invariance residuals,
the conserved-quantity monitor, dark-state detection and phase classification.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import expm

from . import algebra
from .algebra import EXCHANGE_OPERATOR
from .correlations import PhysicalParams, critical_acceleration, f_factor
from .errors import NoLocalizedPhaseError
from .lindblad import Liouvillian, SteadySpace, Trajectory, steady_states, unvec, vec


@dataclass(frozen=True)
class SymmetryOperator:
    """Exchange coupling D, its superoperator form and the conjugation unitary."""

    D: np.ndarray       # 4x4, eigenvalues {-3, 1, 1, 1}
    D_hat: np.ndarray   # 16x16, D kron I - I kron D^T

    def unitary(self, kappa: float) -> np.ndarray:
        return expm(-1j * self.D_hat * kappa)


def symmetry_operator() -> SymmetryOperator:
    D = EXCHANGE_OPERATOR
    D_hat = np.kron(D, algebra.I4) - np.kron(algebra.I4, D.T)
    return SymmetryOperator(D=D, D_hat=D_hat)


@dataclass(frozen=True)
class SymmetryReport:
    conjugation_residual: float  # max over kappa of ||U L U+ - L||_max
    commutator_norm: float       # ||D_hat L - L D_hat||_max
    kappas: tuple


def symmetry_residual(
    liou: Liouvillian, kappas: Sequence[float] = (0.1, 1.0, np.pi, 10.0)
) -> SymmetryReport:
    """Invariance of the generator under conjugation by exp(-i D_hat kappa).

    The commutator with D_hat is the equivalent kappa-free criterion and is
    returned alongside.
    """
    op = symmetry_operator()
    L = liou.matrix
    worst = 0.0
    for k in kappas:
        U = op.unitary(k)
        worst = max(worst, np.abs(U @ L @ U.conj().T - L).max())
    comm = np.abs(op.D_hat @ L - L @ op.D_hat).max()
    return SymmetryReport(
        conjugation_residual=float(worst),
        commutator_norm=float(comm),
        kappas=tuple(kappas),
    )


@dataclass(frozen=True)
class ConservedQuantityReport:
    q0: float
    max_drift: float
    series: np.ndarray


def conserved_quantity(traj: Trajectory) -> ConservedQuantityReport:
    """Drift of Q = M_xx + M_yy + M_zz along a trajectory."""
    q = traj.conserved_series()
    return ConservedQuantityReport(
        q0=float(q[0]), max_drift=float(np.abs(q - q[0]).max()), series=q
    )


@dataclass(frozen=True)
class DarkState:
    rho: np.ndarray
    purity: float
    residual: float  # ||L vec(rho)||


@dataclass(frozen=True)
class DarkStateSearch:
    states: list
    degenerate_kernel: bool


def _as_dark_state(liou: Liouvillian, rho: np.ndarray) -> DarkState:
    return DarkState(
        rho=rho,
        purity=float(np.trace(rho @ rho).real),
        residual=float(np.linalg.norm(liou.matrix @ vec(rho))),
    )


def dark_states(liou: Liouvillian, tol: float = 1e-10) -> DarkStateSearch:
    """Pure states annihilated by the generator, searched within its kernel.

    Kernel dimension <= 2 is resolved exactly (a purity-one condition on the
    affine steady family); a kernel larger than the state space's dimension
    signals the trivial generator and a spanning sample is returned instead.
    """
    space = steady_states(liou)
    if space.degeneracy > 4:
        sample = [algebra.product_state(i, j) for i in (0, 1) for j in (0, 1)]
        return DarkStateSearch(
            states=[_as_dark_state(liou, r) for r in sample],
            degenerate_kernel=True,
        )

    found = []
    basis = space.basis
    if space.degeneracy == 1:
        rho = basis[0]
        if np.trace(rho @ rho).real > 1.0 - 1e-8:
            found.append(_as_dark_state(liou, rho))
    elif space.degeneracy == 2:
        # one-parameter trace-one family rho0 + t * direction
        traces = [np.trace(h).real for h in basis]
        if abs(traces[0]) > abs(traces[1]):
            rho0 = basis[0] / traces[0]
            other = basis[1]
        else:
            rho0 = basis[1] / traces[1]
            other = basis[0]
        tr_other = np.trace(other).real
        direction = other - tr_other * rho0  # traceless
        a = np.trace(direction @ direction).real
        bq = 2.0 * np.trace(rho0 @ direction).real
        c = np.trace(rho0 @ rho0).real - 1.0
        if a > 1e-14:
            disc = bq * bq - 4.0 * a * c
            if disc >= -1e-12:
                disc = max(disc, 0.0)
                for t in ((-bq + np.sqrt(disc)) / (2 * a), (-bq - np.sqrt(disc)) / (2 * a)):
                    rho = rho0 + t * direction
                    rho = 0.5 * (rho + rho.conj().T)
                    if np.linalg.eigvalsh(rho).min() < -1e-8:
                        continue
                    if any(np.abs(rho - d.rho).max() < 1e-8 for d in found):
                        continue
                    cand = _as_dark_state(liou, rho)
                    if cand.residual < max(tol, 1e-10):
                        found.append(cand)
    return DarkStateSearch(states=found, degenerate_kernel=False)


@dataclass(frozen=True)
class PhaseClassification:
    phase: str  # "localized" | "thermal"
    f: float
    alpha_c: Optional[float]
    epsilon_loc: float
    threshold_distance: float  # epsilon_loc - (1 - f); positive inside the localized window

    def to_json(self) -> str:
        return json.dumps(
            {
                "phase": self.phase,
                "f": self.f,
                "alpha_c": self.alpha_c,
                "epsilon_loc": self.epsilon_loc,
            }
        )


def classify_phase(p: PhysicalParams, epsilon_loc: float = 0.01) -> PhaseClassification:
    """Localized iff 1 - f(alpha) < epsilon_loc (boundary classified thermal)."""
    d = p.dimensionless()
    f = f_factor(d.a_tilde, d.ell)
    deficit = 1.0 - f
    try:
        alpha_c = critical_acceleration(p, epsilon_loc=epsilon_loc)
    except NoLocalizedPhaseError:
        alpha_c = None
    phase = "localized" if deficit < epsilon_loc else "thermal"
    return PhaseClassification(
        phase=phase,
        f=float(f),
        alpha_c=alpha_c,
        epsilon_loc=epsilon_loc,
        threshold_distance=float(epsilon_loc - deficit),
    )
