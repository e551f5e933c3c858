"""Kossakowski matrix, Liouvillian assembly, integration and steady states.

Vectorization convention: column stacking, vec(A X B) = (B^T kron A) vec(X).
The shipped Liouvillian is scaled by the calibration factor KAPPA_CAL and
built with the calibration sign S_B, fixed once by `project_consistency`
against the reduced Bloch system; with these constants the reduced triple
(M_z, M_zz, M_c) of any trajectory follows the Bloch system exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import algebra
from .algebra import BlochState
from .correlations import DissipationCoefficients
from .errors import (
    CompletePositivityError,
    IntegrationDivergedError,
    ModelInconsistencyError,
    NoSteadyStateError,
)

# calibration constants; see project_consistency
S_B = -1
KAPPA_CAL = 0.25

_EPS_JK3 = np.zeros((3, 3))
_EPS_JK3[0, 1], _EPS_JK3[1, 0] = 1.0, -1.0


@dataclass(frozen=True)
class KossakowskiMatrix:
    """6x6 coefficient array indexed by composite (atom, axis) rows/columns."""

    gamma: np.ndarray
    coeffs: DissipationCoefficients
    s_b: int


def build_kossakowski(
    coeffs: DissipationCoefficients, s_b: int = S_B
) -> KossakowskiMatrix:
    """Assemble gamma^ab_jk = A^ab d_jk - i s_b B^ab eps_jk3 - A^ab d_j3 d_k3."""
    A = [[coeffs.A11, coeffs.A12], [coeffs.A12, coeffs.A11]]
    B = [[coeffs.B11, coeffs.B12], [coeffs.B12, coeffs.B11]]
    gamma = np.zeros((6, 6), dtype=complex)
    for a in range(2):
        for b in range(2):
            block = A[a][b] * np.eye(3) - 1j * s_b * B[a][b] * _EPS_JK3
            block[2, 2] = 0.0
            gamma[3 * a : 3 * a + 3, 3 * b : 3 * b + 3] = block
    evals = np.linalg.eigvalsh(gamma)
    if evals.min() < -1e-10 * max(evals.max(), 1.0):
        raise CompletePositivityError(
            f"coefficient matrix has negative eigenvalue {evals.min():.3e}"
        )
    return KossakowskiMatrix(gamma=gamma, coeffs=coeffs, s_b=s_b)


@dataclass(frozen=True)
class Liouvillian:
    """16x16 generator acting on column-stacked density matrices (rate units)."""

    matrix: np.ndarray
    coeffs: DissipationCoefficients
    kappa: float
    vectorization: str = "column-stacking"


def _raw_dissipator(gamma: np.ndarray) -> np.ndarray:
    L = np.zeros((16, 16), dtype=complex)
    eye = algebra.I4
    for a in range(2):
        for j in range(3):
            Sa = algebra.pauli_embedding(a, j)
            for b in range(2):
                for k in range(3):
                    g = gamma[3 * a + j, 3 * b + k]
                    if g == 0:
                        continue
                    Sb = algebra.pauli_embedding(b, k)
                    S = Sa @ Sb
                    L += g * (
                        np.kron(Sa.T, Sb)
                        - 0.5 * np.kron(eye, S)
                        - 0.5 * np.kron(S.T, eye)
                    )
    return L


def build_liouvillian(
    k: KossakowskiMatrix,
    hamiltonian: Optional[np.ndarray] = None,
    kappa: float = KAPPA_CAL,
) -> Liouvillian:
    """Full generator: kappa-scaled dissipator plus optional -i[H, .] part.

    The Hamiltonian hook accepts any user-supplied Hermitian 4x4 matrix (no
    level-shift coefficients ship with the package).
    """
    L = kappa * _raw_dissipator(k.gamma)
    if hamiltonian is not None:
        H = np.asarray(hamiltonian, dtype=complex)
        if np.abs(H - H.conj().T).max() > 1e-12:
            raise ValueError("hamiltonian must be Hermitian")
        L = L + (-1j) * (np.kron(algebra.I4, H) - np.kron(H.T, algebra.I4))
    return Liouvillian(matrix=L, coeffs=k.coeffs, kappa=kappa)


def vec(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho, dtype=complex).flatten(order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    return np.asarray(v, dtype=complex).reshape(4, 4, order="F")


# ---------------------------------------------------------------------------
# reduced Bloch system

@dataclass(frozen=True)
class BlochSystem:
    """dM/dtau = matrix @ M + drive for M = (M_z, M_zz, M_c)."""

    matrix: np.ndarray
    drive: np.ndarray


def bloch_system(coeffs: DissipationCoefficients) -> BlochSystem:
    A11, B11, A12, B12 = coeffs.A11, coeffs.B11, coeffs.A12, coeffs.B12
    M = np.array(
        [
            [-A11, 0.0, 2.0 * B12],
            [B11 / 2.0, -2.0 * A11, A12],
            [-B12 / 2.0, 2.0 * A12, -A11],
        ]
    )
    b = np.array([B11, 0.0, 0.0])
    return BlochSystem(matrix=M, drive=b)


@dataclass(frozen=True)
class CalibrationReport:
    kappa_cal: float
    s_b: int
    residual: float


def _bloch_of_matrix(m: np.ndarray) -> np.ndarray:
    """(M_z, M_zz, M_c) trace functionals applied to an arbitrary 4x4 matrix."""
    sig = algebra.pauli_embedding
    mz = 0.5 * np.trace((sig(0, 2) + sig(1, 2)) @ m).real
    mzz = 0.25 * np.trace(sig(0, 2) @ sig(1, 2) @ m).real
    mc = 0.25 * np.trace(
        (sig(0, 0) @ sig(1, 0) + sig(0, 1) @ sig(1, 1)) @ m
    ).real
    return np.array([mz, mzz, mc])


def random_symmetric_bloch(rng: np.random.Generator) -> BlochState:
    """Rejection-sample a physical symmetric-sector observable triple."""
    while True:
        mz = rng.uniform(-1, 1)
        mzz = rng.uniform(-0.25, 0.25)
        mc = rng.uniform(-0.5, 0.5)
        b = BlochState(Mz=mz, Mzz=mzz, Mc=mc)
        try:
            algebra.reconstruct_symmetric(b)
        except Exception:
            continue
        return b


def project_consistency(
    coeffs: DissipationCoefficients,
    n_states: int = 50,
    seed: int = 0,
    tol: float = 1e-8,
) -> CalibrationReport:
    """Fit the global factor and sign mapping the raw superoperator onto the
    reduced Bloch system.

    For each candidate sign, the raw (unscaled) generator's reduced derivative
    on random symmetric-sector states is least-squares matched to the Bloch
    prediction by a single scalar.  The winning fit must be consistent to
    `tol`, otherwise the construction is inconsistent and an error is raised.
    """
    rng = np.random.default_rng(seed)
    states = [random_symmetric_bloch(rng) for _ in range(n_states)]
    sys = bloch_system(coeffs)

    best = None
    for s_b in (+1, -1):
        raw = _raw_dissipator(build_kossakowski(coeffs, s_b=s_b).gamma)
        num = den = 0.0
        pairs = []
        for b in states:
            rho = algebra.reconstruct_symmetric(b)
            d_raw = _bloch_of_matrix(unvec(raw @ vec(rho)))
            d_ref = sys.matrix @ b.as_array() + sys.drive
            num += d_raw @ d_ref
            den += d_raw @ d_raw
            pairs.append((d_raw, d_ref))
        kappa = num / den
        residual = max(np.abs(kappa * dr - df).max() for dr, df in pairs)
        if best is None or residual < best.residual:
            best = CalibrationReport(kappa_cal=float(kappa), s_b=s_b, residual=float(residual))

    if best.residual > tol:
        raise ModelInconsistencyError(
            f"calibration residual {best.residual:.3e} exceeds {tol}"
        )
    return best


# ---------------------------------------------------------------------------
# time integration (classical fixed-step RK4)

STABILITY_FACTOR = 0.01

TRACE_DRIFT_TOL = 1e-10
POSITIVITY_DRIFT_TOL = -1e-8


@dataclass(frozen=True)
class Trajectory:
    """Sampled full-state evolution; immutable snapshot arrays."""

    times: np.ndarray          # (n,)
    states: np.ndarray         # (n, 4, 4)
    coeffs: DissipationCoefficients = None

    def bloch_series(self) -> np.ndarray:
        return np.array([_bloch_of_matrix(s) for s in self.states])

    def purity_series(self) -> np.ndarray:
        return np.array([np.trace(s @ s).real for s in self.states])

    def conserved_series(self) -> np.ndarray:
        """Q(tau) = M_xx + M_yy + M_zz = M_c + M_zz."""
        b = self.bloch_series()
        return b[:, 1] + b[:, 2]


@dataclass(frozen=True)
class BlochTrajectory:
    times: np.ndarray   # (n,)
    values: np.ndarray  # (n, 3): M_z, M_zz, M_c


def stable_step(l_or_s) -> float:
    """Step bound dt <= 0.01 / max |eigenvalue| of the generator."""
    m = l_or_s.matrix
    lam = np.abs(np.linalg.eigvals(m)).max()
    if lam == 0:
        return 1.0
    return STABILITY_FACTOR / lam


def _rk4_run(m: np.ndarray, drive, y0: np.ndarray, sample_times: np.ndarray, dt: float):
    """Fixed-step RK4 of dy/dt = m y + drive, sampled at the given times."""
    def rhs(y):
        out = m @ y
        if drive is not None:
            out = out + drive
        return out

    y = y0.copy()
    t = 0.0
    samples = []
    for t_target in sample_times:
        while t < t_target - 1e-12 * max(t_target, 1.0):
            h = min(dt, t_target - t)
            k1 = rhs(y)
            k2 = rhs(y + 0.5 * h * k1)
            k3 = rhs(y + 0.5 * h * k2)
            k4 = rhs(y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t += h
        samples.append(y.copy())
    return np.array(samples)


def evolve(
    liou: Liouvillian,
    state0: np.ndarray,
    tau_max: float,
    dt: Optional[float] = None,
    n_samples: int = 201,
    check_invariants: bool = True,
) -> Trajectory:
    """Integrate the full master equation; times in 1/Gamma0 units."""
    rho0 = algebra.check_density_matrix(state0)
    if dt is None:
        dt = stable_step(liou)
    times = np.linspace(0.0, tau_max, n_samples)
    ys = _rk4_run(liou.matrix, None, vec(rho0), times, dt)
    states = np.array([unvec(y) for y in ys])
    if check_invariants:
        for t, s in zip(times, states):
            if abs(np.trace(s).real - 1.0) > TRACE_DRIFT_TOL or abs(np.trace(s).imag) > TRACE_DRIFT_TOL:
                raise IntegrationDivergedError(
                    f"trace drift {np.trace(s) - 1.0:.3e} at tau={t:.4f} (dt={dt:.3e})"
                )
            if np.linalg.eigvalsh(0.5 * (s + s.conj().T)).min() < POSITIVITY_DRIFT_TOL:
                raise IntegrationDivergedError(
                    f"positivity lost at tau={t:.4f} (dt={dt:.3e})"
                )
    return Trajectory(times=times, states=states, coeffs=liou.coeffs)


def evolve_bloch(
    system: BlochSystem,
    state0: BlochState,
    tau_max: float,
    dt: Optional[float] = None,
    n_samples: int = 201,
) -> BlochTrajectory:
    """Integrate the reduced observable triple with the same RK4 scheme."""
    if dt is None:
        dt = stable_step(system)
    times = np.linspace(0.0, tau_max, n_samples)
    ys = _rk4_run(
        system.matrix.astype(float), system.drive, state0.as_array(), times, dt
    )
    return BlochTrajectory(times=times, values=ys.real)


# ---------------------------------------------------------------------------
# steady states and spectrum

NULLSPACE_RTOL = 1e-10


@dataclass(frozen=True)
class SteadySpace:
    """Null space of the generator: Hermitized basis and its dimension."""

    basis: list           # list of 4x4 Hermitian matrices, unit trace where possible
    degeneracy: int
    singular_values: np.ndarray


def steady_states(liou: Liouvillian, rtol: float = NULLSPACE_RTOL) -> SteadySpace:
    """Kernel via singular-value thresholding (sigma < rtol * sigma_max)."""
    u, s, vh = np.linalg.svd(liou.matrix)
    if liou.matrix.any():
        mask = s < rtol * s[0]
    else:
        mask = np.ones_like(s, dtype=bool)
    kernel = vh[mask].conj()
    if kernel.shape[0] == 0:
        raise NoSteadyStateError(
            "empty kernel: a Lindblad generator always has a steady state"
        )
    basis = []
    for v in kernel:
        m = unvec(v)
        h = 0.5 * (m + m.conj().T)
        tr = np.trace(h).real
        if abs(tr) > 1e-8:
            h = h / tr
        basis.append(h)
    return SteadySpace(basis=basis, degeneracy=len(basis), singular_values=s)


def steady_density_matrix(liou: Liouvillian) -> np.ndarray:
    """The unique steady state; requires a non-degenerate kernel."""
    space = steady_states(liou)
    if space.degeneracy != 1:
        raise NoSteadyStateError(
            f"kernel dimension is {space.degeneracy}, steady state not unique"
        )
    rho = space.basis[0]
    return algebra.check_density_matrix(rho)


def steady_closed_form(
    phase: str, M0: float, M2: Optional[float] = None, M3: Optional[float] = None
) -> BlochState:
    """Closed-form steady observables.

    localized: the symmetry-protected branch, parametrized by the initial
    data M2 = M_c(0), M3 = M_zz(0) through the conserved sum M2 + M3.
    thermal: the unique Gibbs-like branch, ignores the initial data.
    """
    if phase == "thermal":
        return BlochState(Mz=M0, Mzz=M0**2 / 4.0, Mc=0.0)
    if phase == "localized":
        if M2 is None or M3 is None:
            raise ValueError("localized branch requires initial data M2, M3")
        q = M2 + M3
        mz = M0 * (3.0 + 4.0 * q) / (3.0 + M0**2)
        mc = -(M0**2 - 4.0 * q) / (2.0 * (3.0 + M0**2))
        mzz = q - mc
        return BlochState(Mz=mz, Mzz=mzz, Mc=mc)
    raise ValueError(f"unknown phase {phase!r}")


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray  # sorted by real part, descending
    gap: float


def spectrum(liou: Liouvillian, zero_tol: float = 1e-10) -> Spectrum:
    """Full eigenvalue set; gap = -max{Re lam : |lam| > zero_tol}."""
    ev = np.linalg.eigvals(liou.matrix)
    order = np.argsort(-ev.real)
    ev = ev[order]
    nonzero = ev[np.abs(ev) > zero_tol]
    gap = float(-nonzero.real.max()) if nonzero.size else 0.0
    return Spectrum(eigenvalues=ev, gap=gap)
