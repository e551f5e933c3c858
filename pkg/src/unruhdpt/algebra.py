"""Exact operator algebra on the two-qubit Hilbert space.

Basis order is fixed repo-wide as |00>, |01>, |10>, |11> with qubit 1 the
left tensor factor.  Everything here is a pure function on plain numpy
arrays; density matrices are 4x4 complex ndarrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ConcurrenceDomainError, InvalidStateError, UnphysicalStateError

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_FLOOR = -1e-10

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

I4 = np.eye(4, dtype=complex)


def pauli_embedding(atom: int, axis: int) -> np.ndarray:
    """sigma_axis acting on one qubit: atom 0 is the left factor, atom 1 the right."""
    if atom == 0:
        return np.kron(PAULIS[axis], I2)
    if atom == 1:
        return np.kron(I2, PAULIS[axis])
    raise ValueError(f"atom must be 0 or 1, got {atom}")


# exchange-symmetric coupling operator, sum_i sigma_i (x) sigma_i
EXCHANGE_OPERATOR = sum(np.kron(PAULIS[i], PAULIS[i]) for i in range(3))


def check_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Validate hermiticity, unit trace and positivity; returns rho as complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidStateError(f"expected a 4x4 matrix, got shape {rho.shape}")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > HERMITICITY_TOL:
        raise InvalidStateError(f"matrix is not Hermitian (deviation {herm:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"trace is {tr}, expected 1")
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < POSITIVITY_FLOOR:
        raise InvalidStateError(f"negative eigenvalue {evals.min():.3e}")
    return rho


@dataclass(frozen=True)
class BlochState:
    """The reduced observable triple of the exchange-symmetric sector."""

    Mz: float
    Mzz: float
    Mc: float

    def to_json(self) -> str:
        return json.dumps({"Mz": self.Mz, "Mzz": self.Mzz, "Mc": self.Mc})

    @classmethod
    def from_json(cls, text: str) -> "BlochState":
        d = json.loads(text)
        return cls(Mz=float(d["Mz"]), Mzz=float(d["Mzz"]), Mc=float(d["Mc"]))

    def as_array(self) -> np.ndarray:
        return np.array([self.Mz, self.Mzz, self.Mc])


@dataclass(frozen=True)
class Observables:
    """Full nine-observable set of the equal-Zeeman two-spin system."""

    Mx: float
    My: float
    Mz: float
    Mxx: float
    Myy: float
    Mzz: float
    Mxy: float
    Myz: float
    Mzx: float

    @property
    def Mc(self) -> float:
        return self.Mxx + self.Myy

    @property
    def bloch(self) -> BlochState:
        return BlochState(Mz=self.Mz, Mzz=self.Mzz, Mc=self.Mc)


def observables(rho: np.ndarray, validate: bool = True) -> Observables:
    """Extract the nine collective observables from a two-qubit state.

    M_i is half the trace of the collective Pauli sum, M_ii and M_ij carry
    a 1/4 normalization.
    """
    if validate:
        rho = check_density_matrix(rho)
    else:
        rho = np.asarray(rho, dtype=complex)

    def tr(op):
        return float(np.trace(op @ rho).real)

    sig = pauli_embedding
    single = [0.5 * tr(sig(0, i) + sig(1, i)) for i in range(3)]
    diag = [0.25 * tr(sig(0, i) @ sig(1, i)) for i in range(3)]
    cross = {
        (i, j): 0.25 * tr(sig(0, i) @ sig(1, j) + sig(0, j) @ sig(1, i))
        for i, j in [(0, 1), (1, 2), (2, 0)]
    }
    return Observables(
        Mx=single[0], My=single[1], Mz=single[2],
        Mxx=diag[0], Myy=diag[1], Mzz=diag[2],
        Mxy=cross[(0, 1)], Myz=cross[(1, 2)], Mzx=cross[(2, 0)],
    )


def reconstruct_symmetric(b: BlochState) -> np.ndarray:
    """Inverse of `observables` on the symmetric sector.

    All unlisted observables are zero and M_xx = M_yy = M_c/2.  Raises if the
    triple lies outside the physical region.
    """
    sz1, sz2 = pauli_embedding(0, 2), pauli_embedding(1, 2)
    sxsx = pauli_embedding(0, 0) @ pauli_embedding(1, 0)
    sysy = pauli_embedding(0, 1) @ pauli_embedding(1, 1)
    szsz = sz1 @ sz2
    rho = 0.25 * (I4 + b.Mz * (sz1 + sz2) + 2.0 * b.Mc * (sxsx + sysy) + 4.0 * b.Mzz * szsz)
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < POSITIVITY_FLOOR:
        raise UnphysicalStateError(
            f"triple (Mz={b.Mz}, Mzz={b.Mzz}, Mc={b.Mc}) gives eigenvalue {evals.min():.3e}"
        )
    return rho


def purity(rho: np.ndarray) -> float:
    rho = check_density_matrix(rho)
    return float(np.trace(rho @ rho).real)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-Tr(rho ln rho) with the 0 ln 0 = 0 convention."""
    rho = check_density_matrix(rho)
    evals = np.linalg.eigvalsh(rho)
    evals = np.clip(evals, 0.0, None)
    nz = evals[evals > 0]
    return float(-(nz * np.log(nz)).sum())


_SYSY = np.kron(SIGMA_Y, SIGMA_Y)


def concurrence_wootters(rho: np.ndarray) -> float:
    """Exact Wootters concurrence; the ground-truth entanglement oracle.

    The decreasing square roots lambda_k of the spectrum of
    rho (sy x sy) rho* (sy x sy) are computed as the singular values of
    sqrt(rho)^T (sy x sy) sqrt(rho), which avoids squaring round-off on
    near-separable states.
    """
    rho = check_density_matrix(rho)
    evals, vecs = np.linalg.eigh(rho)
    root = vecs @ np.diag(np.sqrt(np.clip(evals, 0.0, None))) @ vecs.conj().T
    lam = np.linalg.svd(root.T @ _SYSY @ root, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_closed_form(b: BlochState) -> float:
    """Closed-form concurrence of the symmetric sector, kept verbatim.

    Evaluates max{0, 4|M_c| - sqrt((1 + 4 M_zz)^2 - 4 M_z^2)} without
    clamping to [0, 1]; on the singlet this yields 2 where the Wootters
    oracle yields 1, and the discrepancy is deliberately preserved.
    """
    radicand = (1.0 + 4.0 * b.Mzz) ** 2 - 4.0 * b.Mz**2
    if radicand < 0:
        raise ConcurrenceDomainError(
            f"negative radicand {radicand:.3e} for (Mz={b.Mz}, Mzz={b.Mzz}); unphysical input"
        )
    return max(0.0, 4.0 * abs(b.Mc) - np.sqrt(radicand))


# ---------------------------------------------------------------------------
# state constructors

def singlet_state() -> np.ndarray:
    psi = np.zeros(4, dtype=complex)
    psi[1], psi[2] = 1.0, -1.0
    psi /= np.sqrt(2)
    return np.outer(psi, psi.conj())


def triplet_zero_state() -> np.ndarray:
    psi = np.zeros(4, dtype=complex)
    psi[1], psi[2] = 1.0, 1.0
    psi /= np.sqrt(2)
    return np.outer(psi, psi.conj())


def product_state(bit1: int, bit2: int) -> np.ndarray:
    idx = 2 * bit1 + bit2
    rho = np.zeros((4, 4), dtype=complex)
    rho[idx, idx] = 1.0
    return rho


def maximally_mixed_state() -> np.ndarray:
    return I4 / 4.0


NAMED_STATES = {
    "singlet": singlet_state,
    "triplet0": triplet_zero_state,
    "product00": lambda: product_state(0, 0),
    "product11": lambda: product_state(1, 1),
    "mixed": maximally_mixed_state,
}


# ---------------------------------------------------------------------------
# JSON serialization: row-major arrays of [re, im] pairs

def density_matrix_to_json(rho: np.ndarray) -> str:
    rho = np.asarray(rho, dtype=complex)
    rows = [[[z.real, z.imag] for z in row] for row in rho]
    return json.dumps(rows)


def density_matrix_from_json(text: str) -> np.ndarray:
    rows = json.loads(text)
    rho = np.array([[complex(re, im) for re, im in row] for row in rows])
    return check_density_matrix(rho)
