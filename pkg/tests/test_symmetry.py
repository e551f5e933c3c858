import numpy as np
import pytest

from unruhdpt import algebra
from unruhdpt.algebra import singlet_state, triplet_zero_state
from unruhdpt.correlations import DissipationCoefficients, PhysicalParams
from unruhdpt.lindblad import (
    build_kossakowski,
    build_liouvillian,
    evolve,
)
from unruhdpt.symmetry import (
    classify_phase,
    conserved_quantity,
    dark_states,
    symmetry_operator,
    symmetry_residual,
)


def liouvillian_at(f, A11=4.0, B11=1.0):
    c = DissipationCoefficients(A11=A11, B11=B11, A12=f * A11, B12=f * B11)
    return build_liouvillian(build_kossakowski(c))


class TestSymmetryOperator:
    def test_exchange_eigenvalues(self):
        op = symmetry_operator()
        ev = np.sort(np.linalg.eigvalsh(op.D))
        assert np.abs(ev - np.array([-3.0, 1.0, 1.0, 1.0])).max() < 1e-12

    def test_singlet_and_triplet_eigenstates(self):
        op = symmetry_operator()
        psi_s = np.zeros(4, dtype=complex)
        psi_s[1], psi_s[2] = 1 / np.sqrt(2), -1 / np.sqrt(2)
        assert np.abs(op.D @ psi_s - (-3.0) * psi_s).max() < 1e-12
        psi_t = np.zeros(4, dtype=complex)
        psi_t[1], psi_t[2] = 1 / np.sqrt(2), 1 / np.sqrt(2)
        assert np.abs(op.D @ psi_t - psi_t).max() < 1e-12

    def test_superoperator_hermitian(self):
        op = symmetry_operator()
        assert np.abs(op.D_hat - op.D_hat.conj().T).max() < 1e-12

    @pytest.mark.parametrize("kappa", [0.1, 1.0, np.pi, 10.0])
    def test_conjugation_unitary(self, kappa):
        op = symmetry_operator()
        U = op.unitary(kappa)
        assert np.abs(U @ U.conj().T - np.eye(16)).max() < 1e-12


class TestSymmetryResidual:
    def test_invariant_at_full_cooperativity(self):
        report = symmetry_residual(liouvillian_at(1.0))
        assert report.conjugation_residual < 1e-12
        assert report.commutator_norm < 1e-12

    def test_broken_below(self):
        liou = liouvillian_at(0.8)
        report = symmetry_residual(liou)
        scale = np.abs(liou.matrix).max()
        assert report.conjugation_residual > 1e-3 * scale
        assert report.commutator_norm > 1e-3 * scale

    def test_trivial_generator(self):
        c = DissipationCoefficients(A11=0.0, B11=0.0, A12=0.0, B12=0.0)
        liou = build_liouvillian(build_kossakowski(c))
        report = symmetry_residual(liou)
        assert report.conjugation_residual == 0.0
        assert report.commutator_norm == 0.0

    def test_criteria_agree_over_grid(self):
        for f in (1.0, 0.99, 0.9, 0.5, 0.0):
            report = symmetry_residual(liouvillian_at(f))
            small_conj = report.conjugation_residual < 1e-10
            small_comm = report.commutator_norm < 1e-10
            assert small_conj == small_comm


class TestConservedQuantity:
    def test_drift_small_at_full_cooperativity(self):
        rng = np.random.default_rng(21)
        liou = liouvillian_at(1.0)
        for _ in range(5):
            X = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            rho = X @ X.conj().T
            rho = rho / np.trace(rho)
            traj = evolve(liou, rho, tau_max=5.0, n_samples=11)
            assert conserved_quantity(traj).max_drift < 1e-9

    def test_drift_large_below(self):
        liou = liouvillian_at(0.8)
        traj = evolve(liou, algebra.product_state(0, 0), tau_max=5.0, n_samples=11)
        assert conserved_quantity(traj).max_drift > 1e-3

    def test_singlet_value(self):
        liou = liouvillian_at(0.8)
        traj = evolve(liou, singlet_state(), tau_max=0.5, n_samples=3)
        assert conserved_quantity(traj).q0 == pytest.approx(-0.75, abs=1e-12)

    def test_drift_scales_with_integrator_order(self):
        # at full cooperativity the drift is pure integrator error; RK4 is
        # 4th order so halving the step cuts it by >= 8x once above roundoff
        liou = liouvillian_at(1.0)
        b = algebra.BlochState(Mz=0.2, Mzz=0.05, Mc=-0.15)
        rho = algebra.reconstruct_symmetric(b)
        drifts = []
        for dt in (0.05, 0.025):
            traj = evolve(liou, rho, tau_max=2.0, dt=dt, n_samples=5,
                          check_invariants=False)
            drifts.append(conserved_quantity(traj).max_drift)
        if drifts[1] > 1e-13:  # above roundoff floor
            assert drifts[0] / drifts[1] >= 8.0


class TestDarkStates:
    def test_singlet_found_at_full_cooperativity(self):
        search = dark_states(liouvillian_at(1.0))
        assert not search.degenerate_kernel
        assert len(search.states) >= 1
        psi = np.zeros(4, dtype=complex)
        psi[1], psi[2] = 1 / np.sqrt(2), -1 / np.sqrt(2)
        fidelities = [float((psi.conj() @ d.rho @ psi).real) for d in search.states]
        assert max(fidelities) > 1.0 - 1e-10
        best = search.states[int(np.argmax(fidelities))]
        assert best.purity == pytest.approx(1.0, abs=1e-10)
        assert best.residual < 1e-12

    def test_none_below_full_cooperativity(self):
        search = dark_states(liouvillian_at(0.8))
        assert search.states == []
        assert not search.degenerate_kernel

    def test_trivial_generator_flagged(self):
        c = DissipationCoefficients(A11=0.0, B11=0.0, A12=0.0, B12=0.0)
        search = dark_states(build_liouvillian(build_kossakowski(c)))
        assert search.degenerate_kernel
        assert len(search.states) == 4
        assert all(d.residual < 1e-12 for d in search.states)


class TestClassifyPhase:
    GEOM = dict(separation=6e-7, omega0=1e14)

    def test_low_acceleration_localized(self):
        p = PhysicalParams(alpha=1e21, **self.GEOM)
        result = classify_phase(p)
        assert result.phase == "localized"
        assert result.f > 0.99

    def test_high_acceleration_thermal(self):
        p = PhysicalParams(alpha=1e25, **self.GEOM)
        result = classify_phase(p)
        assert result.phase == "thermal"
        assert result.f < 0.05

    def test_boundary_is_thermal(self):
        from unruhdpt.correlations import critical_acceleration

        p0 = PhysicalParams(alpha=0.0, **self.GEOM)
        alpha_c = critical_acceleration(p0, epsilon_loc=0.01)
        at = classify_phase(PhysicalParams(alpha=alpha_c * (1 + 1e-9), **self.GEOM))
        assert at.phase == "thermal"

    def test_monotone_over_sweep(self):
        verdicts = [
            classify_phase(PhysicalParams(alpha=a, **self.GEOM)).phase
            for a in np.logspace(21, 25, 40)
        ]
        first_thermal = verdicts.index("thermal")
        assert all(v == "thermal" for v in verdicts[first_thermal:])

    def test_json_fields(self):
        import json

        p = PhysicalParams(alpha=1e21, **self.GEOM)
        d = json.loads(classify_phase(p).to_json())
        assert set(d) == {"phase", "f", "alpha_c", "epsilon_loc"}
