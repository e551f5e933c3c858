import numpy as np
import pytest

from unruhdpt import algebra
from unruhdpt.algebra import BlochState, observables, singlet_state
from unruhdpt.correlations import DissipationCoefficients
from unruhdpt.errors import NoSteadyStateError
from unruhdpt.lindblad import (
    KAPPA_CAL,
    S_B,
    bloch_system,
    build_kossakowski,
    build_liouvillian,
    evolve,
    evolve_bloch,
    project_consistency,
    random_symmetric_bloch,
    spectrum,
    steady_closed_form,
    steady_density_matrix,
    steady_states,
    vec,
)

FIG1B = DissipationCoefficients(A11=4.0, B11=1.0, A12=4.0, B12=1.0)


def coeffs_at(f, A11=4.0, B11=1.0):
    return DissipationCoefficients(A11=A11, B11=B11, A12=f * A11, B12=f * B11)


def liouvillian_at(f, **kw):
    return build_liouvillian(build_kossakowski(coeffs_at(f, **kw)))


class TestKossakowski:
    def test_diagonal_when_b_zero(self):
        c = DissipationCoefficients(A11=2.0, B11=0.0, A12=2.0, B12=0.0)
        g = build_kossakowski(c).gamma
        expect_block = np.diag([2.0, 2.0, 0.0])
        for a in range(2):
            for b in range(2):
                assert np.abs(g[3 * a : 3 * a + 3, 3 * b : 3 * b + 3] - expect_block).max() < 1e-14

    def test_single_atom_block_structure(self):
        g = build_kossakowski(coeffs_at(0.0)).gamma
        block = g[:3, :3]
        expect = np.array(
            [[4.0, -1j * S_B, 0.0], [1j * S_B, 4.0, 0.0], [0.0, 0.0, 0.0]]
        )
        assert np.abs(block - expect).max() < 1e-14

    def test_full_cooperativity_duplicates_blocks(self):
        g = build_kossakowski(FIG1B).gamma
        assert np.abs(g[:3, :3] - g[:3, 3:]).max() < 1e-14

    def test_hermitian_and_psd_over_grid(self):
        for coth in (1.0, 1.5, 5.0):
            for f in (0.0, 0.3, 0.7, 1.0):
                c = DissipationCoefficients(A11=coth, B11=1.0, A12=f * coth, B12=f)
                g = build_kossakowski(c).gamma
                assert np.abs(g - g.conj().T).max() < 1e-14
                assert np.linalg.eigvalsh(g).min() > -1e-12


class TestLiouvillian:
    def test_zero_rates_give_zero_generator(self):
        c = DissipationCoefficients(A11=0.0, B11=0.0, A12=0.0, B12=0.0)
        L = build_liouvillian(build_kossakowski(c)).matrix
        assert np.abs(L).max() == 0.0

    def test_trace_preservation(self):
        rng = np.random.default_rng(2)
        L = liouvillian_at(0.8).matrix
        trace_row = vec(algebra.I4).conj() @ L
        assert np.abs(trace_row).max() < 1e-12
        for _ in range(100):
            X = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            rho = X @ X.conj().T
            rho = rho / np.trace(rho)
            drho = (L @ vec(rho)).reshape(4, 4, order="F")
            assert abs(np.trace(drho)) < 1e-12

    def test_fig1b_zero_eigenvalue_degeneracy(self):
        liou = build_liouvillian(build_kossakowski(FIG1B))
        ev = np.linalg.eigvals(liou.matrix)
        assert (np.abs(ev) < 1e-10).sum() == 2

    def test_eigenvalues_real_nonpositive(self):
        for f in (1.0, 0.8):
            ev = spectrum(liouvillian_at(f)).eigenvalues
            assert ev.real.max() < 1e-10
            assert np.abs(ev.imag).max() < 1e-10

    def test_hamiltonian_hook(self):
        H = algebra.pauli_embedding(0, 2)
        liou = build_liouvillian(build_kossakowski(FIG1B), hamiltonian=H)
        # the Hamiltonian part alone would keep the trace row zero
        trace_row = vec(algebra.I4).conj() @ liou.matrix
        assert np.abs(trace_row).max() < 1e-12
        with pytest.raises(ValueError):
            build_liouvillian(build_kossakowski(FIG1B), hamiltonian=H + 1j * np.eye(4))


class TestBlochSystem:
    def test_matrix_entries(self):
        s = bloch_system(coeffs_at(0.8))
        expect = np.array(
            [[-4.0, 0.0, 1.6], [0.5, -8.0, 3.2], [-0.4, 6.4, -4.0]]
        )
        assert np.abs(s.matrix - expect).max() < 1e-14
        assert np.abs(s.drive - np.array([1.0, 0.0, 0.0])).max() < 1e-14

    def test_eigenvalues_full_cooperativity(self):
        # characteristic polynomial lambda^3 + 16 lambda^2 + 49 lambda
        s = bloch_system(coeffs_at(1.0))
        got = np.sort(np.linalg.eigvals(s.matrix).real)
        expect = np.sort(np.roots([1.0, 16.0, 49.0, 0.0]).real)
        assert np.abs(got - expect).max() < 1e-10
        assert abs(np.linalg.det(s.matrix)) < 1e-12

    def test_eigenvalues_partial_cooperativity(self):
        s = bloch_system(coeffs_at(0.8))
        got = np.sort_complex(np.linalg.eigvals(s.matrix))
        expect = np.sort_complex(np.roots([1.0, 16.0, 60.16, 46.08]))
        assert np.abs(got - expect).max() < 1e-8
        assert got.real.max() < 0
        assert np.abs(got.imag).max() < 1e-12

    def test_rank_deficiency_at_full_cooperativity(self):
        s = bloch_system(coeffs_at(1.0))
        assert np.abs(s.matrix[1] + s.matrix[2]).max() < 1e-14


class TestCalibration:
    def test_residual_small(self):
        report = project_consistency(coeffs_at(1.0), seed=1)
        assert report.residual < 1e-10
        assert report.s_b == S_B
        assert report.kappa_cal == pytest.approx(KAPPA_CAL, abs=1e-10)

    def test_constants_parameter_independent(self):
        r1 = project_consistency(coeffs_at(1.0), seed=2)
        r2 = project_consistency(coeffs_at(0.5), seed=3)
        r3 = project_consistency(coeffs_at(0.7, A11=2.3, B11=1.7), seed=4)
        assert abs(r1.kappa_cal - r2.kappa_cal) < 1e-10
        assert abs(r1.kappa_cal - r3.kappa_cal) < 1e-10
        assert r1.s_b == r2.s_b == r3.s_b

    def test_flipped_sign_flips_steady_magnetization(self):
        c = coeffs_at(0.5)
        rho_cal = steady_density_matrix(build_liouvillian(build_kossakowski(c, s_b=S_B)))
        rho_flip = steady_density_matrix(build_liouvillian(build_kossakowski(c, s_b=-S_B)))
        mz_cal = observables(rho_cal).Mz
        mz_flip = observables(rho_flip).Mz
        assert mz_cal == pytest.approx(-mz_flip, abs=1e-10)
        assert mz_cal > 0  # drive sign matches the reduced system's +B11


class TestEvolve:
    def test_singlet_frozen_at_full_cooperativity(self):
        liou = build_liouvillian(build_kossakowski(FIG1B))
        traj = evolve(liou, singlet_state(), tau_max=10.0, n_samples=21)
        drift = max(np.abs(s - singlet_state()).max() for s in traj.states)
        assert drift < 1e-10

    def test_converges_to_thermal_branch(self):
        c = coeffs_at(0.8)
        liou = build_liouvillian(build_kossakowski(c))
        m0 = c.B11 / c.A11
        expect = steady_closed_form("thermal", m0)
        traj = evolve(liou, algebra.product_state(0, 0), tau_max=30.0, n_samples=4)
        final = traj.bloch_series()[-1]
        assert np.abs(final - expect.as_array()).max() < 1e-9

    def test_conserved_quantity_at_full_cooperativity(self):
        liou = build_liouvillian(build_kossakowski(FIG1B))
        traj = evolve(liou, algebra.maximally_mixed_state(), tau_max=5.0, n_samples=11)
        q = traj.conserved_series()
        assert np.abs(q - q[0]).max() < 1e-12

    def test_bloch_matches_projected_full(self):
        rng = np.random.default_rng(9)
        c = coeffs_at(0.6)
        liou = build_liouvillian(build_kossakowski(c))
        sys = bloch_system(c)
        b0 = random_symmetric_bloch(rng)
        rho0 = algebra.reconstruct_symmetric(b0)
        full = evolve(liou, rho0, tau_max=5.0, n_samples=26)
        red = evolve_bloch(sys, b0, tau_max=5.0, n_samples=26)
        assert np.abs(full.bloch_series() - red.values).max() < 1e-8


class TestSteadyStates:
    def test_degeneracy_two_at_full_cooperativity(self):
        assert steady_states(liouvillian_at(1.0)).degeneracy == 2

    def test_unique_below_full_cooperativity(self):
        for f in (0.99, 0.9, 0.5, 0.1, 0.0):
            assert steady_states(liouvillian_at(f)).degeneracy == 1

    def test_trivial_generator_has_full_kernel(self):
        c = DissipationCoefficients(A11=0.0, B11=0.0, A12=0.0, B12=0.0)
        liou = build_liouvillian(build_kossakowski(c))
        assert steady_states(liou).degeneracy == 16

    def test_unique_steady_matches_closed_form(self):
        rng = np.random.default_rng(13)
        for _ in range(5):
            coth = rng.uniform(1.0, 5.0)
            f = rng.uniform(0.0, 0.9)
            c = DissipationCoefficients(A11=coth, B11=1.0, A12=f * coth, B12=f)
            rho = steady_density_matrix(build_liouvillian(build_kossakowski(c)))
            expect = steady_closed_form("thermal", 1.0 / coth)
            got = observables(rho).bloch
            assert np.abs(got.as_array() - expect.as_array()).max() < 1e-10

    def test_steady_family_at_full_cooperativity_solves_closed_form(self):
        # every point of the 1-d affine steady family of the reduced system
        # is the localized branch for some conserved sum
        c = coeffs_at(1.0, A11=2.0, B11=1.0)
        sys = bloch_system(c)
        m0 = 0.5
        for q in (-0.75, -0.2, 0.0, 0.3):
            b = steady_closed_form("localized", m0, M2=q, M3=0.0)
            resid = sys.matrix @ b.as_array() + sys.drive
            assert np.abs(resid).max() < 1e-12


class TestSteadyClosedForm:
    def test_singlet_initial_data_fixed_point(self):
        b = steady_closed_form("localized", M0=0.9, M2=-0.5, M3=-0.25)
        assert b.Mz == pytest.approx(0.0, abs=1e-14)
        assert b.Mzz == pytest.approx(-0.25, abs=1e-14)
        assert b.Mc == pytest.approx(-0.5, abs=1e-14)

    def test_thermal_at_tanh_pi(self):
        m0 = np.tanh(np.pi)
        b = steady_closed_form("thermal", m0)
        assert b.Mz == pytest.approx(0.99627, abs=1e-5)
        assert b.Mzz == pytest.approx(0.24814, abs=1e-5)
        assert b.Mc == 0.0

    def test_localized_zero_conserved_sum(self):
        b = steady_closed_form("localized", M0=1.0, M2=0.0, M3=0.0)
        assert b.Mz == pytest.approx(0.75, abs=1e-14)
        assert b.Mc == pytest.approx(-0.125, abs=1e-14)

    def test_localized_requires_initial_data(self):
        with pytest.raises(ValueError):
            steady_closed_form("localized", M0=0.5)


class TestSpectrum:
    def test_two_zeros_at_full_cooperativity(self):
        ev = spectrum(liouvillian_at(1.0)).eigenvalues
        assert (np.abs(ev) < 1e-10).sum() == 2

    def test_one_zero_below(self):
        ev = spectrum(liouvillian_at(0.8)).eigenvalues
        assert (np.abs(ev) < 1e-10).sum() == 1
        nonzero = ev[np.abs(ev) > 1e-10]
        assert nonzero.real.max() < 0
        assert np.abs(nonzero.imag).max() < 1e-10

    def test_bloch_sector_embeds_in_full_spectrum(self):
        liou = liouvillian_at(1.0)
        ev = spectrum(liou).eigenvalues
        for lam in np.roots([1.0, 16.0, 49.0, 0.0]):
            assert np.abs(ev - lam).min() < 1e-8

    def test_gap_closes_towards_full_cooperativity(self):
        gaps = [spectrum(liouvillian_at(f)).gap for f in (0.9, 0.99, 0.999)]
        assert gaps[0] > gaps[1] > gaps[2] > 0
