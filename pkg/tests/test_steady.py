import numpy as np
import pytest
from scipy.sparse.linalg import expm_multiply

from kerrdimer import fock, liouvillian, model, steady
from kerrdimer.sweep import trace_distance


def build(exchange, j, u, f, dim):
    p = model.ModelParams(
        exchange=exchange, u_over_kappa=u, j_over_kappa=j, f_over_kappa=f, dim=dim
    )
    return liouvillian.build_for_params(p)


class TestNullspace:
    def test_coherent_limit(self):
        # U = J = 0: each cavity relaxes to the coherent state alpha = -2iF/kappa
        dim = 8
        f = 0.1
        liouv = build("single", 0.0, 0.0, f, dim)
        sol = steady.solve_nullspace(liouv, dim, dim)
        alpha = -2j * f
        psi = np.kron(fock.coherent_state(alpha, dim), fock.coherent_state(alpha, dim))
        fidelity = (psi.conj() @ sol.rho.matrix @ psi).real
        assert fidelity >= 1 - 1e-6
        assert sol.residual <= 1e-8

    def test_undriven_steady_state_is_vacuum(self):
        dim = 4
        liouv = build("single", 2.0, 5.0, 0.0, dim)
        sol = steady.solve_nullspace(liouv, dim, dim)
        vacuum = np.zeros((16, 16))
        vacuum[0, 0] = 1.0
        np.testing.assert_allclose(sol.rho.matrix, vacuum, atol=1e-10)

    @pytest.mark.parametrize("exchange", ["single", "two"])
    def test_mode_amplitudes_equal(self, exchange):
        dim = 4
        liouv = build(exchange, 1.3, 0.8, 0.5, dim)
        sol = steady.solve_nullspace(liouv, dim, dim)
        b1, b2 = model.mode_operators(dim)
        m1 = np.trace(b1 @ sol.rho.matrix)
        m2 = np.trace(b2 @ sol.rho.matrix)
        assert abs(m1 - m2) < 1e-10

    def test_density_matrix_invariants(self):
        for exchange in ("single", "two"):
            for (j, u, f) in [(0.1, 0.1, 0.1), (10, 10, 1.0), (1, 1, 0.1)]:
                liouv = build(exchange, j, u, f, 4)
                sol = steady.solve_nullspace(liouv, 4, 4)
                sol.rho.validate()


class TestEvolve:
    def test_agrees_with_nullspace_single(self):
        liouv = build("single", 1.0, 1.0, 0.1, 4)
        direct = steady.solve_nullspace(liouv, 4, 4)
        evolved = steady.solve_evolve(liouv, 4, 4)
        assert trace_distance(direct.rho.matrix, evolved.rho.matrix) <= 1e-6

    def test_agrees_with_nullspace_two_photon(self):
        liouv = build("two", 1.0, 1.0, 1.0, 4)
        direct = steady.solve_nullspace(liouv, 4, 4)
        evolved = steady.solve_evolve(liouv, 4, 4)
        assert trace_distance(direct.rho.matrix, evolved.rho.matrix) <= 1e-6

    def test_decay_against_exponential(self):
        # F = 0, H = 0: excited population decays as exp(-kappa t); checked
        # against the exactly exponentiated generator, not the RK4 path
        dim = 2
        liouv = build("single", 0.0, 0.0, 0.0, dim)
        excited = np.zeros((4, 4), dtype=complex)
        excited[2, 2] = 1.0  # |1,0><1,0|
        v0 = liouvillian.vectorize(excited)
        for t in (0.5, 1.0, 2.0, 5.0):
            vt = expm_multiply(liouv * t, v0)
            rho_t = liouvillian.unvectorize(vt, 4)
            assert abs(rho_t[2, 2].real - np.exp(-t)) < 1e-6

    def test_rk4_matches_exponential_propagator(self):
        liouv = build("single", 0.5, 2.0, 0.3, 3)
        rho0 = np.zeros((9, 9), dtype=complex)
        rho0[0, 0] = 1.0
        t = 2.0
        vt = expm_multiply(liouv * t, liouvillian.vectorize(rho0))
        # fixed-step RK4 over the same horizon
        x = liouvillian.vectorize(rho0)
        dt = 0.01
        for _ in range(int(t / dt)):
            k1 = liouv @ x
            k2 = liouv @ (x + 0.5 * dt * k1)
            k3 = liouv @ (x + 0.5 * dt * k2)
            k4 = liouv @ (x + dt * k3)
            x = x + (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        assert np.abs(x - vt).max() < 1e-8

    def test_rejects_coarse_step(self):
        liouv = build("single", 1.0, 1.0, 0.1, 2)
        with pytest.raises(ValueError):
            steady.solve_evolve(liouv, 2, 2, dt=0.1)


class TestCrossValidationGrid:
    @pytest.mark.parametrize("exchange", ["single", "two"])
    @pytest.mark.parametrize("f", [0.1, 1.0])
    def test_three_by_three_subgrid(self, exchange, f):
        for j in (0.1, 1.0, 10.0):
            for u in (0.1, 1.0, 10.0):
                liouv = build(exchange, j, u, f, 4)
                direct = steady.solve_nullspace(liouv, 4, 4)
                evolved = steady.solve_evolve(liouv, 4, 4)
                dist = trace_distance(direct.rho.matrix, evolved.rho.matrix)
                assert dist <= 1e-6, (exchange, f, j, u, dist)
