import numpy as np
import pytest
import scipy.sparse.linalg as spla

from kerrdimer import fock, liouvillian, model
from kerrdimer.errors import ContractViolationError


def random_density(d, rng):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


class TestVectorize:
    def test_identity_over_two(self):
        np.testing.assert_allclose(
            liouvillian.vectorize(np.eye(2) / 2), [0.5, 0, 0, 0.5]
        )

    def test_round_trip(self):
        rng = np.random.default_rng(1)
        m = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        np.testing.assert_array_equal(
            liouvillian.unvectorize(liouvillian.vectorize(m), 5), m
        )

    def test_kron_identity(self):
        # vec(A rho B) = (B^T ⊗ A) vec(rho) under column stacking
        rng = np.random.default_rng(2)
        d = 4
        a, b, rho = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)) for _ in range(3))
        lhs = liouvillian.vectorize(a @ rho @ b)
        rhs = np.kron(b.T, a) @ liouvillian.vectorize(rho)
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)


class TestBuildLiouvillian:
    def test_pure_decay_single_excitation(self):
        # H = 0, dim 2 per cavity, kappa = 1: mode-1 excited state decays to
        # vacuum at rate kappa
        dim = 2
        liouv = liouvillian.build_liouvillian(np.zeros((4, 4), dtype=complex), 1.0, dim)
        excited = np.zeros((4, 4), dtype=complex)
        excited[2, 2] = 1.0  # |1,0><1,0|
        vacuum = np.zeros((4, 4), dtype=complex)
        vacuum[0, 0] = 1.0
        out = liouvillian.unvectorize(liouv @ liouvillian.vectorize(excited), 4)
        np.testing.assert_allclose(out, vacuum - excited, atol=1e-14)

    def test_traceless_output(self):
        rng = np.random.default_rng(3)
        p = model.ModelParams(
            exchange="single", u_over_kappa=2.0, j_over_kappa=1.0, f_over_kappa=0.3, dim=3
        )
        liouv = liouvillian.build_for_params(p)
        for _ in range(5):
            rho = random_density(9, rng)
            out = liouvillian.unvectorize(liouv @ liouvillian.vectorize(rho), 9)
            assert abs(np.trace(out)) < 1e-12

    def test_annihilates_trace_functional(self):
        for exchange in ("single", "two"):
            p = model.ModelParams(
                exchange=exchange, u_over_kappa=5.0, j_over_kappa=0.7, f_over_kappa=0.1, dim=4
            )
            liouv = liouvillian.build_for_params(p)
            t = liouvillian.trace_functional(16)
            assert np.abs(t @ liouv.toarray()).max() < 1e-10

    def test_hermiticity_preservation(self):
        rng = np.random.default_rng(5)
        p = model.ModelParams(
            exchange="two", u_over_kappa=1.0, j_over_kappa=3.0, f_over_kappa=0.5, dim=3
        )
        liouv = liouvillian.build_for_params(p)
        for _ in range(5):
            rho = random_density(9, rng)
            out = liouvillian.unvectorize(liouv @ liouvillian.vectorize(rho), 9)
            assert np.abs(out - out.conj().T).max() < 1e-12

    @pytest.mark.parametrize("exchange", ["single", "two"])
    def test_matches_matrix_form_oracle(self, exchange):
        # dense 256x256 generator agrees with direct -i[H,rho] + dissipator
        # evaluation on random states
        rng = np.random.default_rng(7)
        p = model.ModelParams(
            exchange=exchange, u_over_kappa=2.5, j_over_kappa=1.5, f_over_kappa=0.4, dim=4
        )
        h = model.build_hamiltonian(p)
        liouv = liouvillian.build_liouvillian(h, 1.0, 4)
        for _ in range(20):
            rho = random_density(16, rng)
            via_super = liouvillian.unvectorize(liouv @ liouvillian.vectorize(rho), 16)
            direct = liouvillian.apply_rhs_matrix_form(h, 1.0, 4, rho)
            np.testing.assert_allclose(via_super, direct, atol=1e-12)

    def test_rejects_non_hermitian_hamiltonian(self):
        h = np.zeros((16, 16), dtype=complex)
        h[0, 1] = 1.0
        with pytest.raises(ContractViolationError):
            liouvillian.build_liouvillian(h, 1.0, 4)

    def test_nullspace_is_one_dimensional(self):
        # second-smallest singular value dwarfs the smallest under drive
        p = model.ModelParams(
            exchange="single", u_over_kappa=1.0, j_over_kappa=1.0, f_over_kappa=0.1, dim=4
        )
        liouv = liouvillian.build_for_params(p).toarray()
        s = np.linalg.svd(liouv, compute_uv=False)
        assert s[-1] < 1e-12 * s[0]
        assert s[-2] > 1e6 * max(s[-1], 1e-300)
