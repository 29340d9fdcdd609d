"""Column-stacking vectorization and sparse Lindblad superoperator assembly.

Convention: vec(rho)[j*d + i] = rho[i, j] (column stacking), under which
A rho B maps to (B^T ⊗ A) vec(rho). The generator for equal per-cavity
loss rates kappa on both modes is

    L = -i (I⊗H - H^T⊗I) + sum_i kappa [ conj(b_i)⊗b_i
            - 1/2 I⊗(b_i†b_i) - 1/2 (b_i†b_i)^T⊗I ]

matching drho/dt = -i[H, rho] + sum_i kappa (2 b rho b† - b†b rho
- rho b†b)/2.
"""

import numpy as np
import scipy.sparse as sp

from . import fock, model
from .errors import ContractViolationError

HERMITICITY_TOL = 1e-8


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Column-stack a matrix into a vector."""
    return np.asarray(rho).flatten(order="F")


def unvectorize(vec: np.ndarray, d: int) -> np.ndarray:
    return np.asarray(vec).reshape(d, d, order="F")


def trace_functional(d: int) -> np.ndarray:
    """Row vector t with t @ vec(rho) = tr(rho)."""
    t = np.zeros(d * d, dtype=complex)
    t[np.arange(d) * d + np.arange(d)] = 1.0
    return t


def build_liouvillian(h: np.ndarray, loss_rate: float, dim: int) -> sp.csr_matrix:
    """Assemble the sparse Lindblad generator for the two-cavity model.

    h acts on the dim² bipartite Hilbert space; both cavities decay at
    loss_rate through their annihilation operators.
    """
    d = dim * dim
    if h.shape != (d, d):
        raise ContractViolationError(f"Hamiltonian shape {h.shape}, expected ({d}, {d})")
    asym = np.abs(h - h.conj().T).max()
    if asym > HERMITICITY_TOL:
        raise ContractViolationError(f"Hamiltonian not Hermitian: max asymmetry {asym:.2e}")
    if loss_rate <= 0:
        raise ValueError(f"loss_rate must be positive, got {loss_rate}")

    eye = sp.identity(d, format="csr", dtype=complex)
    hs = sp.csr_matrix(h)
    liouv = -1j * (sp.kron(eye, hs) - sp.kron(hs.T, eye))
    for b in model.mode_operators(dim):
        bs = sp.csr_matrix(b)
        nd = sp.csr_matrix(b.conj().T @ b)
        liouv = liouv + loss_rate * (
            sp.kron(bs.conj(), bs) - 0.5 * sp.kron(eye, nd) - 0.5 * sp.kron(nd.T, eye)
        )
    return liouv.tocsr()


def build_for_params(p: model.ModelParams) -> sp.csr_matrix:
    """Liouvillian of a parameter point in kappa = 1 units."""
    return build_liouvillian(model.build_hamiltonian(p), 1.0, p.dim)


def apply_rhs_matrix_form(h: np.ndarray, loss_rate: float, dim: int, rho: np.ndarray) -> np.ndarray:
    """Direct matrix-form evaluation of -i[H,rho] + sum kappa D[b]rho.

    Independent of the vectorized assembly; used as a cross-check oracle.
    """
    out = -1j * (h @ rho - rho @ h)
    for b in model.mode_operators(dim):
        bd = b.conj().T
        out += loss_rate * (b @ rho @ bd - 0.5 * (bd @ b @ rho + rho @ bd @ b))
    return out
