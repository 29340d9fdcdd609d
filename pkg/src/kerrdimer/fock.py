"""Dense Fock-space operator constructors and bipartite linear algebra.

Operators are plain complex numpy arrays. The tensor ordering convention is
cavity-1-major throughout the package: an operator acting on mode 1 is
embedded as ``op ⊗ I`` and the composite basis index is ``i1 * d2 + i2``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, InvalidDimensionError

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-8


def annihilation(d: int) -> np.ndarray:
    """Truncated bosonic annihilation operator: sqrt(n) on the superdiagonal."""
    if d < 2:
        raise InvalidDimensionError(f"Fock dimension must be >= 2, got {d}")
    return np.diag(np.sqrt(np.arange(1, d, dtype=float)), 1).astype(complex)


def creation(d: int) -> np.ndarray:
    return annihilation(d).conj().T


def number(d: int) -> np.ndarray:
    if d < 2:
        raise InvalidDimensionError(f"Fock dimension must be >= 2, got {d}")
    return np.diag(np.arange(d, dtype=float)).astype(complex)


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex)


def lift(op: np.ndarray, slot: int, d1: int, d2: int) -> np.ndarray:
    """Embed a single-mode operator into the d1*d2 bipartite space.

    slot=1 gives op ⊗ I(d2), slot=2 gives I(d1) ⊗ op.
    """
    if slot not in (1, 2):
        raise InvalidDimensionError(f"slot must be 1 or 2, got {slot}")
    d_slot = d1 if slot == 1 else d2
    if op.shape != (d_slot, d_slot):
        raise InvalidDimensionError(
            f"operator shape {op.shape} does not match slot dimension {d_slot}"
        )
    if slot == 1:
        return np.kron(op, np.eye(d2, dtype=complex))
    return np.kron(np.eye(d1, dtype=complex), op)


def coherent_state(alpha: complex, d: int) -> np.ndarray:
    """Normalized truncated coherent state vector in the d-dimensional Fock basis."""
    amps = np.empty(d, dtype=complex)
    amps[0] = 1.0
    for n in range(1, d):
        amps[n] = amps[n - 1] * alpha / np.sqrt(n)
    return amps / np.linalg.norm(amps)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian unit-trace positive-semidefinite matrix on a d1 ⊗ d2 space."""

    matrix: np.ndarray
    d1: int
    d2: int

    def __post_init__(self):
        m = self.matrix
        if m.shape != (self.d1 * self.d2, self.d1 * self.d2):
            raise InvalidDimensionError(
                f"matrix shape {m.shape} inconsistent with dims ({self.d1}, {self.d2})"
            )

    @property
    def dim(self) -> int:
        return self.d1 * self.d2

    def validate(self, positivity_tol: float = POSITIVITY_TOL) -> None:
        m = self.matrix
        herm_err = np.abs(m - m.conj().T).max()
        if herm_err > HERMITICITY_TOL:
            raise ContractViolationError(f"density matrix not Hermitian: max dev {herm_err:.2e}")
        tr_err = abs(np.trace(m) - 1.0)
        if tr_err > TRACE_TOL:
            raise ContractViolationError(f"density matrix trace deviates from 1 by {tr_err:.2e}")
        min_eig = np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min()
        if min_eig < -positivity_tol:
            raise ContractViolationError(f"density matrix min eigenvalue {min_eig:.2e}")


def partial_trace(rho: DensityMatrix, keep: int) -> DensityMatrix:
    """Trace out one mode, keeping the other as a single-mode density matrix."""
    if keep not in (1, 2):
        raise InvalidDimensionError(f"keep must be 1 or 2, got {keep}")
    d1, d2 = rho.d1, rho.d2
    r4 = rho.matrix.reshape(d1, d2, d1, d2)
    if keep == 1:
        red = np.einsum("ikjk->ij", r4)
        dk = d1
    else:
        red = np.einsum("kikj->ij", r4)
        dk = d2
    return DensityMatrix(red, dk, 1)


def partial_transpose(rho: DensityMatrix, part: int = 1) -> np.ndarray:
    """Transpose the indices of one mode only; the result stays Hermitian."""
    if part not in (1, 2):
        raise InvalidDimensionError(f"part must be 1 or 2, got {part}")
    d1, d2 = rho.d1, rho.d2
    r4 = rho.matrix.reshape(d1, d2, d1, d2)
    if part == 1:
        out = r4.transpose(2, 1, 0, 3)
    else:
        out = r4.transpose(0, 3, 2, 1)
    return out.reshape(d1 * d2, d1 * d2)


def eigh_hermitian(op: np.ndarray, tol: float = 1e-8):
    """Eigendecomposition of a Hermitian matrix after symmetrization.

    Returns (eigenvalues ascending, eigenvector columns). Asymmetry beyond
    tol is treated as a caller bug, below it as numerical noise.
    """
    asym = np.abs(op - op.conj().T).max()
    if asym > tol:
        raise ContractViolationError(f"matrix is not Hermitian: max asymmetry {asym:.2e}")
    sym = 0.5 * (op + op.conj().T)
    vals, vecs = np.linalg.eigh(sym)
    return vals, vecs
