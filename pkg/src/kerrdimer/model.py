"""Hamiltonians and pseudo-spin operators for the two-cavity Kerr dimer.

All energies are in units of the cavity loss rate kappa (kappa = 1
internally); the MHz value of kappa is carried only as output metadata.
Working in the frame rotating at the drive frequency removes the bare
cavity-frequency terms, so the Hamiltonian has only Kerr, drive, and
exchange parts.
"""

from dataclasses import dataclass, field

import numpy as np

from . import fock
from .errors import InvalidDimensionError

SINGLE = "single"
TWO = "two"


@dataclass(frozen=True)
class ModelParams:
    """Physical configuration of one parameter point.

    exchange selects single-photon hopping J(b1†b2 + h.c.) or two-photon
    hopping J(b1†²b2² + h.c.). Rates are ratios to kappa. dim is the
    per-cavity Fock dimension (occupations 0..dim-1).
    """

    exchange: str = SINGLE
    u_over_kappa: float = 0.0
    j_over_kappa: float = 0.0
    f_over_kappa: float = 0.0
    dim: int = 4
    kappa_mhz_over_2pi: float = 0.4

    def __post_init__(self):
        if self.exchange not in (SINGLE, TWO):
            raise ValueError(f"exchange must be '{SINGLE}' or '{TWO}', got {self.exchange!r}")
        if self.dim < 2:
            raise InvalidDimensionError(f"per-cavity dim must be >= 2, got {self.dim}")
        for name in ("u_over_kappa", "j_over_kappa", "f_over_kappa"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {v}")
        if self.kappa_mhz_over_2pi <= 0:
            raise ValueError("kappa_mhz_over_2pi must be positive")


@dataclass(frozen=True)
class SpinOperators:
    """Two-mode Schwinger pseudo-spin operators plus the total photon number."""

    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    n_total: np.ndarray
    dim: int = field(default=4)


def mode_operators(dim: int):
    """Return (b1, b2) lifted to the bipartite space."""
    a = fock.annihilation(dim)
    b1 = fock.lift(a, 1, dim, dim)
    b2 = fock.lift(a, 2, dim, dim)
    return b1, b2


def build_hamiltonian(p: ModelParams) -> np.ndarray:
    """Assemble the rotating-frame Hamiltonian for one parameter point.

    Local part per cavity: U b†b†bb + F(b† + b) with real drive F.
    Exchange part: J(b1†b2 + h.c.) or J(b1†²b2² + h.c.).
    """
    b1, b2 = mode_operators(p.dim)
    u, j, f = p.u_over_kappa, p.j_over_kappa, p.f_over_kappa
    h = np.zeros((p.dim * p.dim,) * 2, dtype=complex)
    for b in (b1, b2):
        bd = b.conj().T
        h += u * (bd @ bd @ b @ b)
        h += f * (bd + b)
    if p.exchange == SINGLE:
        h += j * (b1.conj().T @ b2 + b2.conj().T @ b1)
    else:
        hop2 = b1.conj().T @ b1.conj().T @ b2 @ b2
        h += j * (hop2 + hop2.conj().T)
    return h


def build_spin_operators(dim: int) -> SpinOperators:
    """Schwinger representation: Jx, Jy, Jz from the two mode operators."""
    b1, b2 = mode_operators(dim)
    cross = b1.conj().T @ b2
    jx = 0.5 * (cross + cross.conj().T)
    jy = -0.5j * (cross - cross.conj().T)
    n1 = b1.conj().T @ b1
    n2 = b2.conj().T @ b2
    jz = 0.5 * (n1 - n2)
    return SpinOperators(jx=jx, jy=jy, jz=jz, n_total=n1 + n2, dim=dim)


def swap_permutation(dim: int) -> np.ndarray:
    """Permutation matrix exchanging the two modes, |i,j> -> |j,i>."""
    d2 = dim * dim
    perm = np.zeros((d2, d2), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            perm[j * dim + i, i * dim + j] = 1.0
    return perm
