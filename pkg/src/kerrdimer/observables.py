"""Scalar measures evaluated on a steady-state density matrix.

Covers second-order coherence g2(0), the optimal spin-squeezing witness,
I-concurrence, the two-mode entanglement parameters, von Neumann entropy of
a reduced mode, logarithmic negativity, impurity, and mode occupations.
"""

from dataclasses import dataclass, field

import numpy as np

from . import fock, model

ENTROPY_EIG_FLOOR = 1e-12
G2_OCCUPATION_FLOOR = 1e-12
G2_DUAL_FORM_TOL = 1e-9


def _expect(op: np.ndarray, rho: np.ndarray) -> float | complex:
    return np.trace(op @ rho)


def g2_zero(rho: fock.DensityMatrix, mode: int = 1) -> float | None:
    """Zero-delay second-order coherence of one cavity mode.

    Computed as tr(b†b†bb rho)/tr(b†b rho)² and cross-checked against the
    equivalent number-fluctuation form 1 + (<Δn²> - <n>)/<n>². Returns None
    when the mode occupation is numerically zero (undriven cavity).
    """
    d = rho.d1
    b1, b2 = model.mode_operators(d)
    b = b1 if mode == 1 else b2
    bd = b.conj().T
    m = rho.matrix
    n_mean = _expect(bd @ b, m).real
    if n_mean < G2_OCCUPATION_FLOOR:
        return None
    numer = _expect(bd @ bd @ b @ b, m).real
    g2 = numer / n_mean**2
    n2_mean = _expect(bd @ b @ bd @ b, m).real
    g2_alt = 1.0 + (n2_mean - n_mean**2 - n_mean) / n_mean**2
    if abs(g2 - g2_alt) > G2_DUAL_FORM_TOL * max(1.0, abs(g2)):
        raise AssertionError(
            f"g2 dual-form mismatch: {g2!r} vs {g2_alt!r} at occupation {n_mean:.3e}"
        )
    return g2


def spin_squeezing_witness(rho: fock.DensityMatrix, spins: model.SpinOperators) -> float:
    """Optimal spin-squeezing witness with axes (x, z, y).

    zeta = <Jx²> + <Jz²> - N/2 - (N-1) Var(Jy) with N = <n1 + n2> taken on
    the same state; positive values certify squeezing and multi-particle
    entanglement.
    """
    m = rho.matrix
    jx2 = _expect(spins.jx @ spins.jx, m).real
    jz2 = _expect(spins.jz @ spins.jz, m).real
    jy_mean = _expect(spins.jy, m).real
    jy2 = _expect(spins.jy @ spins.jy, m).real
    var_jy = jy2 - jy_mean**2
    n_mean = _expect(spins.n_total, m).real
    return jx2 + jz2 - 0.5 * n_mean - (n_mean - 1.0) * var_jy


def i_concurrence(rho: fock.DensityMatrix, subsystem: int = 1) -> float:
    """sqrt(2(1 - tr rho_i²)) of the reduced mode; zero iff the reduction is pure."""
    red = fock.partial_trace(rho, subsystem).matrix
    radicand = 2.0 * (1.0 - np.trace(red @ red).real)
    return float(np.sqrt(max(radicand, 0.0)))


def mode_entanglement(rho: fock.DensityMatrix) -> tuple[float, float]:
    """Two-mode entanglement parameters (lambda1, lambda2).

    lambda1 = |<b1†b2>|² - <n1 n2>, lambda2 = |<b1 b2>|² - <n1><n2>.
    Positivity of either is a sufficient (not necessary) witness; raw
    signed values are returned.
    """
    d = rho.d1
    b1, b2 = model.mode_operators(d)
    m = rho.matrix
    n1 = b1.conj().T @ b1
    n2 = b2.conj().T @ b2
    lam1 = abs(_expect(b1.conj().T @ b2, m)) ** 2 - _expect(n1 @ n2, m).real
    lam2 = abs(_expect(b1 @ b2, m)) ** 2 - _expect(n1, m).real * _expect(n2, m).real
    return float(lam1), float(lam2)


def von_neumann_entropy(rho: fock.DensityMatrix, subsystem: int = 1) -> float:
    """-sum p ln p over the reduced-mode spectrum, natural log, tiny p clipped."""
    red = fock.partial_trace(rho, subsystem).matrix
    vals, _ = fock.eigh_hermitian(red)
    vals = vals[vals > ENTROPY_EIG_FLOOR]
    return float(-(vals * np.log(vals)).sum())


def log_negativity(rho: fock.DensityMatrix) -> float:
    """log2 of the trace norm of the partial transpose, clamped at zero."""
    pt = fock.partial_transpose(rho, 1)
    vals, _ = fock.eigh_hermitian(pt)
    trace_norm = np.abs(vals).sum()
    return float(max(np.log2(trace_norm), 0.0))


def impurity(rho: fock.DensityMatrix) -> float:
    """1 - tr(rho²), zero for pure states."""
    m = rho.matrix
    val = 1.0 - np.trace(m @ m).real
    return float(min(max(val, 0.0), 1.0))


def occupations(rho: fock.DensityMatrix) -> tuple[float, float]:
    d = rho.d1
    b1, b2 = model.mode_operators(d)
    m = rho.matrix
    n1 = _expect(b1.conj().T @ b1, m).real
    n2 = _expect(b2.conj().T @ b2, m).real
    return float(n1), float(n2)


@dataclass(frozen=True)
class ObservableRecord:
    """All scalar measures at one grid point, with solver provenance."""

    j_over_kappa: float
    u_over_kappa: float
    g2: float | None
    zeta: float
    c_i: float
    lambda1: float
    lambda2: float
    entropy: float
    log_negativity: float
    impurity: float
    n1: float
    n2: float
    n_total: float
    residual: float
    meta: dict = field(default_factory=dict)


def evaluate(rho: fock.DensityMatrix, spins: model.SpinOperators, *,
             j_over_kappa: float = 0.0, u_over_kappa: float = 0.0,
             residual: float = 0.0, meta: dict | None = None) -> ObservableRecord:
    """Compute every measure on one steady state."""
    n1, n2 = occupations(rho)
    lam1, lam2 = mode_entanglement(rho)
    return ObservableRecord(
        j_over_kappa=j_over_kappa,
        u_over_kappa=u_over_kappa,
        g2=g2_zero(rho, 1),
        zeta=spin_squeezing_witness(rho, spins),
        c_i=i_concurrence(rho, 1),
        lambda1=lam1,
        lambda2=lam2,
        entropy=von_neumann_entropy(rho, 1),
        log_negativity=log_negativity(rho),
        impurity=impurity(rho),
        n1=n1,
        n2=n2,
        n_total=n1 + n2,
        residual=residual,
        meta=meta or {},
    )
