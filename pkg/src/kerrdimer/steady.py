"""Steady-state solvers: direct nullspace solve plus a long-time RK4 oracle."""

import time
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import DegenerateSteadyStateError, EvolutionConvergenceError
from .fock import DensityMatrix
from .liouvillian import trace_functional, unvectorize, vectorize

RESIDUAL_LIMIT = 1e-6
DENSE_CUTOFF = 1024  # superoperator dimension below which dense LU is used


@dataclass(frozen=True)
class SteadyStateSolution:
    rho: DensityMatrix
    residual: float
    method: str
    iterations_or_time: float


def _finalize(vec, liouv, d1, d2, method, effort):
    d = d1 * d2
    rho = unvectorize(vec, d)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    residual = float(np.linalg.norm(liouv @ vectorize(rho)))
    dm = DensityMatrix(rho, d1, d2)
    return SteadyStateSolution(rho=dm, residual=residual, method=method, iterations_or_time=effort)


def solve_nullspace(liouv, d1: int, d2: int) -> SteadyStateSolution:
    """Solve L rho = 0 with tr rho = 1 by trace-row replacement.

    The replaced row is the row of L with the smallest infinity norm, which
    perturbs conditioning the least; the reported residual is always taken
    against the unmodified generator.
    """
    t0 = time.perf_counter()
    d = d1 * d2
    n = d * d
    liouv = sp.csr_matrix(liouv)

    row_max = abs(liouv).max(axis=1)
    if sp.issparse(row_max):
        row_max = row_max.toarray()
    row_max = np.asarray(row_max).ravel()
    tr_row = int(np.argmin(row_max))

    rhs = np.zeros(n, dtype=complex)
    rhs[tr_row] = 1.0

    if n <= DENSE_CUTOFF:
        a = liouv.toarray()
        a[tr_row, :] = trace_functional(d)
        try:
            x = scipy.linalg.solve(a, rhs)
        except scipy.linalg.LinAlgError as exc:
            raise DegenerateSteadyStateError(
                f"singular trace-constrained system: {exc}", point=(d1, d2)
            ) from exc
    else:
        a = liouv.tolil(copy=True)
        a[tr_row, :] = trace_functional(d)
        lu = spla.splu(a.tocsc())
        x = lu.solve(rhs)

    sol = _finalize(x, liouv, d1, d2, "nullspace", time.perf_counter() - t0)
    if sol.residual > RESIDUAL_LIMIT:
        raise DegenerateSteadyStateError(
            f"steady-state residual {sol.residual:.2e} exceeds {RESIDUAL_LIMIT:.0e}; "
            "the steady state is likely degenerate (F = 0?)",
            residual=sol.residual,
            point=(d1, d2),
        )
    return sol


def solve_evolve(
    liouv,
    d1: int,
    d2: int,
    t_max: float = 200.0,
    dt: float = 0.01,
    initial: np.ndarray | None = None,
    target_residual: float = 1e-10,
) -> SteadyStateSolution:
    """Integrate dvec(rho)/dt = L vec(rho) with fixed-step classical RK4.

    Starts from the two-mode vacuum (uniqueness of the driven steady state
    makes the start point irrelevant). Every 100 steps the state is
    re-Hermitized and renormalized and the stationarity residual checked.
    """
    if dt > 0.05:
        raise ValueError(f"dt must be <= 0.05/kappa, got {dt}")
    if t_max < 50.0:
        raise ValueError(f"t_max must be >= 50/kappa, got {t_max}")
    d = d1 * d2
    liouv = sp.csr_matrix(liouv)
    if initial is None:
        rho0 = np.zeros((d, d), dtype=complex)
        rho0[0, 0] = 1.0
    else:
        rho0 = np.asarray(initial, dtype=complex)
    x = vectorize(rho0)

    n_steps = int(round(t_max / dt))
    t = 0.0
    for step in range(1, n_steps + 1):
        k1 = liouv @ x
        k2 = liouv @ (x + 0.5 * dt * k1)
        k3 = liouv @ (x + 0.5 * dt * k2)
        k4 = liouv @ (x + dt * k3)
        x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = step * dt
        if step % 100 == 0:
            rho = unvectorize(x, d)
            rho = 0.5 * (rho + rho.conj().T)
            rho = rho / np.trace(rho).real
            x = vectorize(rho)
            if np.linalg.norm(liouv @ x) < target_residual:
                break

    sol = _finalize(x, liouv, d1, d2, "evolve", t)
    if sol.residual > RESIDUAL_LIMIT:
        raise EvolutionConvergenceError(
            f"evolution residual {sol.residual:.2e} at t = {t:.1f} exceeds {RESIDUAL_LIMIT:.0e}",
            residual=sol.residual,
        )
    return sol
