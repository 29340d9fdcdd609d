"""Grid sweep driver and CSV/JSON emission.

Each (J/kappa, U/kappa) grid point is an independent solve; results are
collected into a buffer indexed by grid position so the parallel schedule
cannot change the output. Output ordering is row-major with J outer and U
inner.
"""

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from datetime import datetime, timezone

import numpy as np

from . import liouvillian, model, observables, steady
from .errors import SweepConfigError

CSV_COLUMNS = [
    "j_over_kappa", "u_over_kappa", "g2", "zeta", "c_i", "lambda1", "lambda2",
    "entropy", "log_negativity", "impurity", "n1", "n2", "n_total", "residual",
]

SUMMARY_FIELDS = [
    "g2", "zeta", "c_i", "lambda1", "lambda2", "entropy", "log_negativity",
    "impurity", "n1", "n2", "n_total", "residual",
]


@dataclass(frozen=True)
class GridSpec:
    min: float = 0.1
    max: float = 10.0
    steps: int = 21
    spacing: str = "log"

    def __post_init__(self):
        if self.steps < 1:
            raise SweepConfigError(f"grid needs at least one step, got {self.steps}")
        if self.spacing not in ("log", "linear"):
            raise SweepConfigError(f"spacing must be log or linear, got {self.spacing!r}")
        if self.min > self.max:
            raise SweepConfigError(f"grid min {self.min} exceeds max {self.max}")
        if self.spacing == "log" and self.min <= 0:
            raise SweepConfigError("log spacing requires min > 0")

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.min])
        if self.spacing == "log":
            return np.geomspace(self.min, self.max, self.steps)
        return np.linspace(self.min, self.max, self.steps)


@dataclass(frozen=True)
class SweepConfig:
    model: str = model.SINGLE
    f_over_kappa: float = 0.1
    j_grid: GridSpec = field(default_factory=GridSpec)
    u_grid: GridSpec = field(default_factory=GridSpec)
    dim: int = 4
    solver: str = "nullspace"
    convergence_check: bool = False
    output: str = "sweep.csv"
    format: str = "csv"
    parallelism: int = 0  # 0 means auto (cpu count)

    def __post_init__(self):
        if self.model not in (model.SINGLE, model.TWO):
            raise SweepConfigError(f"model must be single or two, got {self.model!r}")
        if self.solver not in ("nullspace", "evolve", "both"):
            raise SweepConfigError(f"solver must be nullspace, evolve or both, got {self.solver!r}")
        if self.format not in ("csv", "json"):
            raise SweepConfigError(f"format must be csv or json, got {self.format!r}")
        if self.dim < 2:
            raise SweepConfigError(f"dim must be >= 2, got {self.dim}")
        if self.f_over_kappa < 0 or not math.isfinite(self.f_over_kappa):
            raise SweepConfigError(f"drive must be finite and >= 0, got {self.f_over_kappa}")
        if self.parallelism < 0:
            raise SweepConfigError(f"parallelism must be >= 0, got {self.parallelism}")

    def workers(self) -> int:
        return self.parallelism if self.parallelism > 0 else (os.cpu_count() or 1)


@dataclass
class SweepFailure:
    j_over_kappa: float
    u_over_kappa: float
    error: str


@dataclass
class SweepResult:
    config: SweepConfig
    points: list  # ObservableRecord, row-major (J outer, U inner), failures omitted
    failures: list

    def summary(self) -> dict:
        out = {}
        for name in SUMMARY_FIELDS:
            vals = [getattr(p, name) for p in self.points if getattr(p, name) is not None]
            out[name] = {"min": min(vals), "max": max(vals)} if vals else {"min": None, "max": None}
        return out


def solve_point(exchange: str, j: float, u: float, f: float, dim: int,
                solver: str) -> observables.ObservableRecord:
    """Build, solve, and measure one grid point (kappa = 1 units)."""
    params = model.ModelParams(
        exchange=exchange, u_over_kappa=u, j_over_kappa=j, f_over_kappa=f, dim=dim
    )
    liouv = liouvillian.build_for_params(params)
    if solver == "nullspace":
        sol = steady.solve_nullspace(liouv, dim, dim)
    elif solver == "evolve":
        sol = steady.solve_evolve(liouv, dim, dim)
    else:  # both: solve twice, report the direct solution, record the gap
        sol = steady.solve_nullspace(liouv, dim, dim)
        alt = steady.solve_evolve(liouv, dim, dim)
        gap = trace_distance(sol.rho.matrix, alt.rho.matrix)
        sol = steady.SteadyStateSolution(
            rho=sol.rho, residual=sol.residual, method="both",
            iterations_or_time=sol.iterations_or_time,
        )
        meta_extra = {"cross_method_trace_distance": gap}
        spins = model.build_spin_operators(dim)
        return observables.evaluate(
            sol.rho, spins, j_over_kappa=j, u_over_kappa=u, residual=sol.residual,
            meta={"solver": sol.method, "dim": dim, **meta_extra},
        )
    spins = model.build_spin_operators(dim)
    return observables.evaluate(
        sol.rho, spins, j_over_kappa=j, u_over_kappa=u, residual=sol.residual,
        meta={"solver": sol.method, "dim": dim},
    )


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    vals = np.linalg.eigvalsh(a - b)
    return float(0.5 * np.abs(vals).sum())


def _worker(args):
    idx, exchange, j, u, f, dim, solver = args
    try:
        rec = solve_point(exchange, j, u, f, dim, solver)
        return idx, rec, None
    except Exception as exc:  # collected, never silently dropped
        return idx, None, f"{type(exc).__name__}: {exc}"


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """Solve every grid point and collect observables in deterministic order."""
    j_vals = cfg.j_grid.values()
    u_vals = cfg.u_grid.values()
    tasks = []
    idx = 0
    for j in j_vals:
        for u in u_vals:
            tasks.append((idx, cfg.model, float(j), float(u), cfg.f_over_kappa, cfg.dim, cfg.solver))
            idx += 1

    slots = [None] * len(tasks)
    workers = cfg.workers()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for i, rec, err in pool.map(_worker, tasks, chunksize=8):
                slots[i] = (rec, err)
    else:
        for task in tasks:
            i, rec, err = _worker(task)
            slots[i] = (rec, err)

    points, failures = [], []
    for task, (rec, err) in zip(tasks, slots):
        if err is None:
            points.append(rec)
        else:
            failures.append(SweepFailure(j_over_kappa=task[2], u_over_kappa=task[3], error=err))
    return SweepResult(config=cfg, points=points, failures=failures)


def _fmt(x) -> str:
    if x is None:
        return ""
    return f"{x:.9g}"


def emit_csv(result: SweepResult, path: str) -> None:
    lines = [",".join(CSV_COLUMNS)]
    for p in result.points:
        lines.append(",".join(_fmt(getattr(p, c)) for c in CSV_COLUMNS))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _round9(x):
    if x is None:
        return None
    return float(f"{x:.9g}")


def emit_json(result: SweepResult, path: str) -> None:
    cfg = asdict(result.config)
    doc = {
        "config": cfg,
        "metadata": {
            "generated_at": datetime.now(timezone.utc).isoformat(),
            "kappa_mhz_over_2pi": model.ModelParams().kappa_mhz_over_2pi,
            "spin_witness_total_number": "steady-state expectation of n1+n2, "
                                         "used in both the N/2 and (N-1) terms",
        },
        "points": [
            {c: _round9(getattr(p, c)) for c in CSV_COLUMNS} for p in result.points
        ],
        "summary": {
            k: {kk: _round9(vv) for kk, vv in v.items()}
            for k, v in result.summary().items()
        },
        "failures": [asdict(f) for f in result.failures],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def emit(result: SweepResult, fmt: str, path: str) -> None:
    if fmt == "csv":
        emit_csv(result, path)
    elif fmt == "json":
        emit_json(result, path)
    else:
        raise SweepConfigError(f"unknown format {fmt!r}")


def convergence_report(cfg: SweepConfig, base: SweepResult, check_dim: int = 8) -> dict:
    """Re-run the sweep at a larger Fock dimension and report per-observable
    worst-case deviations (relative above 1e-3, absolute below)."""
    hi_cfg = SweepConfig(
        model=cfg.model, f_over_kappa=cfg.f_over_kappa, j_grid=cfg.j_grid,
        u_grid=cfg.u_grid, dim=check_dim, solver=cfg.solver,
        convergence_check=False, output=cfg.output, format=cfg.format,
        parallelism=cfg.parallelism,
    )
    hi = run_sweep(hi_cfg)
    report = {"dim_low": cfg.dim, "dim_high": check_dim, "observables": {}}
    for name in SUMMARY_FIELDS:
        worst_rel = 0.0  # where the value is above 1e-3 in magnitude
        worst_abs = 0.0  # where it is below
        for lo_p, hi_p in zip(base.points, hi.points):
            a, b = getattr(lo_p, name), getattr(hi_p, name)
            if a is None or b is None:
                continue
            diff = abs(a - b)
            scale = max(abs(a), abs(b))
            if scale > 1e-3:
                worst_rel = max(worst_rel, diff / scale)
            else:
                worst_abs = max(worst_abs, diff)
        report["observables"][name] = {
            "max_relative": worst_rel, "max_absolute_small": worst_abs,
        }
    return report
