import pytest

from kerrdimer import sweep


@pytest.fixture(scope="session")
def grid_results():
    """Lazily computed full-grid sweep results, keyed by (model, drive, dim).

    The 21x21 grids are shared across acceptance criteria so each sweep runs
    once per session.
    """
    cache = {}

    def get(model, f_over_kappa, dim=4):
        key = (model, f_over_kappa, dim)
        if key not in cache:
            cfg = sweep.SweepConfig(
                model=model, f_over_kappa=f_over_kappa, dim=dim, parallelism=1
            )
            cache[key] = sweep.run_sweep(cfg)
        return cache[key]

    return get
