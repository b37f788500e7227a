import numpy as np
import pytest

from skyrmion_chaos import EvolutionConfig, Grid, Model, ModelParams, evolve, solve_static
from skyrmion_chaos.dynamics import static_spec_for

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def params():
    return ModelParams()


@pytest.fixture(scope="session")
def grid():
    return Grid()


@pytest.fixture(scope="session")
def base_profiles(params, grid):
    return {m: solve_static(static_spec_for(m), grid, params) for m in Model}


@pytest.fixture(scope="session")
def trajectories(params, base_profiles):
    """Default-parameter runs shared by the slow and acceptance tests, keyed (model, dt)."""
    cache = {}

    def get(model, dt=1e-3, t_end=None):
        model = Model(model)
        t_end = {Model.QUARTIC: 500.0, Model.SIXTH: 300.0}[model] if t_end is None else t_end
        key = (model, dt, t_end)
        if key not in cache:
            cfg = EvolutionConfig(base_profiles[model], model, dt=dt, t_end=t_end)
            cache[key] = evolve(cfg, params)
        return cache[key]

    return get


@pytest.fixture
def report():
    def _report(name, ok, detail=""):
        _ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
