"""Session-scoped fixtures shared by the unit and acceptance tests.

The long evolutions (driven Rabi trios, trapped spin-dipole runs, free
expansions) are computed once per session; fixtures that back a timed
acceptance criterion also report their wall-clock seconds.
"""

import math
import time

import numpy as np
import pytest

import socbec as sb
from socbec.dynamics import EvolutionConfig, evolve, schedule_from_params
from socbec.ground_state import gaussian_profile, minimize_hermite

T_SF = 50.0 * math.pi  # spin-flip time for omega_R = 0.02


@pytest.fixture(scope="session")
def grid512():
    return sb.make_grid(-16.0, 16.0, 512)


@pytest.fixture(scope="session")
def grid_wide():
    return sb.make_grid(-64.0, 64.0, 2048)


@pytest.fixture(scope="session")
def hermite_states(grid512):
    """Ground states on the standard trap grid, keyed by g1N."""
    out = {}
    for g1N in (0.0, 10.0, 20.0, 40.0, 60.0):
        out[g1N] = minimize_hermite(g1N, grid=grid512)
    return out


@pytest.fixture(scope="session")
def imag_time_states(grid512):
    """Imaginary-time oracle ground states at the same couplings."""
    from socbec.ground_state import imaginary_time_ground_state

    return {g1N: imaginary_time_ground_state(g1N, grid512)
            for g1N in (0.0, 10.0, 20.0, 40.0, 60.0)}


def _input_profile(g1N, grid, hermite_cache=None):
    if g1N == 0.0:
        return gaussian_profile(grid)
    if hermite_cache is not None and grid is hermite_cache[g1N][1].grid:
        return hermite_cache[g1N][1].psi0
    return minimize_hermite(g1N, grid=grid)[1].psi0


def _drive_run(g1N, alpha, d0, t_final, grid, init="plain", delta=0.1,
               hermite_cache=None):
    params = sb.ModelParams(g1N=g1N, alpha=alpha, delta=delta, d0=d0,
                            drive="resonant_sine", init_phase=init, trap_on=True)
    schedule = schedule_from_params(params)
    psi_in = _input_profile(g1N, grid, hermite_cache)
    state = sb.build_initial_state(psi_in, grid, init, alpha=alpha)
    config = EvolutionConfig(dt=1e-3, t_final=t_final, sample_stride=100)
    return evolve(state, params, schedule, config)


@pytest.fixture(scope="session")
def rabi_trio(grid512, hermite_states):
    """Resonantly driven runs (alpha=0.1, delta=0.1, d0=2) out to 2 T_sf."""
    start = time.perf_counter()
    runs = {g1N: _drive_run(g1N, 0.1, 2.0, 2.0 * T_SF, grid512,
                            hermite_cache=hermite_states)
            for g1N in (0.0, 10.0, 20.0)}
    return runs, time.perf_counter() - start


@pytest.fixture(scope="session")
def collapse_runs(grid512, hermite_states):
    """Driven runs at alpha=0.2, delta=0.1, d0=1, g1N=20: plain vs imprinted."""
    plain = _drive_run(20.0, 0.2, 1.0, T_SF, grid512, init="plain",
                       hermite_cache=hermite_states)
    imprinted = _drive_run(20.0, 0.2, 1.0, T_SF, grid512, init="imprinted",
                           hermite_cache=hermite_states)
    return plain, imprinted


@pytest.fixture(scope="session")
def trap_trio(grid512, hermite_states):
    """Static-trap spin-dipole runs (alpha=0.2, delta=0, d0=0)."""
    runs = {}
    for g1N in (10.0, 20.0, 60.0):
        params = sb.ModelParams(g1N=g1N, alpha=0.2, trap_on=True)
        schedule = schedule_from_params(params)
        state = sb.build_initial_state(hermite_states[g1N][1].psi0, grid512, "plain")
        config = EvolutionConfig(dt=1e-3, t_final=200.0, sample_stride=100)
        runs[g1N] = evolve(state, params, schedule, config)
    return runs


@pytest.fixture(scope="session")
def expand_trio(grid_wide):
    """Free expansions at alpha=0.2 for g1N in {0, 10, 20} out to t=10."""
    start = time.perf_counter()
    runs = {}
    for g1N in (0.0, 10.0, 20.0):
        params = sb.ModelParams(g1N=g1N, alpha=0.2, trap_on=False)
        schedule = schedule_from_params(params)
        psi_in = _input_profile(g1N, grid_wide)
        state = sb.build_initial_state(psi_in, grid_wide, "plain")
        dt = 5e-4 if g1N >= 20 else 1e-3
        config = EvolutionConfig(dt=dt, t_final=10.0,
                                 sample_stride=int(round(0.05 / dt)))
        runs[g1N] = evolve(state, params, schedule, config)
    return runs, time.perf_counter() - start


@pytest.fixture(scope="session")
def stationary_imprinted_run(grid512, hermite_states):
    """Phase-imprinted state left alone in the static trap (g1N=20, alpha=0.2)."""
    params = sb.ModelParams(g1N=20.0, alpha=0.2, trap_on=True,
                            init_phase="imprinted")
    schedule = schedule_from_params(params)
    state = sb.build_initial_state(hermite_states[20.0][1].psi0, grid512,
                                   "imprinted", alpha=0.2)
    config = EvolutionConfig(dt=1e-3, t_final=100.0, sample_stride=100)
    return evolve(state, params, schedule, config)


@pytest.fixture(scope="session")
def strang_order_data(grid512, hermite_states):
    """Global-error Richardson data for the split stepper on a trapped run."""
    from socbec.dynamics import SplitStepper

    params = sb.ModelParams(g1N=10.0, alpha=0.2, delta=0.1, trap_on=True)
    schedule = schedule_from_params(params)
    state0 = sb.build_initial_state(hermite_states[10.0][1].psi0, grid512, "plain")

    def run(dt, t_end=1.0):
        psi = state0.psi.copy()
        stepper = SplitStepper(grid512, params, schedule, dt, 1.0)
        for i in range(int(round(t_end / dt))):
            stepper.step(psi, i * dt)
        return psi

    ref = run(5e-5)
    dts = np.array([4e-3, 2e-3, 1e-3])
    errs = np.array([
        math.sqrt(float(np.sum(np.abs(run(dt) - ref) ** 2) * grid512.dx))
        for dt in dts])
    return dts, errs


@pytest.fixture(scope="session")
def cn_benchmark():
    """Split-step vs Crank-Nicolson on the shared driven benchmark.

    Box chosen at [-12, 12] x 512 so the second-order spatial dispersion of
    the finite-difference oracle stays inside the comparison budget; the
    n_points cap of the oracle forbids refining dx instead.
    """
    from socbec.dynamics import SplitStepper, crank_nicolson_step

    grid = sb.make_grid(-12.0, 12.0, 512)
    params = sb.ModelParams(g1N=10.0, alpha=0.1, delta=0.1, d0=2.0,
                            drive="resonant_sine", trap_on=True)
    schedule = schedule_from_params(params)
    _, gs = minimize_hermite(10.0, n_max=12, grid=grid, auto_expand=False)
    state0 = sb.build_initial_state(gs.psi0, grid, "plain")
    dt, t_end = 5e-4, 20.0
    n_steps = int(round(t_end / dt))

    psi = state0.psi.copy()
    stepper = SplitStepper(grid, params, schedule, dt, 1.0)
    for i in range(n_steps):
        stepper.step(psi, i * dt)

    state_cn = state0
    for i in range(n_steps):
        state_cn = crank_nicolson_step(state_cn, i * dt, dt, params, schedule)

    l2 = math.sqrt(float(np.sum(np.abs(psi - state_cn.psi) ** 2) * grid.dx))
    return {"l2": l2, "cn_norm": state_cn.norm(),
            "ss_norm": sb.SpinorField(grid, psi).norm()}
