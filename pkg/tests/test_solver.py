import math
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import solve_banded

from ksteady.constraints import BoundaryData
from ksteady.grid import Grid1D
from ksteady.model import Family, ModelParams, steady_jet
from ksteady.presets import ANALYTIC, PRESETS
from ksteady.solver import (DivergenceError, IncompatibleInitialData, InitialProfile, Reference, SimConfig,
                            SimState, build_initial, discrete_residual, discrete_steady_state,
                            run, steady_error, step)

SMALL = Grid1D(49, 1e-3)


def _config(name, **kw):
    return PRESETS[name].config(**kw)


def _blowup_config():
    # steep Burgers-type v with tiny cell diffusion: central transport cannot cope
    x = SMALL.x
    u = np.full(x.size, 1.0)
    u[-1] = 2.0
    v = 100.0 * np.sin(np.pi * x)
    v[0] = v[-1] = 0.0
    return SimConfig(ModelParams(0.01, 1.0, 0.5, 1.0), BoundaryData(1.0, 2.0, 0.0, 0.0),
                     InitialProfile.custom(u, v), SMALL, 1.0)


# ---------------------------------------------------------------- initial data

def test_linear_initial_profile():
    s = build_initial(_config("power", grid=SMALL))
    bd = PRESETS["power"].boundary
    np.testing.assert_allclose(s.u, bd.alpha1 + (bd.alpha2 - bd.alpha1) * SMALL.x, rtol=1e-15)
    assert (s.u[0], s.u[-1], s.v[0], s.v[-1]) == (bd.alpha1, bd.alpha2, bd.beta1, bd.beta2)
    assert s.t == 0.0


def test_sine_initial_profile():
    s = build_initial(_config("undiscovered", grid=SMALL))
    assert s.u[0] == 4.0 and s.u[-1] == 21.0
    mid = SMALL.n // 2 + 1
    assert s.u[mid] == pytest.approx(4 + 17 * math.sin(math.pi * SMALL.x[mid] / 2), rel=1e-14)


def test_explicit_initial_profile(states):
    ss = states[Family.CSC_COT]
    s = build_initial(_config("csc", grid=SMALL, initial=InitialProfile.explicit(ss)))
    j = steady_jet(ss, SMALL.x)
    np.testing.assert_allclose(s.u, j.u, rtol=1e-12)
    np.testing.assert_allclose(s.v, j.v, rtol=1e-12)


def test_incompatible_initial_data(states):
    # the sec steady state does not meet the power boundary data
    cfg = _config("power", grid=SMALL, initial=InitialProfile.explicit(states[Family.SEC_TAN]))
    with pytest.raises(IncompatibleInitialData):
        build_initial(cfg)
    wrong_size = InitialProfile.custom([1.0] * 7, [0.0] * 7)
    with pytest.raises(IncompatibleInitialData):
        build_initial(_config("power", grid=SMALL, initial=wrong_size))


def test_config_rejects_bad_values():
    with pytest.raises(ValueError):
        _config("power", t_end=-1.0)
    with pytest.raises(ValueError):
        _config("power", snapshot_every=0)


# ---------------------------------------------------------------- one step

def test_constant_state_is_fixed():
    # BoundaryData insists on alpha1 != alpha2, so equal end values go in a plain namespace
    g = SMALL
    ends = SimpleNamespace(alpha1=3.0, alpha2=3.0, beta1=0.0, beta2=0.0)
    cfg = SimConfig(ModelParams(2.0, 1.0, 0.5, 1.0), ends, InitialProfile.linear(), g, 0.0)
    nxt = step(SimState(0.0, np.full(g.x.size, 3.0), np.zeros(g.x.size), g), cfg)
    assert np.max(np.abs(nxt.u - 3.0)) < 1e-14
    assert np.max(np.abs(nxt.v)) < 1e-14


@pytest.mark.parametrize("name", ANALYTIC)
def test_explicit_steady_one_step_change(states, name):
    ss = PRESETS[name].steady_state()
    cfg = _config(name, initial=InitialProfile.explicit(ss))
    s0 = build_initial(cfg)
    s1 = step(s0, cfg)
    change = max(np.max(np.abs(s1.u - s0.u)), np.max(np.abs(s1.v - s0.v)))
    limit = 1e-5 if name != "sec" else 1e-4
    assert change < limit
    assert s1.t == pytest.approx(1e-3)


def test_power_one_step_change_small():
    ss = PRESETS["power"].steady_state()
    cfg = _config("power", initial=InitialProfile.explicit(ss))
    s0 = build_initial(cfg)
    s1 = step(s0, cfg)
    assert max(np.max(np.abs(s1.u - s0.u)), np.max(np.abs(s1.v - s0.v))) < 1e-5


def test_undiscovered_one_step_keeps_boundary():
    cfg = _config("undiscovered")
    s1 = step(build_initial(cfg), cfg)
    assert np.all(np.isfinite(s1.u)) and np.all(np.isfinite(s1.v))
    assert (s1.u[0], s1.u[-1], s1.v[0], s1.v[-1]) == (4.0, 21.0, -0.7, 0.7)


def _dense_step(state, cfg):
    """Reference step assembling full matrices and calling numpy's dense solver."""
    p, g = cfg.params, cfg.grid
    n, h, dt = g.n, g.dx, g.dt
    u, v = state.u, state.v
    bd = cfg.boundary

    def implicit(coef, left, right, explicit_rhs):
        r = coef * dt / h**2
        a = np.eye(n) * (1 + 2 * r) - r * np.eye(n, k=1) - r * np.eye(n, k=-1)
        rhs = explicit_rhs.copy()
        rhs[0] += r * left
        rhs[-1] += r * right
        return np.linalg.solve(a, rhs)

    ru = np.array([u[i] - dt * p.chi * (u[i + 1] * v[i + 1] - u[i - 1] * v[i - 1]) / (2 * h)
                   for i in range(1, n + 1)])
    rv = np.array([v[i] + dt * (p.eps * (v[i + 1] ** 2 - v[i - 1] ** 2) - p.mu * (u[i + 1] - u[i - 1])) / (2 * h)
                   for i in range(1, n + 1)])
    un = np.concatenate([[bd.alpha1], implicit(p.d, bd.alpha1, bd.alpha2, ru), [bd.alpha2]])
    vn = np.concatenate([[bd.beta1], implicit(p.eps, bd.beta1, bd.beta2, rv), [bd.beta2]])
    return un, vn


@pytest.mark.parametrize("name", list(PRESETS))
def test_step_matches_dense_oracle(name):
    cfg = _config(name, grid=SMALL)
    s = build_initial(cfg)
    for _ in range(3):
        got = step(s, cfg)
        want_u, want_v = _dense_step(s, cfg)
        np.testing.assert_allclose(got.u, want_u, rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(got.v, want_v, rtol=1e-12, atol=1e-12)
        s = got


# ---------------------------------------------------------------- run

def test_run_is_deterministic():
    cfg = _config("csch", grid=SMALL, t_end=0.2)
    a, sa, _ = run(cfg)
    b, sb, _ = run(cfg)
    assert np.array_equal(a.u, b.u) and np.array_equal(a.v, b.v)
    assert np.array_equal(sa.energy, sb.energy)


def test_run_zero_time():
    cfg = _config("power", grid=SMALL, t_end=0.0)
    final, series, snaps = run(cfg)
    init = build_initial(cfg)
    assert final.t == 0.0
    assert np.array_equal(final.u, init.u) and np.array_equal(final.v, init.v)
    assert list(series.times) == [0.0]
    assert len(snaps) == 1


def test_run_sampling():
    cfg = _config("power", grid=SMALL, t_end=0.1, snapshot_every=10)
    final, series, snaps = run(cfg)
    assert final.t == pytest.approx(0.1)
    np.testing.assert_allclose(series.times, np.linspace(0, 0.1, 11), atol=1e-12)
    assert len(snaps) == len(series)
    # sample at t = 0 has energy against the steady state of the linear initial data
    assert series.energy[0] > 0 and series.err_u_l2[0] > 0


def test_run_without_reference_leaves_energy_blank():
    _, series, _ = run(_config("undiscovered", grid=SMALL, t_end=0.05))
    assert series.energy is None and series.err_u_l2 is None
    assert np.all(series.deriv_norm > 0)


def test_divergence_detected():
    with pytest.raises(DivergenceError) as info:
        run(_blowup_config())
    assert 0 < info.value.t < 1.0


def test_steady_error_examples(states):
    ss = states[Family.POWER]
    cfg = _config("power", grid=SMALL, initial=InitialProfile.explicit(ss))
    s = build_initial(cfg)
    assert max(steady_error(s, ss)) < 1e-14
    j = steady_jet(ss, SMALL.x)
    shifted = SimState(0.0, j.u + 0.5, j.v, SMALL)
    eu, ev, eu2, ev2 = steady_error(shifted, ss)
    assert eu == pytest.approx(0.5, rel=1e-14) and ev == 0.0
    assert eu2 == pytest.approx(0.5 * math.sqrt(SMALL.n * SMALL.dx), rel=1e-14)


# ---------------------------------------------------------------- truncation and stability

def _truncation_level(ss, cfg):
    """Size of the steady error implied by the local defect of the explicit profile.

    The interior defect of u_bar, v_bar in the steady finite-difference equations
    is pushed back through the inverse diffusion operators.
    """
    g, p = cfg.grid, cfg.params
    j = steady_jet(ss, g.x)
    tu, tv = discrete_residual(j.u, j.v, p, g)

    def inverse(coef, rhs):
        ab = np.zeros((3, g.n))
        ab[0, 1:] = ab[2, :-1] = coef / g.dx**2
        ab[1] = -2 * coef / g.dx**2
        return solve_banded((1, 1), ab, rhs)

    return max(np.max(np.abs(inverse(p.d, tu))), np.max(np.abs(inverse(p.eps, tv))))


@pytest.mark.parametrize("name", ANALYTIC)
def test_explicit_start_stays_near_truncation_level(name):
    ss = PRESETS[name].steady_state()
    cfg = _config(name, initial=InitialProfile.explicit(ss), snapshot_every=5)
    level = _truncation_level(ss, cfg)
    _, _, snaps = run(cfg)
    worst = max(max(steady_error(s, ss)[:2]) for s in snaps)
    assert worst <= 10 * level
    assert 0 < level < 1e-4


@pytest.mark.parametrize("name", ANALYTIC)
def test_discrete_steady_state_is_fixed_point(name):
    ss = PRESETS[name].steady_state()
    cfg = _config(name, grid=SMALL)
    j = steady_jet(ss, SMALL.x)
    u, v = discrete_steady_state(cfg.params, cfg.boundary, SMALL, (j.u, j.v))
    ru, rv = discrete_residual(u, v, cfg.params, SMALL)
    assert np.max(np.abs(ru)) < 1e-6 and np.max(np.abs(rv)) < 1e-6
    nxt = step(SimState(0.0, u, v, SMALL), cfg)
    assert np.max(np.abs(nxt.u - u)) < 1e-12 * np.max(np.abs(u))
    # second order: O(dx^2) distance to the explicit profile
    assert np.max(np.abs(u - j.u)) < 10 * SMALL.dx**2 * np.max(np.abs(j.u))


def test_newton_failure_reported():
    cfg = _config("power", grid=SMALL)
    j = steady_jet(PRESETS["power"].steady_state(), SMALL.x)
    with pytest.raises(ArithmeticError):
        discrete_steady_state(cfg.params, cfg.boundary, SMALL, (j.u, j.v), tol=0.0, max_iter=2)


def _discrete_reference(ss, cfg):
    j = steady_jet(ss, cfg.grid.x)
    u, v = discrete_steady_state(cfg.params, cfg.boundary, cfg.grid, (j.u, j.v))
    return Reference(u, v, ss.params.chi * j.u)


@settings(max_examples=20, deadline=None)
@given(st.floats(-0.05, 0.05), st.floats(-0.05, 0.05))
def test_perturbed_steady_run_stays_bounded(du, dv):
    """Small interior bumps on the power steady state decay in energy over a short run."""
    ss = PRESETS["power"].steady_state()
    g = SMALL
    j = steady_jet(ss, g.x)
    bump = np.sin(np.pi * g.x)
    cfg = _config("power", grid=g, t_end=0.2, snapshot_every=20,
                  initial=InitialProfile.custom(j.u + du * bump, j.v + dv * bump))
    _, series, _ = run(cfg, reference=_discrete_reference(ss, cfg))
    assert series.energy[-1] <= series.energy[0] + 1e-9
