"""Semi-implicit finite differences for the transformed chemotaxis IBVP.

Each step treats d u_xx and eps v_xx with backward Euler and the transport
and coupling terms -chi (u v)_x, eps (v^2)_x, -mu u_x explicitly with
second-order central differences. Both diffusion solves are tridiagonal.
Boundary nodes carry the Dirichlet data and are never updated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.sparse as sp
from scipy.linalg import solve_banded
from scipy.sparse.linalg import spsolve

from .constraints import BoundaryData
from .diagnostics import DiagnosticsSeries, energy_weight, h1_seminorm, perturbation_energy
from .grid import Grid1D
from .model import ModelParams, SteadyState, steady_jet

BLOWUP = 1e12
COMPAT_TOL = 1e-12


class DivergenceError(RuntimeError):
    def __init__(self, t: float, msg: str = ""):
        super().__init__(msg or f"solution diverged at t={t:.6g}")
        self.t = t


class IncompatibleInitialData(ValueError):
    pass


class InitialKind(str, Enum):
    LINEAR = "linear"
    SINE = "sine"
    STEADY = "steady"
    CUSTOM = "custom"


@dataclass(frozen=True)
class InitialProfile:
    """How the t = 0 fields are filled.

    linear: u0 = a1 + (a2 - a1) x, v0 = b1 + (b2 - b1) x
    sine:   u0 = a1 + (a2 - a1) sin(pi x / 2), likewise for v0
    steady: sample the explicit steady state ``steady``
    custom: node values ``u``, ``v`` given directly
    """

    kind: InitialKind
    steady: SteadyState | None = None
    u: tuple[float, ...] | None = None
    v: tuple[float, ...] | None = None

    @classmethod
    def linear(cls):
        return cls(InitialKind.LINEAR)

    @classmethod
    def sine(cls):
        return cls(InitialKind.SINE)

    @classmethod
    def explicit(cls, ss: SteadyState):
        return cls(InitialKind.STEADY, steady=ss)

    @classmethod
    def custom(cls, u, v):
        return cls(InitialKind.CUSTOM, u=tuple(map(float, u)), v=tuple(map(float, v)))


@dataclass(frozen=True)
class SimConfig:
    params: ModelParams
    boundary: BoundaryData
    initial: InitialProfile
    grid: Grid1D
    t_end: float
    snapshot_every: int = 10
    # analytic reference for errors and energies; None when no family fits
    steady: SteadyState | None = None

    def __post_init__(self):
        if self.t_end < 0:
            raise ValueError("t_end must be non-negative")
        if self.snapshot_every < 1:
            raise ValueError("snapshot_every must be a positive integer")

    @property
    def n_steps(self) -> int:
        return math.ceil(self.t_end / self.grid.dt - 1e-9)


@dataclass(frozen=True)
class SimState:
    t: float
    u: np.ndarray
    v: np.ndarray
    grid: Grid1D


def _profile_fields(config: SimConfig):
    x = config.grid.x
    bd = config.boundary
    init = config.initial
    if init.kind is InitialKind.LINEAR:
        shape = x
    elif init.kind is InitialKind.SINE:
        shape = np.sin(0.5 * np.pi * x)
    elif init.kind is InitialKind.STEADY:
        j = steady_jet(init.steady, x)
        return j.u.copy(), j.v.copy()
    else:
        u, v = np.array(init.u, dtype=float), np.array(init.v, dtype=float)
        if u.shape != x.shape or v.shape != x.shape:
            raise IncompatibleInitialData(
                f"custom profile needs {x.size} node values, got {u.size}/{v.size}"
            )
        return u, v
    u = bd.alpha1 + (bd.alpha2 - bd.alpha1) * shape
    v = bd.beta1 + (bd.beta2 - bd.beta1) * shape
    return u, v


def build_initial(config: SimConfig) -> SimState:
    u, v = _profile_fields(config)
    bd = config.boundary
    for name, got, want in (("u(0)", u[0], bd.alpha1), ("u(1)", u[-1], bd.alpha2),
                            ("v(0)", v[0], bd.beta1), ("v(1)", v[-1], bd.beta2)):
        if abs(got - want) > COMPAT_TOL * max(1.0, abs(want)):
            raise IncompatibleInitialData(f"initial {name}={got!r} but boundary requires {want!r}")
    u[0], u[-1], v[0], v[-1] = bd.alpha1, bd.alpha2, bd.beta1, bd.beta2
    return SimState(0.0, u, v, config.grid)


def _diffusion_bands(n: int, r: float) -> np.ndarray:
    ab = np.empty((3, n))
    ab[0, 0] = ab[2, -1] = 0.0
    ab[0, 1:] = -r
    ab[1] = 1.0 + 2.0 * r
    ab[2, :-1] = -r
    return ab


def step(state: SimState, config: SimConfig) -> SimState:
    """Advance one time step; boundary nodes are re-imposed from the config."""
    p = config.params
    g = config.grid
    dt, dx = g.dt, g.dx
    u, v = state.u, state.v
    c = dt / (2.0 * dx)

    flux = u * v
    vsq = v * v
    rhs_u = u[1:-1] - c * p.chi * (flux[2:] - flux[:-2])
    rhs_v = v[1:-1] + c * (p.eps * (vsq[2:] - vsq[:-2]) - p.mu * (u[2:] - u[:-2]))

    bd = config.boundary
    ru = p.d * dt / dx**2
    rv = p.eps * dt / dx**2
    rhs_u[0] += ru * bd.alpha1
    rhs_u[-1] += ru * bd.alpha2
    rhs_v[0] += rv * bd.beta1
    rhs_v[-1] += rv * bd.beta2

    un = np.empty_like(u)
    vn = np.empty_like(v)
    un[1:-1] = solve_banded((1, 1), _diffusion_bands(g.n, ru), rhs_u,
                            overwrite_b=True, check_finite=False)
    vn[1:-1] = solve_banded((1, 1), _diffusion_bands(g.n, rv), rhs_v,
                            overwrite_b=True, check_finite=False)
    un[0], un[-1], vn[0], vn[-1] = bd.alpha1, bd.alpha2, bd.beta1, bd.beta2

    t = state.t + dt
    if not (np.all(np.isfinite(un)) and np.all(np.isfinite(vn))) or \
            max(np.max(np.abs(un)), np.max(np.abs(vn))) > BLOWUP:
        raise DivergenceError(t)
    return SimState(t, un, vn, g)


@dataclass(frozen=True)
class Reference:
    """Node values the perturbation energy is measured against."""

    u: np.ndarray
    v: np.ndarray
    weight: np.ndarray


def analytic_reference(ss: SteadyState, grid: Grid1D) -> Reference:
    x = grid.x
    j = steady_jet(ss, x)
    return Reference(j.u, j.v, energy_weight(ss)(x))


def _diagnostics_row(prev: SimState, nxt: SimState, ref: Reference | None,
                     analytic: Reference | None, config: SimConfig):
    g = config.grid
    du, dv = nxt.u - prev.u, nxt.v - prev.v
    deriv = math.sqrt(g.dx * float(np.sum(du[1:-1] ** 2) + np.sum(dv[1:-1] ** 2))) / g.dt
    if ref is None:
        return deriv, None, None, None, None
    energy = perturbation_energy(prev.u, prev.v, ref.u, ref.v, ref.weight, g, config.params.mu)
    eu = prev.u - analytic.u
    ev = prev.v - analytic.v
    err_u = math.sqrt(g.dx * float(np.sum(eu[1:-1] ** 2)))
    err_v = math.sqrt(g.dx * float(np.sum(ev[1:-1] ** 2)))
    e_h1 = h1_seminorm(prev.u - ref.u, g) ** 2 + h1_seminorm(prev.v - ref.v, g) ** 2
    return deriv, energy, err_u, err_v, e_h1


def run(config: SimConfig, reference: Reference | None = None):
    """Integrate to ``t_end``; diagnostics are sampled every ``snapshot_every`` steps.

    ``deriv_norm`` at a sample time t is the forward difference
    ||state(t + dt) - state(t)|| / dt, so the last sample costs one trial step.
    Energies use ``reference`` when given and otherwise the analytic steady state;
    the L2 errors always compare against the analytic state.

    Returns ``(final_state, series, snapshots)``.
    """
    analytic = analytic_reference(config.steady, config.grid) if config.steady else None
    ref = reference if reference is not None else analytic
    if ref is not None and analytic is None:
        analytic = ref

    state = build_initial(config)
    n_steps = config.n_steps
    dt = config.grid.dt
    rows, times, snapshots = [], [], []

    for k in range(n_steps + 1):
        # at k == n_steps this is a trial step that only feeds deriv_norm
        nxt = step(state, config)
        if k % config.snapshot_every == 0 or k == n_steps:
            times.append(state.t)
            rows.append(_diagnostics_row(state, nxt, ref, analytic, config))
            snapshots.append(state)
        if k < n_steps:
            state = SimState((k + 1) * dt, nxt.u, nxt.v, nxt.grid)

    cols = list(zip(*rows))
    has_ref = ref is not None
    series = DiagnosticsSeries(
        times=np.array(times),
        deriv_norm=np.array(cols[0]),
        energy=np.array(cols[1]) if has_ref else None,
        err_u_l2=np.array(cols[2]) if has_ref else None,
        err_v_l2=np.array(cols[3]) if has_ref else None,
        energy_h1=np.array(cols[4]) if has_ref else None,
    )
    return state, series, snapshots


def steady_error(state: SimState, ss: SteadyState):
    """(err_u_max, err_v_max, err_u_l2, err_v_l2) against the explicit steady state."""
    g = state.grid
    ub, vb = steady_jet(ss, g.x)[0], steady_jet(ss, g.x)[4]
    eu, ev = state.u - ub, state.v - vb
    return (
        float(np.max(np.abs(eu))),
        float(np.max(np.abs(ev))),
        math.sqrt(g.dx * float(np.sum(eu[1:-1] ** 2))),
        math.sqrt(g.dx * float(np.sum(ev[1:-1] ** 2))),
    )


def discrete_residual(u, v, params: ModelParams, grid: Grid1D):
    """Interior residuals of the steady finite-difference equations."""
    p, h = params, grid.dx
    lap = lambda f: (f[2:] - 2.0 * f[1:-1] + f[:-2]) / h**2
    cd = lambda f: (f[2:] - f[:-2]) / (2.0 * h)
    ru = p.d * lap(u) - p.chi * cd(u * v)
    rv = p.eps * lap(v) + p.eps * cd(v * v) - p.mu * cd(u)
    return ru, rv


def discrete_steady_state(params: ModelParams, boundary: BoundaryData, grid: Grid1D,
                          guess: tuple[np.ndarray, np.ndarray], tol: float = 1e-12,
                          max_iter: int = 30):
    """Newton solve for the fixed point of the scheme (its discrete steady state).

    Unknowns are interleaved interior values; the Jacobian is assembled sparse.
    """
    p, h, n = params, grid.dx, grid.n
    u = np.array(guess[0], dtype=float)
    v = np.array(guess[1], dtype=float)
    u[0], u[-1], v[0], v[-1] = boundary.alpha1, boundary.alpha2, boundary.beta1, boundary.beta2
    i = np.arange(n)
    for _ in range(max_iter):
        ru, rv = discrete_residual(u, v, p, grid)
        # d ru_i / d u_{i+o}, d ru_i / d v_{i+o}, d rv_i / d u_{i+o}, d rv_i / d v_{i+o}
        uu = {-1: p.d / h**2 + p.chi * v[:-2] / (2 * h), 0: np.full(n, -2 * p.d / h**2),
              1: p.d / h**2 - p.chi * v[2:] / (2 * h)}
        uv = {-1: p.chi * u[:-2] / (2 * h), 1: -p.chi * u[2:] / (2 * h)}
        vu = {-1: np.full(n, p.mu / (2 * h)), 1: np.full(n, -p.mu / (2 * h))}
        vv = {-1: p.eps / h**2 - p.eps * v[:-2] / h, 0: np.full(n, -2 * p.eps / h**2),
              1: p.eps / h**2 + p.eps * v[2:] / h}
        rows, cols, vals = [], [], []
        for blk, (ro, co) in ((uu, (0, 0)), (uv, (0, 1)), (vu, (1, 0)), (vv, (1, 1))):
            for off, val in blk.items():
                m = (i + off >= 0) & (i + off < n)
                rows.append(2 * i[m] + ro)
                cols.append(2 * (i[m] + off) + co)
                vals.append(np.broadcast_to(val, (n,))[m])
        jac = sp.csc_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                            shape=(2 * n, 2 * n))
        res = np.empty(2 * n)
        res[0::2], res[1::2] = ru, rv
        delta = spsolve(jac, -res)
        u[1:-1] += delta[0::2]
        v[1:-1] += delta[1::2]
        if np.max(np.abs(delta)) <= tol * (1.0 + max(np.max(np.abs(u)), np.max(np.abs(v)))):
            break
    else:
        raise ArithmeticError("Newton iteration for the discrete steady state did not converge")
    return u, v
