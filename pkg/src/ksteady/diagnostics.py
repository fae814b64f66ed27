"""Discrete norms, the stability quantity L(x), and exponential-decay fitting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .grid import Grid1D
from .model import HALF_PI, Family, ModelParams, SteadyState, kappa, steady_jet

NOISE_FLOOR = 1e-14


def discrete_norm(f, grid: Grid1D, kind: str = "L2") -> float:
    """Rectangle-rule L2 norm over interior nodes, or the max norm."""
    f = np.asarray(f, dtype=float)
    if f.shape != (grid.n + 2,):
        raise ValueError(f"field has shape {f.shape}, grid expects ({grid.n + 2},)")
    if kind == "L2":
        return math.sqrt(grid.dx * float(np.sum(f[1:-1] ** 2)))
    if kind == "Linf":
        return float(np.max(np.abs(f)))
    raise ValueError(f"unknown norm kind {kind!r}")


def weighted_norm(f, weight_fn, grid: Grid1D) -> float:
    """sqrt(dx * sum w(x_i) f_i^2) over interior nodes; ``weight_fn`` maps x to w."""
    f = np.asarray(f, dtype=float)
    x = grid.x
    w = np.broadcast_to(np.asarray(weight_fn(x), dtype=float), x.shape)
    if np.any(w[1:-1] <= 0):
        raise ValueError("weight must be positive at every interior node")
    return math.sqrt(grid.dx * float(np.sum(w[1:-1] * f[1:-1] ** 2)))


def h1_seminorm(f, grid: Grid1D) -> float:
    """sqrt(dx * sum ((f_{i+1} - f_i)/dx)^2) using forward differences on every cell."""
    df = np.diff(np.asarray(f, dtype=float)) / grid.dx
    return math.sqrt(grid.dx * float(np.sum(df**2)))


def energy_weight(ss: SteadyState):
    """Weight function chi * u_bar(x) of the zeroth-order energy."""
    chi = ss.params.chi
    return lambda x: chi * steady_jet(ss, x).u


def perturbation_energy(u, v, u_ref, v_ref, weight, grid: Grid1D, mu: float) -> float:
    """mu ||u - u_ref||^2 + ||v - v_ref||_w^2 with ``weight`` sampled on the nodes."""
    du = np.asarray(u) - u_ref
    dv = np.asarray(v) - v_ref
    w = np.asarray(weight)
    return grid.dx * float(mu * np.sum(du[1:-1] ** 2) + np.sum((w * dv * dv)[1:-1]))


def script_l_forms(ss: SteadyState, x):
    """Both algebraic forms of L(x) = u''/2 - 2 v u' + (u v)', plus a term scale.

    The second form, (chi + 2d)/(2chi) u'' - (2d/chi) u'^2/u, uses the ansatz
    v = (d/chi) u'/u and is only equal to the first on a valid steady state.
    """
    j = steady_jet(ss, x)
    d, chi = ss.params.d, ss.params.chi
    direct = 0.5 * j.uxx - 2.0 * j.v * j.ux + (j.ux * j.v + j.u * j.vx)
    reduced = (chi + 2.0 * d) / (2.0 * chi) * j.uxx - (2.0 * d / chi) * j.ux**2 / j.u
    scale = np.maximum.reduce([np.abs(0.5 * j.uxx), np.abs(2.0 * j.v * j.ux),
                               np.abs(j.ux * j.v), np.abs(j.u * j.vx)])
    return direct, reduced, scale


def script_l(ss: SteadyState, x):
    direct, reduced, scale = script_l_forms(ss, x)
    if np.any(np.abs(direct - reduced) > 1e-10 * np.maximum(scale, 1.0)):
        raise ArithmeticError("the two forms of L(x) disagree; state is not a steady solution")
    return direct


@dataclass
class DiagnosticsSeries:
    """Time-stamped diagnostics of one run.

    ``energy`` and the L2 errors are ``None`` when no reference steady state
    is attached (e.g. boundary data outside every explicit family).
    """

    times: np.ndarray
    deriv_norm: np.ndarray
    energy: np.ndarray | None = None
    err_u_l2: np.ndarray | None = None
    err_v_l2: np.ndarray | None = None
    energy_h1: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class DecayFit:
    rate: float
    r_squared: float
    window: tuple[float, float]
    samples: int


class InsufficientSamples(ValueError):
    pass


def fit_log_linear(times, values, window: tuple[float, float]) -> DecayFit:
    t = np.asarray(times, dtype=float)
    e = np.asarray(values, dtype=float)
    lo, hi = window
    mask = (t >= lo - 1e-12) & (t <= hi + 1e-12) & (e > NOISE_FLOOR)
    if np.count_nonzero(mask) < 5:
        raise InsufficientSamples(
            f"{np.count_nonzero(mask)} usable samples in window {window}; need 5"
        )
    tt, ly = t[mask], np.log(e[mask])
    slope, intercept = np.polyfit(tt, ly, 1)
    resid = ly - (slope * tt + intercept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return DecayFit(-float(slope), r2, (lo, hi), int(np.count_nonzero(mask)))


def fit_decay(series: DiagnosticsSeries, window: tuple[float, float] | None = None,
              quantity: str = "energy") -> DecayFit:
    """Least-squares fit of ln(quantity) against t; the rate is minus the slope.

    The default window is [t_end/4, t_end].
    """
    values = getattr(series, quantity)
    if values is None:
        raise InsufficientSamples(f"series carries no {quantity!r} samples")
    if window is None:
        t_end = float(series.times[-1])
        window = (0.25 * t_end, t_end)
    return fit_log_linear(series.times, values, window)


def energy_monotone_after(series: DiagnosticsSeries, t0: float, slack: float = 1e-12) -> bool:
    """True iff energy never rises by more than ``slack`` between samples with t >= t0."""
    if series.energy is None:
        raise ValueError("series carries no energy samples")
    e = np.asarray(series.energy)[np.asarray(series.times) >= t0]
    return bool(np.all(np.diff(e) <= slack))


def second_difference_sign_changes(u) -> int:
    """Number of sign changes of the discrete second difference of ``u``.

    Differences below a relative noise level are treated as zero and skipped,
    so round-off near inflection points does not register as extra changes.
    """
    u = np.asarray(u, dtype=float)
    d2 = np.diff(u, 2)
    # round-off in a second difference is of order eps * |u|
    tol = max(1e-10 * float(np.max(np.abs(d2))), 64 * np.finfo(float).eps * float(np.max(np.abs(u))))
    signs = np.sign(d2[np.abs(d2) > tol])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def _b_bounds(family: Family, params: ModelParams) -> tuple[float, float] | None:
    k = kappa(params)
    if family.is_trig:
        hi = HALF_PI - k
        return (1e-9, hi - 1e-9) if hi > 2e-9 else None
    return (1e-3, 20.0)


def best_fit_profile(u, grid: Grid1D, params: ModelParams, family: Family | str):
    """Offset b whose family profile u_bar (slope kappa) is closest to ``u`` in L2.

    Returns ``(b, max_abs_difference)``, or ``(None, inf)`` when the family has
    no admissible offset for these parameters.
    """
    family = Family(family)
    bounds = _b_bounds(family, params)
    if bounds is None:
        return None, math.inf
    x = grid.x
    u = np.asarray(u, dtype=float)

    def misfit(b):
        ss = SteadyState.from_b(family, params, b)
        return float(np.sum((steady_jet(ss, x).u - u) ** 2))

    # coarse scan first: the misfit is not convex across the whole window
    cand = np.linspace(*bounds, 400)
    vals = [misfit(b) for b in cand]
    i = int(np.argmin(vals))
    lo, hi = cand[max(i - 1, 0)], cand[min(i + 1, len(cand) - 1)]
    res = minimize_scalar(misfit, bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    b = float(res.x) if res.fun < vals[i] else float(cand[i])
    ss = SteadyState.from_b(family, params, b)
    return b, float(np.max(np.abs(steady_jet(ss, x).u - u)))
