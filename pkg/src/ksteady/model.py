"""Explicit steady states of the log-sensitivity chemotaxis system on (0, 1).

After the substitution v = (ln c)_x the model reads

    u_t = d u_xx - chi (u v)_x
    v_t = eps v_xx + 2 eps v v_x - mu u_x

and admits four closed-form steady families, all written in the phase
variable s = a x + b with a = kappa(params):

    power  u = s^-2        v = -k / s
    sec    u = sec^2 s     v =  k tan s
    csc    u = csc^2 s     v = -k cot s
    csch   u = csch^2 s    v = -k coth s

where k = 2 a d / chi.  Only the a > 0, b > 0 branch with chi > 0, mu > 0
is supported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

HALF_PI = 0.5 * math.pi


class DomainError(ValueError):
    """Raised when a parameter or evaluation point leaves the admissible set."""


class Family(str, Enum):
    POWER = "power"
    SEC_TAN = "sec"
    CSC_COT = "csc"
    CSCH_COTH = "csch"

    @property
    def is_trig(self) -> bool:
        return self in (Family.SEC_TAN, Family.CSC_COT)


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of the transformed system."""

    d: float
    chi: float
    eps: float
    mu: float

    def __post_init__(self):
        if not self.d > 0:
            raise DomainError(f"d must be positive, got {self.d}")
        if not self.eps > 0:
            raise DomainError(f"eps must be positive, got {self.eps}")
        if not self.chi * self.mu > 0:
            raise DomainError(
                f"chi*mu must be positive, got chi={self.chi}, mu={self.mu}"
            )


REFERENCE_PARAMS = ModelParams(d=2.0, chi=1.0, eps=0.5, mu=1.0)


def kappa(params: ModelParams) -> float:
    """Positive slope of the phase argument, sqrt(mu chi^2 / (2 d eps (2d + chi)))."""
    p = params
    denom = 2.0 * p.d * p.eps * (2.0 * p.d + p.chi)
    num = p.mu * p.chi**2
    if not (denom > 0 and num > 0):
        raise DomainError(f"kappa radicand is not positive for {params}")
    return math.sqrt(num / denom)


@dataclass(frozen=True)
class SteadyState:
    family: Family
    a: float
    b: float
    params: ModelParams

    def __post_init__(self):
        p = self.params
        if not (p.chi > 0 and p.mu > 0):
            raise DomainError("only the chi > 0, mu > 0 regime is supported")
        k = kappa(p)
        if not (self.a > 0 and abs(self.a - k) <= 1e-12 * k):
            raise DomainError(f"a={self.a!r} differs from kappa={k!r}")
        if not self.b > 0:
            raise DomainError(f"b must be positive, got {self.b}")
        if self.family.is_trig and not self.a + self.b < HALF_PI:
            raise DomainError(
                f"a + b = {self.a + self.b} leaves (0, pi/2) for {self.family.value}"
            )

    @classmethod
    def from_b(cls, family: Family | str, params: ModelParams, b: float) -> "SteadyState":
        return cls(Family(family), kappa(params), b, params)

    @classmethod
    def unchecked(cls, family: Family | str, a: float, b: float, params: ModelParams) -> "SteadyState":
        """Build a state without invariant checks (residual probes with wrong a)."""
        obj = object.__new__(cls)
        for name, value in (("family", Family(family)), ("a", a), ("b", b), ("params", params)):
            object.__setattr__(obj, name, value)
        return obj

    @property
    def k(self) -> float:
        """Amplitude 2 a d / chi of the v-profile."""
        return 2.0 * self.a * self.params.d / self.params.chi

    def phase(self, x):
        s = self.a * np.asarray(x, dtype=float) + self.b
        if self.family.is_trig:
            bad = ~((s > 0) & (s < HALF_PI))
        else:
            bad = ~(s > 0)
        if np.any(bad):
            raise DomainError(
                f"phase a*x+b outside the {self.family.value} window at x={x!r}"
            )
        return s


class Jet(NamedTuple):
    """Closed-form derivatives of a steady pair at the sample points."""

    u: np.ndarray
    ux: np.ndarray
    uxx: np.ndarray
    uxxx: np.ndarray
    v: np.ndarray
    vx: np.ndarray
    vxx: np.ndarray


def steady_jet(ss: SteadyState, x) -> Jet:
    s = ss.phase(x)
    a, k = ss.a, ss.k
    fam = ss.family
    if fam is Family.POWER:
        r = 1.0 / s
        u = r**2
        ux = -2.0 * a * r**3
        uxx = 6.0 * a**2 * r**4
        uxxx = -24.0 * a**3 * r**5
        v = -k * r
        vx = k * a * r**2
        vxx = -2.0 * k * a**2 * r**3
    elif fam is Family.SEC_TAN:
        sec2 = 1.0 / np.cos(s) ** 2
        t = np.tan(s)
        u = sec2
        ux = 2.0 * a * sec2 * t
        uxx = 2.0 * a**2 * sec2 * (2.0 * t**2 + sec2)
        uxxx = 8.0 * a**3 * sec2 * t * (t**2 + 2.0 * sec2)
        v = k * t
        vx = k * a * sec2
        vxx = 2.0 * k * a**2 * sec2 * t
    else:
        # csc/cot and csch/coth share the same derivative algebra:
        # f' = -f g, g' = -f^2 with f = csc|csch, g = cot|coth.
        if fam is Family.CSC_COT:
            f2 = 1.0 / np.sin(s) ** 2
            g = 1.0 / np.tan(s)
        else:
            f2 = 1.0 / np.sinh(s) ** 2
            g = 1.0 / np.tanh(s)
        u = f2
        ux = -2.0 * a * f2 * g
        uxx = 2.0 * a**2 * f2 * (2.0 * g**2 + f2)
        uxxx = -8.0 * a**3 * f2 * g * (g**2 + 2.0 * f2)
        v = -k * g
        vx = k * a * f2
        vxx = -2.0 * k * a**2 * f2 * g
    return Jet(u, ux, uxx, uxxx, v, vx, vxx)


def eval_steady(ss: SteadyState, x):
    """Return (u_bar, v_bar) at ``x`` (scalar or array)."""
    j = steady_jet(ss, x)
    return j.u, j.v


def eval_steady_derivs(ss: SteadyState, x):
    """Return (u_bar_x, u_bar_xx, v_bar_x) at ``x``."""
    j = steady_jet(ss, x)
    return j.ux, j.uxx, j.vx


def ansatz_residual(ss: SteadyState, x):
    """v_bar - (d/chi) u_bar_x / u_bar; identically zero on a valid state."""
    j = steady_jet(ss, x)
    return j.v - ss.params.d / ss.params.chi * j.ux / j.u


def ode_terms(ss: SteadyState, x):
    """The four additive terms of the third-order equation for u_bar.

    eps d chi u''' u^2 - eps d (3chi - 2d) u'' u' u + 2 eps d (chi - d) u'^3
    - mu chi^2 u' u^3
    """
    p = ss.params
    j = steady_jet(ss, x)
    ed = p.eps * p.d
    return (
        ed * p.chi * j.uxxx * j.u**2,
        -ed * (3.0 * p.chi - 2.0 * p.d) * j.uxx * j.ux * j.u,
        2.0 * ed * (p.chi - p.d) * j.ux**3,
        -p.mu * p.chi**2 * j.ux * j.u**3,
    )


def ode_residual(ss: SteadyState, x):
    return sum(ode_terms(ss, x))


def system_terms(params: ModelParams, u, ux, uxx, v, vx, vxx):
    """Additive terms of both steady equations, from pointwise derivative data.

    Returns ``(terms1, terms2)`` where the sums are
    d u_xx - chi (u v)_x and eps v_xx + 2 eps v v_x - mu u_x.
    """
    p = params
    terms1 = (p.d * uxx, -p.chi * ux * v, -p.chi * u * vx)
    terms2 = (p.eps * vxx, 2.0 * p.eps * v * vx, -p.mu * ux)
    return terms1, terms2


def system_residual(params: ModelParams, u, ux, uxx, v, vx, vxx):
    t1, t2 = system_terms(params, u, ux, uxx, v, vx, vxx)
    return sum(t1), sum(t2)


def steady_system_terms(ss: SteadyState, x):
    j = steady_jet(ss, x)
    return system_terms(ss.params, j.u, j.ux, j.uxx, j.v, j.vx, j.vxx)


def steady_system_residual(ss: SteadyState, x):
    """Residuals (r1, r2) of the steady system evaluated with exact derivatives."""
    t1, t2 = steady_system_terms(ss, x)
    return sum(t1), sum(t2)


@dataclass(frozen=True)
class CbarProfile:
    family: Family
    c0: float
    sigma: float


SIGMA_SPREAD_TOL = 1e-8


def sigma_pointwise(ss: SteadyState, x):
    """Degradation rate implied by the steady c-equation at each x.

    With v = (ln c)_x one has c_xx / c = v_x + v^2, so the steady equation
    eps c_xx - sigma c - mu u c = 0 gives sigma = eps (v_x + v^2) - mu u.
    """
    j = steady_jet(ss, x)
    return ss.params.eps * (j.vx + j.v**2) - ss.params.mu * j.u


def infer_sigma(ss: SteadyState, sample_count: int = 101, c0: float = 1.0) -> CbarProfile:
    if sample_count < 3:
        raise ValueError("sample_count must be at least 3")
    if not c0 > 0:
        raise DomainError("c0 must be positive")
    sig = sigma_pointwise(ss, np.linspace(0.0, 1.0, sample_count))
    mean = float(np.mean(sig))
    spread = float(np.max(sig) - np.min(sig))
    if spread >= SIGMA_SPREAD_TOL * (1.0 + abs(mean)):
        raise DomainError(
            f"sigma(x) is not constant (spread {spread:.3e}); state is not a steady solution"
        )
    return CbarProfile(ss.family, c0, mean)


def reconstruct_cbar(ss: SteadyState, c0: float, x):
    """Chemical profile c0 * exp(int_0^x v_bar) via closed-form antiderivatives."""
    if not c0 > 0:
        raise DomainError("c0 must be positive")
    s = ss.phase(x)
    b = ss.b
    power = ss.k / ss.a  # = 2d/chi
    fam = ss.family
    if fam is Family.POWER:
        ratio = b / s
    elif fam is Family.SEC_TAN:
        ratio = math.cos(b) / np.cos(s)
    elif fam is Family.CSC_COT:
        ratio = math.sin(b) / np.sin(s)
    else:
        ratio = math.sinh(b) / np.sinh(s)
    return c0 * ratio**power
