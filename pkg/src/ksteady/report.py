from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .constraints import StabilityGate, match_families, stability_gate
from .diagnostics import (DecayFit, DiagnosticsSeries, InsufficientSamples, energy_monotone_after,
                          fit_decay, second_difference_sign_changes)
from .model import Family, steady_jet
from .solver import SimConfig, SimState, steady_error


@dataclass
class RunReport:
    name: str
    config_hash: str
    family: Family | None
    errors: tuple[float, float, float, float] | None
    rel_err_u: float | None
    rel_err_v: float | None
    decay: DecayFit | None
    decay_h1: DecayFit | None
    monotone_after_0p1: bool | None
    gate: StabilityGate | None
    deriv_ratio: float
    curvature_sign_changes: int
    files: list[Path] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"run {self.name} [{self.config_hash}]"]
        out.append(f"  family match      : {self.family.value if self.family else 'none'}")
        if self.errors is not None:
            eu, ev, eu2, ev2 = self.errors
            out.append(f"  max error u / v   : {eu:.3e} / {ev:.3e}")
            out.append(f"  L2 error  u / v   : {eu2:.3e} / {ev2:.3e}")
            out.append(f"  max rel error u/v : {self.rel_err_u:.3e} / {self.rel_err_v:.3e}")
        if self.decay is not None:
            out.append(f"  energy decay rate : {self.decay.rate:.4f} (r^2 = {self.decay.r_squared:.6f}, "
                       f"t in [{self.decay.window[0]:g}, {self.decay.window[1]:g}])")
        if self.decay_h1 is not None:
            out.append(f"  H1 decay rate     : {self.decay_h1.rate:.4f} (r^2 = {self.decay_h1.r_squared:.6f})")
        if self.monotone_after_0p1 is not None:
            out.append(f"  energy monotone   : {self.monotone_after_0p1} (t >= 0.1)")
        if self.gate is not None:
            lam = "undefined" if self.gate.lam is None else f"{self.gate.lam:g}"
            out.append(f"  stability gate    : {'satisfied' if self.gate.satisfied else 'NOT satisfied'} "
                       f"[{self.gate.condition_used}, lambda = {lam}]")
        out.append(f"  deriv_norm ratio  : {self.deriv_ratio:.3e} (final / initial)")
        shape = "both convex and concave segments" if self.curvature_sign_changes else "single curvature sign"
        out.append(f"  curvature         : {self.curvature_sign_changes} sign change(s) of u_xx, {shape}")
        for p in self.files:
            out.append(f"  wrote {p}")
        return out


def config_hash(config: SimConfig) -> str:
    return hashlib.sha1(repr(config).encode()).hexdigest()[:12]


def summarize(name: str, config: SimConfig, final: SimState, series: DiagnosticsSeries) -> RunReport:
    ss = config.steady
    errors = rel_u = rel_v = decay = decay_h1 = mono = gate = None
    family = None
    if ss is not None:
        family = ss.family
        errors = steady_error(final, ss)
        j = steady_jet(ss, config.grid.x)
        rel_u = errors[0] / float(np.max(np.abs(j.u)))
        rel_v = errors[1] / float(np.max(np.abs(j.v)))
        gate = stability_gate(family, config.params, config.boundary)
        try:
            decay = fit_decay(series)
            decay_h1 = fit_decay(series, quantity="energy_h1")
        except InsufficientSamples:
            pass
        mono = energy_monotone_after(series, 0.1)
    else:
        fits = [f for f, rep in match_families(config.params, config.boundary).items() if rep.ok]
        family = fits[0] if len(fits) == 1 else None
    d0 = float(series.deriv_norm[0])
    ratio = float(series.deriv_norm[-1]) / d0 if d0 > 0 else 0.0
    return RunReport(
        name=name,
        config_hash=config_hash(config),
        family=family,
        errors=errors,
        rel_err_u=rel_u,
        rel_err_v=rel_v,
        decay=decay,
        decay_h1=decay_h1,
        monotone_after_0p1=mono,
        gate=gate,
        deriv_ratio=ratio,
        curvature_sign_changes=second_difference_sign_changes(final.u),
    )
