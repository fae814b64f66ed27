"""CSV and plot-script emission. Numbers use 17 significant digits, LF endings."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .diagnostics import DiagnosticsSeries
from .model import SteadyState, steady_jet
from .solver import SimState

PROFILE_COLUMNS = ("x", "u_num", "v_num", "u_exact", "v_exact")
SERIES_COLUMNS = ("t", "energy", "err_u_l2", "err_v_l2", "deriv_norm")


def fmt(value) -> str:
    if value is None:
        return ""
    return format(float(value), ".17g")


def _write(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def write_profile(path: Path, state: SimState, ss: SteadyState | None) -> Path:
    x = state.grid.x
    if ss is not None:
        j = steady_jet(ss, x)
        ue, ve = j.u, j.v
    else:
        ue = ve = [None] * len(x)
    _write(path, PROFILE_COLUMNS, zip(x, state.u, state.v, ue, ve))
    return path


def write_series(path: Path, series: DiagnosticsSeries) -> Path:
    n = len(series)
    blank = [None] * n

    def col(arr):
        return blank if arr is None else np.asarray(arr)

    _write(path, SERIES_COLUMNS, zip(series.times, col(series.energy), col(series.err_u_l2),
                                     col(series.err_v_l2), series.deriv_norm))
    return path


PLOT_TEMPLATE = '''\
"""Profiles at t_end and energy history for run {name!r}."""
import csv
import matplotlib.pyplot as plt


def load(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return {{k: [float(r[k]) if r[k] else None for r in rows] for k in rows[0]}}


prof = load({profile!r})
ser = load({series!r})
fig, ax = plt.subplots(1, 3, figsize=(13, 4))
for i, f in enumerate(("u", "v")):
    ax[i].plot(prof["x"], prof[f + "_num"], "-", label="numerical")
    if prof[f + "_exact"][0] is not None:
        ax[i].plot(prof["x"], prof[f + "_exact"], ":", label="explicit steady state")
    ax[i].set_xlabel("x")
    ax[i].set_title(f)
    ax[i].legend()
if ser["energy"][0] is not None:
    ax[2].semilogy(ser["t"], ser["energy"], label="perturbation energy")
ax[2].semilogy(ser["t"], ser["deriv_norm"], label="time-derivative norm")
ax[2].set_xlabel("t")
ax[2].legend()
fig.tight_layout()
fig.savefig({png!r}, dpi=150)
'''


def write_plot_script(path: Path, name: str, profile: Path, series: Path) -> Path:
    path.write_text(PLOT_TEMPLATE.format(name=name, profile=profile.name, series=series.name,
                                         png=f"{name}.png"))
    return path
