"""Observed orders of the scheme.

Part 1: one-step defect from explicit steady data under dx and dt halving.
Part 2: steady-state error at long times under dx refinement (spatial order).

    python scripts/consistency_orders.py
"""

import math

import numpy as np

from ksteady.grid import Grid1D
from ksteady.model import steady_jet
from ksteady.presets import ANALYTIC, PRESETS
from ksteady.solver import InitialProfile, build_initial, discrete_steady_state, step


def defect(name, n, dt):
    pre = PRESETS[name]
    cfg = pre.config(grid=Grid1D(n, dt), initial=InitialProfile.explicit(pre.steady_state()))
    s0 = build_initial(cfg)
    s1 = step(s0, cfg)
    return max(np.max(np.abs(s1.u - s0.u)), np.max(np.abs(s1.v - s0.v)))


def steady_floor(name, n):
    pre = PRESETS[name]
    g = Grid1D(n, 1e-3)
    j = steady_jet(pre.steady_state(), g.x)
    u, v = discrete_steady_state(pre.params, pre.boundary, g, (j.u, j.v))
    return max(np.max(np.abs(u - j.u)), np.max(np.abs(v - j.v)))


def main():
    print("one-step defect, n=99, dt=1e-7")
    print(f"{'family':<6} {'defect':>10} {'dx ratio':>9} {'dt ratio':>9}")
    for name in ANALYTIC:
        base = defect(name, 99, 1e-7)
        print(f"{name:<6} {base:10.3e} {base / defect(name, 199, 1e-7):9.3f} "
              f"{base / defect(name, 99, 5e-8):9.3f}")
    print("\nsteady-state error of the scheme's fixed point")
    for name in ANALYTIC:
        errs = [(n, steady_floor(name, n)) for n in (99, 199, 399, 799)]
        line = "  ".join(f"n={n}: {e:.2e}" for n, e in errs)
        orders = [math.log2(errs[i][1] / errs[i + 1][1]) for i in range(len(errs) - 1)]
        print(f"{name:<6} {line}   orders " + ", ".join(f"{o:.2f}" for o in orders))


if __name__ == "__main__":
    main()
