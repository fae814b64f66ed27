"""Run all five presets to t = 2 on the reference mesh and write profiles/series.

    python scripts/run_presets.py [--out-dir runs/presets]

Each preset gets profile.csv, series.csv and a matplotlib plot.py next to them;
run that script to draw the numerical profile against the explicit one.
"""

import argparse
import time
from pathlib import Path

from ksteady.output import write_plot_script, write_profile, write_series
from ksteady.presets import PRESETS
from ksteady.report import summarize
from ksteady.solver import run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", type=Path, default=Path("runs/presets"))
    args = ap.parse_args()
    for name, pre in PRESETS.items():
        cfg = pre.config()
        t0 = time.perf_counter()
        final, series, _ = run(cfg)
        dt = time.perf_counter() - t0
        out = args.out_dir / name
        out.mkdir(parents=True, exist_ok=True)
        prof = write_profile(out / "profile.csv", final, cfg.steady)
        ser = write_series(out / "series.csv", series)
        write_plot_script(out / "plot.py", name, prof, ser)
        rep = summarize(name, cfg, final, series)
        print(f"{name:<13} {dt:5.2f} s", end="  ")
        if rep.errors is not None:
            print(f"max rel error u {rep.rel_err_u:.2e}  v {rep.rel_err_v:.2e}")
        else:
            print(f"no explicit family; u_xx sign changes: {rep.curvature_sign_changes}")


if __name__ == "__main__":
    main()
