"""Command-line entry point.

Exit codes: 0 success, 2 validation failure, 3 divergence, 4 I/O or config error.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

from .config import ConfigError, Experiment, load_config
from .constraints import derive_boundary, match_families, stability_gate
from .grid import Grid1D
from .model import REFERENCE_PARAMS, DomainError, Family, ModelParams
from .output import fmt, write_plot_script, write_profile, write_series
from .presets import PRESETS, get_preset
from .report import summarize
from .solver import DivergenceError, run, steady_error

EXIT_OK, EXIT_INVALID, EXIT_DIVERGED, EXIT_IO = 0, 2, 3, 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ksteady", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="derive b and boundary data from alpha1")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--alpha1", required=True, type=float)
    _add_params(p)

    p = sub.add_parser("validate", help="match boundary data against the four families")
    _add_source(p)

    for name, helptext in (("run", "integrate one experiment"),
                           ("sweep", "repeat a run over several grid sizes")):
        p = sub.add_parser(name, help=helptext)
        _add_source(p)
        if name == "run":
            p.add_argument("--nx", type=int, help="interior node count")
        else:
            p.add_argument("--nx", type=int, nargs="+", required=True)
            p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--dt", type=float)
        p.add_argument("--t-end", type=float)
        p.add_argument("--snapshot-every", type=int)
        p.add_argument("--out-dir", type=Path,
                       default=Path(os.environ.get("CHEMO_OUT_DIR", "runs")))
        if name == "run":
            p.add_argument("--emit-plot-script", action="store_true")
    return parser


def _add_params(p):
    p.add_argument("--d", type=float, default=REFERENCE_PARAMS.d)
    p.add_argument("--chi", type=float, default=REFERENCE_PARAMS.chi)
    p.add_argument("--eps", type=float, default=REFERENCE_PARAMS.eps)
    p.add_argument("--mu", type=float, default=REFERENCE_PARAMS.mu)


def _add_source(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=sorted(PRESETS))
    src.add_argument("--config", type=Path)


def _experiment(args) -> Experiment:
    if args.preset:
        pre = get_preset(args.preset)
        return Experiment(pre.name, pre.config())
    return load_config(args.config)


def _override(exp: Experiment, args, nx=None) -> Experiment:
    cfg = exp.config
    grid = Grid1D(nx if nx is not None else (args.nx or cfg.grid.n), args.dt or cfg.grid.dt)
    changes = {"grid": grid}
    if args.t_end is not None:
        changes["t_end"] = args.t_end
    if args.snapshot_every is not None:
        changes["snapshot_every"] = args.snapshot_every
    return Experiment(exp.name, replace(cfg, **changes))


def cmd_derive(args, out) -> int:
    params = ModelParams(args.d, args.chi, args.eps, args.mu)
    rep = derive_boundary(args.family, params, args.alpha1)
    print(f"family  : {rep.family.value}", file=out)
    if rep.b is not None:
        print(f"b       : {rep.b:.12f}", file=out)
    if rep.boundary is not None:
        bd = rep.boundary
        for key in ("alpha1", "alpha2", "beta1", "beta2"):
            print(f"{key:<8}: {fmt(getattr(bd, key))}", file=out)
        gate = stability_gate(rep.family, params, bd)
        lam = "undefined" if gate.lam is None else f"{gate.lam:g}"
        print(f"gate    : {'satisfied' if gate.satisfied else 'not satisfied'} "
              f"[{gate.condition_used}, lambda = {lam}]", file=out)
    for v in rep.violations:
        print(f"violation: {v}", file=out)
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_validate(args, out) -> int:
    cfg = _experiment(args).config
    matched = []
    for fam, rep in match_families(cfg.params, cfg.boundary).items():
        if rep.ok:
            matched.append(fam)
            gate = stability_gate(fam, cfg.params, cfg.boundary)
            lam = "undefined" if gate.lam is None else f"{gate.lam:g}"
            print(f"{fam.value:<5} VALID   b = {rep.b:.12f}", file=out)
            print(f"      lambda = {lam}; gate {'satisfied' if gate.satisfied else 'NOT satisfied'} "
                  f"[{gate.condition_used}]", file=out)
            if not gate.satisfied:
                print("      note: the gate is sufficient, not necessary; decay may still be "
                      "observed numerically", file=out)
        else:
            print(f"{fam.value:<5} rejected: {'; '.join(rep.violations)}", file=out)
    if not matched:
        print("no explicit family fits these boundary data", file=out)
    return EXIT_OK if matched else EXIT_INVALID


def cmd_run(args, out) -> int:
    exp = _override(_experiment(args), args)
    cfg = exp.config
    try:
        final, series, _ = run(cfg)
    except DivergenceError as exc:
        print(f"error: {exc} (t = {exc.t:.6g})", file=out)
        return EXIT_DIVERGED
    report = summarize(exp.name, cfg, final, series)
    run_dir = args.out_dir / exp.name
    run_dir.mkdir(parents=True, exist_ok=True)
    prof = write_profile(run_dir / "profile.csv", final, cfg.steady)
    ser = write_series(run_dir / "series.csv", series)
    report.files += [prof, ser]
    if args.emit_plot_script:
        report.files.append(write_plot_script(run_dir / "plot.py", exp.name, prof, ser))
    for line in report.lines():
        print(line, file=out)
    return EXIT_OK


def _sweep_one(cfg):
    final, _, _ = run(cfg)
    return steady_error(final, cfg.steady)


SWEEP_COLUMNS = ("nx", "dx", "err_u_max", "err_v_max", "err_u_l2", "err_v_l2", "order_u_max")


def cmd_sweep(args, out) -> int:
    base = _experiment(args)
    if base.config.steady is None:
        print("error: sweep needs boundary data that fit an explicit family", file=out)
        return EXIT_INVALID
    configs = [_override(base, args, nx=n).config for n in args.nx]
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                errors = list(pool.map(_sweep_one, configs))
        else:
            errors = [_sweep_one(c) for c in configs]
    except DivergenceError as exc:
        print(f"error: {exc}", file=out)
        return EXIT_DIVERGED
    rows = []
    for i, (cfg, err) in enumerate(zip(configs, errors)):
        order = None
        if i > 0 and err[0] > 0 and errors[i - 1][0] > 0:
            order = math.log(errors[i - 1][0] / err[0]) / math.log(configs[i - 1].grid.dx / cfg.grid.dx)
        rows.append((cfg.grid.n, cfg.grid.dx, *err, order))
    run_dir = args.out_dir / base.name
    run_dir.mkdir(parents=True, exist_ok=True)
    path = run_dir / "sweep.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for row in rows:
            w.writerow([str(row[0])] + [fmt(v) for v in row[1:]])
    for row in rows:
        order = "" if row[-1] is None else f"  order {row[-1]:.3f}"
        print(f"nx={row[0]:<6d} dx={row[1]:.3e}  max err u {row[2]:.3e}  v {row[3]:.3e}{order}", file=out)
    print(f"wrote {path}", file=out)
    return EXIT_OK


COMMANDS = {"derive": cmd_derive, "validate": cmd_validate, "run": cmd_run, "sweep": cmd_sweep}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, sys.stdout)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
