"""Flat ``key = value`` experiment files.

Recognised keys (all optional when ``preset`` supplies them)::

    preset              base preset to start from (power, sec, csc, csch, undiscovered)
    params.d, params.chi, params.eps, params.mu
    boundary.alpha1, boundary.alpha2, boundary.beta1, boundary.beta2
    grid.nx             interior node count (dx = 1/(nx+1))
    grid.dt
    run.t_end
    run.snapshot_every
    initial.kind        linear | sine | steady | custom
    initial.family      family sampled when initial.kind = steady
    initial.file        CSV with columns x,u,v when initial.kind = custom
    reference.family    auto | none | power | sec | csc | csch

Blank lines and ``#`` comments are ignored. Values are plain numbers or words.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .constraints import BoundaryData, derive_boundary, match_families, validate_state
from .grid import Grid1D
from .model import DomainError, Family, ModelParams
from .presets import get_preset
from .solver import InitialProfile, SimConfig

KEYS = {
    "preset", "params.d", "params.chi", "params.eps", "params.mu",
    "boundary.alpha1", "boundary.alpha2", "boundary.beta1", "boundary.beta2",
    "grid.nx", "grid.dt", "run.t_end", "run.snapshot_every",
    "initial.kind", "initial.family", "initial.file", "reference.family",
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Experiment:
    name: str
    config: SimConfig


def parse_text(text: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if key not in KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value
    return entries


def _number(entries, key, default=None, kind=float):
    if key not in entries:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default
    try:
        return kind(entries[key])
    except ValueError:
        raise ConfigError(f"{key} = {entries[key]!r} is not a valid {kind.__name__}") from None


def _read_custom(path: Path):
    try:
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise ConfigError(f"cannot read initial.file {path}: {exc}") from None
    try:
        return [float(r["u"]) for r in rows], [float(r["v"]) for r in rows]
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"initial.file {path} needs numeric columns u and v ({exc})") from None


def build_experiment(entries: dict[str, str], name: str = "custom", base_dir: Path | None = None) -> Experiment:
    base = None
    if "preset" in entries:
        try:
            base = get_preset(entries["preset"])
        except KeyError as exc:
            raise ConfigError(str(exc)) from None
        name = base.name if name == "custom" else name

    def num(key, fallback, kind=float):
        return _number(entries, key, fallback, kind)

    try:
        params = ModelParams(
            d=num("params.d", base and base.params.d),
            chi=num("params.chi", base and base.params.chi),
            eps=num("params.eps", base and base.params.eps),
            mu=num("params.mu", base and base.params.mu),
        )
        bd0 = base.boundary if base else None
        boundary = BoundaryData(
            num("boundary.alpha1", bd0 and bd0.alpha1),
            num("boundary.alpha2", bd0 and bd0.alpha2),
            num("boundary.beta1", bd0 and bd0.beta1),
            num("boundary.beta2", bd0 and bd0.beta2),
        )
        grid = Grid1D(
            num("grid.nx", base and base.grid.n, int),
            num("grid.dt", base and base.grid.dt),
        )
    except (DomainError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None

    steady = _reference(entries.get("reference.family", "auto"), params, boundary)

    kind = entries.get("initial.kind")
    if kind is None:
        initial = base.initial if base else InitialProfile.linear()
    elif kind == "linear":
        initial = InitialProfile.linear()
    elif kind == "sine":
        initial = InitialProfile.sine()
    elif kind == "steady":
        fam = entries.get("initial.family") or (steady.family.value if steady else None)
        if fam is None:
            raise ConfigError("initial.kind = steady needs initial.family")
        rep = derive_boundary(fam, params, boundary.alpha1)
        if not rep.ok:
            raise ConfigError(f"cannot sample {fam} steady state: {'; '.join(rep.violations)}")
        initial = InitialProfile.explicit(rep.steady_state(params))
    elif kind == "custom":
        if "initial.file" not in entries:
            raise ConfigError("initial.kind = custom needs initial.file")
        path = Path(entries["initial.file"])
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        initial = InitialProfile.custom(*_read_custom(path))
    else:
        raise ConfigError(f"unknown initial.kind {kind!r}")

    try:
        config = SimConfig(
            params=params,
            boundary=boundary,
            initial=initial,
            grid=grid,
            t_end=num("run.t_end", base.t_end if base else 2.0),
            snapshot_every=num("run.snapshot_every", 10, int),
            steady=steady,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return Experiment(name, config)


def _reference(choice: str, params: ModelParams, boundary: BoundaryData):
    if choice == "none":
        return None
    if choice == "auto":
        ok = [rep for rep in match_families(params, boundary).values() if rep.ok]
        return ok[0].steady_state(params) if len(ok) == 1 else None
    try:
        fam = Family(choice)
    except ValueError:
        raise ConfigError(f"unknown reference.family {choice!r}") from None
    rep = validate_state(fam, params, boundary)
    if not rep.ok:
        raise ConfigError(f"boundary data do not fit {fam.value}: {'; '.join(rep.violations)}")
    return rep.steady_state(params)


def load_config(path: str | Path) -> Experiment:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return build_experiment(parse_text(text), name=path.stem, base_dir=path.parent)
