"""Command-line scenario runner emitting deterministic CSV/JSON data.

Every output starts with ``#``-prefixed metadata lines holding the fully
resolved configuration, so an output file can itself be passed back as
``--config`` to reproduce the run.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .density import KINDS, density_map, phi_profile
from .errors import ContractError, DomainError, TruncationError
from .evolution import evolve
from .observables import observe
from .oracle import max_amplitude_deviation, oracle_evolve
from .state import Representation
from .wavepacket import SimConfig, initial_state

MAGIC = "# dirac-osc output"
ORACLE_THRESHOLD = 1e-8

CONFIG_KEYS = {
    "N": float, "r": float,
    "alpha_re": float, "alpha_im": float, "beta_re": float, "beta_im": float,
    "representation": str,
    "t_start": float, "t_end": float, "t_steps": int,
    "tail_tolerance": float, "theta_points": int, "phi_points": int, "radius": float,
}
SCENARIO_KEYS = {
    "times": str, "kinds": str, "basis_cap": int, "profile_theta": float,
    "spin_theta": float, "spin_phi": float,
}
SCENARIO_DEFAULTS = {
    "density": {"times": "0,10", "kinds": "total"},
    "decompose": {"times": "10", "profile_theta": np.pi / 2},
    "oracle-check": {"N": 4.0, "times": "0,1,5,10", "basis_cap": 25},
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    return format(float(x), ".16e")


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; a dirac-osc output file is read from its metadata."""
    text = Path(path).read_text().splitlines()
    is_output = bool(text) and text[0].strip() == MAGIC
    values = {}
    for raw in text:
        line = raw.strip()
        if is_output:
            if not line.startswith("#"):
                break
            line = line[1:].strip()
        elif line.startswith("#"):
            continue
        if not line or "=" not in line:
            continue
        key, _, value = (s.strip() for s in line.partition("="))
        if key in ("scenario", "version", "time", "kind"):
            continue
        if key not in CONFIG_KEYS and key not in SCENARIO_KEYS:
            raise UsageError(f"unknown config key {key!r} in {path}")
        values[key] = value
    return values


def _coerce(key: str, value):
    kind = CONFIG_KEYS.get(key) or SCENARIO_KEYS[key]
    try:
        return kind(value)
    except ValueError as exc:
        raise UsageError(f"bad value for {key}: {value!r}") from exc


def resolve(args: argparse.Namespace) -> tuple[SimConfig, dict]:
    """Merge defaults, config file and flags (flags win) into a config and scenario options."""
    merged = dict(SCENARIO_DEFAULTS.get(args.scenario, {}))
    if args.config:
        try:
            merged.update(read_config_file(args.config))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
    for key in (*CONFIG_KEYS, *SCENARIO_KEYS):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    merged = {k: _coerce(k, v) for k, v in merged.items()}
    extras = {k: merged.pop(k) for k in list(merged) if k in SCENARIO_KEYS}
    kwargs = {k: v for k, v in merged.items() if not k.startswith(("alpha_", "beta_"))}
    if "spin_theta" in extras or "spin_phi" in extras:
        sp_theta, sp_phi = extras.pop("spin_theta", 0.0), extras.pop("spin_phi", 0.0)
        alpha = np.cos(sp_theta / 2)
        beta = np.exp(1j * sp_phi) * np.sin(sp_theta / 2)
    else:
        alpha = complex(merged.get("alpha_re", np.sqrt(0.5)), merged.get("alpha_im", 0.0))
        beta = complex(merged.get("beta_re", np.sqrt(0.5)), merged.get("beta_im", 0.0))
    try:
        config = SimConfig(alpha=alpha, beta=beta, **kwargs)
    except (DomainError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    return config, extras


def metadata(scenario: str, config: SimConfig, extras: dict) -> list[tuple[str, str]]:
    c = config
    items = [
        ("scenario", scenario), ("version", __version__),
        ("N", repr(c.N)), ("r", repr(c.r)),
        ("alpha_re", repr(c.alpha.real)), ("alpha_im", repr(c.alpha.imag)),
        ("beta_re", repr(c.beta.real)), ("beta_im", repr(c.beta.imag)),
        ("representation", c.representation.value),
        ("t_start", repr(c.t_start)), ("t_end", repr(float(c.t_end))), ("t_steps", str(c.t_steps)),
        ("tail_tolerance", repr(c.tail_tolerance)),
        ("theta_points", str(c.theta_points)), ("phi_points", str(c.phi_points)),
        ("radius", repr(float(c.radius))),
    ]
    for key in sorted(extras):
        value = extras[key]
        items.append((key, repr(value) if isinstance(value, float) else str(value)))
    return items


def write_table(path, meta, columns, rows, fmt_name="csv", extra_meta=()) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt_name == "json":
        doc = {"metadata": dict(list(meta) + list(extra_meta)), "columns": list(columns),
               "rows": [[float(v) for v in row] for row in rows]}
        path.write_text(json.dumps(doc, indent=1) + "\n")
        return
    lines = [MAGIC]
    lines += [f"# {k} = {v}" for k, v in meta]
    lines += [f"# {k} = {v}" for k, v in extra_meta]
    lines.append(",".join(columns))
    lines += [",".join(fmt(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")


def _times(extras: dict) -> list[float]:
    try:
        return [float(x) for x in str(extras["times"]).split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad times list {extras['times']!r}") from exc


def _pmap(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


SPIN_COLUMNS = ("t", "t_omega", "sigma_x", "sigma_y", "sigma_z", "L_z", "J_z", "norm",
                "pos_weight", "neg_weight")


def spin_rows(config: SimConfig, workers: int = 1) -> list[list[float]]:
    state0 = initial_state(config)

    def row(t):
        rec = observe(evolve(state0, t))
        return [t, t * config.omega, rec.sigma_x, rec.sigma_y, rec.sigma_z, rec.L_z, rec.J_z,
                rec.norm, rec.positive_weight, rec.negative_weight]

    return _pmap(row, [float(t) for t in config.time_grid], workers)


def run_spins(config: SimConfig, output, fmt_name="csv", workers=1, extras=None) -> Path:
    rows = spin_rows(config, workers)
    write_table(output, metadata("spins", config, extras or {}), SPIN_COLUMNS, rows, fmt_name)
    return Path(output)


def run_compare(config: SimConfig, output, fmt_name="csv", workers=1, extras=None) -> Path:
    columns = ["t", "t_omega"]
    per_rep = []
    for rep in Representation:
        cfg = SimConfig(**{**config.as_dict(), "representation": rep})
        rows = spin_rows(cfg, workers)
        columns += [f"{name}_{rep.value}" for name in ("sigma_x", "sigma_y", "sigma_z", "L_z", "norm")]
        per_rep.append([r[2:6] + [r[7]] for r in rows])
    rows = [[t, t * config.omega] + sum((block[i] for block in per_rep), [])
            for i, t in enumerate(config.time_grid)]
    write_table(output, metadata("compare-representations", config, extras or {}), columns, rows, fmt_name)
    return Path(output)


def _check_kinds(config: SimConfig, kinds) -> None:
    for kind in kinds:
        if kind not in KINDS:
            raise UsageError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
        if kind in ("positive", "negative") and config.representation is not Representation.DIRAC:
            raise UsageError(f"kind {kind!r} needs the Dirac representation")


def run_density(config: SimConfig, times, kinds, output_dir, fmt_name="csv", workers=1, extras=None) -> list[Path]:
    _check_kinds(config, kinds)
    state0 = initial_state(config)
    theta, phi = config.theta_grid, config.phi_grid
    jobs = [(t, k) for t in times for k in kinds]

    def compute(job):
        t, kind = job
        return density_map(evolve(state0, t), config.radius, kind, theta, phi)

    maps = _pmap(compute, jobs, workers)
    paths = []
    meta = metadata("density", config, extras or {})
    for (t, kind), m in zip(jobs, maps):
        path = Path(output_dir) / f"density_{kind}_t{t:g}.{fmt_name}"
        T, P = np.meshgrid(theta, phi, indexing="ij")
        rows = np.column_stack([T.ravel(), P.ravel(), m.values.ravel()])
        write_table(path, meta, ("theta", "phi", "value"), rows, fmt_name,
                    extra_meta=[("time", repr(float(t))), ("kind", kind)])
        paths.append(path)
    return paths


def run_decompose(config: SimConfig, time, output, theta=np.pi / 2, fmt_name="csv", extras=None) -> Path:
    kinds = ["total", "c1", "c2", "c3", "c4"]
    if config.representation is Representation.DIRAC:
        kinds += ["positive", "negative"]
    state = evolve(initial_state(config), time)
    phi = config.phi_grid
    cols = [phi_profile(state, config.radius, theta, k, phi)[1] for k in kinds]
    rows = np.column_stack([phi] + cols)
    write_table(output, metadata("decompose", config, extras or {}), ["phi"] + kinds, rows, fmt_name)
    return Path(output)


def run_oracle_check(config: SimConfig, times, basis_cap: int, output, fmt_name="csv", extras=None) -> float:
    state0 = initial_state(config)
    if basis_cap < state0.l_max:
        raise TruncationError(f"basis cap {basis_cap} below l_max {state0.l_max}")
    rows = [[t, max_amplitude_deviation(evolve(state0, t), oracle_evolve(state0, t, basis_cap))]
            for t in times]
    write_table(output, metadata("oracle-check", config, extras or {}), ("t", "max_deviation"), rows, fmt_name)
    return max(r[1] for r in rows)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dirac-osc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="scenario", required=True, parser_class=_Parser)
    names = ("spins", "density", "decompose", "compare-representations", "oracle-check")
    for name in names:
        p = sub.add_parser(name)
        p.add_argument("--config", help="key = value file, or a previous output file")
        p.add_argument("--output", "-o", help="output file (directory for density)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--workers", type=int, default=1)
        for key in (*CONFIG_KEYS, *SCENARIO_KEYS):
            flags = [f"--{key}"] + ([f"--{key.replace('_', '-')}"] if "_" in key else [])
            p.add_argument(*flags, dest=key, default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config, extras = resolve(args)
        ext = args.format
        out = args.output
        if args.scenario == "spins":
            run_spins(config, out or f"spins.{ext}", ext, args.workers, extras)
        elif args.scenario == "compare-representations":
            run_compare(config, out or f"compare.{ext}", ext, args.workers, extras)
        elif args.scenario == "density":
            kinds = [k.strip() for k in str(extras["kinds"]).split(",") if k.strip()]
            run_density(config, _times(extras), kinds, out or "density", ext, args.workers, extras)
        elif args.scenario == "decompose":
            times = _times(extras)
            if len(times) != 1:
                raise UsageError("decompose takes exactly one time")
            run_decompose(config, times[0], out or f"decompose.{ext}", extras["profile_theta"], ext, extras)
        else:
            worst = run_oracle_check(config, _times(extras), extras["basis_cap"],
                                     out or f"oracle.{ext}", ext, extras)
            print(f"max deviation {worst:.3e}")
            if not worst < ORACLE_THRESHOLD:
                print(f"oracle check failed: {worst:.3e} >= {ORACLE_THRESHOLD:g}", file=sys.stderr)
                return 2
    except (UsageError, ContractError, DomainError, TruncationError) as exc:
        print(f"dirac-osc: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"dirac-osc: I/O error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
