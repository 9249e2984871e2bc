"""Config-driven experiment runner.

Subcommands
-----------
simulate        integrate one trajectory and write it to disk
estimate        batch-means reports for a (delta, seed, checkpoint) grid
sweep           confidence-band time series per delta (figure analogues)
reproduce-table rerun a bundled reference-variance table and compare ratios
ratefn          rate-functional report for a grid density
spectral        circle diagnostics: sigma^2 tables and rate curves

All outputs are deterministic functions of (config, seeds): repeated runs
produce byte-identical data files; only the manifest carries a timestamp.
Exit codes: 0 success, 2 config error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .drift import J2, make_constant_drift, make_rotational_drift, make_wedge_drift
from .errors import (
    ConfigError,
    ParameterError,
    PropagationError,
    SolverError,
)
from .estimators import (
    asymptotic_variance_estimate,
    batch_count_schedule,
    batch_means,
    get_observable,
)
from .potentials import get_potential
from .ratefn import GridDensity, rate_irreversible
from .rng import NORMAL_ALGORITHM, NormalStream, splitmix64
from .sampler import (
    SdeConfig,
    simulate,
    simulate_cells,
    save_trajectory,
    stable_substeps,
)
from .spectral import FourierObservable, fourier_sigma2, observable_rate, rate_curvature

RESULT_COLUMNS = (
    "potential,delta,D,dt,t,v,m,estimate,s2m,ci_lo,ci_hi,"
    "sigma2_batch,sigma2_autocov,seed"
).split(",")

SWEEP_COLUMNS = ["delta", "t", "estimate", "ci_lo", "ci_hi"]

#: Reference variance tables for the three benchmark potentials
#: (delta -> one value per horizon).  Individual cells are single stochastic
#: realizations; only delta-to-delta ratios at fixed t are comparable.
TABLE_SPECS = {
    1: {
        "potential": "bimodal1",
        "deltas": (0.0, 10.0, 100.0),
        "times": (25.0, 100.0, 160.0, 220.0, 295.0),
        "reference": {
            0.0: (0.22, 0.08, 0.038, 0.029, 0.011),
            10.0: (0.19, 0.01, 0.007, 0.005, 0.002),
            100.0: (0.09, 0.001, 3e-4, 2.8e-4, 1.3e-4),
        },
    },
    2: {
        "potential": "bimodal2",
        "deltas": (0.0, 10.0),
        "times": (100.0, 200.0, 300.0, 400.0, 500.0, 600.0, 700.0),
        "reference": {
            0.0: (0.01, 0.006, 0.002, 0.002, 0.002, 0.003, 0.002),
            10.0: (0.003, 7e-4, 2e-4, 1e-4, 7e-5, 6e-5, 6e-5),
        },
    },
    3: {
        "potential": "threewell",
        "deltas": (0.0, 10.0),
        "times": (100.0, 200.0, 300.0, 400.0, 500.0, 600.0, 700.0),
        "reference": {
            0.0: (0.004, 0.002, 0.002, 0.001, 0.001, 0.001, 0.001),
            10.0: (0.001, 3e-4, 2e-4, 1e-4, 1e-4, 1e-4, 1e-4),
        },
    },
}


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated sampling-experiment description (JSON document)."""

    potential: str
    deltas: tuple[float, ...]
    diffusion: float
    dt: float
    horizon: float
    burn_in: float
    seeds: tuple[int, ...]
    potential_params: dict = field(default_factory=dict)
    drift_kind: str = "rotational"
    observable: str = "sumsq"
    alpha: float = 0.05
    batches: int | None = None  # None -> schedule m(t)
    checkpoints: tuple[float, ...] = ()
    initial: tuple[float, ...] | None = None
    substeps: int | str = "auto"

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        try:
            potential = doc["potential"]
            if isinstance(potential, dict):
                name = potential["name"]
                params = dict(potential.get("params", {}))
            else:
                name, params = str(potential), {}
            drift_doc = doc.get("drift", {"kind": "rotational", "delta": 0.0})
            kind = drift_doc.get("kind", "rotational")
            if "deltas" in drift_doc:
                deltas = tuple(float(d) for d in drift_doc["deltas"])
            elif "delta" in drift_doc:
                deltas = (float(drift_doc["delta"]),)
            else:
                deltas = (0.0,)
            cfg = cls(
                potential=name,
                potential_params=params,
                drift_kind=kind,
                deltas=deltas,
                diffusion=float(doc["diffusion"]),
                dt=float(doc["dt"]),
                horizon=float(doc["horizon"]),
                burn_in=float(doc.get("burn_in", 5.0)),
                observable=str(doc.get("observable", "sumsq")),
                alpha=float(doc.get("alpha", 0.05)),
                batches=None if doc.get("batches") in (None, "auto")
                else int(doc["batches"]),
                seeds=tuple(int(s) for s in doc.get("seeds", ())),
                checkpoints=tuple(float(t) for t in doc.get("checkpoints", ())),
                initial=None if doc.get("initial") is None
                else tuple(float(v) for v in doc["initial"]),
                substeps=doc.get("substeps", "auto"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid experiment config: {exc}") from exc
        cfg.validate()
        return cfg

    def validate(self) -> None:
        try:
            pot = get_potential(self.potential, **self.potential_params)
            get_observable(self.observable)
        except ParameterError as exc:
            raise ConfigError(str(exc)) from exc
        if not self.deltas:
            raise ConfigError("delta list must be nonempty")
        if self.drift_kind not in ("rotational", "wedge", "constant", "none"):
            raise ConfigError(f"unknown drift kind {self.drift_kind!r}")
        if not self.seeds:
            raise ConfigError("seed list must be nonempty")
        if self.dt <= 0 or self.horizon <= self.burn_in:
            raise ConfigError("need dt > 0 and horizon > burn_in")
        if not 0 < self.alpha < 1:
            raise ConfigError("alpha must lie in (0, 1)")
        if self.initial is not None and len(self.initial) != pot.dimension:
            raise ConfigError("initial state dimension mismatch")
        for t in self.checkpoints:
            if not self.burn_in < t <= self.horizon + 1e-9:
                raise ConfigError(
                    f"checkpoint {t} outside (burn_in, horizon]"
                )

    def resolved_checkpoints(self) -> tuple[float, ...]:
        return self.checkpoints if self.checkpoints else (self.horizon,)

    def substeps_for(self, delta: float) -> int:
        if self.substeps == "auto":
            return stable_substeps(delta, self.dt)
        return int(self.substeps)

    def build_potential(self):
        return get_potential(self.potential, **self.potential_params)

    def build_drift(self, potential, delta: float):
        if self.drift_kind == "none" or delta == 0.0:
            # delta = 0 is exactly reversible dynamics for every recipe
            return None
        if self.drift_kind == "rotational":
            return make_rotational_drift(J2, potential, delta)
        if self.drift_kind == "wedge":
            return make_wedge_drift(potential, (), delta)
        if self.drift_kind == "constant":
            return make_constant_drift([1.0] * potential.dimension, delta)
        raise ConfigError(f"unknown drift kind {self.drift_kind!r}")

    def default_initial(self, potential) -> tuple[float, ...]:
        return self.initial if self.initial is not None \
            else (0.0,) * potential.dimension

    def to_dict(self) -> dict:
        return {
            "potential": {"name": self.potential, "params": self.potential_params},
            "drift": {"kind": self.drift_kind, "deltas": list(self.deltas)},
            "diffusion": self.diffusion,
            "dt": self.dt,
            "horizon": self.horizon,
            "burn_in": self.burn_in,
            "observable": self.observable,
            "alpha": self.alpha,
            "batches": self.batches,
            "seeds": list(self.seeds),
            "checkpoints": list(self.checkpoints),
            "initial": None if self.initial is None else list(self.initial),
            "substeps": self.substeps,
        }


# ---------------------------------------------------------------------------
# experiment execution


def _delta_group_rows(config: ExperimentConfig, delta_index: int) -> list[dict]:
    """Simulate every seed of one delta in lockstep and build result rows.

    One row per (seed, checkpoint).  Cell (delta, seed) owns the RNG stream
    splitmix64(delta_index, seed_index), so results do not depend on how
    groups are scheduled across workers.
    """
    delta = config.deltas[delta_index]
    potential = config.build_potential()
    obs = get_observable(config.observable)
    drift = config.build_drift(potential, delta)
    substeps = config.substeps_for(delta)
    initial = config.default_initial(potential)
    n_steps = int(math.floor(config.horizon / config.dt + 1e-9))
    streams = [
        NormalStream(seed, splitmix64(delta_index, j))
        for j, seed in enumerate(config.seeds)
    ]
    series = simulate_cells(
        potential,
        [drift] * len(config.seeds),
        config.diffusion,
        config.dt,
        n_steps,
        [initial] * len(config.seeds),
        streams,
        observable=obs.fn,
        substeps=substeps,
    )
    rows = []
    for j, seed in enumerate(config.seeds):
        for t in config.resolved_checkpoints():
            n = int(round(t / config.dt))
            window = series[j][: n + 1]
            m = config.batches if config.batches else batch_count_schedule(t)
            report = batch_means(window, m, config.alpha, config.dt, config.burn_in)
            sigma2_b = report.variance_scaled()
            sigma2_a = asymptotic_variance_estimate(
                window, config.dt, m=m, burn_in=config.burn_in, method="autocov"
            )
            rows.append({
                "potential": config.potential,
                "delta": delta,
                "D": config.diffusion,
                "dt": config.dt,
                "t": t,
                "v": config.burn_in,
                "m": m,
                "estimate": report.estimate,
                "s2m": report.s2m,
                "ci_lo": report.ci_lower,
                "ci_hi": report.ci_upper,
                "sigma2_batch": sigma2_b,
                "sigma2_autocov": sigma2_a,
                "seed": seed,
            })
    return rows


def run_experiment(config: ExperimentConfig, threads: int = 1) -> list[dict]:
    """Rows for the full (delta, seed, checkpoint) grid, in deterministic
    cell order regardless of scheduling."""
    indices = range(len(config.deltas))
    if threads > 1 and len(config.deltas) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
            groups = list(pool.map(_run_group_task,
                                   [(config, i) for i in indices]))
    else:
        groups = [_delta_group_rows(config, i) for i in indices]
    rows = []
    for group in groups:
        rows.extend(group)
    return rows


def _run_group_task(args):
    config, index = args
    return _delta_group_rows(config, index)


def _format_value(value) -> str:
    if isinstance(value, float):
        return repr(float(value))  # shortest round-trip form, numpy included
    return str(value)


def write_csv(path: Path, columns, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_value(row[c]) for c in columns])


def write_manifest(path: Path, config_doc: dict, extra: dict | None = None) -> None:
    doc = {
        "version": __version__,
        "rng": NORMAL_ALGORITHM,
        "created": time.strftime("%Y-%m-%dT%H:%M:%S"),
        "config": config_doc,
    }
    if extra:
        doc.update(extra)
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# table reproduction


@dataclass(frozen=True)
class CellComparison:
    reference_value: float
    measured_value: float
    reference_ratio: float | None
    measured_ratio: float | None
    ratio_check: bool


@dataclass(frozen=True)
class TableComparison:
    table_id: int
    scale: float
    cells: dict

    def ratio(self, delta: float, t: float) -> float:
        return self.cells[(delta, t)].measured_ratio

    @property
    def all_pass(self) -> bool:
        return all(c.ratio_check for c in self.cells.values())


def reproduce_table(table_id: int, scale: float = 1.0, seeds=(1, 2, 3, 4, 5),
                    threads: int = 1) -> tuple[TableComparison, list[dict]]:
    """Rerun one bundled reference table and compare variance ratios.

    Individual variance cells are single stochastic realizations, so the
    check is on delta-to-delta ratios at fixed t: the measured ratio of
    seed-median variances must reach at least a third of the reference
    ratio.  (The band is one-sided: a stabilized integrator routinely shows
    *more* variance reduction than the printed cells, which is a success,
    not a mismatch.)  ``scale`` rescales every horizon.
    """
    if table_id not in TABLE_SPECS:
        raise ConfigError(f"table id must be one of {sorted(TABLE_SPECS)}")
    if not 0 < scale <= 1.0:
        raise ConfigError("scale must lie in (0, 1]")
    spec = TABLE_SPECS[table_id]
    times = tuple(t * scale for t in spec["times"])
    burn_in = min(5.0, 0.25 * min(times))
    config = ExperimentConfig(
        potential=spec["potential"],
        deltas=spec["deltas"],
        diffusion=0.1,
        dt=1e-3,
        horizon=max(times),
        burn_in=burn_in,
        observable="sumsq",
        seeds=tuple(seeds),
        checkpoints=times,
        initial=None,
    )
    rows = run_experiment(config, threads=threads)

    medians: dict = {}
    for delta in spec["deltas"]:
        for t in times:
            values = [r["s2m"] for r in rows if r["delta"] == delta and r["t"] == t]
            medians[(delta, t)] = float(np.median(values))

    cells = {}
    base = spec["deltas"][0]
    for delta in spec["deltas"]:
        for i, t in enumerate(times):
            reference = spec["reference"][delta][i]
            measured = medians[(delta, t)]
            if delta == base:
                cells[(delta, t)] = CellComparison(reference, measured, None, None, True)
                continue
            ref_ratio = spec["reference"][base][i] / reference
            meas_ratio = medians[(base, t)] / measured
            ok = meas_ratio >= ref_ratio / 3.0
            cells[(delta, t)] = CellComparison(reference, measured, ref_ratio,
                                               meas_ratio, ok)
    return TableComparison(table_id, scale, cells), rows


# ---------------------------------------------------------------------------
# subcommands


def _load_config_doc(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc


def _experiment_config(args) -> ExperimentConfig:
    doc = _load_config_doc(args.config)
    if args.seeds:
        doc["seeds"] = [int(s) for s in args.seeds.split(",") if s]
    return ExperimentConfig.from_dict(doc)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_simulate(args) -> int:
    config = _experiment_config(args)
    out = _out_dir(args)
    potential = config.build_potential()
    delta = config.deltas[0]
    sde = SdeConfig(
        potential=potential,
        drift=config.build_drift(potential, delta),
        diffusion=config.diffusion,
        dt=config.dt,
        horizon=config.horizon,
        initial=config.default_initial(potential),
        seed=config.seeds[0],
        stream_id=0,
        substeps=config.substeps_for(delta),
    )
    trajectory = simulate(sde)
    path = Path(args.save_path) if args.save_path else out / "trajectory.traj"
    save_trajectory(trajectory, path)
    write_manifest(out / "manifest.json", config.to_dict(),
                   {"trajectory": str(path)})
    print(f"wrote {path} ({len(trajectory)} states)")
    return 0


def cmd_estimate(args) -> int:
    config = _experiment_config(args)
    out = _out_dir(args)
    rows = run_experiment(config, threads=args.threads)
    write_csv(out / "results.csv", RESULT_COLUMNS, rows)
    write_manifest(out / "manifest.json", config.to_dict(),
                   {"threads": args.threads})
    print(f"wrote {out / 'results.csv'} ({len(rows)} rows)")
    return 0


def cmd_sweep(args) -> int:
    config = _experiment_config(args)
    out = _out_dir(args)
    rows = run_experiment(config, threads=args.threads)
    sweep_rows = [
        {k: row[k] for k in SWEEP_COLUMNS}
        for row in sorted(rows, key=lambda r: (r["delta"], r["seed"], r["t"]))
    ]
    write_csv(out / "sweep.csv", SWEEP_COLUMNS, sweep_rows)
    write_manifest(out / "manifest.json", config.to_dict(),
                   {"threads": args.threads})
    print(f"wrote {out / 'sweep.csv'} ({len(sweep_rows)} rows)")
    return 0


def cmd_reproduce_table(args) -> int:
    out = _out_dir(args)
    seeds = tuple(int(s) for s in args.seeds.split(",")) if args.seeds \
        else (1, 2, 3, 4, 5)
    comparison, rows = reproduce_table(args.table, scale=args.scale,
                                       seeds=seeds, threads=args.threads)
    write_csv(out / "results.csv", RESULT_COLUMNS, rows)
    table_rows = []
    for (delta, t), cell in sorted(comparison.cells.items()):
        table_rows.append({
            "table": args.table,
            "delta": delta,
            "t": t,
            "reference_value": cell.reference_value,
            "measured_value": cell.measured_value,
            "reference_ratio": "" if cell.reference_ratio is None
            else cell.reference_ratio,
            "measured_ratio": "" if cell.measured_ratio is None
            else cell.measured_ratio,
            "ratio_check": cell.ratio_check,
        })
    columns = ["table", "delta", "t", "reference_value", "measured_value",
               "reference_ratio", "measured_ratio", "ratio_check"]
    write_csv(out / f"table{args.table}_comparison.csv", columns, table_rows)
    write_manifest(out / "manifest.json",
                   {"table": args.table, "scale": args.scale, "seeds": list(seeds)},
                   {"threads": args.threads})
    status = "PASS" if comparison.all_pass else "FAIL"
    print(f"table {args.table} ratio checks: {status}")
    return 0


def cmd_ratefn(args) -> int:
    doc = _load_config_doc(args.config)
    out = _out_dir(args)
    try:
        size = int(doc["grid"])
        diffusion = float(doc.get("diffusion", 0.5))
        pot_doc = doc["potential"]
        potential = get_potential(pot_doc["name"], **pot_doc.get("params", {}))
        density_doc = doc["density"]
        kind = density_doc["kind"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid ratefn config: {exc}") from exc

    if kind == "gibbs":
        density = GridDensity.from_potential(
            potential, float(density_doc.get("diffusion", diffusion)), size,
            shift=density_doc.get("shift"),
        )
    elif kind == "uniform":
        density = GridDensity.uniform(size, potential.dimension)
    elif kind == "file":
        raw = np.loadtxt(density_doc["path"])
        shape = (size,) if potential.dimension == 1 else (size, size)
        density = GridDensity.from_values(raw.reshape(shape))
    else:
        raise ConfigError(f"unknown density kind {kind!r}")

    drift_doc = doc.get("drift", {"kind": "rotational", "delta": 1.0})
    delta = float(drift_doc.get("delta", 1.0))
    if drift_doc.get("kind", "rotational") == "rotational":
        drift = make_rotational_drift(J2, potential, delta)
    elif drift_doc["kind"] == "wedge":
        drift = make_wedge_drift(potential, (), delta)
    elif drift_doc["kind"] == "constant":
        drift = make_constant_drift(
            drift_doc.get("vector", [1.0] * potential.dimension), delta)
    else:
        raise ConfigError(f"unknown drift kind {drift_doc['kind']!r}")

    report = rate_irreversible(density, potential, drift, diffusion,
                               compute_quadratic=bool(doc.get("quadratic", False)))
    report_doc = {
        "I0": report.i0,
        "J_C": report.j_c,
        "I_C": report.i_c,
        "K": report.k,
        "diffusion": report.diffusion,
        "grid": list(report.grid_shape),
        "gauge_residual": report.gauge_residual,
        "gauge_residual_rel": report.gauge_residual_rel,
        "lemma_value": report.lemma_value,
        "lemma_mismatch": report.lemma_mismatch,
    }
    (out / "rate_report.json").write_text(
        json.dumps(report_doc, indent=2, sort_keys=True) + "\n")
    columns = ["potential", "delta", "D", "grid", "I0", "J_C", "I_C", "K"]
    write_csv(out / "rate_summary.csv", columns, [{
        "potential": potential.name,
        "delta": delta,
        "D": diffusion,
        "grid": size,
        "I0": report.i0,
        "J_C": report.j_c,
        "I_C": report.i_c,
        "K": "" if report.k is None else report.k,
    }])
    print(f"wrote {out / 'rate_report.json'}")
    return 0


def cmd_spectral(args) -> int:
    doc = _load_config_doc(args.config)
    out = _out_dir(args)
    try:
        deltas = [float(d) for d in doc["deltas"]]
        diffusion = float(doc.get("diffusion", 1.0))
        size = int(doc.get("grid", 256))
        ell_grid = [float(x) for x in doc.get("ell_grid", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid spectral config: {exc}") from exc
    observable = FourierObservable.cosine()
    samples = observable.samples(size)

    sigma_rows, curve_rows = [], []
    for delta in deltas:
        curvature, implied = rate_curvature(samples, delta, diffusion)
        sigma_rows.append({
            "delta": delta,
            "D": diffusion,
            "sigma2_fourier": fourier_sigma2(observable, delta, diffusion),
            "sigma2_curvature": implied,
        })
        if ell_grid:
            curve = observable_rate(samples, delta, diffusion, ell_grid)
            for ell, rate in zip(curve.ells, curve.rates):
                curve_rows.append({
                    "delta": delta, "D": diffusion,
                    "ell": float(ell), "rate": float(rate),
                })
    write_csv(out / "sigma2.csv",
              ["delta", "D", "sigma2_fourier", "sigma2_curvature"], sigma_rows)
    if curve_rows:
        write_csv(out / "rate_curve.csv", ["delta", "D", "ell", "rate"], curve_rows)
    write_manifest(out / "manifest.json", doc)
    print(f"wrote {out / 'sigma2.csv'}")
    return 0


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irrlangevin",
        description="Irreversible Langevin sampling experiments",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a JSON config document")
    common.add_argument("--out", default="out", help="output directory")
    common.add_argument("--seeds", help="comma-separated seed list override")
    common.add_argument("--scale", type=float, default=1.0,
                        help="horizon rescaling factor (reproduce-table)")
    common.add_argument("--threads", type=int, default=1,
                        help="parallel workers over delta groups")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("simulate", parents=[common],
                       help="integrate and store one trajectory")
    p.add_argument("--save-path", help="trajectory file destination")
    p.set_defaults(handler=cmd_simulate, needs_config=True)
    p = sub.add_parser("estimate", parents=[common],
                       help="batch-means estimation grid")
    p.set_defaults(handler=cmd_estimate, needs_config=True)
    p = sub.add_parser("sweep", parents=[common],
                       help="confidence-band time series per delta")
    p.set_defaults(handler=cmd_sweep, needs_config=True)
    p = sub.add_parser("reproduce-table", parents=[common],
                       help="rerun a bundled reference-variance table")
    p.add_argument("--table", type=int, required=True, choices=sorted(TABLE_SPECS))
    p.set_defaults(handler=cmd_reproduce_table, needs_config=False)
    p = sub.add_parser("ratefn", parents=[common],
                       help="rate-functional report for a grid density")
    p.set_defaults(handler=cmd_ratefn, needs_config=True)
    p = sub.add_parser("spectral", parents=[common],
                       help="circle sigma^2 tables and rate curves")
    p.set_defaults(handler=cmd_spectral, needs_config=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "needs_config", False) and not args.config:
            raise ConfigError(f"{args.command} requires --config")
        return args.handler(args)
    except (ConfigError, ParameterError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (SolverError, PropagationError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
