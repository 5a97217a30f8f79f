"""Experiment harness CLI.

Three subcommands reproduce the library's reference experiments and emit CSV
artifacts (plus optional SVG charts):

* ``simple``      -- two-input/two-output rule-base demo on [0, 1]
* ``mackey-glass``-- chaotic series prediction with swarm-fitted sets
* ``it2fpid``     -- fuzzy PID step-response sweep over plants x algorithms

Exit codes: 0 success, 1 usage error, 2 numeric/validation failure.
"""

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import dynamics, svgplot
from .config import load_run_options, load_system
from .errors import ParameterError
from .inference import FuzzySystem
from .pso import PSOConfig, optimize
from .sets import Grid, gaussian_uncert_std_set
from .typereduce import ALGORITHMS, crisp

from .inference import METHODS

__all__ = ["RunManifest", "main", "cmd_simple", "cmd_mackey_glass", "cmd_it2fpid"]


@dataclass
class RunManifest:
    """Resolved settings for one harness run."""

    subcommand: str
    out_dir: str
    seed: int = 0
    algorithm: str = "KM"
    method: str = "Centroid"
    domain_points: int = 100
    dt: float | None = None
    plot: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ParameterError(
                f"unknown algorithm {self.algorithm!r}; choose from {sorted(ALGORITHMS)}"
            )
        if self.method not in METHODS:
            raise ParameterError(
                f"unknown method {self.method!r}; choose from {list(METHODS)}"
            )
        os.makedirs(self.out_dir, exist_ok=True)
        if not os.access(self.out_dir, os.W_OK):
            raise ParameterError(f"output directory {self.out_dir!r} is not writable")


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (np.floating,)):
        return repr(float(value))
    return str(value)


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_sets_csv(path, named_sets):
    rows = []
    for name, fs in named_sets.items():
        for x, lo, up in fs.export_rows():
            rows.append((name, x, lo, up))
    _write_csv(path, ["set", "x", "lower", "upper"], rows)


def _write_set_csv(path, fs):
    _write_csv(path, ["x", "lower", "upper"], fs.export_rows())


def _plot_sets(path, named_sets):
    series = {}
    for name, fs in named_sets.items():
        x = fs.grid.points
        series[f"{name} upper"] = (x, fs.upper)
        series[f"{name} lower"] = (x, fs.lower)
    svgplot.line_chart(path, series, xlabel="x", ylabel="membership")


# -- simple rule-base demo -----------------------------------------------------


def build_demo_system(points=100):
    """Two inputs, two outputs, three uncertain-std Gaussian sets on [0, 1].

    Rule base: (Small, Small) -> (Small, Large); (Medium, Medium) ->
    (Medium, Small); (Large, Large) -> (Large, Small).
    """
    grid = Grid.uniform(0.0, 1.0, points)
    small = gaussian_uncert_std_set(grid, [0.0, 0.15, 0.1])
    medium = gaussian_uncert_std_set(grid, [0.5, 0.15, 0.1])
    large = gaussian_uncert_std_set(grid, [1.0, 0.15, 0.1])
    sets = {"Small": small, "Medium": medium, "Large": large}

    system = FuzzySystem(grid)
    system.add_input("x1").add_input("x2")
    system.add_output("y1").add_output("y2")
    system.add_rule([("x1", small), ("x2", small)], [("y1", small), ("y2", large)])
    system.add_rule([("x1", medium), ("x2", medium)], [("y1", medium), ("y2", small)])
    system.add_rule([("x1", large), ("x2", large)], [("y1", large), ("y2", small)])
    return system, sets


def cmd_simple(manifest):
    """Evaluate the demo system (or a config-defined one) and export artifacts."""
    extra = manifest.extra
    if extra.get("system_config"):
        system, sets = load_system(extra["system_config"])
        values = dict(extra.get("inputs") or {})
        missing = [n for n in system.inputs if n not in values]
        if missing:
            raise ParameterError(
                f"provide --input NAME=VALUE for inputs: {', '.join(missing)}"
            )
    else:
        system, sets = build_demo_system(manifest.domain_points)
        values = {"x1": extra.get("x1", 0.9), "x2": extra.get("x2", 0.9)}

    result = system.evaluate(
        values, method=manifest.method, algorithm=manifest.algorithm
    )

    out = manifest.out_dir
    _write_sets_csv(os.path.join(out, "simp_ex_sets.csv"), sets)
    crisp_rows = []
    for name in system.outputs:
        iv = result.intervals[name]
        _write_csv(
            os.path.join(out, f"{name}_tr.csv"), ["y_l", "y_r"], [(iv.y_l, iv.y_r)]
        )
        if result.aggregated and name in result.aggregated:
            _write_set_csv(os.path.join(out, f"{name}_out.csv"), result.aggregated[name])
        crisp_rows.append((name, iv.y_l, iv.y_r, crisp(iv)))
    _write_csv(
        os.path.join(out, "crisp.csv"), ["output", "y_l", "y_r", "crisp"], crisp_rows
    )

    if manifest.plot:
        _plot_sets(os.path.join(out, "sets.svg"), sets)
        if result.aggregated:
            _plot_sets(os.path.join(out, "outputs.svg"), result.aggregated)
    return 0


# -- Mackey-Glass prediction -----------------------------------------------


MG_INTEGRATION_DT = 0.1
MG_SAMPLE_STRIDE = 10  # sampling period 1.0
MG_TRANSIENT = 100
MG_TRAIN = 100
MG_TEST = 100


def _mackey_glass_series(seed):
    """Integrate the default equation and return the sampled series."""
    rng = np.random.default_rng(seed)
    history = 0.9 + 0.6 * rng.random()
    margin = 6
    t_end = (MG_TRANSIENT + MG_TRAIN + MG_TEST + margin) * MG_SAMPLE_STRIDE * MG_INTEGRATION_DT
    params = dynamics.MackeyGlassParams(dt=MG_INTEGRATION_DT, history=history)
    trace = dynamics.simulate_mackey_glass(params, t_end)
    series = dynamics.sample_series(trace, MG_SAMPLE_STRIDE)
    return series[MG_TRANSIENT:]


def _predictor_bounds(grid):
    lo, hi = grid.span
    per_set = [(lo, hi), (0.05, 0.5), (0.0, 0.2)]
    return np.array(per_set * dynamics.PREDICTOR_SET_COUNT)


def cmd_mackey_glass(manifest):
    """Fit predictor sets by PSO (or replay saved parameters) and export results."""
    extra = manifest.extra
    series = _mackey_glass_series(manifest.seed)
    grid = dynamics.default_predictor_grid(manifest.domain_points)
    train_window = range(2, 2 + MG_TRAIN)
    test_window = range(2 + MG_TRAIN, 2 + MG_TRAIN + MG_TEST)
    out = manifest.out_dir

    _write_csv(
        os.path.join(out, "series.csv"),
        ["t", "x"],
        [(float(i), v) for i, v in enumerate(series)],
    )

    if extra.get("skip_optimize"):
        params_path = extra.get("params_file")
        if not params_path:
            raise ParameterError("--skip-optimize needs --params FILE")
        best = _read_params(params_path)
        convergence = None
    else:

        def objective(vec):
            system = dynamics.make_predictor_system(vec, grid)
            return dynamics.prediction_mse(
                system, series, train_window, algorithm=manifest.algorithm
            )

        config = PSOConfig(
            bounds=_predictor_bounds(grid),
            swarm_size=extra.get("swarm_size", 30),
            iterations=extra.get("iterations", 200),
            seed=manifest.seed,
        )
        result = optimize(objective, config)
        best = result.best_position
        convergence = result.convergence
        _write_csv(
            os.path.join(out, "convergence.csv"),
            ["iteration", "best_mse"],
            list(enumerate(convergence)),
        )

    _write_csv(
        os.path.join(out, "params.csv"),
        ["index", "value"],
        list(enumerate(best)),
    )

    system = dynamics.make_predictor_system(best, grid)
    train_mse = dynamics.prediction_mse(
        system, series, train_window, algorithm=manifest.algorithm
    )
    test_mse = dynamics.prediction_mse(
        system, series, test_window, algorithm=manifest.algorithm
    )
    actual, preds = dynamics.predict_series(
        system, series, test_window, algorithm=manifest.algorithm
    )
    _write_csv(
        os.path.join(out, "prediction.csv"),
        ["t", "actual", "predicted", "abs_error"],
        [
            (float(t + 1), a, p, abs(a - p))
            for t, a, p in zip(test_window, actual, preds)
        ],
    )
    _write_csv(
        os.path.join(out, "mse.csv"), ["train_mse", "test_mse"], [(train_mse, test_mse)]
    )

    if manifest.plot:
        xs = np.arange(series.size)
        svgplot.line_chart(
            os.path.join(out, "series.svg"),
            {"x": (xs, series)},
            xlabel="t",
            ylabel="x",
        )
        ts = np.array([t + 1 for t in test_window], dtype=float)
        svgplot.line_chart(
            os.path.join(out, "prediction.svg"),
            {
                "actual": (ts, actual),
                "predicted": (ts, preds),
                "abs error": (ts, np.abs(actual - preds)),
            },
            xlabel="t",
        )
        if convergence is not None:
            svgplot.line_chart(
                os.path.join(out, "convergence.svg"),
                {"best MSE": (np.arange(convergence.size), convergence)},
                xlabel="iteration",
                ylabel="MSE",
            )
    return 0


def _read_params(path):
    values = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if "value" not in header:
            raise ParameterError(f"{path!r} does not look like a params.csv file")
        for line in fh:
            line = line.strip()
            if line:
                values.append(float(line.split(",")[-1]))
    return np.asarray(values)


# -- IT2FPID sweep ---------------------------------------------------------


PLANTS = {
    "nominal": dynamics.PlantParams(K=1.0, T=1.0, L=0.2),
    "perturbed-1": dynamics.PlantParams(K=1.3, T=1.9, L=0.4),
    "perturbed-2": dynamics.PlantParams(K=1.1, T=1.3, L=0.45),
}
TABLE_ALGORITHMS = ("KM", "EIASC", "WM", "BMM", "NT")


def cmd_it2fpid(manifest):
    """Closed-loop step-response sweep; one trace per (plant, algorithm)."""
    extra = manifest.extra
    plants = extra.get("plants") or list(PLANTS)
    algorithms = extra.get("algorithms") or list(TABLE_ALGORITHMS)
    for p in plants:
        if p not in PLANTS:
            raise ParameterError(f"unknown plant {p!r}; choose from {list(PLANTS)}")
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ParameterError(f"unknown algorithm {a!r}")

    dt = manifest.dt if manifest.dt else 0.005
    t_end = extra.get("t_end", 20.0)
    band = extra.get("band", 0.02)
    scaling = dynamics.ScalingFactors()
    system = dynamics.make_pid_system(
        Grid.uniform(-1.0, 1.0, manifest.domain_points),
        rule_pz=extra.get("rule_pz", "NM"),
    )

    jobs = [(p, a) for p in plants for a in algorithms]

    def run(job):
        plant_name, algorithm = job
        trace = dynamics.simulate_closed_loop(
            PLANTS[plant_name],
            scaling,
            system,
            tr_algorithm=algorithm,
            dt=dt,
            t_end=t_end,
            method=manifest.method,
        )
        report = dynamics.performance(trace, setpoint=1.0, band=band)
        return trace, report

    # each (plant, algorithm) pair is an independent deterministic simulation
    with ThreadPoolExecutor(max_workers=min(len(jobs), os.cpu_count() or 1)) as pool:
        results = dict(zip(jobs, pool.map(run, jobs)))

    out = manifest.out_dir
    table_rows = []
    for plant_name, algorithm in jobs:
        trace, report = results[(plant_name, algorithm)]
        _write_csv(
            os.path.join(out, f"trace_{plant_name}_{algorithm}.csv"),
            trace.column_names(),
            trace.rows(),
        )
        table_rows.append(
            (plant_name, algorithm, report.settling_time, report.overshoot, report.itae)
        )
    _write_csv(
        os.path.join(out, "table8.csv"),
        ["system", "algorithm", "settling_time", "overshoot_pct", "itae"],
        table_rows,
    )

    if manifest.plot:
        for plant_name in plants:
            series = {
                algorithm: (results[(plant_name, algorithm)][0].t,
                            results[(plant_name, algorithm)][0].signals["y"])
                for algorithm in algorithms
            }
            svgplot.line_chart(
                os.path.join(out, f"step_{plant_name}.svg"),
                series,
                title=plant_name,
                xlabel="t (s)",
                ylabel="y",
            )
    return 0


# -- argument handling -------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_shared(parser):
    parser.add_argument("--config", help="run-options file ([run] section defaults)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--algorithm", default="KM", choices=sorted(ALGORITHMS))
    parser.add_argument("--method", default="Centroid", choices=list(METHODS))
    parser.add_argument("--domain-points", type=int, default=100)
    parser.add_argument("--dt", type=float, default=None)
    parser.add_argument("--plot", action="store_true")


def _build_parser():
    parser = _Parser(prog="it2fuzzy", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_simple = sub.add_parser("simple", help="two-input/two-output rule-base demo")
    _add_shared(p_simple)
    p_simple.add_argument("--x1", type=float, default=0.9)
    p_simple.add_argument("--x2", type=float, default=0.9)
    p_simple.add_argument("--system-config", help="evaluate a config-defined system")
    p_simple.add_argument(
        "--input",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="input value for a config-defined system (repeatable)",
    )

    p_mg = sub.add_parser("mackey-glass", help="chaotic series prediction via PSO")
    _add_shared(p_mg)
    p_mg.add_argument("--swarm-size", type=int, default=30)
    p_mg.add_argument("--iterations", type=int, default=200)
    p_mg.add_argument("--skip-optimize", action="store_true")
    p_mg.add_argument("--params", dest="params_file", help="replay a saved params.csv")

    p_pid = sub.add_parser("it2fpid", help="fuzzy PID step-response sweep")
    _add_shared(p_pid)
    p_pid.add_argument("--plants", help="comma-separated subset of plants")
    p_pid.add_argument("--algorithms", help="comma-separated subset of algorithms")
    p_pid.add_argument("--t-end", type=float, default=20.0)
    p_pid.add_argument("--band", type=float, default=0.02)
    p_pid.add_argument(
        "--rule-pz",
        choices=["NM", "PM"],
        default="NM",
        help="consequent of the (de=P, e=Z) rule (NM as printed, PM symmetric)",
    )
    return parser


def _apply_config_defaults(args):
    if not getattr(args, "config", None):
        return
    options = load_run_options(args.config)
    for key, value in options.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise ParameterError(f"unknown option {key!r} in config file")
        current = getattr(args, attr)
        if isinstance(current, bool):
            value = value.lower() in ("1", "true", "yes", "on")
        elif isinstance(current, int):
            value = int(value)
        elif isinstance(current, float) or attr == "dt":
            value = float(value)
        setattr(args, attr, value)


def _manifest_from_args(args):
    extra = {}
    if args.subcommand == "simple":
        extra = {
            "x1": args.x1,
            "x2": args.x2,
            "system_config": args.system_config,
            "inputs": _parse_inputs(args.input),
        }
    elif args.subcommand == "mackey-glass":
        extra = {
            "swarm_size": args.swarm_size,
            "iterations": args.iterations,
            "skip_optimize": args.skip_optimize,
            "params_file": args.params_file,
        }
    elif args.subcommand == "it2fpid":
        extra = {
            "plants": _split(args.plants),
            "algorithms": _split(args.algorithms),
            "t_end": args.t_end,
            "band": args.band,
            "rule_pz": args.rule_pz,
        }
    return RunManifest(
        subcommand=args.subcommand,
        out_dir=args.out,
        seed=args.seed,
        algorithm=args.algorithm,
        method=args.method,
        domain_points=args.domain_points,
        dt=args.dt,
        plot=args.plot,
        extra=extra,
    )


def _split(text):
    if not text:
        return None
    return [tok.strip() for tok in text.split(",") if tok.strip()]


def _parse_inputs(items):
    values = {}
    for item in items:
        if "=" not in item:
            raise ParameterError(f"--input expects NAME=VALUE, got {item!r}")
        name, value = item.split("=", 1)
        values[name.strip()] = float(value)
    return values


_COMMANDS = {
    "simple": cmd_simple,
    "mackey-glass": cmd_mackey_glass,
    "it2fpid": cmd_it2fpid,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _apply_config_defaults(args)
        manifest = _manifest_from_args(args)
        return _COMMANDS[manifest.subcommand](manifest)
    except (ParameterError, ValueError, RuntimeError, OSError) as exc:
        print(f"it2fuzzy: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
