"""Batch experiment front-end.

Each subcommand runs one experiment family and writes a CSV (one
``#``-prefixed metadata line, then a header row, floats at 17 significant
digits) plus a JSON sidecar holding the fully resolved configuration,
library version, and wall-clock duration.  CSV bytes are deterministic for
a given configuration; timestamps live only in the sidecar.

Exit codes: 0 success, 2 usage/validation error, 3 partial failure (some
cells failed; completed rows are still written and the sidecar lists the
failures as machine-readable records).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from math import asin, ceil, pi

from . import __version__, bounds, ctqw, depthsearch, trotter

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARTIAL = 3

ENV_OUTDIR = "TROTTERWALK_OUTDIR"

EXPERIMENTS = (
    "overlap-trace",
    "depth-search",
    "analytic-depth",
    "ratio-sweep",
    "grover-curve",
    "bound-check",
)

N_MIN, N_MAX = 1, 80


@dataclass
class ExperimentConfig:
    experiment: str
    ns: list[int] = field(default_factory=list)
    epsilons: list[float] = field(default_factory=list)
    order: str = "auto"
    orders: list[int] = field(default_factory=lambda: list(depthsearch.SWEEP_ORDERS))
    samples: int = 41
    spacing: str = "linear"
    iterations: int = depthsearch.DEFAULT_ITERATIONS
    k_max: int | None = None
    r_exponents: list[int] = field(default_factory=lambda: list(range(2, 15)))
    out: str = ""
    workers: int = 0
    target: str | None = None
    reduced_target: str | None = None


def parse_int_range(text: str) -> list[int]:
    """Parse '12' or '16..32' or '16..32:2' into a list of integers."""
    text = text.strip()
    if ".." not in text:
        return [int(text)]
    lo, rest = text.split("..", 1)
    step = 1
    if ":" in rest:
        hi, step_s = rest.split(":", 1)
        step = int(step_s)
    else:
        hi = rest
    if step < 1:
        raise ValueError(f"range step must be >= 1, got {step}")
    return list(range(int(lo), int(hi) + 1, step))


def parse_float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def format_value(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(path: str, experiment: str, header: list[str], rows: list[tuple]) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(f"# trotterwalk={__version__} experiment={experiment}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_value(v) for v in row) + "\n")


def sidecar_path(out: str) -> str:
    stem, ext = os.path.splitext(out)
    if ext.lower() == ".json":
        return out + ".meta.json"
    return stem + ".json"


def write_sidecar(out: str, payload: dict) -> None:
    with open(sidecar_path(out), "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def validate(config: ExperimentConfig) -> list[str]:
    """Normalize the config in place and return every violation found."""
    errors: list[str] = []
    if config.experiment not in EXPERIMENTS:
        errors.append(f"unknown experiment {config.experiment!r}")
    if not config.ns:
        errors.append("no system size given (use --n or --n-range)")
    for n in config.ns:
        if not N_MIN <= n <= N_MAX:
            errors.append(f"n={n} outside supported range [{N_MIN}, {N_MAX}]")
    needs_eps = config.experiment in ("overlap-trace", "depth-search", "analytic-depth", "ratio-sweep")
    if needs_eps and not config.epsilons:
        errors.append("no error budget given (use --epsilon or --epsilon-list)")
    for eps in config.epsilons:
        if not 0.0 < eps < 1.0:
            errors.append(f"epsilon={eps} outside (0, 1)")
    if config.order != "auto":
        try:
            q = int(config.order)
            if q < 2 or q % 2:
                errors.append(f"--order must be an even integer >= 2 or 'auto', got {config.order}")
        except ValueError:
            errors.append(f"--order must be an even integer >= 2 or 'auto', got {config.order!r}")
    for q in config.orders:
        if q < 2 or q % 2:
            errors.append(f"admissible orders must be even integers >= 2, got {q}")
    if config.samples < 2:
        errors.append(f"--samples must be >= 2, got {config.samples}")
    if config.spacing not in ("linear", "geometric"):
        errors.append(f"--spacing must be linear or geometric, got {config.spacing!r}")
    if config.iterations < 1:
        errors.append(f"--iterations must be >= 1, got {config.iterations}")
    if config.k_max is not None and config.k_max < 1:
        errors.append(f"--k-max must be >= 1, got {config.k_max}")
    if config.workers < 0:
        errors.append(f"--workers must be >= 1, got {config.workers}")
    if config.workers == 0:
        config.workers = os.cpu_count() or 1
    if config.experiment in ("overlap-trace", "grover-curve") and len(config.ns) != 1:
        errors.append(f"{config.experiment} needs exactly one system size")
    if config.target is not None:
        if set(config.target) - {"0", "1"}:
            errors.append(f"target must be a bit string, got {config.target!r}")
        elif len(config.ns) != 1:
            errors.append("--target requires a single --n")
        elif len(config.target) != config.ns[0]:
            errors.append(f"target length {len(config.target)} != n={config.ns[0]}")
        else:
            # searches are target independent: relabel bit flips away
            config.reduced_target = "0" * len(config.target)
    if not config.out:
        outdir = os.environ.get(ENV_OUTDIR, ".")
        config.out = os.path.join(outdir, f"{config.experiment}.csv")
    return errors


def _resolve_order(config: ExperimentConfig, n: int, eps: float) -> int:
    if config.order == "auto":
        return bounds.optimal_order(n, eps).q_even
    return int(config.order)


def run_overlap_trace(config: ExperimentConfig):
    n, eps = config.ns[0], config.epsilons[0]
    q = _resolve_order(config, n, eps)
    r = bounds.required_steps(n, q, eps)
    stages = trotter.stage_count(q)
    ts = ctqw.t_star(n)
    alpha = ctqw.alpha_star(n)
    trace = trotter.overlap_trace(n, q, ts, r, config.samples, config.spacing)
    rows = []
    for m, ov in trace:
        layers = m * stages
        rows.append(
            (
                m,
                layers,
                ov,
                float(depthsearch.grover_closed_form(n, layers)),
                ctqw.ctqw_overlap(n, alpha, ts * m / r),
            )
        )
    header = ["steps_applied", "layer_count", "overlap_qaoa", "overlap_grover", "overlap_ctqw_reference"]
    meta = {"q": q, "r": r, "depth": r * stages, "reference_overlap": depthsearch.reference_overlap(n), "epsilon_role": "spectral"}
    return header, rows, meta, []


def _depth_search_cell(args):
    n, eps, q, iterations = args
    try:
        res = depthsearch.numeric_optimal_depth(n, q, eps, iterations)
    except depthsearch.DepthSearchError as err:
        return {"n": n, "epsilon": eps, "q": q, "error": str(err)}
    return res


def run_depth_search(config: ExperimentConfig):
    cells = [
        (n, eps, _resolve_order(config, n, eps), config.iterations)
        for n in sorted(set(config.ns))
        for eps in sorted(set(config.epsilons))
    ]
    results = _map_cells(_depth_search_cell, cells, config.workers)
    rows, errors = [], []
    for res in results:
        if isinstance(res, dict):
            errors.append(res)
            continue
        rows.append(
            (res.n, res.q, res.epsilon, res.r_final, res.p_numerical, res.overlap, res.reference, res.d, res.level, res.evaluations)
        )
    header = ["n", "q", "epsilon_overlap", "r_final", "p_numerical", "overlap", "reference_overlap", "d_final", "level", "evaluations"]
    return header, rows, {"epsilon_role": "overlap"}, errors


def run_analytic_depth(config: ExperimentConfig):
    rows = []
    for n in sorted(set(config.ns)):
        for eps in sorted(set(config.epsilons)):
            est = bounds.optimal_order(n, eps)
            q_used = _resolve_order(config, n, eps)
            depth = bounds.analytic_depth(n, q_used, eps)
            rows.append(
                (
                    n,
                    eps,
                    est.q_real,
                    est.q_even,
                    q_used,
                    depth.p0,
                    depth.delta_bound,
                    depth.p_analytic,
                    depth.log2_p,
                    bounds.analytic_depth_closed(n, eps),
                    bounds.required_steps(n, q_used, eps),
                )
            )
    header = ["n", "epsilon", "q_real", "q_even", "q_used", "p0", "delta_bound", "p_analytic", "log2_p", "p_closed_form", "r_required"]
    return header, rows, {"epsilon_role": "spectral"}, []


def _ratio_sweep_cell(args):
    n, eps, orders, iterations = args
    record, failures = depthsearch.sweep_cell(n, eps, orders, iterations)
    return n, eps, record, failures


def run_ratio_sweep(config: ExperimentConfig):
    cells = [
        (n, eps, tuple(config.orders), config.iterations)
        for n in sorted(set(config.ns))
        for eps in sorted(set(config.epsilons))
    ]
    results = _map_cells(_ratio_sweep_cell, cells, config.workers)
    rows, errors = [], []
    for n, eps, record, failures in results:
        for failure in failures:
            errors.append(asdict(failure))
        if record is None:
            errors.append({"n": n, "epsilon": eps, "error": "no admissible order produced a depth"})
        else:
            rows.append((record.n, record.epsilon, record.q, record.p_numerical, record.p_analytical, record.ratio))
    header = ["n", "epsilon", "q_best", "p_numerical", "p_analytical", "ratio"]
    meta = {"orders": list(config.orders), "epsilon_role": "overlap for p_numerical, spectral for p_analytical"}
    return header, rows, meta, errors


def run_grover_curve(config: ExperimentConfig):
    n = config.ns[0]
    k_max = config.k_max
    if k_max is None:
        k_max = ceil(pi / (4.0 * asin(2.0 ** (-0.5 * n))))
    rows = [
        (k, ov, float(depthsearch.grover_closed_form(n, k)))
        for k, ov in depthsearch.grover_curve(n, k_max)
    ]
    header = ["iteration", "overlap", "overlap_closed_form"]
    return header, rows, {"k_max": k_max}, []


def run_bound_check(config: ExperimentConfig):
    orders = [int(config.order)] if config.order != "auto" else [2, 4]
    rows = []
    for n in sorted(set(config.ns)):
        ts = ctqw.t_star(n)
        for q in orders:
            db = bounds.delta_bound(n, q)
            stages = trotter.stage_count(q)
            for j in config.r_exponents:
                r = 2**j
                measured = bounds.spectral_error(n, q, ts, r)
                bound = bounds.trotter_error_bound(q, db, ts, r, stages)
                rows.append((n, q, r, measured, bound, measured <= bound))
    header = ["n", "q", "r", "spectral_error", "error_bound", "within_bound"]
    return header, rows, {"epsilon_role": "spectral"}, []


RUNNERS = {
    "overlap-trace": run_overlap_trace,
    "depth-search": run_depth_search,
    "analytic-depth": run_analytic_depth,
    "ratio-sweep": run_ratio_sweep,
    "grover-curve": run_grover_curve,
    "bound-check": run_bound_check,
}


def _map_cells(fn, cells, workers: int):
    if workers <= 1 or len(cells) <= 1:
        return [fn(cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=min(workers, len(cells))) as pool:
        return list(pool.map(fn, cells))


def run(config: ExperimentConfig) -> int:
    """Execute a validated experiment; returns the process exit code."""
    started = datetime.now(timezone.utc).isoformat()
    t0 = time.perf_counter()
    header, rows, meta, errors = RUNNERS[config.experiment](config)
    duration = time.perf_counter() - t0
    write_csv(config.out, config.experiment, header, rows)
    write_sidecar(
        config.out,
        {
            "experiment": config.experiment,
            "config": asdict(config),
            "columns": header,
            "meta": meta,
            "errors": errors,
            "library_version": __version__,
            "started_at": started,
            "duration_seconds": duration,
            "rows_written": len(rows),
        },
    )
    if errors:
        print(f"{config.experiment}: {len(rows)} rows, {len(errors)} failed cells -> {config.out}", file=sys.stderr)
        return EXIT_PARTIAL
    print(f"{config.experiment}: {len(rows)} rows -> {config.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trotterwalk",
        description="Experiments on quantum-walk search trotterized into QAOA sequences.",
    )
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name, help_text in (
        ("overlap-trace", "target overlap through a fixed-depth trotterized sequence"),
        ("depth-search", "numeric optimal-depth search at an overlap budget"),
        ("analytic-depth", "analytic depth bound, optimal order, required steps"),
        ("ratio-sweep", "analytic vs numeric depth ratios over (n, epsilon) cells"),
        ("grover-curve", "Grover iteration overlaps against the closed form"),
        ("bound-check", "measured Trotter error against the analytic bound"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, default=None, help="single system size")
        p.add_argument("--n-range", default=None, help="range 'lo..hi' or 'lo..hi:step'")
        p.add_argument("--epsilon", type=float, default=None, help="single error budget")
        p.add_argument("--epsilon-list", default=None, help="comma-separated error budgets")
        p.add_argument("--order", default=None, help="even formula order, or 'auto' (default)")
        p.add_argument("--orders", default=None, help="admissible orders for ratio-sweep, e.g. '2,4,6,8'")
        p.add_argument("--samples", type=int, default=None, help="trace sample count")
        p.add_argument("--spacing", default=None, choices=("linear", "geometric"), help="trace prefix spacing")
        p.add_argument("--iterations", type=int, default=None, help="depth-search refinement iterations")
        p.add_argument("--k-max", type=int, default=None, help="Grover iteration count")
        p.add_argument("--out", default=None, help=f"output CSV path (default: ${ENV_OUTDIR}/<experiment>.csv)")
        p.add_argument("--config", default=None, help="JSON config file; explicit flags override it")
        p.add_argument("--workers", type=int, default=None, help="worker processes (default: cpu count)")
        p.add_argument("--target", default=None, help="target bit string (relabeled to all zeros)")
    return parser


_CONFIG_KEYS = (
    "n",
    "n_range",
    "epsilon",
    "epsilon_list",
    "order",
    "orders",
    "samples",
    "spacing",
    "iterations",
    "k_max",
    "out",
    "workers",
    "target",
)


def _merge_config_file(args: argparse.Namespace) -> list[str]:
    if args.config is None:
        return []
    try:
        with open(args.config) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        return [f"cannot read config file {args.config}: {err}"]
    errors = []
    for key, value in data.items():
        dest = key.replace("-", "_")
        if dest not in _CONFIG_KEYS:
            errors.append(f"unknown config key {key!r}")
        elif getattr(args, dest) is None:
            setattr(args, dest, value)
    return errors


def _config_from_args(args: argparse.Namespace) -> tuple[ExperimentConfig, list[str]]:
    errors = _merge_config_file(args)
    ns: list[int] = []
    if args.n is not None:
        ns.extend(parse_int_range(str(args.n)))
    if args.n_range is not None:
        try:
            ns.extend(parse_int_range(str(args.n_range)))
        except ValueError as err:
            errors.append(f"bad --n-range: {err}")
    epsilons: list[float] = []
    if args.epsilon is not None:
        epsilons.append(float(args.epsilon))
    if args.epsilon_list is not None:
        try:
            epsilons.extend(parse_float_list(str(args.epsilon_list)))
        except ValueError as err:
            errors.append(f"bad --epsilon-list: {err}")
    config = ExperimentConfig(experiment=args.experiment, ns=ns, epsilons=epsilons)
    if args.order is not None:
        config.order = str(args.order)
    if args.orders is not None:
        try:
            config.orders = [int(x) for x in str(args.orders).split(",") if x.strip()]
        except ValueError:
            errors.append(f"bad --orders: {args.orders!r}")
    for key in ("samples", "spacing", "iterations", "k_max", "out", "workers", "target"):
        value = getattr(args, key)
        if value is not None:
            setattr(config, key, value)
    return config, errors


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config, errors = _config_from_args(args)
    errors.extend(validate(config))
    if errors:
        for err in errors:
            print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
