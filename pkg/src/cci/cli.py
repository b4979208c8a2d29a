"""Command-line front end: solve single problems, benchmark a directory,
and export plot-ready samples.

Exit codes for ``solve``: 0 on success, 1 on a parse or validation
failure, 2 when the run was truncated (depth limit at a tangential or
degenerate contact, or the square budget on overlapping curves) and the
result is therefore possibly incomplete.

Set CCI_LOG_LEVEL to error, info, debug or trace to control logging;
trace logs every queue pop with the square, test results and test-domain
multipliers.
"""

from __future__ import annotations

import csv
import json
import logging
import os
import sys
from pathlib import Path

import click
import numpy as np

from .engine import TRACE, SolveReport, SolverConfig, default_zero_tol, solve
from .oracle import brute_force_intersections  # noqa: F401  (re-export for scripting)
from .problems import Problem, ProblemFormatError, load_problem
from .geometry import sample_curve

_LOG_LEVELS = {
    "error": logging.ERROR,
    "info": logging.INFO,
    "debug": logging.DEBUG,
    "trace": TRACE,
}

DEFAULT_EPSILONS = (0.01, 0.05, 0.1, 0.15, 0.2)


def _configure_logging() -> None:
    level_name = os.environ.get("CCI_LOG_LEVEL", "error").lower()
    level = _LOG_LEVELS.get(level_name, logging.ERROR)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


@click.group()
def main() -> None:
    """Find all intersections of two 3D Bezier curves."""
    _configure_logging()


def _config_from_options(mode, epsilon, fixed_scale, newton_tol, zero_tol,
                         max_depth, clip_explored_region, max_squares) -> SolverConfig:
    return SolverConfig(
        mode=mode,
        epsilon=epsilon,
        fixed_scale=fixed_scale,
        newton_tol=newton_tol,
        zero_tol=zero_tol,
        max_depth=max_depth,
        clip_explored_region=clip_explored_region,
        max_squares=max_squares,
    )


def _solver_options(f):
    f = click.option("--mode", type=click.Choice(["adaptive", "fixed"]),
                     default="adaptive", show_default=True,
                     help="Adapt test-domain sizes, or keep them fixed.")(f)
    f = click.option("--epsilon", type=float, default=0.05, show_default=True,
                     help="Adaptation step for the test-domain multipliers.")(f)
    f = click.option("--fixed-scale", type=float, default=1.5, show_default=True,
                     help="Test-domain multiplier used in fixed mode.")(f)
    f = click.option("--newton-tol", type=float, default=1e-7, show_default=True,
                     help="Step-size tolerance for Newton refinement.")(f)
    f = click.option("--zero-tol", type=float, default=None,
                     help="Residual below which a point counts as an "
                          "intersection [default: scale-aware].")(f)
    f = click.option("--max-depth", type=int, default=40, show_default=True,
                     help="Subdivision depth limit.")(f)
    f = click.option("--clip-explored-region/--no-clip-explored-region",
                     default=True, show_default=True,
                     help="Clip explored regions to their test domain.")(f)
    f = click.option("--max-squares", type=int, default=100_000, show_default=True,
                     help="Stop, truncated, after this many squares "
                          "(safety valve for overlapping curves).")(f)
    return f


def _report_to_dict(problem: Problem, config: SolverConfig,
                    report: SolveReport, zero_tol: float) -> dict:
    return {
        "name": problem.name,
        "config": {
            "mode": config.mode,
            "epsilon": config.epsilon,
            "fixed_scale": config.fixed_scale,
            "newton_tol": config.newton_tol,
            "zero_tol": zero_tol,
            "max_depth": config.max_depth,
            "clip_explored_region": config.clip_explored_region,
            "max_squares": config.max_squares,
        },
        "intersections": [
            {
                "u": r.u,
                "v": r.v,
                "point": list(r.point),
                "residual": r.residual,
            }
            for r in report.intersections
        ],
        "counters": {
            "squares_examined": report.squares_examined,
            "subdivisions": report.subdivisions,
            "exclusion_passes": report.exclusion_passes,
            "kantorovich_passes": report.kantorovich_passes,
            "newton_calls": report.newton_calls,
            "max_depth_reached": report.max_depth_reached,
        },
        "truncated": report.truncated,
    }


def _effective_zero_tol(problem: Problem, config: SolverConfig) -> float:
    if config.zero_tol is not None:
        return config.zero_tol
    return default_zero_tol(problem.curve1, problem.curve2)


@main.command("solve")
@click.argument("input_path", type=click.Path(path_type=Path))
@_solver_options
@click.option("-o", "--output", type=click.Path(path_type=Path), default=None,
              help="Write the result JSON here instead of stdout.")
def cmd_solve(input_path, mode, epsilon, fixed_scale, newton_tol, zero_tol,
              max_depth, clip_explored_region, max_squares, output) -> None:
    """Solve one problem file and emit a result document."""
    try:
        problem = load_problem(input_path)
    except ProblemFormatError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    config = _config_from_options(mode, epsilon, fixed_scale, newton_tol,
                                  zero_tol, max_depth, clip_explored_region,
                                  max_squares)
    report = solve(problem.curve1, problem.curve2, config)
    doc = _report_to_dict(problem, config, report,
                          _effective_zero_tol(problem, config))
    text = json.dumps(doc, indent=2)
    if output is not None:
        Path(output).write_text(text + "\n")
    else:
        click.echo(text)
    sys.exit(2 if report.truncated else 0)


@main.command("bench")
@click.argument("input_dir", type=click.Path(path_type=Path))
@click.option("--epsilons", default=",".join(str(e) for e in DEFAULT_EPSILONS),
              show_default=True,
              help="Comma-separated adaptation steps, one result column each.")
@click.option("--baseline/--no-baseline", default=True, show_default=True,
              help="Append a fixed-mode baseline column.")
@click.option("--max-depth", type=int, default=40, show_default=True)
@click.option("-o", "--output", type=click.Path(path_type=Path), default=None,
              help="Write the CSV here instead of stdout.")
def cmd_bench(input_dir, epsilons, baseline, max_depth, output) -> None:
    """Count squares examined per problem, per adaptation step, plus baseline.

    Reads every .json problem file in INPUT_DIR (sorted by name); rows are
    problems, columns are the adaptation steps and, last, the fixed-mode
    baseline.
    """
    input_dir = Path(input_dir)
    if not input_dir.is_dir():
        click.echo(f"error: {input_dir} is not a directory", err=True)
        sys.exit(1)
    try:
        eps_values = [float(tok) for tok in epsilons.split(",") if tok.strip() != ""]
    except ValueError:
        click.echo(f"error: bad --epsilons list {epsilons!r}", err=True)
        sys.exit(1)
    paths = sorted(input_dir.glob("*.json"))
    if not paths:
        click.echo(f"error: no .json problem files in {input_dir}", err=True)
        sys.exit(1)

    header = ["name", "degrees"] + [f"eps={e:g}" for e in eps_values]
    if baseline:
        header.append("fixed")
    rows = [header]
    for path in paths:
        try:
            problem = load_problem(path)
        except ProblemFormatError as e:
            click.echo(f"warning: skipping {path.name}: {e}", err=True)
            continue
        degrees = f"({problem.curve1.degree}, {problem.curve2.degree})"
        cells: list[str] = [problem.name, degrees]
        for e in eps_values:
            config = SolverConfig(mode="adaptive", epsilon=e, max_depth=max_depth)
            report = solve(problem.curve1, problem.curve2, config)
            cells.append(str(report.squares_examined))
        if baseline:
            config = SolverConfig(mode="fixed", max_depth=max_depth)
            report = solve(problem.curve1, problem.curve2, config)
            cells.append(str(report.squares_examined))
        rows.append(cells)

    out = open(output, "w", newline="") if output is not None else sys.stdout
    try:
        csv.writer(out).writerows(rows)
    finally:
        if output is not None:
            out.close()


@main.command("plot-data")
@click.argument("input_path", type=click.Path(path_type=Path))
@click.option("--samples", type=int, default=200, show_default=True,
              help="Points sampled per curve.")
@click.option("-o", "--outdir", type=click.Path(path_type=Path), default=Path("."),
              show_default=True, help="Directory for the emitted CSV files.")
def cmd_plot_data(input_path, samples, outdir) -> None:
    """Emit sampled curve polylines and solved intersections as CSV files.

    Writes <name>_curves.csv with columns curve_id, t, x, y, z and
    <name>_intersections.csv with columns u, v, x, y, z, ready for any
    external plotting tool.
    """
    try:
        problem = load_problem(input_path)
    except ProblemFormatError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    if samples < 2:
        click.echo("error: --samples must be at least 2", err=True)
        sys.exit(1)
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = Path(input_path).stem

    ts = np.linspace(0.0, 1.0, samples)
    curves_path = outdir / f"{stem}_curves.csv"
    with open(curves_path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["curve_id", "t", "x", "y", "z"])
        for curve_id, curve in ((1, problem.curve1), (2, problem.curve2)):
            for t, p in zip(ts, sample_curve(curve, ts)):
                w.writerow([curve_id, repr(float(t))] + [repr(float(c)) for c in p])

    report = solve(problem.curve1, problem.curve2, SolverConfig())
    points_path = outdir / f"{stem}_intersections.csv"
    with open(points_path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["u", "v", "x", "y", "z"])
        for r in report.intersections:
            w.writerow([repr(r.u), repr(r.v)] + [repr(float(c)) for c in r.point])
    click.echo(f"wrote {curves_path} and {points_path}")


if __name__ == "__main__":
    main()
