"""Command-line surface: detect, eval, synth and bench subcommands.

Every option reads from an ``MDMP_``-prefixed environment variable when
the flag is absent, with explicit flags taking precedence and built-in
defaults last. Exit codes: 0 success, 2 usage error, 3 bad input data,
4 infeasible configuration.
"""

from __future__ import annotations

import functools
from dataclasses import replace

import click

from .bench import knn_experiment, variants_experiment, write_table_csv
from .estimator import SETUPS, MatrixProfileDetector
from .exceptions import DataError, InfeasibleError
from .io import load_csv, load_scores_csv, write_dataset_csv, write_scores_csv
from .metrics import auc_roc, range_pr_auc
from .pipeline import default_grid
from .profile import ProfileVariant, VARIANTS
from .synth import KINDS, SynthSpec, generate_fixture

_METRICS = {"auc-roc": auc_roc, "auc-ptrt": range_pr_auc}


def _mapped_exits(fn):
    """Translate package errors to the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DataError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(3)
        except InfeasibleError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(4)

    return wrapper


def _parse_dim(ctx, param, value):
    if value is None:
        return None
    text = str(value).strip()
    if text in ("first", "mean"):
        return text
    try:
        return int(text)
    except ValueError:
        raise click.BadParameter("expected 'first', 'mean', or an integer rank")


@click.group()
def main():
    """Multidimensional matrix profile anomaly detection."""


@main.command()
@click.option("--input", "input_path", required=True, envvar="MDMP_INPUT",
              type=click.Path(exists=True, dir_okay=False), help="Test series CSV.")
@click.option("--train", "train_path", envvar="MDMP_TRAIN",
              type=click.Path(exists=True, dir_okay=False),
              help="Train series CSV (semi-supervised and supervised).")
@click.option("--train-labels", is_flag=True, envvar="MDMP_TRAIN_LABELS",
              help="Require an is_anomaly column in the train file.")
@click.option("--setup", required=True, envvar="MDMP_SETUP",
              type=click.Choice(SETUPS), help="Learning setup.")
@click.option("--m", type=int, envvar="MDMP_M", help="Window length.")
@click.option("--k", type=int, envvar="MDMP_K", help="Neighbor rank.")
@click.option("--variant", envvar="MDMP_VARIANT",
              type=click.Choice(sorted(VARIANTS)), help="Profile variant.")
@click.option("--dim", envvar="MDMP_DIM", callback=_parse_dim,
              help="Profile column: first, mean, or an integer rank.")
@click.option("--smooth", type=int, envvar="MDMP_SMOOTH",
              help="Smoothing window (default m; 0 disables).")
@click.option("--impute", is_flag=True, envvar="MDMP_IMPUTE",
              help="Forward-fill non-finite value cells.")
@click.option("--jobs", type=int, default=1, envvar="MDMP_JOBS",
              help="Worker processes (result is identical for any value).")
@click.option("--output", "output_path", required=True, envvar="MDMP_OUTPUT",
              type=click.Path(dir_okay=False, writable=True), help="Scores CSV to write.")
@_mapped_exits
def detect(input_path, train_path, train_labels, setup, m, k, variant, dim,
           smooth, impute, jobs, output_path):
    """Score a series for anomalies and write per-time-step scores."""
    test = load_csv(input_path, impute=impute)
    train = None
    if train_path is not None:
        if setup == "unsupervised":
            raise click.UsageError("--train only applies to semisupervised and supervised setups")
        train = load_csv(train_path, impute=impute)
    elif setup != "unsupervised":
        raise click.UsageError(f"{setup} setup requires --train")
    if train_labels and (train is None or train.labels is None):
        raise DataError("--train-labels given but the train file has no is_anomaly column")

    resolved_variant = None if variant is None else ProfileVariant.from_name(variant)
    if setup == "supervised":
        if train.labels is None:
            raise DataError("supervised setup requires an is_anomaly column in the train file")
        axes = {}
        if m is not None:
            axes["m_grid"] = (m,)
        if k is not None:
            axes["k_grid"] = (k,)
        if resolved_variant is not None:
            axes["variants"] = (resolved_variant,)
        grid = default_grid(**axes)
        if dim is not None:
            grid = [replace(c, dim_select=dim) for c in grid]
        if smooth is not None:
            grid = [replace(c, smooth_window=smooth) for c in grid]
        detector = MatrixProfileDetector(setup=setup, grid=grid, n_jobs=jobs)
        detector.fit(train.series, train.labels)
    else:
        detector = MatrixProfileDetector(
            setup=setup, m=m, k=k, variant=resolved_variant,
            dim_select=dim, smooth_window=smooth, n_jobs=jobs,
        )
        detector.fit(None if train is None else train.series)
    scores = detector.predict(test.series)
    write_scores_csv(output_path, scores)

    config = detector.config_
    line = (f"setup={setup} m={config.m} k={config.k} variant={config.variant.name}"
            f" dim={config.dim_select} smooth={config.resolved_smooth()} jobs={jobs}")
    if setup == "supervised":
        line += f" train_auc={detector.train_auc_!r}"
    click.echo(line)
    click.echo(f"wrote {scores.shape[0]} scores to {output_path}")


@main.command("eval")
@click.option("--scores", "scores_path", required=True, envvar="MDMP_SCORES",
              type=click.Path(exists=True, dir_okay=False), help="Scores CSV from detect.")
@click.option("--labels", "labels_path", required=True, envvar="MDMP_LABELS",
              type=click.Path(exists=True, dir_okay=False),
              help="Dataset CSV with an is_anomaly column.")
@click.option("--metrics", default="auc-roc,auc-ptrt", envvar="MDMP_METRICS",
              help="Comma-separated metric names.")
@_mapped_exits
def eval_cmd(scores_path, labels_path, metrics):
    """Print metric=value lines for scores against ground-truth labels."""
    requested = [name.strip() for name in metrics.split(",") if name.strip()]
    unknown = [name for name in requested if name not in _METRICS]
    if unknown or not requested:
        raise click.UsageError(
            f"unknown metrics {unknown}, choose from {sorted(_METRICS)}")
    scores = load_scores_csv(scores_path)
    dataset = load_csv(labels_path)
    if dataset.labels is None:
        raise DataError(f"{labels_path}: no is_anomaly column to evaluate against")
    for name in requested:
        value = _METRICS[name](scores, dataset.labels)
        click.echo(f"{name}={float(value)!r}")


@main.command()
@click.option("--kind", required=True, envvar="MDMP_KIND",
              type=click.Choice(KINDS), help="Fixture family.")
@click.option("--n", required=True, type=int, envvar="MDMP_N", help="Series length.")
@click.option("--d", required=True, type=int, envvar="MDMP_D", help="Dimension count.")
@click.option("--seed", required=True, type=int, envvar="MDMP_SEED", help="PRNG seed.")
@click.option("--out", "out_path", required=True, envvar="MDMP_OUT",
              type=click.Path(dir_okay=False, writable=True), help="Dataset CSV to write.")
@_mapped_exits
def synth(kind, n, d, seed, out_path):
    """Generate a labeled synthetic anomaly fixture."""
    dataset = generate_fixture(SynthSpec(kind=kind, n=n, d=d, seed=seed))
    write_dataset_csv(out_path, dataset.series, dataset.labels)
    click.echo(f"wrote {kind} fixture n={n} d={d} seed={seed} to {out_path}")


@main.command()
@click.option("--experiment", required=True, envvar="MDMP_EXPERIMENT",
              type=click.Choice(["variants", "knn"]), help="Which timing sweep to run.")
@click.option("--full", is_flag=True, envvar="MDMP_FULL",
              help="Full-size grids instead of desk-scale.")
@click.option("--out", "out_path", required=True, envvar="MDMP_OUT",
              type=click.Path(dir_okay=False, writable=True), help="Timing table CSV.")
@_mapped_exits
def bench(experiment, full, out_path):
    """Run a runtime benchmark and write the timing table."""
    run = variants_experiment if experiment == "variants" else knn_experiment
    rows = run(full=full)
    write_table_csv(out_path, rows)
    click.echo(f"wrote {len(rows)} timing rows to {out_path}")
