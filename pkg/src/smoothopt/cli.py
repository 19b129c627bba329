"""Experiment CLI: one subcommand per environment.

Exit codes: 0 success, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import sys

import click

from .harness import ConfigError, ExperimentConfig, emit_csv, run_experiment


def _common(f):
    for opt in reversed(
        [
            click.option("--T", "T", type=int, default=1000, show_default=True, help="horizon"),
            click.option("--rounds", type=int, default=1, show_default=True, help="repetitions"),
            click.option("--learner", type=click.Choice(["fullinfo", "bandit"]), default="fullinfo", show_default=True),
            click.option("--eta", type=float, default=None, help="learning rate override"),
            click.option("--mu", type=float, default=None, help="bandit grid width override"),
            click.option("--gamma", type=float, default=None, help="bandit exploration override"),
            click.option("--seed", type=int, default=0, show_default=True),
            click.option("--out", "out", type=click.Path(), required=True, help="output CSV path"),
            click.option("--fixed-instance", is_flag=True, help="reuse one random instance for all rounds"),
        ]
    ):
        f = opt(f)
    return f


def _execute(config: ExperimentConfig, out: str):
    try:
        config.validate()
    except ConfigError as e:
        click.echo(f"config error: {e}", err=True)
        sys.exit(2)
    records = run_experiment(config)
    try:
        emit_csv(records, out)
    except OSError as e:
        click.echo(f"cannot write {out}: {e}", err=True)
        sys.exit(3)


@click.group()
def main():
    """Regret experiments for online optimization of piecewise-constant
    payoffs on [0,1)."""


@main.command()
@_common
@click.option("--k", type=int, default=5, show_default=True, help="pieces per round")
@click.option("--sigma", type=float, default=10.0, show_default=True, help="density bound")
@click.option("--anchors", type=click.Choice(["fixed", "random"]), default="fixed", show_default=True)
@click.option("--values", type=click.Choice(["biased", "uniform"]), default="biased", show_default=True)
def smoothed(T, rounds, learner, eta, mu, gamma, seed, out, fixed_instance, k, sigma, anchors, values):
    """Smoothed oblivious adversary."""
    _execute(
        ExperimentConfig(
            "smoothed", learner, T, rounds, eta, mu, gamma, seed,
            k=k, sigma=sigma, anchors=anchors, values=values,
        ),
        out,
    )


@main.command()
@_common
def worstcase(T, rounds, learner, eta, mu, gamma, seed, out, fixed_instance):
    """Adaptive worst-case adversary (linear-regret demonstration)."""
    _execute(ExperimentConfig("worstcase", learner, T, rounds, eta, mu, gamma, seed), out)


@main.command()
@_common
@click.option("--n", type=int, default=20, show_default=True, help="items per instance")
@click.option("--capacity", type=float, default=1.0, show_default=True)
def knapsack(T, rounds, learner, eta, mu, gamma, seed, out, fixed_instance, n, capacity):
    """Greedy knapsack parameter tuning."""
    _execute(
        ExperimentConfig(
            "knapsack", learner, T, rounds, eta, mu, gamma, seed,
            n=n, capacity=capacity, fixed_instance=fixed_instance,
        ),
        out,
    )


@main.command()
@_common
@click.option("--n", type=int, default=20, show_default=True, help="vertices per instance")
@click.option("--edge-prob", type=float, default=0.3, show_default=True)
def mwis(T, rounds, learner, eta, mu, gamma, seed, out, fixed_instance, n, edge_prob):
    """Greedy maximum-weight independent set parameter tuning."""
    _execute(
        ExperimentConfig(
            "mwis", learner, T, rounds, eta, mu, gamma, seed,
            n=n, edge_prob=edge_prob, fixed_instance=fixed_instance,
        ),
        out,
    )


@main.command()
@_common
@click.option("--n", type=int, default=10, show_default=True, help="points per instance")
@click.option("--centers", type=int, default=3, show_default=True, help="number of centers")
def kmeans(T, rounds, learner, eta, mu, gamma, seed, out, fixed_instance, n, centers):
    """Adaptive greedy weighted k-means parameter tuning."""
    _execute(
        ExperimentConfig(
            "kmeans", learner, T, rounds, eta, mu, gamma, seed,
            n=n, centers=centers, fixed_instance=fixed_instance,
        ),
        out,
    )


if __name__ == "__main__":
    main()
