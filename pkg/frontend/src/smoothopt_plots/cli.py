from __future__ import annotations

import sys

import click

from .render import PlotSpec, render


@click.command()
@click.option("--in", "inputs", multiple=True, required=True,
              type=click.Path(exists=True), help="input CSV (repeatable)")
@click.option("--out", "output", required=True, type=click.Path(),
              help="output image path")
@click.option("--logx", is_flag=True, help="logarithmic x axis")
@click.option("--title", default="", help="figure title")
def main(inputs, output, logx, title):
    """Render regret-experiment CSVs into a figure."""
    try:
        render(PlotSpec(list(inputs), output, title=title, logx=logx))
    except (ValueError, OSError) as e:
        click.echo(str(e), err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
