"""Command-line front end emitting the data behind each figure family as CSV.

Exit codes: 0 success, 2 configuration error, 3 out-of-regime state.
"""
from __future__ import annotations

import sys

import click

from .errors import EmptyStateError, OutOfRegimeError, ParameterError, UndefinedStatisticError
from .figures import COMMANDS, parse_config_file, resolve_config, write_csv

EXIT_CONFIG = 2
EXIT_REGIME = 3


def _options(f):
    decorators = [
        click.option("--config", "config_path", type=click.Path(dir_okay=False),
                     help="Flat key = value file; flags take precedence."),
        click.option("--n-levels", "N", type=int, help="Number of bound states N."),
        click.option("--gamma", help="Squeeze parameter: value, list a,b,c or start:stop:num."),
        click.option("--alpha", help="State size: value, list or start:stop:num."),
        click.option("--m", "m", help="Quanta subtracted: integer or list."),
        click.option("--phi", type=float, help="Phase of alpha for photon-subtracted states."),
        click.option("--method", type=click.Choice(["closed_form", "recursion", "eigen_oracle"]),
                     help="LOQCS construction."),
        click.option("--family", type=click.Choice(["loqcs", "dpscs"]), help="State family."),
        click.option("--t-max", "t_max", type=float, help="End of the time grid."),
        click.option("--t-steps", "t_steps", type=int, help="Number of time samples."),
        click.option("--out", "output_dir", help="Output directory (default $MORSE_OUT_DIR or .)."),
    ]
    for deco in reversed(decorators):
        f = deco(f)
    return f


def _run(command: str, config_path, **flags):
    try:
        file_values = parse_config_file(config_path) if config_path else None
        cfg = resolve_config(command, flags, file_values)
        path = write_csv(command, cfg)
    except OutOfRegimeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_REGIME)
    except (ParameterError, EmptyStateError, UndefinedStatisticError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    click.echo(str(path))


@click.group()
def main():
    """Figure data for Morse-like squeezed coherent states."""


def _register(command: str, help_text: str):
    @main.command(name=command, help=help_text)
    @_options
    def cmd(**kwargs):
        _run(command, **kwargs)

    return cmd


_HELP = {
    "variance-vs-gamma": "Normalized number variance of the LOQCS against gamma, closed form and recursion.",
    "pn-dist": "Occupation probabilities p_n of one state.",
    "variance-vs-alpha": "Normalized number variance against alpha (LOQCS per method, or DPSCS per m).",
    "phase-space": "Time series of <x>, <p>, dispersions and uncertainty product.",
    "dispersion-vs-gamma": "Dispersions and uncertainty product of the LOQCS at t=0 against gamma.",
    "dispersion-vs-alpha-dpscs": "Dispersions and uncertainty product of DPSCS at t=0 against alpha, per m.",
}
for _name in COMMANDS:
    _register(_name, _HELP[_name])


if __name__ == "__main__":
    main()
