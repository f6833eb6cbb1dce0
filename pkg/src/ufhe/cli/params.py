# Copyright (c) 2021, Moritz E. Beber.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Define the CLI for inspecting parameter sets."""


import logging
from pathlib import Path

import click

from ..catalog import load_param_sets, validate_param_set
from .helpers import handle_errors


logger = logging.getLogger(__name__)


@click.group()
@click.help_option("--help", "-h")
def params():
    """Subcommand for listing and validating parameter sets."""
    pass


@params.command(name="list")
@click.help_option("--help", "-h")
@handle_errors
def list_():
    """List the shipped parameter sets."""
    for model in load_param_sets().values():
        click.echo(
            f"{model.name:<18} p={model.p:<3} m={model.m:<6} n={model.n:<6} "
            f"d={model.d:<4} l={model.l:<5} {model.circuit.value:<10} "
            f"{model.source.value}"
        )


@params.command()
@click.help_option("--help", "-h")
@click.argument(
    "table", metavar="<TABLE>", type=click.Path(exists=True, dir_okay=False)
)
@handle_errors
def validate(table: str):
    """
    Validate every parameter set of a table against its ring.

    \b
    TABLE is a tab-separated file in the format of the shipped table.

    """  # noqa: D301
    failed = 0
    for model in load_param_sets(Path(table)).values():
        problems = validate_param_set(model)
        for problem in problems:
            logger.error("%s: %s", model.name, problem)
        failed += bool(problems)
    if failed:
        raise click.ClickException(f"{failed} parameter sets are inconsistent.")
    logger.info("All parameter sets are consistent.")
