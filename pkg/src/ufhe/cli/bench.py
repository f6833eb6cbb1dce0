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


"""Define the CLI for running benchmarks."""


import logging
from pathlib import Path
from typing import Optional

import click

from ..bench import run_compare_bench
from .helpers import emit_report, handle_errors, make_session, override


logger = logging.getLogger(__name__)


@click.group()
@click.help_option("--help", "-h")
def bench():
    """Subcommand for benchmarks."""
    pass


@bench.command()
@click.help_option("--help", "-h")
@click.option("--param", "param", help="The name of a parameter set.")
@click.option(
    "--circuit",
    type=click.Choice(["bivariate", "univariate"]),
    help="Override the digit circuit of the parameter set.",
)
@click.option("--reps", type=click.IntRange(min=1), help="The number of repetitions.")
@click.option("--bits", type=click.IntRange(min=1), help="The integer width.")
@click.option("--workers", type=click.IntRange(min=1), help="The worker count.")
@click.option(
    "--json",
    "json_path",
    type=click.Path(dir_okay=False, writable=True),
    help="Write the report to this file instead of the terminal.",
)
@click.pass_obj
@handle_errors
def compare(
    config,
    param: Optional[str],
    circuit: Optional[str],
    reps: Optional[int],
    bits: Optional[int],
    workers: Optional[int],
    json_path: Optional[str],
):
    """Time and verify encrypted integer comparisons end to end."""
    config = override(config, params=param, workers=workers)
    settings = override(config.bench, circuit=circuit, reps=reps, bits=bits)
    session = make_session(config, config.params, settings.circuit)
    report = run_compare_bench(session, settings.reps, settings.bits)
    emit_report(report, Path(json_path) if json_path else None)
