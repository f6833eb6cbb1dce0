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


"""Define the CLI for running the applications."""


import logging
from pathlib import Path
from typing import Optional

import click

from ..bench import run_min, run_private_query, run_sort
from ..model import AppsConfigModel, RunConfigModel
from .helpers import ON_OFF, emit_report, handle_errors, make_session, override


logger = logging.getLogger(__name__)


def _switch(value: Optional[str]) -> Optional[bool]:
    return None if value is None else value == "on"


def _settings(config: RunConfigModel, **flags) -> AppsConfigModel:
    return override(config.apps, **flags)


def _json_path(value: Optional[str]) -> Optional[Path]:
    return Path(value) if value else None


param_option = click.option("--param", "param", help="The name of a parameter set.")
json_option = click.option(
    "--json",
    "json_path",
    type=click.Path(dir_okay=False, writable=True),
    help="Write the report to this file instead of the terminal.",
)
n_option = click.option("--n", "n", type=click.IntRange(min=1), help="Item count.")
bits_option = click.option("--bits", type=click.IntRange(min=1), help="Item width.")
compaction_option = click.option(
    "--compaction", type=ON_OFF, help="Gather the items by slot compaction."
)


@click.group()
@click.help_option("--help", "-h")
def app():
    """Subcommand for the encrypted applications."""
    pass


@app.command()
@click.help_option("--help", "-h")
@param_option
@n_option
@bits_option
@compaction_option
@json_option
@click.pass_obj
@handle_errors
def sort(config, param, n, bits, compaction, json_path):
    """Sort encrypted integers by rank."""
    settings = _settings(
        config, params=param, n=n, bits=bits, compaction=_switch(compaction)
    )
    session = make_session(config, settings.params)
    report = run_sort(session, settings.n, settings.bits, settings.compaction)
    emit_report(report, _json_path(json_path))


@app.command(name="min")
@click.help_option("--help", "-h")
@param_option
@n_option
@bits_option
@compaction_option
@json_option
@click.pass_obj
@handle_errors
def min_(config, param, n, bits, compaction, json_path):
    """Find the minimum of encrypted integers."""
    settings = _settings(
        config, params=param, n=n, bits=bits, compaction=_switch(compaction)
    )
    session = make_session(config, settings.params)
    report = run_min(session, settings.n, settings.bits, settings.compaction)
    emit_report(report, _json_path(json_path))


@app.command(name="private-query")
@click.help_option("--help", "-h")
@param_option
@click.option("--query", type=click.Choice(["add", "mult", "power"]))
@click.option("--op2", type=click.IntRange(min=0), help="The public exponent.")
@click.option("--nonblocking", type=ON_OFF, help="Overlap the tag comparisons.")
@json_option
@click.pass_obj
@handle_errors
def private_query(config, param, query, op2, nonblocking, json_path):
    """
    Answer an encrypted query over encrypted data.

    \b
    The query selects one of data + op1, data * op1 and data ^ op2.

    """  # noqa: D301
    settings = _settings(
        config, params=param, query=query, op2=op2, nonblocking=_switch(nonblocking)
    )
    session = make_session(config, settings.params)
    report = run_private_query(
        session,
        settings.query,
        settings.op2,
        settings.nonblocking,
        settings.max_exponent,
    )
    emit_report(report, _json_path(json_path))
