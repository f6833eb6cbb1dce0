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


"""Define the command line interface (CLI) of the comparison stack."""


import logging
from pathlib import Path

import click
import click_log
import numpy as np

from ..bench import SUITES, Session, run_selftest
from ..bgv import (
    dump_ciphertext,
    dump_galois_keys,
    dump_ksw_key,
    dump_public_key,
    dump_secret_key,
)
from .app import app
from .bench import bench
from .helpers import emit_report, handle_errors, load_config, make_session, override
from .params import params


logger = logging.getLogger()
click_log.basic_config(logger)


@click.group()
@click.help_option("--help", "-h")
@click_log.simple_verbosity_option(
    logger,
    default="INFO",
    show_default=True,
    type=click.Choice(["CRITICAL", "ERROR", "WARN", "INFO", "DEBUG"]),
)
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    help="A JSON run configuration; options given here take precedence.",
)
@click.option(
    "--seed", type=int, envvar="UFHE_SEED", help="Seed keys, encryption and inputs."
)
@click.option("--workers", type=click.IntRange(min=1), help="The worker count.")
@click.option(
    "--deterministic/--parallel",
    default=None,
    help="Run every job in the calling thread, or use a pool of workers.",
)
@click.option(
    "--force/--no-force",
    default=None,
    help="Build rings above the desk-scale degree limit.",
)
@click.pass_context
@handle_errors
def cli(ctx, config_path, seed, workers, deterministic, force):
    """Command line interface to word-wise comparison on encrypted integers."""
    config = load_config(Path(config_path) if config_path else None)
    ctx.obj = override(
        config,
        seed=seed,
        workers=workers,
        deterministic=deterministic,
        force=force,
    )


@cli.command()
@click.help_option("--help", "-h")
@click.option("--param", "param", help="The name of a parameter set.")
@click.option(
    "--suite",
    "suites",
    multiple=True,
    type=click.Choice(list(SUITES)),
    help="Run only these suites; may be repeated.",
)
@click.option(
    "--inject-fault",
    is_flag=True,
    default=False,
    help="Corrupt a cached transform plan before running.",
)
@click.option(
    "--json",
    "json_path",
    type=click.Path(dir_okay=False, writable=True),
    help="Write the report to this file instead of the terminal.",
)
@click.pass_obj
@handle_errors
def selftest(config, param, suites, inject_fault, json_path):
    """Run the invariant suites at toy scale; exit non-zero on any failure."""
    config = override(config, params=param)
    session = make_session(config, config.params)
    report = run_selftest(session, suites or config.suites, fault=inject_fault)
    emit_report(report, Path(json_path) if json_path else None)


@cli.command()
@click.help_option("--help", "-h")
@click.argument(
    "output", metavar="<OUTPUT>", type=click.Path(file_okay=False, writable=True)
)
@click.option("--param", "param", help="The name of a parameter set.")
@click.pass_obj
@handle_errors
def fixtures(config, output, param):
    """
    Write serialized keys and sample ciphertexts.

    \b
    OUTPUT is a directory that is created if necessary.

    """  # noqa: D301
    config = override(config, params=param)
    session: Session = make_session(config, config.params)
    directory = Path(output)
    directory.mkdir(parents=True, exist_ok=True)
    keys = session.keys
    payloads = {
        "secret.key": dump_secret_key(keys.secret),
        "public.key": dump_public_key(keys.public),
        "relin.key": dump_ksw_key(keys.relin),
        "galois.keys": dump_galois_keys(keys.galois),
    }
    rng = np.random.default_rng(config.seed)
    values = rng.integers(0, session.ctx.p, size=session.slots)
    payloads["sample.ct"] = dump_ciphertext(session.evaluator.encrypt(values))
    (directory / "sample.txt").write_text(" ".join(str(v) for v in values) + "\n")
    for name, payload in payloads.items():
        (directory / name).write_bytes(payload)
    logger.info("Wrote %d fixtures to '%s'.", len(payloads) + 1, directory)


cli.add_command(params)
cli.add_command(bench)
cli.add_command(app)
