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


"""Share configuration, error handling and report output among commands."""


import functools
import logging
from pathlib import Path
from typing import Callable, Optional

import click
from pydantic import ValidationError

from ..bench import Session
from ..exceptions import OutOfLevels, UFHEError
from ..model import ReportModel, RunConfigModel


logger = logging.getLogger(__name__)


ON_OFF = click.Choice(["on", "off"])


def load_config(path: Optional[Path]) -> RunConfigModel:
    """Read a JSON run configuration or return the defaults."""
    if path is None:
        return RunConfigModel()
    logger.debug("Reading the run configuration from '%s'.", path)
    try:
        return RunConfigModel.parse_file(path)
    except ValidationError as error:
        raise click.BadParameter(str(error), param_hint="--config") from error


def override(config: RunConfigModel, **flags) -> RunConfigModel:
    """Return a copy with every flag that was given replacing the file value."""
    update = {key: value for key, value in flags.items() if value is not None}
    return config.copy(update=update)


def make_session(
    config: RunConfigModel, params: str, circuit: Optional[str] = None
) -> Session:
    return Session.from_name(
        params,
        seed=config.seed,
        workers=config.workers,
        deterministic=config.deterministic,
        circuit=circuit,
        force=config.force,
    )


def handle_errors(func: Callable) -> Callable:
    """Turn library errors into click exceptions with a non-zero exit code."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except OutOfLevels as error:
            raise click.ClickException(
                f"{error} Raise the levels of the parameter set or lower the "
                f"circuit depth."
            ) from error
        except UFHEError as error:
            raise click.ClickException(str(error)) from error

    return wrapper


def emit_report(report: ReportModel, json_path: Optional[Path]) -> None:
    """
    Write the report as JSON or summarize it on the terminal.

    Exits with status 1 when the run did not verify.

    """
    if json_path is None:
        click.echo(report.json(indent=2))
    else:
        json_path.write_text(report.json(indent=2))
        logger.info("Wrote the report to '%s'.", json_path)
    if report.timing is not None:
        logger.info("Median wall-clock time %.3f s.", report.timing.median)
    if not report.verified:
        logger.error("The %s run failed verification.", report.command)
        raise click.exceptions.Exit(1)
