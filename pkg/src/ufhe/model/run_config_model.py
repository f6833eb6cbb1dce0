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


"""Provide data validation for run configuration files."""


from typing import List, Optional

from pydantic import BaseModel, Field

from ..bgv import CircuitKind


class BenchConfigModel(BaseModel):
    """Define the settings of the comparison benchmark."""

    circuit: Optional[CircuitKind] = None
    reps: int = Field(10, ge=1)
    bits: int = Field(64, ge=1)


class AppsConfigModel(BaseModel):
    """Define the settings of the applications."""

    params: str = "app-p17"
    n: int = Field(16, ge=1)
    bits: int = Field(8, ge=1)
    query: str = Field("add", regex=r"^(add|mult|power)$")
    op2: int = Field(64, ge=0)
    max_exponent: int = Field(4096, ge=1)
    compaction: bool = True
    nonblocking: bool = True


class RunConfigModel(BaseModel):
    """
    Define a run configuration file.

    Command line options take precedence over the values given here.

    """

    params: str = "toy-p3"
    bench: BenchConfigModel = BenchConfigModel()
    apps: AppsConfigModel = AppsConfigModel()
    seed: int = 0
    workers: int = Field(1, ge=1)
    deterministic: bool = True
    force: bool = False
    suites: List[str] = []
