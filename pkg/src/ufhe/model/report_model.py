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


"""Provide the data model of machine-readable run reports."""


from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class TimingModel(BaseModel):
    """Summarize wall-clock seconds over repetitions."""

    mean: float
    median: float
    stdev: float
    per_integer: Optional[float] = None
    samples: List[float] = []


class CompactionModel(BaseModel):
    """Describe the slot compaction before a comparison stage."""

    applied: bool
    reason: str
    src_count: int
    dst_count: int
    utilization_before: float
    utilization_after: float
    buckets: int = 0


class SuiteModel(BaseModel):
    """Hold the outcome of one self-test suite."""

    name: str
    passed: int = 0
    failed: int = 0
    errors: List[str] = []


class ReportModel(BaseModel):
    """
    Define the JSON report of a benchmark, application or self-test run.

    Only the ``timing``, ``components`` and ``overlap`` fields depend on the
    machine; all others are reproducible under a fixed seed in deterministic
    mode.

    """

    command: str
    param_set: str
    circuit: Optional[str] = None
    seed: int
    workers: int = Field(1, ge=1)
    deterministic: bool = True
    verified: bool
    bits: Optional[int] = None
    integers: Optional[int] = None
    reps: Optional[int] = None
    timing: Optional[TimingModel] = None
    counters: Dict[str, Dict[str, int]] = {}
    components: Dict[str, float] = {}
    compaction: Optional[CompactionModel] = None
    ciphertexts: Dict[str, int] = {}
    overlap: Dict[str, float] = {}
    suites: List[SuiteModel] = []
    notes: List[str] = []
