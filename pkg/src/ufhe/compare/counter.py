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


"""Count homomorphic operations per circuit phase."""


import logging
import threading
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional


logger = logging.getLogger(__name__)


class Phase(str, Enum):
    """Define the phases a comparison is broken into."""

    EXTRACTION = "Extraction"
    LT_EQ = "LT/EQ"
    SHIFT_MUL = "ShiftMul"
    SHIFT_ADD = "ShiftAdd"
    OTHER = "Other"


@dataclass
class PhaseCounts:
    """Hold the operation counts of one phase."""

    nonscalar_mults: int = 0
    scalar_mults: int = 0
    adds: int = 0
    rotations: int = 0

    def merge(self, other: "PhaseCounts") -> None:
        self.nonscalar_mults += other.nonscalar_mults
        self.scalar_mults += other.scalar_mults
        self.adds += other.adds
        self.rotations += other.rotations


Snapshot = Dict[str, Dict[str, int]]


class OpCounter:
    """
    Accumulate operation counts, attributing each to the active phase.

    Counters only ever grow and the phases partition the totals. The active
    phase is tracked per thread and defaults to ``Other``.

    """

    def __init__(self, **kwargs) -> None:
        super().__init__(**kwargs)
        self.phases: Dict[Phase, PhaseCounts] = {
            phase: PhaseCounts() for phase in Phase
        }
        self._local = threading.local()

    def __getstate__(self) -> dict:
        return {"phases": self.phases}

    def __setstate__(self, state: dict) -> None:
        self.phases = state["phases"]
        self._local = threading.local()

    def _stack(self) -> List[Phase]:
        stack = getattr(self._local, "stack", None)
        if stack is None:
            stack = []
            self._local.stack = stack
        return stack

    @property
    def current(self) -> Phase:
        stack = self._stack()
        return stack[-1] if stack else Phase.OTHER

    @contextmanager
    def phase(self, phase: Phase) -> Iterator[None]:
        """Attribute all operations inside the block to a phase."""
        stack = self._stack()
        stack.append(Phase(phase))
        try:
            yield
        finally:
            stack.pop()

    def record(self, kind: str, count: int = 1) -> None:
        counts = self.phases[self.current]
        setattr(counts, kind, getattr(counts, kind) + count)

    def nonscalar(self, phase: Optional[Phase] = None) -> int:
        """Return the non-scalar multiplications of one or all phases."""
        if phase is not None:
            return self.phases[Phase(phase)].nonscalar_mults
        return sum(counts.nonscalar_mults for counts in self.phases.values())

    def total(self) -> PhaseCounts:
        result = PhaseCounts()
        for counts in self.phases.values():
            result.merge(counts)
        return result

    def snapshot(self) -> Snapshot:
        """Return the counts as plain dictionaries keyed by phase name."""
        return {phase.value: asdict(counts) for phase, counts in self.phases.items()}

    def merge(self, snapshot: Snapshot) -> None:
        """Add the counts of a snapshot taken elsewhere."""
        for name, counts in snapshot.items():
            self.phases[Phase(name)].merge(PhaseCounts(**counts))

    def reset(self) -> None:
        for phase in Phase:
            self.phases[phase] = PhaseCounts()
