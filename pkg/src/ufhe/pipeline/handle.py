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


"""Defer comparisons to a helper worker and collect them later."""


import logging
import threading
import time
from concurrent.futures import Future
from enum import Enum
from typing import Any, Optional

from ..compare import (
    DigitCircuit,
    DigitExecutor,
    Evaluator,
    Job,
    Phase,
    SequentialExecutor,
    compare_ints,
)
from ..exceptions import AlreadyConsumed, ComparisonFailed, InvalidParameter


logger = logging.getLogger(__name__)


class HandleState(str, Enum):
    """Define the life cycle of a deferred result."""

    PENDING = "pending"
    READY = "ready"
    FAILED = "failed"


class CompareHandle:
    """
    Refer to a result computed on a helper worker.

    The result can only be obtained through `wait`, exactly once. Handles
    may be passed between threads.

    Attributes
    ----------
    started : float
        The ``time.perf_counter`` value at submission.
    finished : float or None
        The value when the helper completed, if it has.

    """

    def __init__(
        self, future: Future, evaluator: Optional[Evaluator] = None, **kwargs
    ) -> None:
        super().__init__(**kwargs)
        self._future = future
        self._evaluator = evaluator
        self._lock = threading.Lock()
        self._consumed = False
        self.started = time.perf_counter()
        self.finished: Optional[float] = None
        future.add_done_callback(self._stamp)

    def _stamp(self, _: Future) -> None:
        self.finished = time.perf_counter()

    @property
    def state(self) -> HandleState:
        if not self._future.done():
            return HandleState.PENDING
        if self._future.exception() is not None:
            return HandleState.FAILED
        return HandleState.READY

    @property
    def consumed(self) -> bool:
        return self._consumed

    @property
    def elapsed(self) -> Optional[float]:
        return None if self.finished is None else self.finished - self.started

    def wait(self) -> Any:
        """
        Block until the result is available and return it.

        The job's operation counts are merged into the spawning evaluator.

        Raises
        ------
        AlreadyConsumed
            If the handle was waited on before.
        ComparisonFailed
            If the job raised, chained to the original error.

        """
        with self._lock:
            if self._consumed:
                raise AlreadyConsumed("The comparison result was already taken.")
            self._consumed = True
        try:
            result, snapshot = self._future.result()
        except Exception as error:
            message = f"The deferred comparison failed: {error}"
            raise ComparisonFailed(message) from error
        if self._evaluator is not None:
            self._evaluator.counter.merge(snapshot)
        return result


def spawn(job: Job, executor: DigitExecutor, evaluator: Evaluator) -> CompareHandle:
    """Submit a job and return its handle without waiting."""
    return CompareHandle(executor.submit(job), evaluator)


def wait(handle: CompareHandle) -> Any:
    """Block until the deferred result is available and return it."""
    return handle.wait()


class CompareKind(str, Enum):
    """Define which bit a deferred comparison returns."""

    EQ = "eq"
    LT = "lt"


def _compare_job(
    ev: Evaluator,
    kind: CompareKind,
    a: Any,
    b: Any,
    circuit: DigitCircuit,
    digits: int,
    stride: int,
) -> Any:
    result = compare_ints(a, b, circuit, ev, digits, stride)
    return result.eq if kind is CompareKind.EQ else result.lt


def spawn_compare(
    kind: CompareKind,
    a: Any,
    b: Any,
    circuit: DigitCircuit,
    ev: Evaluator,
    digits: int,
    stride: int = 1,
    executor: Optional[DigitExecutor] = None,
) -> CompareHandle:
    """
    Start comparing two packed operands and return immediately.

    With the sequential executor the comparison completes before this
    returns, which serializes helper and main path deterministically.

    Parameters
    ----------
    kind : CompareKind
    a, b : operands laid out digit by digit
    circuit : DigitCircuit
    ev : Evaluator
    digits : int
    stride : int
    executor : DigitExecutor, optional

    Returns
    -------
    CompareHandle

    """
    kind = CompareKind(kind)
    if digits < 1:
        raise InvalidParameter("At least one digit is required.")
    executor = executor or SequentialExecutor(ev)
    job = Job(_compare_job, (kind, a, b, circuit, digits, stride), Phase.OTHER)
    logger.debug("Spawned a deferred %s comparison.", kind.value)
    return spawn(job, executor, ev)
