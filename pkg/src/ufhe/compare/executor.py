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


"""Run independent digit jobs sequentially or on a pool of workers."""


import logging
from abc import ABC, abstractmethod
from concurrent.futures import Executor, Future, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, List, Optional, Sequence, Tuple

from ..exceptions import InvalidParameter, WorkerPanic
from ..ring import Workspace, install_workspace
from .counter import Phase, Snapshot
from .evaluators import Evaluator


logger = logging.getLogger(__name__)


Outcome = Tuple[Any, Snapshot]


@dataclass(frozen=True)
class Job:
    """
    Describe one side-effect free unit of work.

    Attributes
    ----------
    func : callable
        A module-level function called as ``func(evaluator, *args)`` so that
        jobs can be pickled to worker processes.
    args : tuple
    phase : Phase
        The counter phase the job's operations default to.

    """

    func: Callable[..., Any]
    args: Tuple[Any, ...] = field(default=())
    phase: Phase = Phase.OTHER


def run_job(job: Job, evaluator: Evaluator) -> Outcome:
    """Run a job on a fork of the evaluator and return its counter snapshot."""
    forked = evaluator.fork()
    with forked.counter.phase(job.phase):
        result = job.func(forked, *job.args)
    return result, forked.counter.snapshot()


class DigitExecutor(ABC):
    """
    Define the interface of job executors.

    Results are always returned in job order, so every backend produces the
    same values as the sequential one.

    """

    def __init__(self, evaluator: Evaluator, **kwargs) -> None:
        super().__init__(**kwargs)
        self.evaluator = evaluator

    @property
    @abstractmethod
    def workers(self) -> int:
        """Return the number of jobs that may run at once."""

    @abstractmethod
    def submit(self, job: Job) -> "Future[Outcome]":
        """Schedule one job."""

    def map(self, jobs: Sequence[Job]) -> List[Outcome]:
        """
        Run all jobs and return their outcomes in order.

        Raises
        ------
        WorkerPanic
            Naming the first failing job, chained to its error.

        """
        futures = [self.submit(job) for job in jobs]
        outcomes = []
        for index, future in enumerate(futures):
            try:
                outcomes.append(future.result())
            except Exception as error:
                raise WorkerPanic(index, f"Job {index} failed: {error!r}") from error
        return outcomes

    def close(self) -> None:
        pass

    def __enter__(self) -> "DigitExecutor":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


class SequentialExecutor(DigitExecutor):
    """Run every job immediately in the calling thread."""

    @property
    def workers(self) -> int:
        return 1

    def submit(self, job: Job) -> "Future[Outcome]":
        future: "Future[Outcome]" = Future()
        try:
            future.set_result(run_job(job, self.evaluator))
        except Exception as error:
            future.set_exception(error)
        return future


class PoolKind(str, Enum):
    """Define the worker flavours of the pooled executor."""

    PROCESS = "process"
    THREAD = "thread"


_worker_evaluator: Optional[Evaluator] = None


def _initialize_worker(evaluator: Optional[Evaluator]) -> None:
    global _worker_evaluator
    if evaluator is not None:
        _worker_evaluator = evaluator
    install_workspace(Workspace())


def _run_in_worker(job: Job) -> Outcome:
    return run_job(job, _worker_evaluator)


class PooledExecutor(DigitExecutor):
    """
    Run jobs on a fixed pool of workers.

    Every worker is initialized once with its own staging workspace and, for
    processes, its own copy of the evaluator without the secret key.

    Parameters
    ----------
    evaluator : Evaluator
    workers : int
    kind : PoolKind
        Processes by default; threads share the evaluator.

    """

    def __init__(
        self,
        evaluator: Evaluator,
        workers: int,
        kind: PoolKind = PoolKind.PROCESS,
        **kwargs,
    ) -> None:
        super().__init__(evaluator=evaluator, **kwargs)
        if workers < 1:
            raise InvalidParameter(f"At least one worker is required, got {workers}.")
        self._workers = workers
        self.kind = PoolKind(kind)
        self._pool: Executor
        if self.kind is PoolKind.PROCESS:
            self._pool = ProcessPoolExecutor(
                max_workers=workers,
                initializer=_initialize_worker,
                initargs=(evaluator,),
            )
        else:
            self._pool = ThreadPoolExecutor(
                max_workers=workers,
                thread_name_prefix="ufhe-worker",
                initializer=_initialize_worker,
                initargs=(None,),
            )
        logger.info("Started %d %s workers.", workers, self.kind.value)

    @property
    def workers(self) -> int:
        return self._workers

    def submit(self, job: Job) -> "Future[Outcome]":
        if self.kind is PoolKind.PROCESS:
            return self._pool.submit(_run_in_worker, job)
        return self._pool.submit(run_job, job, self.evaluator)

    def close(self) -> None:
        self._pool.shutdown(wait=True)


def make_executor(
    evaluator: Evaluator, workers: int = 1, kind: PoolKind = PoolKind.PROCESS
) -> DigitExecutor:
    """Return the sequential backend for one worker and a pool otherwise."""
    if workers == 1:
        return SequentialExecutor(evaluator)
    return PooledExecutor(evaluator, workers, kind)


def schedule_digit_jobs(
    jobs: Sequence[Job], workers: int, evaluator: Evaluator
) -> List[Outcome]:
    """
    Execute independent jobs on ``workers`` workers.

    Returns
    -------
    list
        The (result, counter snapshot) of every job in job order.

    Raises
    ------
    WorkerPanic

    """
    with make_executor(evaluator, workers) as executor:
        return executor.map(jobs)
