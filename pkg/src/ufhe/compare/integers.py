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


"""Compare whole integers packed digit by digit into slots."""


import logging
from dataclasses import dataclass
from typing import Generic, List, Optional, Sequence, Tuple

import numpy as np

from .circuits import DigitCircuit
from .counter import Phase
from .digit_ops import eq_digit, lt_digit
from .evaluators import Evaluator, Value
from .executor import DigitExecutor, Job, SequentialExecutor
from .lexicographic import lex_fold


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Comparison(Generic[Value]):
    """Hold the encrypted [a < b] and [a = b] bits at every block start."""

    lt: Value
    eq: Value


def _eq_job(ev: Evaluator, x: Value, y: Value) -> Value:
    return eq_digit(x, y, ev)


def _lt_job(ev: Evaluator, x: Value, y: Value, circuit: DigitCircuit) -> Value:
    return lt_digit(x, y, circuit, ev)


class DigitJob:
    """Create the jobs comparing all digits of two operands."""

    @staticmethod
    def eq(x: Value, y: Value) -> Job:
        return Job(_eq_job, (x, y), Phase.LT_EQ)

    @staticmethod
    def lt(x: Value, y: Value, circuit: DigitCircuit) -> Job:
        return Job(_lt_job, (x, y, circuit), Phase.LT_EQ)


def digit_columns(slots: int, digits: int, stride: int = 1) -> List[np.ndarray]:
    """Return 0/1 masks partitioning all slots by the digit position they hold."""
    owner = (np.arange(slots) // stride) % digits
    return [(owner == column).astype(np.int64) for column in range(digits)]


def _column_jobs(
    a: Value,
    b: Value,
    circuit: DigitCircuit,
    ev: Evaluator,
    columns: List[np.ndarray],
) -> List[Job]:
    with ev.counter.phase(Phase.LT_EQ):
        masked = [(ev.mul_plain(a, mask), ev.mul_plain(b, mask)) for mask in columns]
    return [DigitJob.eq(x, y) for x, y in masked] + [
        DigitJob.lt(x, y, circuit) for x, y in masked
    ]


def _join_columns(
    eqs: Sequence[Value], lts: Sequence[Value], ev: Evaluator
) -> Tuple[Value, Value]:
    """Sum per-column results, each being eq = 1 and lt = 0 off its column."""
    eq, lt = eqs[0], lts[0]
    for other_eq, other_lt in zip(eqs[1:], lts[1:]):
        eq = ev.add(eq, other_eq)
        lt = ev.add(lt, other_lt)
    return lt, ev.add_scalar(eq, -(len(eqs) - 1))


def compare_batch(
    pairs: Sequence[Tuple[Value, Value]],
    circuit: DigitCircuit,
    ev: Evaluator,
    digits: int,
    stride: int = 1,
    executor: Optional[DigitExecutor] = None,
    split: Optional[bool] = None,
) -> List[Comparison]:
    """
    Compare several pairs of packed operands.

    The EQ and LT digit circuits of every pair run as independent jobs on the
    executor; their counters are merged into ``ev`` in job order before the
    lexicographic combination runs on the calling side. When splitting, each
    operand is first masked down to one digit position per job, which yields
    ``2 * digits`` jobs per pair at the price of ``digits`` times the digit
    circuit work.

    Parameters
    ----------
    pairs : sequence of (a, b)
        Operands laid out by the same `DigitLayout`.
    circuit : DigitCircuit
    ev : Evaluator
    digits : int
    stride : int
    executor : DigitExecutor, optional
        Defaults to running the jobs inline.
    split : bool, optional
        Whether to run one job per digit column. Defaults to splitting when
        the executor has more than two workers and integers have several
        digits.

    Returns
    -------
    list of Comparison

    Raises
    ------
    WorkerPanic
        If a digit job fails.

    """
    executor = executor or SequentialExecutor(ev)
    if split is None:
        split = executor.workers > 2 and digits > 1
    columns = digit_columns(ev.slots, digits, stride) if split else []
    width = 2 * len(columns) if split else 2
    jobs = []
    for a, b in pairs:
        if split:
            jobs.extend(_column_jobs(a, b, circuit, ev, columns))
        else:
            jobs.append(DigitJob.eq(a, b))
            jobs.append(DigitJob.lt(a, b, circuit))
    outcomes = executor.map(jobs)
    for _, snapshot in outcomes:
        ev.counter.merge(snapshot)
    results = []
    for index in range(len(pairs)):
        chunk = outcomes[index * width : (index + 1) * width]
        values = [value for value, _ in chunk]
        if split:
            half = len(columns)
            lt, eq = _join_columns(values[:half], values[half:], ev)
        else:
            eq, lt = values
        lt, eq = lex_fold(lt, eq, digits, ev, stride)
        results.append(Comparison(lt=lt, eq=eq))
    logger.debug(
        "Compared %d operand pairs of %d digits as %d jobs on %d workers.",
        len(pairs),
        digits,
        len(jobs),
        executor.workers,
    )
    return results


def compare_ints(
    a: Value,
    b: Value,
    circuit: DigitCircuit,
    ev: Evaluator,
    digits: int,
    stride: int = 1,
    executor: Optional[DigitExecutor] = None,
    split: Optional[bool] = None,
) -> Comparison:
    """Compute [a < b] and [a = b] for every integer packed into the operands."""
    return compare_batch([(a, b)], circuit, ev, digits, stride, executor, split)[0]
