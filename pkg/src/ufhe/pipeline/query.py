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


"""Answer a private query by straightlining its three branches."""


import logging
from enum import IntEnum
from typing import Any, Optional, Tuple

from ..compare import (
    DigitExecutor,
    Evaluator,
    Job,
    Phase,
    SequentialExecutor,
    eq_digit,
    fermat_power,
)
from ..exceptions import InvalidParameter
from .handle import spawn


logger = logging.getLogger(__name__)


DEFAULT_MAX_EXPONENT = 4096


class QueryTag(IntEnum):
    """Define the digit each query operation is tagged with."""

    ADD = 0
    MULT = 1
    POWER = 2


def fold_exponent(exponent: int, p: int) -> int:
    """
    Reduce a positive exponent using x^p = x on F_p.

    The result lies in [1, p - 1] and gives the same power for every slot
    value, zero included.

    """
    if exponent < 1:
        raise InvalidParameter(f"Cannot fold the exponent {exponent}.")
    return (exponent - 1) % (p - 1) + 1


def _branch_job(ev: Evaluator, query: Any) -> Tuple[Any, Any, Any]:
    return tuple(
        eq_digit(query, ev.constant_like(query, int(tag)), ev) for tag in QueryTag
    )


def _power(data: Any, exponent: int, ev: Evaluator) -> Any:
    if exponent == 0:
        return ev.constant_like(data, 1)
    return fermat_power(data, exponent, ev)


def private_query(
    query: Any,
    op1: Any,
    op2: int,
    data: Any,
    ev: Evaluator,
    executor: Optional[DigitExecutor] = None,
    nonblocking: bool = True,
    fold: bool = True,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
) -> Any:
    """
    Return the data updated by the operation the encrypted tag selects.

    All three candidate results are computed, and the tag comparisons
    select one of them arithmetically:
    EQ(q, add) (data + op1) + EQ(q, mult) data op1 + EQ(q, power) data^op2.
    In non-blocking mode the comparisons run on a helper worker while the
    candidates are computed.

    Parameters
    ----------
    query : value
        Holds the tag digit of a `QueryTag` in every slot.
    op1 : value
    op2 : int
        A public exponent of at most ``max_exponent``.
    data : value
    ev : Evaluator
    executor : DigitExecutor, optional
        The helper pool; defaults to running the comparisons inline.
    nonblocking : bool
    fold : bool
        Reduce op2 modulo p - 1 before exponentiating.
    max_exponent : int

    Raises
    ------
    InvalidParameter
        If op2 is negative or above the maximum.
    OutOfLevels
        If the unfolded power is deeper than the remaining levels.

    """
    if not 0 <= op2 <= max_exponent:
        raise InvalidParameter(f"The exponent must lie in [0, {max_exponent}].")
    exponent = fold_exponent(op2, ev.p) if fold and op2 else op2
    executor = executor or SequentialExecutor(ev)
    job = Job(_branch_job, (query,), Phase.LT_EQ)
    if nonblocking:
        handle = spawn(job, executor, ev)
    else:
        selectors = spawn(job, executor, ev).wait()
    with ev.counter.phase(Phase.OTHER):
        added = ev.add(data, op1)
        multiplied = ev.mul(data, op1)
        powered = _power(data, exponent, ev)
    if nonblocking:
        selectors = handle.wait()
    select_add, select_mult, select_power = selectors
    with ev.counter.phase(Phase.OTHER):
        result = ev.add(
            ev.add(ev.mul(added, select_add), ev.mul(multiplied, select_mult)),
            ev.mul(powered, select_power),
        )
    logger.debug(
        "Answered a private query with exponent %d folded to %d.", op2, exponent
    )
    return result
