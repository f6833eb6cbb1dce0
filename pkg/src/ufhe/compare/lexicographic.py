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


"""Combine per-digit LT and EQ results in lexicographic order."""


import logging
from typing import Tuple

from .counter import Phase
from .evaluators import Evaluator, Value
from .rotations import segment_fold


logger = logging.getLogger(__name__)


Pair = Tuple[Value, Value]


def lex_fold(
    lt: Value, eq: Value, digits: int, ev: Evaluator, stride: int = 1
) -> Pair:
    """
    Fold digit-wise (LT, EQ) pairs into whole-integer (LT, EQ) pairs.

    Digit i of an integer lives ``i * stride`` slots above its block start,
    the most significant digit last. A lower window and the window above it
    combine as LT = LT_hi + EQ_hi * LT_lo and EQ = EQ_hi * EQ_lo; the EQ
    products and rotations are charged to the ShiftMul phase and the LT
    accumulation to the ShiftAdd phase. The results sit at the block starts.

    Returns
    -------
    tuple
        The folded (LT, EQ) values.

    """

    def merge(low: Pair, high: Pair) -> Pair:
        with ev.counter.phase(Phase.SHIFT_MUL):
            eq_both = ev.mul(high[1], low[1])
        with ev.counter.phase(Phase.SHIFT_ADD):
            lt_both = ev.add(high[0], ev.mul(high[1], low[0]))
        return lt_both, eq_both

    def rotate(pair: Pair, k: int) -> Pair:
        with ev.counter.phase(Phase.SHIFT_ADD):
            lt_rotated = ev.rotate(pair[0], k)
        with ev.counter.phase(Phase.SHIFT_MUL):
            eq_rotated = ev.rotate(pair[1], k)
        return lt_rotated, eq_rotated

    return segment_fold((lt, eq), digits, stride, merge, rotate)


def lex_combine(
    lt: Value, eq: Value, digits: int, ev: Evaluator, stride: int = 1
) -> Value:
    """
    Return LT = sum over i of LT_i times the product of EQ_j for j > i.

    A single digit returns ``lt`` unchanged.

    Raises
    ------
    MissingGaloisKey
    OutOfLevels

    """
    return lex_fold(lt, eq, digits, ev, stride)[0]
