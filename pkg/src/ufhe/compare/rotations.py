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


"""Combine windows of slots with rotations that never cross block borders."""


import logging
from typing import Callable, Iterable, List, TypeVar

import numpy as np

from ..exceptions import InvalidParameter
from .evaluators import Evaluator, Value


logger = logging.getLogger(__name__)


T = TypeVar("T")


def segment_fold(
    value: T,
    count: int,
    step: int,
    merge: Callable[[T, T], T],
    rotate: Callable[[T, int], T],
) -> T:
    """
    Fold the window of ``count`` slots spaced by ``step`` into its first slot.

    Windows of power-of-two width are built by doubling, W_2w = merge(W_w,
    W_w rotated by w * step), and the set bits of ``count`` are stitched in
    ascending order. Every window is exact, so no masks are needed between
    rounds. ``merge`` receives the lower window first.

    Parameters
    ----------
    value : T
        The width-one windows, one per slot.
    count : int
    step : int
        The slot distance between neighbouring positions; negative steps fold
        towards lower slots.
    merge : callable
        An associative combination of a lower and an adjacent upper window.
    rotate : callable
        Rotates a window value left by a signed number of slots.

    """
    if count < 1:
        raise InvalidParameter(f"Cannot fold {count} positions.")
    windows: List[T] = [value]
    while 1 << len(windows) <= count:
        width = 1 << (len(windows) - 1)
        previous = windows[-1]
        windows.append(merge(previous, rotate(previous, width * step)))
    acc = None
    offset = 0
    for bit, window in enumerate(windows):
        width = 1 << bit
        if not count & width:
            continue
        if acc is None:
            acc = window
        else:
            acc = merge(acc, rotate(window, offset * step))
        offset += width
    return acc


def block_mask(slots: int, block: int, blocks: Iterable[int]) -> np.ndarray:
    """Return ones on every slot of the listed blocks."""
    mask = np.zeros(slots, dtype=np.int64)
    for j in blocks:
        mask[j * block : (j + 1) * block] = 1
    return mask


def block_sums(value: Value, count: int, block: int, ev: Evaluator) -> Value:
    """Add the first ``count`` blocks slot by slot into block 0."""
    return segment_fold(value, count, block, ev.add, ev.rotate)


def broadcast(
    value: Value, mask: np.ndarray, count: int, step: int, ev: Evaluator
) -> Value:
    """
    Copy the masked slots to the next ``count - 1`` positions spaced by step.

    A slot s selected by the mask ends up in s, s + step, ..., s + (count - 1)
    step, all other slots in that range being cleared beforehand.

    """
    selected = ev.mul_plain(value, mask)
    return segment_fold(selected, count, -step, ev.add, ev.rotate)


def rotate_blocks(
    value: Value, shift: int, count: int, block: int, ev: Evaluator
) -> Value:
    """
    Rotate the first ``count`` blocks cyclically left by ``shift`` blocks.

    Block j receives block (j + shift) mod count. When the blocks do not
    fill the slots, the two wrapped pieces are masked and added.

    """
    shift %= count
    if shift == 0:
        return value
    if count * block == ev.slots:
        return ev.rotate(value, shift * block)
    head = ev.mul_plain(
        ev.rotate(value, shift * block),
        block_mask(ev.slots, block, range(count - shift)),
    )
    tail = ev.mul_plain(
        ev.rotate(value, (shift - count) * block),
        block_mask(ev.slots, block, range(count - shift, count)),
    )
    return ev.add(head, tail)
