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


"""Find minima, sort and move integers between packed and single layouts."""


import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from ..exceptions import InvalidParameter
from ..plainspace import DigitLayout, capacity
from .circuits import DigitCircuit
from .counter import Phase
from .evaluators import Evaluator, Value
from .executor import DigitExecutor
from .integers import Comparison, compare_batch
from .polyeval import power_ladder
from .rotations import (
    block_mask,
    block_sums,
    broadcast,
    rotate_blocks,
    segment_fold,
)


logger = logging.getLogger(__name__)


def _spread(value: Value, layout: DigitLayout, count: int, ev: Evaluator) -> Value:
    """Copy each block start onto every digit slot of its block."""
    return broadcast(
        value, layout.block_start_mask(count), layout.digits, layout.stride, ev
    )


def _replicate(value: Value, span: int, copies: int, ev: Evaluator) -> Value:
    """Repeat the first ``span`` slots ``copies`` times."""
    return segment_fold(value, copies, -span, ev.add, ev.rotate)


def _shifted_copy(
    doubled: Value,
    shift: int,
    region: int,
    layout: DigitLayout,
    count: int,
    ev: Evaluator,
) -> Value:
    """Place the items cyclically shifted by ``shift`` blocks into ``region``."""
    span = count * layout.block
    moved = ev.rotate(doubled, shift * layout.block - region * span)
    return ev.mul_plain(moved, block_mask(ev.slots, span, [region]))


def _region_starts(
    layout: DigitLayout, count: int, region: int, items: Sequence[int]
) -> np.ndarray:
    mask = np.zeros(layout.slots, dtype=np.int64)
    mask[[region * count * layout.block + j * layout.block for j in items]] = 1
    return mask


def _beaten_terms(
    packed: Value,
    count: int,
    layout: DigitLayout,
    circuit: DigitCircuit,
    ev: Evaluator,
    executor: Optional[DigitExecutor],
) -> List[Value]:
    """
    Return one indicator per cyclic shift s = 1, ..., count - 1.

    Term s holds [a_(j+s) < a_j] + [j + s wraps] [a_(j+s) = a_j] at the start
    of block j and zero elsewhere. Only shifts up to count / 2 are compared;
    term count - s at block j equals 1 minus term s at block j - s. When the
    slots hold several copies of the items, that many shifts share one
    comparison, each in its own region.

    """
    span = count * layout.block
    half = count // 2
    regions = min(max(1, ev.slots // span), half)
    if regions > 1:
        doubled = _replicate(packed, span, 2, ev)
        base = _replicate(packed, span, regions, ev)
    else:
        base = packed
    shifts = list(range(1, half + 1))
    groups = [shifts[i : i + regions] for i in range(0, half, regions)]
    pairs = []
    for group in groups:
        if regions > 1:
            copies = [
                _shifted_copy(doubled, s, region, layout, count, ev)
                for region, s in enumerate(group)
            ]
            other = copies[0]
            for copy in copies[1:]:
                other = ev.add(other, copy)
        else:
            other = rotate_blocks(packed, group[0], count, layout.block, ev)
        pairs.append((other, base))
    comparisons = compare_batch(
        pairs, circuit, ev, layout.digits, layout.stride, executor
    )
    with ev.counter.phase(Phase.OTHER):
        terms = {}
        for group, comparison in zip(groups, comparisons):
            for region, s in enumerate(group):
                items = _region_starts(layout, count, region, range(count))
                wrapped = _region_starts(
                    layout, count, region, range(count - s, count)
                )
                beaten = ev.add(
                    ev.mul_plain(comparison.lt, items),
                    ev.mul_plain(comparison.eq, wrapped),
                )
                terms[s] = ev.rotate(beaten, region * span)
        starts = layout.block_start_mask(count)
        for s in range(half + 1, count):
            mirrored = rotate_blocks(
                terms[count - s], s - count, count, layout.block, ev
            )
            terms[s] = ev.add_plain(ev.neg(mirrored), starts)
    logger.debug(
        "Derived %d shifted comparisons of %d items from %d comparisons.",
        count - 1,
        count,
        len(pairs),
    )
    return [terms[s] for s in range(1, count)]


def _product_tree(values: Sequence[Value], ev: Evaluator) -> Value:
    level = list(values)
    while len(level) > 1:
        paired = [ev.mul(a, b) for a, b in zip(level[::2], level[1::2])]
        if len(level) % 2:
            paired.append(level[-1])
        level = paired
    return level[0]


def min_matrix(
    packed: Value,
    count: int,
    layout: DigitLayout,
    circuit: DigitCircuit,
    ev: Evaluator,
    executor: Optional[DigitExecutor] = None,
) -> Value:
    """
    Return the minimum of ``count`` integers packed into one value.

    Every cyclic block shift is compared against the original. Item j is
    the minimum when no item is smaller and no earlier item is equal, so
    exactly one selector survives; it picks its item's digits and the blocks
    are summed into block 0.
    Slots after the first ``count`` blocks must be zero.

    """
    if count == 1:
        return packed
    terms = _beaten_terms(packed, count, layout, circuit, ev, executor)
    with ev.counter.phase(Phase.OTHER):
        survivors = [ev.add_scalar(ev.neg(term), 1) for term in terms]
        selector = _spread(_product_tree(survivors, ev), layout, count, ev)
        chosen = block_sums(ev.mul(packed, selector), count, layout.block, ev)
        return ev.mul_plain(chosen, layout.digit_mask(1))


def min_tournament(
    items: Sequence[Value],
    layout: DigitLayout,
    circuit: DigitCircuit,
    ev: Evaluator,
    executor: Optional[DigitExecutor] = None,
) -> Value:
    """
    Return the slot-wise minimum of a list of identically laid out values.

    The list is padded to a power of two with the largest representable
    integer, then each round replaces pairs by b + (a - b) [a < b].

    Raises
    ------
    OutOfLevels
        If the tournament is deeper than the remaining levels.

    """
    if not items:
        raise InvalidParameter("Cannot take the minimum of no items.")
    level = list(items)
    width = 1 << math.ceil(math.log2(len(level)))
    if width > len(level):
        top = capacity(layout.p, layout.digits, layout.alphabet) - 1
        sentinel = ev.plain_like(level[0], layout.encode([top] * layout.capacity))
        level.extend([sentinel] * (width - len(level)))
    while len(level) > 1:
        pairs = list(zip(level[::2], level[1::2]))
        comparisons = compare_batch(
            pairs, circuit, ev, layout.digits, layout.stride, executor
        )
        with ev.counter.phase(Phase.OTHER):
            level = [
                ev.add(b, ev.mul(ev.sub(a, b), _spread(cmp.lt, layout, None, ev)))
                for (a, b), cmp in zip(pairs, comparisons)
            ]
    return level[0]


def sort_rank(
    packed: Value,
    count: int,
    layout: DigitLayout,
    circuit: DigitCircuit,
    ev: Evaluator,
    executor: Optional[DigitExecutor] = None,
) -> Value:
    """
    Sort ``count`` packed integers into ascending block order.

    The rank of item j counts the smaller items plus the equal items before
    it, so ranks form a permutation. Ranks are spread over each block, and
    for every cyclic shift s the items whose rank equals j - s are selected
    by a plaintext-weighted expansion of 1 - (rank - c)^(p - 1) over shared
    powers of the rank, and shifted into place. When two copies of the items
    fit into the slots, every shift is a single rotation of the copies.
    Slots after the first ``count`` blocks must be zero.

    Raises
    ------
    InvalidParameter
        If the ranks do not fit into F_p.

    """
    p = ev.p
    if count > p:
        raise InvalidParameter(f"Ranks of {count} items do not fit into F_{p}.")
    if count == 1:
        return packed
    terms = _beaten_terms(packed, count, layout, circuit, ev, executor)
    span = count * layout.block
    doubled = 2 * span <= layout.slots
    with ev.counter.phase(Phase.OTHER):
        rank = terms[0]
        for term in terms[1:]:
            rank = ev.add(rank, term)
        rank = _spread(rank, layout, count, ev)
        source = packed
        if doubled:
            rank = _replicate(rank, span, 2, ev)
            source = _replicate(packed, span, 2, ev)
        powers = power_ladder(rank, p - 1, ev)
        digit_slots = layout.digit_mask(2 * count if doubled else count).astype(bool)
        items = np.arange(layout.slots) // layout.block
        sorted_value = None
        for s in range(count):
            target = np.where(digit_slots, (items - s) % count, 0)
            weights = [
                math.comb(p - 1, i) * np.array(
                    [pow(-int(c), p - 1 - i, p) for c in target], dtype=np.int64
                ) % p
                for i in range(p)
            ]
            mismatch = None
            for power, weight in zip(powers, weights[1:]):
                term = ev.mul_plain(power, weight)
                mismatch = term if mismatch is None else ev.add(mismatch, term)
            match = ev.add_plain(ev.neg(mismatch), (1 - weights[0]) % p)
            picked = ev.mul(source, match)
            if doubled:
                picked = ev.rotate(picked, s * layout.block)
            else:
                picked = rotate_blocks(picked, s, count, layout.block, ev)
            if sorted_value is not None:
                picked = ev.add(sorted_value, picked)
            sorted_value = picked
        if doubled:
            sorted_value = ev.mul_plain(sorted_value, layout.digit_mask(count))
    return sorted_value


def pack_items(
    items: Sequence[Value], layout: DigitLayout, ev: Evaluator, mask: bool = True
) -> Value:
    """
    Move the block-0 integer of each value into consecutive blocks of one.

    Parameters
    ----------
    mask : bool
        Clear everything outside block 0 first, which is required unless the
        inputs are already zero there.

    """
    if len(items) > layout.capacity:
        raise InvalidParameter(
            f"{len(items)} items exceed the capacity of {layout.capacity}."
        )
    packed = None
    for j, item in enumerate(items):
        if mask:
            item = ev.mul_plain(item, layout.digit_mask(1))
        moved = ev.rotate(item, -j * layout.block)
        packed = moved if packed is None else ev.add(packed, moved)
    return packed


def unpack_items(
    packed: Value, count: int, layout: DigitLayout, ev: Evaluator
) -> List[Value]:
    """Return one value per packed integer, each holding it in block 0."""
    block_zero = layout.digit_mask(1)
    return [
        ev.mul_plain(ev.rotate(packed, j * layout.block), block_zero)
        for j in range(count)
    ]
