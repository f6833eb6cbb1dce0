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


"""Consolidate sparsely used values into fewer, denser ones."""


import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import InvalidParameter
from .usage import SlotUsage


logger = logging.getLogger(__name__)


Move = Tuple[int, int, int, int]
Bucket = Tuple[int, int, int]


@dataclass(frozen=True)
class CompactionPlan:
    """
    List where every useful slot goes.

    Attributes
    ----------
    moves : tuple of (src_ct, src_slot, dst_ct, dst_slot)
    dst_count : int
    src_count : int
    slots : int

    """

    moves: Tuple[Move, ...]
    dst_count: int
    src_count: int
    slots: int

    @property
    def is_identity(self) -> bool:
        return self.dst_count == self.src_count and all(
            src == dst and src_slot == dst_slot
            for src, src_slot, dst, dst_slot in self.moves
        )

    def buckets(self) -> Dict[Bucket, List[int]]:
        """
        Group the moves by (src_ct, dst_ct, left rotation).

        Each bucket is realized by one mask product and one rotation.

        """
        grouped: Dict[Bucket, List[int]] = defaultdict(list)
        for src, src_slot, dst, dst_slot in self.moves:
            offset = (src_slot - dst_slot) % self.slots
            grouped[(src, dst, offset)].append(src_slot)
        return dict(grouped)

    def usages(self) -> List[SlotUsage]:
        """Return the usage of every output."""
        masks = np.zeros((self.dst_count, self.slots), dtype=bool)
        for _, _, dst, dst_slot in self.moves:
            masks[dst, dst_slot] = True
        return [SlotUsage.from_array(mask, "compact") for mask in masks]


def _place_whole(
    indices: List[int], free: np.ndarray, slots: int
) -> Optional[Tuple[int, int]]:
    """Find the earliest destination and lowest position taking all indices."""
    source = np.array(indices)
    for dst in range(free.shape[0]):
        best = None
        for offset in range(slots):
            targets = (source - offset) % slots
            if free[dst, targets].all():
                lowest = int(targets.min())
                if best is None or lowest < best[0]:
                    best = (lowest, offset)
        if best is not None:
            return dst, best[1]
    return None


def plan_compaction(usages: Sequence[SlotUsage]) -> CompactionPlan:
    """
    Pack the useful slots of all inputs into as few outputs as possible.

    Each input is first placed as a whole under one rotation into the
    earliest output with room for it, as far left as possible, which keeps
    the number of distinct rotations low and packs equal inputs into
    consecutive blocks. Inputs that fit nowhere as a whole fill the free slots
    from left to right. Since all items take one slot, the output count is
    always ceil(useful / l).

    Raises
    ------
    InvalidParameter
        If no usage is given.

    """
    if not usages:
        raise InvalidParameter("Cannot compact an empty list of values.")
    slots = usages[0].slots
    src_count = len(usages)
    if all(usage.useful == slots for usage in usages):
        moves = tuple(
            (ct, slot, ct, slot) for ct in range(src_count) for slot in range(slots)
        )
        return CompactionPlan(moves, src_count, src_count, slots)
    total = sum(usage.useful for usage in usages)
    dst_count = max(math.ceil(total / slots), 1)
    free = np.ones((dst_count, slots), dtype=bool)
    moves: List[Move] = []
    for src, usage in enumerate(usages):
        indices = usage.indices()
        if not indices:
            continue
        placement = _place_whole(indices, free, slots)
        if placement is not None:
            dst, offset = placement
            for slot in indices:
                target = (slot - offset) % slots
                free[dst, target] = False
                moves.append((src, slot, dst, target))
            continue
        open_slots = list(zip(*np.nonzero(free)))
        for slot, (dst, target) in zip(indices, open_slots):
            free[dst, target] = False
            moves.append((src, slot, int(dst), int(target)))
    plan = CompactionPlan(tuple(moves), dst_count, src_count, slots)
    logger.debug(
        "Planned %d moves in %d buckets from %d to %d values.",
        len(moves),
        len(plan.buckets()),
        src_count,
        dst_count,
    )
    return plan


def apply_compaction(values: Sequence, plan: CompactionPlan, ev) -> List:
    """
    Realize a plan with mask products, rotations and additions.

    Raises
    ------
    MissingGaloisKey
    OutOfLevels

    """
    if plan.is_identity:
        return list(values)
    if len(values) != plan.src_count:
        raise InvalidParameter(
            f"The plan expects {plan.src_count} values, got {len(values)}."
        )
    outputs: List = [None] * plan.dst_count
    for (src, dst, offset), indices in sorted(plan.buckets().items()):
        mask = np.zeros(plan.slots, dtype=np.int64)
        mask[indices] = 1
        moved = ev.rotate(ev.mul_plain(values[src], mask), offset)
        outputs[dst] = moved if outputs[dst] is None else ev.add(outputs[dst], moved)
    return outputs


@dataclass(frozen=True)
class CompactionReport:
    """Summarize one compaction decision."""

    applied: bool
    reason: str
    src_count: int
    dst_count: int
    utilization_before: float
    utilization_after: float
    buckets: int = 0


def _utilization(usages: Sequence[SlotUsage]) -> float:
    slots = sum(usage.slots for usage in usages)
    return sum(usage.useful for usage in usages) / slots if slots else 0.0


def compact_if_beneficial(
    values: Sequence, usages: Sequence[SlotUsage], ev
) -> Tuple[List, List[SlotUsage], CompactionReport]:
    """
    Compact only when it saves values and every input affords the moves.

    Returns
    -------
    tuple
        The resulting values, their usages and a report of the decision.

    """
    plan = plan_compaction(usages)
    before = _utilization(usages)
    if plan.dst_count >= plan.src_count:
        reason = "no reduction in value count"
    elif not all(ev.affords_move(value) for value in values):
        reason = "insufficient noise budget for a mask product and rotation"
    else:
        outputs = apply_compaction(values, plan, ev)
        after_usages = plan.usages()
        report = CompactionReport(
            applied=True,
            reason="compacted",
            src_count=plan.src_count,
            dst_count=plan.dst_count,
            utilization_before=before,
            utilization_after=_utilization(after_usages),
            buckets=len(plan.buckets()),
        )
        logger.info(
            "Compaction reduced %d values to %d.", plan.src_count, plan.dst_count
        )
        return outputs, after_usages, report
    logger.warning("Compaction skipped: %s.", reason)
    report = CompactionReport(
        applied=False,
        reason=reason,
        src_count=plan.src_count,
        dst_count=plan.src_count,
        utilization_before=before,
        utilization_after=before,
    )
    return list(values), list(usages), report
