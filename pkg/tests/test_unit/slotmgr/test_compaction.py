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


"""Test slot usage tracking and ciphertext compaction."""


import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ufhe.compare import PlainEvaluator
from ufhe.exceptions import InvalidParameter, LengthMismatch
from ufhe.plainspace import build_slot_algebra
from ufhe.slotmgr import (
    SlotUsage,
    UsageOp,
    apply_compaction,
    compact_if_beneficial,
    encode_usages,
    plan_compaction,
    strided_usage,
    track,
)


class TightEvaluator(PlainEvaluator):
    """Claim that no value can afford another move."""

    def affords_move(self, a) -> bool:
        return False


def _usage(*positions: int, slots: int = 8) -> SlotUsage:
    return track(UsageOp.ENCODE, [], {"slots": slots, "positions": positions})


def test_encode_usages() -> None:
    """Expect only the tail of the last value to be unused."""
    usages = encode_usages(20, 8)
    assert [usage.useful for usage in usages] == [8, 8, 4]
    assert usages[-1].indices() == [0, 1, 2, 3]
    assert usages[-1].utilization == 0.5


def test_strided_usage() -> None:
    assert strided_usage(10, 3, 1).indices() == [1, 4, 7]


def test_track_union_and_live_mask() -> None:
    """Expect add and mul to keep the union of useful slots that are live."""
    a = _usage(0, 1)
    b = _usage(1, 5)
    assert track(UsageOp.ADD, [a, b]).indices() == [0, 1, 5]
    live = [True] * 4 + [False] * 4
    result = track(UsageOp.MUL, [a, b], {"live": live})
    assert result.indices() == [0, 1]
    assert result.provenance == "mul"


def test_track_rotation_by_shift() -> None:
    usage = _usage(0, 3, 7)
    assert track(UsageOp.ROTATE, [usage], {"k": 3}).indices() == [0, 4, 5]


def test_track_rotation_by_galois_element() -> None:
    """Expect a rotation element to move usage like the equivalent shift."""
    algebra = build_slot_algebra(5, 31)
    usage = _usage(0, 2, 9, slots=algebra.l)
    meta = {"element": algebra.rotation_element(3), "algebra": algebra}
    by_element = track(UsageOp.ROTATE, [usage], meta)
    by_shift = track(UsageOp.ROTATE, [usage], {"k": 3})
    assert by_element.mask == by_shift.mask


def test_track_length_mismatch() -> None:
    with pytest.raises(LengthMismatch):
        track(UsageOp.ADD, [_usage(0), _usage(0, slots=4)])
    with pytest.raises(LengthMismatch):
        track(UsageOp.MUL, [_usage(0)], {"live": [True] * 3})


def test_track_requires_input() -> None:
    with pytest.raises(InvalidParameter):
        track(UsageOp.ADD, [])


def test_plan_requires_usages() -> None:
    with pytest.raises(InvalidParameter):
        plan_compaction([])


def test_full_usages_give_identity() -> None:
    plan = plan_compaction(encode_usages(16, 8))
    assert plan.is_identity
    assert plan.dst_count == 2


def test_equal_inputs_pack_into_blocks() -> None:
    """Expect identical usages to land in consecutive blocks of one value."""
    usages = [_usage(0, 1) for _ in range(4)]
    plan = plan_compaction(usages)
    assert plan.dst_count == 1
    targets = sorted((src, dst_slot) for src, _, _, dst_slot in plan.moves)
    assert targets == [(0, 0), (0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)]
    assert len(plan.buckets()) == 4


@settings(max_examples=50, deadline=None)
@given(
    masks=st.lists(
        st.lists(st.booleans(), min_size=8, max_size=8), min_size=1, max_size=6
    )
)
def test_plan_is_minimal_and_preserves_values(masks) -> None:
    """Expect ceil(useful / l) outputs carrying every useful value once."""
    usages = [SlotUsage.from_array(mask, "encode") for mask in masks]
    plan = plan_compaction(usages)
    useful = sum(usage.useful for usage in usages)
    if not plan.is_identity:
        assert plan.dst_count == max(math.ceil(useful / 8), 1)
    assert len(plan.moves) == useful
    assert len({(dst, slot) for _, _, dst, slot in plan.moves}) == useful
    ev = PlainEvaluator(97, 8)
    data = np.arange(len(masks) * 8).reshape(len(masks), 8) + 1
    values = [ev.encrypt(row.tolist()) for row in data]
    outputs = apply_compaction(values, plan, ev)
    for src, src_slot, dst, dst_slot in plan.moves:
        assert ev.decrypt(outputs[dst])[dst_slot] == data[src, src_slot]
    if not plan.is_identity:
        for dst, usage in enumerate(plan.usages()):
            if outputs[dst] is None:
                continue
            unused = ~usage.array()
            assert not ev.decrypt(outputs[dst])[unused].any()


def test_apply_rejects_wrong_value_count() -> None:
    ev = PlainEvaluator(5, 8)
    plan = plan_compaction([_usage(0), _usage(1)])
    with pytest.raises(InvalidParameter):
        apply_compaction([ev.encrypt([1])], plan, ev)


def test_compact_if_beneficial() -> None:
    """Expect four quarter-full values to merge into one."""
    ev = PlainEvaluator(7, 8)
    usages = [_usage(0, 1) for _ in range(4)]
    values = [ev.encrypt([i + 1, i + 2]) for i in range(4)]
    outputs, after, report = compact_if_beneficial(values, usages, ev)
    assert report.applied
    assert (report.src_count, report.dst_count) == (4, 1)
    assert report.utilization_before == 0.25
    assert report.utilization_after == 1.0
    assert len(outputs) == 1
    assert after[0].useful == 8
    assert sorted(ev.decrypt(outputs[0]).tolist()) == [1, 2, 2, 3, 3, 4, 4, 5]
    assert ev.counter.total().rotations > 0


def test_compaction_skipped_without_reduction() -> None:
    ev = PlainEvaluator(7, 8)
    usages = [_usage(0, 1, 2, 3, 4), _usage(3, 4, 5, 6, 7)]
    values = [ev.encrypt([1] * 8), ev.encrypt([2] * 8)]
    outputs, after, report = compact_if_beneficial(values, usages, ev)
    assert not report.applied
    assert report.reason == "no reduction in value count"
    assert all(a is b for a, b in zip(outputs, values))
    assert after == usages


def test_compaction_skipped_without_budget() -> None:
    """Expect values that cannot afford a move to be returned untouched."""
    ev = TightEvaluator(7, 8)
    usages = [_usage(0), _usage(0)]
    values = [ev.encrypt([1]), ev.encrypt([2])]
    outputs, _, report = compact_if_beneficial(values, usages, ev)
    assert not report.applied
    assert "noise budget" in report.reason
    assert report.dst_count == 2
    assert all(a is b for a, b in zip(outputs, values))
    assert ev.counter.total().rotations == 0
