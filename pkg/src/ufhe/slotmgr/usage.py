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


"""Track which slots of a value carry useful data."""


import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import InvalidParameter, LengthMismatch
from ..plainspace import SlotAlgebra, slot_perm_for


logger = logging.getLogger(__name__)


class UsageOp(str, Enum):
    """Define the operations usage is propagated through."""

    ADD = "add"
    MUL = "mul"
    ROTATE = "rotate"
    ENCODE = "encode"


@dataclass(frozen=True)
class SlotUsage:
    """
    Mark the useful slots of one value.

    Attributes
    ----------
    mask : tuple of bool
        One flag per slot.
    provenance : str
        The operation that last wrote the value.

    """

    mask: Tuple[bool, ...]
    provenance: str = UsageOp.ENCODE.value

    @classmethod
    def from_array(cls, mask: Sequence[bool], provenance: str) -> "SlotUsage":
        return cls(tuple(bool(flag) for flag in mask), provenance)

    @property
    def slots(self) -> int:
        return len(self.mask)

    @property
    def useful(self) -> int:
        return sum(self.mask)

    @property
    def utilization(self) -> float:
        return self.useful / self.slots if self.slots else 0.0

    def indices(self) -> List[int]:
        return [i for i, flag in enumerate(self.mask) if flag]

    def array(self) -> np.ndarray:
        return np.array(self.mask, dtype=bool)


def _check_lengths(inputs: Sequence[SlotUsage]) -> int:
    lengths = {usage.slots for usage in inputs}
    if len(lengths) > 1:
        raise LengthMismatch(f"Slot masks of lengths {sorted(lengths)} differ.")
    return lengths.pop()


def track(
    op: UsageOp,
    inputs: Sequence[SlotUsage],
    meta: Optional[Dict[str, Any]] = None,
) -> SlotUsage:
    """
    Derive the usage of an operation's output from its inputs.

    Parameters
    ----------
    op : UsageOp
    inputs : sequence of SlotUsage
    meta : dict, optional
        ``add`` and ``mul`` accept a ``live`` mask declared by the algorithm;
        a slot stays useful when any input marks it and it is live.
        ``rotate`` takes the left shift ``k``, or a Galois ``element`` with
        its slot ``algebra``. ``encode`` takes ``slots`` and either ``size``
        for a dense prefix or explicit ``positions``.

    Returns
    -------
    SlotUsage

    Raises
    ------
    LengthMismatch
        If input masks differ in length.

    """
    op = UsageOp(op)
    meta = meta or {}
    if op is UsageOp.ENCODE:
        mask = np.zeros(int(meta["slots"]), dtype=bool)
        if "positions" in meta:
            mask[list(meta["positions"])] = True
        else:
            mask[: int(meta["size"])] = True
        return SlotUsage.from_array(mask, op.value)
    if not inputs:
        raise InvalidParameter(f"The {op.value} operation needs an input usage.")
    length = _check_lengths(inputs)
    if op is UsageOp.ROTATE:
        (usage,) = inputs
        if "element" in meta:
            algebra: SlotAlgebra = meta["algebra"]
            permutation = list(slot_perm_for(int(meta["element"]), algebra))
            mask = usage.array()[permutation]
        else:
            mask = np.roll(usage.array(), -int(meta.get("k", 0)))
        return SlotUsage.from_array(mask, op.value)
    mask = np.logical_or.reduce([usage.array() for usage in inputs])
    if "live" in meta:
        live = np.asarray(meta["live"], dtype=bool)
        if live.shape != (length,):
            raise LengthMismatch(f"The live mask does not cover {length} slots.")
        mask &= live
    return SlotUsage.from_array(mask, op.value)


def encode_usages(size: int, slots: int) -> List[SlotUsage]:
    """
    Return the usage of ``size`` values spread densely over ciphertexts.

    Only the tail of the last ciphertext is unused.

    """
    usages = []
    for start in range(0, size, slots):
        meta = {"slots": slots, "size": min(slots, size - start)}
        usages.append(track(UsageOp.ENCODE, [], meta))
    return usages


def strided_usage(slots: int, stride: int, offset: int = 0) -> SlotUsage:
    """Return the usage keeping every ``stride``-th slot from ``offset``."""
    positions = range(offset, slots, stride)
    return track(UsageOp.ENCODE, [], {"slots": slots, "positions": positions})
