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


"""Place the digits of several integers into the slots of one plaintext."""


import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ..exceptions import InvalidParameter, WrongSlotCount
from .digits import Alphabet, DigitVec, digits_to_int, int_to_digits


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DigitLayout:
    """
    Lay integers out in consecutive blocks of ``digits * stride`` slots.

    Digit i of integer j, counted from the least significant, lives in slot
    ``j * block + i * stride``; the remaining slots of a block stay zero. The
    comparison result of integer j ends up in its block start.

    Attributes
    ----------
    slots : int
        The number of slots l.
    digits : int
    p : int
    alphabet : Alphabet
    stride : int

    """

    slots: int
    digits: int
    p: int
    alphabet: Alphabet = Alphabet.FULL
    stride: int = 1

    def __post_init__(self) -> None:
        if self.digits < 1 or self.stride < 1:
            raise InvalidParameter("Digit count and stride must be positive.")
        if self.block > self.slots:
            raise InvalidParameter(
                f"A block of {self.block} slots does not fit into {self.slots}."
            )

    @property
    def block(self) -> int:
        """Return the number of slots per integer."""
        return self.digits * self.stride

    @property
    def capacity(self) -> int:
        """Return the number of integers per plaintext."""
        return self.slots // self.block

    def digit_slot(self, item: int, digit: int) -> int:
        return item * self.block + digit * self.stride

    def encode(self, values: Sequence[int]) -> np.ndarray:
        """Return the slot vector holding the digits of up to capacity integers."""
        if len(values) > self.capacity:
            raise WrongSlotCount(
                f"At most {self.capacity} integers fit, got {len(values)}."
            )
        slots = np.zeros(self.slots, dtype=np.int64)
        for item, value in enumerate(values):
            vec = int_to_digits(int(value), self.p, self.digits, self.alphabet)
            for digit, d in enumerate(vec.digits):
                slots[self.digit_slot(item, digit)] = d
        return slots

    def decode(self, slots: Sequence[int], count: int) -> List[int]:
        """Read ``count`` integers back out of a slot vector."""
        return [
            digits_to_int(
                DigitVec(
                    tuple(
                        int(slots[self.digit_slot(item, digit)])
                        for digit in range(self.digits)
                    ),
                    self.p,
                    self.alphabet,
                )
            )
            for item in range(count)
        ]

    def read_results(self, slots: Sequence[int], count: int) -> List[int]:
        """Return the value at each of the first ``count`` block starts."""
        return [int(slots[item * self.block]) for item in range(count)]

    def block_start_mask(self, count: Optional[int] = None) -> np.ndarray:
        """Return ones at the block starts of the first ``count`` integers."""
        count = self.capacity if count is None else count
        mask = np.zeros(self.slots, dtype=np.int64)
        mask[[item * self.block for item in range(count)]] = 1
        return mask

    def digit_mask(self, count: Optional[int] = None) -> np.ndarray:
        """Return ones at every digit slot of the first ``count`` integers."""
        count = self.capacity if count is None else count
        mask = np.zeros(self.slots, dtype=np.int64)
        for item in range(count):
            for digit in range(self.digits):
                mask[self.digit_slot(item, digit)] = 1
        return mask
