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


"""Test digit codecs and the packed integer layout."""


import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ufhe.exceptions import (
    AlphabetViolation,
    InvalidParameter,
    OutOfRange,
    WrongSlotCount,
)
from ufhe.plainspace import (
    Alphabet,
    DigitLayout,
    DigitVec,
    capacity,
    digits_needed,
    digits_to_int,
    int_to_digits,
    radix,
)


@pytest.mark.parametrize(
    "p, alphabet, expected", [(3, Alphabet.FULL, 3), (7, Alphabet.HALF, 4)]
)
def test_radix(p: int, alphabet: Alphabet, expected: int) -> None:
    """Expect radix p or (p + 1) / 2."""
    assert radix(p, alphabet) == expected


@pytest.mark.parametrize(
    "bits, p, alphabet, expected",
    [
        (64, 3, Alphabet.FULL, 41),
        (8, 3, Alphabet.FULL, 6),
        (8, 17, Alphabet.FULL, 2),
        (8, 17, Alphabet.HALF, 3),
        (1, 3, Alphabet.FULL, 1),
    ],
)
def test_digits_needed(bits: int, p: int, alphabet: Alphabet, expected: int) -> None:
    """Expect the least digit count covering every bits-bit integer."""
    assert digits_needed(bits, p, alphabet) == expected
    assert capacity(p, expected, alphabet) >= 2 ** bits


@given(
    x=st.integers(min_value=0, max_value=2 ** 32 - 1),
    p=st.sampled_from([3, 5, 7, 11, 13, 17]),
    alphabet=st.sampled_from(list(Alphabet)),
)
def test_digit_round_trip(x: int, p: int, alphabet: Alphabet) -> None:
    """Expect recombination to invert the expansion and digits to stay small."""
    count = digits_needed(32, p, alphabet)
    vec = int_to_digits(x, p, count, alphabet)
    assert len(vec) == count
    assert digits_to_int(vec) == x
    if alphabet is Alphabet.HALF:
        assert max(vec.digits) <= (p - 1) // 2


def test_digits_least_significant_first() -> None:
    """Expect 5 = 12 in base 3 to be stored as (2, 1, 0)."""
    assert int_to_digits(5, 3, 3).digits == (2, 1, 0)


@pytest.mark.parametrize("x", [-1, 27])
def test_out_of_range(x: int) -> None:
    """Expect integers outside the digit range to be rejected."""
    with pytest.raises(OutOfRange):
        int_to_digits(x, 3, 3)


def test_alphabet_violation() -> None:
    """Expect a digit above (p - 1) / 2 to violate the half alphabet."""
    with pytest.raises(AlphabetViolation):
        DigitVec((4,), 7, Alphabet.HALF)


def test_layout_codec() -> None:
    """Expect integers in consecutive blocks, least significant digit first."""
    layout = DigitLayout(slots=12, digits=3, p=3)
    assert layout.block == 3
    assert layout.capacity == 4
    slots = layout.encode([5, 26])
    assert list(slots[:6]) == [2, 1, 0, 2, 2, 2]
    assert not slots[6:].any()
    assert layout.decode(slots, 2) == [5, 26]


def test_layout_stride() -> None:
    """Expect strided digits with zero gaps."""
    layout = DigitLayout(slots=12, digits=3, p=3, stride=2)
    assert layout.block == 6
    slots = layout.encode([5])
    assert list(slots[:6]) == [2, 0, 1, 0, 0, 0]
    assert layout.decode(slots, 1) == [5]


def test_layout_masks() -> None:
    """Expect block start and digit masks of the first items."""
    layout = DigitLayout(slots=12, digits=3, p=3)
    assert np.flatnonzero(layout.block_start_mask(2)).tolist() == [0, 3]
    assert np.flatnonzero(layout.digit_mask(1)).tolist() == [0, 1, 2]
    assert layout.read_results(np.arange(12), 4) == [0, 3, 6, 9]


def test_layout_capacity() -> None:
    """Expect too many integers to be rejected."""
    with pytest.raises(WrongSlotCount):
        DigitLayout(slots=12, digits=3, p=3).encode([1] * 5)


def test_layout_block_too_large() -> None:
    """Expect a block wider than the slots to be rejected."""
    with pytest.raises(InvalidParameter):
        DigitLayout(slots=4, digits=5, p=3)
