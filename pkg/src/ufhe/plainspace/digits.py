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


"""Encode non-negative integers as base-p or base-(p+1)/2 digit vectors."""


import logging
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from ..exceptions import AlphabetViolation, InvalidParameter, OutOfRange


logger = logging.getLogger(__name__)


class Alphabet(str, Enum):
    """Define the digit ranges of the comparison circuits."""

    FULL = "full"
    HALF = "half"


def radix(p: int, alphabet: Alphabet) -> int:
    """Return p for the full alphabet and (p + 1) / 2 for the half alphabet."""
    return p if Alphabet(alphabet) is Alphabet.FULL else (p + 1) // 2


@dataclass(frozen=True)
class DigitVec:
    """
    Hold the digits of one integer, least significant first.

    Attributes
    ----------
    digits : tuple of int
    p : int
    alphabet : Alphabet

    """

    digits: Tuple[int, ...]
    p: int
    alphabet: Alphabet = Alphabet.FULL

    def __post_init__(self) -> None:
        base = radix(self.p, self.alphabet)
        for digit in self.digits:
            if not 0 <= digit < base:
                raise AlphabetViolation(
                    f"Digit {digit} is outside the {Alphabet(self.alphabet).value} "
                    f"alphabet of p={self.p}."
                )

    def __len__(self) -> int:
        return len(self.digits)


def capacity(p: int, count: int, alphabet: Alphabet = Alphabet.FULL) -> int:
    """Return the number of integers representable with ``count`` digits."""
    return radix(p, alphabet) ** count


def digits_needed(bits: int, p: int, alphabet: Alphabet = Alphabet.FULL) -> int:
    """Return the number of digits required for every ``bits``-bit integer."""
    base = radix(p, alphabet)
    count = 1
    while base ** count < 2 ** bits:
        count += 1
    return count


def int_to_digits(
    x: int, p: int, count: int, alphabet: Alphabet = Alphabet.FULL
) -> DigitVec:
    """
    Expand a non-negative integer into ``count`` digits.

    Parameters
    ----------
    x : int
    p : int
        The plaintext prime.
    count : int
    alphabet : Alphabet
        The full alphabet uses radix p; the half alphabet uses radix
        h = (p + 1) / 2 so that every digit is at most (p - 1) / 2.

    Returns
    -------
    DigitVec

    Raises
    ------
    OutOfRange
        If x is negative or does not fit into ``count`` digits.

    """
    if count < 1:
        raise InvalidParameter("At least one digit is required.")
    base = radix(p, alphabet)
    if not 0 <= x < base ** count:
        raise OutOfRange(f"{x} does not fit into {count} digits of radix {base}.")
    digits = []
    for _ in range(count):
        x, digit = divmod(x, base)
        digits.append(digit)
    return DigitVec(tuple(digits), p, Alphabet(alphabet))


def digits_to_int(vec: DigitVec) -> int:
    """Recombine a digit vector into its integer."""
    base = radix(vec.p, vec.alphabet)
    value = 0
    for digit in reversed(vec.digits):
        value = value * base + digit
    return value
