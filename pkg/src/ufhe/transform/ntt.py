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


"""Provide radix-2 number theoretic transforms of power-of-two length."""


import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from ..arith import Modulus, ModulusLike, as_modulus, find_root
from ..exceptions import BadLength, OrderNotDividing


logger = logging.getLogger(__name__)


class Direction(str, Enum):
    """Define the direction of a transform."""

    FORWARD = "forward"
    INVERSE = "inverse"


def is_power_of_two(value: int) -> bool:
    """Return whether the value is a positive power of two."""
    return value > 0 and value & (value - 1) == 0


@lru_cache(maxsize=None)
def bit_reverse_indices(size: int) -> np.ndarray:
    """Return the bit-reversal permutation of ``range(size)``."""
    if not is_power_of_two(size):
        raise BadLength(f"Transform length {size} is not a power of two.")
    bits = size.bit_length() - 1
    indices = np.arange(size)
    reversed_indices = np.zeros(size, dtype=np.int64)
    for bit in range(bits):
        reversed_indices |= ((indices >> bit) & 1) << (bits - 1 - bit)
    reversed_indices.setflags(write=False)
    return reversed_indices


@dataclass(frozen=True)
class Pow2Tables:
    """
    Hold the twiddle tables of a size-M transform modulo one prime.

    Attributes
    ----------
    size : int
    q : int
    root : int
        The primitive M-th root of unity used for the forward direction.
    powers : numpy.ndarray
        ``root^i`` for i in [0, M/2) as Python integers.
    inverse_powers : numpy.ndarray
        ``root^-i`` for i in [0, M/2).
    size_inverse : int
        ``M^-1 mod q``.

    """

    size: int
    q: int
    root: int
    powers: np.ndarray
    inverse_powers: np.ndarray
    size_inverse: int

    @classmethod
    def build(
        cls, size: int, mod: ModulusLike, root: Optional[int] = None
    ) -> "Pow2Tables":
        """Compute the tables, finding a root of unity unless one is given."""
        mod = as_modulus(mod)
        if not is_power_of_two(size):
            raise BadLength(f"Transform length {size} is not a power of two.")
        if (mod.q - 1) % size != 0:
            raise OrderNotDividing(f"Length {size} does not divide {mod.q} - 1.")
        if root is None:
            root = find_root(size, mod)
        half = max(size // 2, 1)
        return cls(
            size=size,
            q=mod.q,
            root=root,
            powers=_power_table(root, half, mod),
            inverse_powers=_power_table(mod.inverse(root), half, mod),
            size_inverse=mod.inverse(size % mod.q),
        )


def _power_table(base: int, count: int, mod: Modulus) -> np.ndarray:
    table = np.empty(count, dtype=object)
    value = 1
    for i in range(count):
        table[i] = value
        value = value * base % mod.q
    return table


def butterflies(x: np.ndarray, q: np.ndarray, powers: np.ndarray) -> np.ndarray:
    """
    Apply iterative Cooley-Tukey butterflies along the last axis.

    Parameters
    ----------
    x : numpy.ndarray
        An object array of shape (..., P, M) in natural order.
    q : numpy.ndarray
        The primes as an object array of shape (P, 1).
    powers : numpy.ndarray
        Twiddle powers of shape (P, M/2), one row per prime.

    Returns
    -------
    numpy.ndarray
        The unscaled transform of every row in natural order.

    """
    size = x.shape[-1]
    x = x[..., bit_reverse_indices(size)]
    q_block = q[:, :, np.newaxis]
    span = 2
    while span <= size:
        half = span // 2
        twiddles = powers[:, :: size // span][:, np.newaxis, :half]
        blocks = x.reshape(x.shape[:-1] + (size // span, 2, half))
        upper = blocks[..., 0, :]
        lower = blocks[..., 1, :] * twiddles % q_block
        x = np.concatenate(
            ((upper + lower) % q_block, (upper - lower) % q_block), axis=-1
        ).reshape(x.shape)
        span *= 2
    return x


def ntt_pow2(
    values: Sequence[int],
    mod: ModulusLike,
    direction: Direction = Direction.FORWARD,
    root: Optional[int] = None,
) -> np.ndarray:
    """
    Transform a power-of-two length residue vector.

    Parameters
    ----------
    values : sequence of int
        The residues, in natural order.
    mod : Modulus or int
        A prime with M dividing q - 1.
    direction : Direction
        The forward transform evaluates at powers of the root; the inverse
        includes the 1/M scaling so that both compose to the identity.
    root : int, optional
        A primitive M-th root of unity; found deterministically if omitted.

    Returns
    -------
    numpy.ndarray
        The transformed residues as Python integers, in natural order.

    """
    vector = np.array([int(v) for v in values], dtype=object)
    tables = Pow2Tables.build(len(vector), mod, root)
    q = np.array([[tables.q]], dtype=object)
    if Direction(direction) is Direction.FORWARD:
        return butterflies(vector[np.newaxis, :], q, tables.powers[np.newaxis, :])[0]
    result = butterflies(vector[np.newaxis, :], q, tables.inverse_powers[np.newaxis, :])
    return result[0] * tables.size_inverse % tables.q
