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


"""Define residue number system bases and exact CRT composition."""


import logging
from dataclasses import dataclass, field
from functools import reduce
from operator import mul
from typing import Sequence, Tuple

import numpy as np

from .. import instrumentation
from ..exceptions import InvalidParameter
from .modulus import Modulus


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RnsBasis:
    """
    Define an ordered basis of distinct primes q_0, ..., q_L.

    Attributes
    ----------
    primes : tuple of Modulus
    big_q : int
        The product of all primes.
    units : tuple of int
        The CRT recombination units ``(Q/q_i) * ((Q/q_i)^-1 mod q_i)``, each
        congruent to one modulo q_i and to zero modulo every other prime.

    """

    primes: Tuple[Modulus, ...]
    big_q: int = field(init=False, repr=False)
    units: Tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        values = [mod.q for mod in self.primes]
        if len(set(values)) != len(values):
            raise InvalidParameter("RNS primes must be pairwise distinct.")
        big_q = reduce(mul, values, 1)
        units = []
        for q in values:
            partial = big_q // q
            units.append(partial * pow(partial % q, -1, q) % big_q)
        object.__setattr__(self, "big_q", big_q)
        object.__setattr__(self, "units", tuple(units))

    @classmethod
    def from_values(cls, values: Sequence[int]) -> "RnsBasis":
        """Create a basis from plain prime values."""
        from .primes import is_probable_prime

        for q in values:
            if not is_probable_prime(q):
                raise InvalidParameter(f"RNS modulus {q} is not prime.")
        return cls(tuple(Modulus(int(q)) for q in values))

    @property
    def level_count(self) -> int:
        """Return the number of primes."""
        return len(self.primes)

    @property
    def values(self) -> Tuple[int, ...]:
        """Return the primes as plain integers."""
        return tuple(mod.q for mod in self.primes)

    def prefix(self, count: int) -> "RnsBasis":
        """Return the basis made of the first ``count`` primes."""
        if not 0 <= count <= self.level_count:
            raise InvalidParameter(f"Cannot take {count} of {self.level_count} primes.")
        if count == self.level_count:
            return self
        return RnsBasis(self.primes[:count])

    def column(self) -> np.ndarray:
        """Return the primes as an object column vector for broadcasting."""
        return np.array(self.values, dtype=object).reshape(-1, 1)

    def decompose(self, x: int) -> Tuple[int, ...]:
        """Return the residues of an integer modulo every prime."""
        return tuple(x % q for q in self.values)

    def __len__(self) -> int:
        return self.level_count


def crt_compose(residues: Sequence[int], basis: RnsBasis) -> int:
    """
    Compose residues into the centered representative modulo Q.

    Parameters
    ----------
    residues : sequence of int
        One residue per prime of the basis.
    basis : RnsBasis

    Returns
    -------
    int
        The unique x in (-Q/2, Q/2] congruent to every residue.

    """
    if len(residues) != basis.level_count:
        raise InvalidParameter("Expected one residue per prime.")
    big_q = basis.big_q
    x = sum(int(r) * u for r, u in zip(residues, basis.units)) % big_q
    return x - big_q if x > big_q // 2 else x


def crt_compose_rows(matrix: np.ndarray, basis: RnsBasis) -> np.ndarray:
    """
    Compose every column of a residue matrix into centered integers.

    Parameters
    ----------
    matrix : numpy.ndarray
        An object array of shape (L + 1, width) with one row per prime.
    basis : RnsBasis

    Returns
    -------
    numpy.ndarray
        An object array of length ``width`` holding centered integers.

    """
    with instrumentation.timed("crt"):
        units = np.array(basis.units, dtype=object).reshape(-1, 1)
        big_q = basis.big_q
        composed = (matrix * units).sum(axis=0) % big_q
        half = big_q // 2
        return np.where(composed > half, composed - big_q, composed)
