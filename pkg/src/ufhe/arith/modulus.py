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


"""Provide word-sized modular arithmetic with Barrett reduction."""


import logging
from dataclasses import dataclass, field
from typing import Union

from ..exceptions import InvalidParameter


logger = logging.getLogger(__name__)


MAX_MODULUS_BITS = 62


@dataclass(frozen=True)
class Modulus:
    """
    Define an odd modulus below 2^62 together with its Barrett constant.

    Primality is not enforced here since the same reduction is useful for
    composite moduli such as the ring order; `RnsBasis` insists on primes.

    Attributes
    ----------
    q : int
        The modulus value.
    shift : int
        The Barrett shift ``k = 2 * bit_length(q)``.
    barrett_factor : int
        The precomputed reciprocal ``floor(2^k / q)``.

    """

    q: int
    shift: int = field(init=False, repr=False)
    barrett_factor: int = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.q < 3 or self.q % 2 == 0:
            raise InvalidParameter(f"Modulus must be odd and at least 3, got {self.q}.")
        if self.q.bit_length() > MAX_MODULUS_BITS:
            raise InvalidParameter(
                f"Modulus must be below 2^{MAX_MODULUS_BITS}, got {self.q}."
            )
        shift = 2 * self.q.bit_length()
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "barrett_factor", (1 << shift) // self.q)

    @property
    def bits(self) -> int:
        """Return the bit length of the modulus."""
        return self.q.bit_length()

    def reduce(self, x: int) -> int:
        """Reduce a non-negative integer below q^2 with Barrett's method."""
        estimate = (x * self.barrett_factor) >> self.shift
        result = x - estimate * self.q
        # The estimate is short by at most two multiples of q.
        while result >= self.q:
            result -= self.q
        return result

    def inverse(self, a: int) -> int:
        """Return the multiplicative inverse of a modulo q."""
        return pow(a, -1, self.q)

    def __int__(self) -> int:
        return self.q


ModulusLike = Union[Modulus, int]


def as_modulus(mod: ModulusLike) -> Modulus:
    """Coerce an integer to a `Modulus`."""
    return mod if isinstance(mod, Modulus) else Modulus(int(mod))


def mul_mod(a: int, b: int, mod: ModulusLike) -> int:
    """
    Multiply two residues modulo q.

    Parameters
    ----------
    a : int
        A residue in [0, q).
    b : int
        A residue in [0, q).
    mod : Modulus or int

    Returns
    -------
    int
        The product ``a * b mod q``.

    """
    mod = as_modulus(mod)
    assert 0 <= a < mod.q and 0 <= b < mod.q, "Operands must be reduced."
    return mod.reduce(a * b)


def pow_mod(a: int, e: int, mod: ModulusLike) -> int:
    """Raise a residue to a non-negative power by square-and-multiply."""
    mod = as_modulus(mod)
    if e < 0:
        raise InvalidParameter("Exponent must be non-negative.")
    result = 1
    base = a % mod.q
    while e:
        if e & 1:
            result = mod.reduce(result * base)
        base = mod.reduce(base * base)
        e >>= 1
    return result
