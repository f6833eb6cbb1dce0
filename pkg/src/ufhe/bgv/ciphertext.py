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


"""Define ciphertexts and encoded plaintext operands."""


import logging
from dataclasses import dataclass, replace
from typing import Any, Optional, Tuple

import numpy as np

from ..arith import RnsBasis
from ..exceptions import InvalidParameter
from ..ring import Rep, RnsPoly
from . import noise


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ciphertext:
    """
    Hold two or three evaluation-form parts sharing one basis.

    Attributes
    ----------
    parts : tuple of RnsPoly
        ``(c0, c1)`` or ``(c0, c1, c2)`` decrypting as c0 + c1 s (+ c2 s^2).
    noise_bound : int
        An upper bound on the infinity norm of the decryption before the
        reduction modulo p.
    usage : SlotUsage, optional
        The slots carrying useful values, maintained by the slot manager.

    """

    parts: Tuple[RnsPoly, ...]
    noise_bound: int
    usage: Optional[Any] = None

    def __post_init__(self) -> None:
        if len(self.parts) not in (2, 3):
            raise InvalidParameter(
                f"A ciphertext has 2 or 3 parts, not {len(self.parts)}."
            )
        first = self.parts[0]
        for part in self.parts[1:]:
            if part.basis.values != first.basis.values or part.rep is not first.rep:
                raise InvalidParameter("Ciphertext parts must share basis and form.")

    @property
    def basis(self) -> RnsBasis:
        return self.parts[0].basis

    @property
    def level(self) -> int:
        """Return the number of active primes."""
        return self.basis.level_count

    @property
    def size(self) -> int:
        return len(self.parts)

    @property
    def budget(self) -> float:
        """Return the remaining noise budget in bits."""
        return noise.budget_bits(self.noise_bound, self.basis.big_q)

    def with_usage(self, usage: Any) -> "Ciphertext":
        return replace(self, usage=usage)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ciphertext):
            return NotImplemented
        return (
            self.noise_bound == other.noise_bound
            and len(self.parts) == len(other.parts)
            and all(a == b for a, b in zip(self.parts, other.parts))
        )

    __hash__ = None


@dataclass(frozen=True)
class PlainOperand:
    """
    Hold a plaintext polynomial lifted to the full basis in evaluation form.

    Attributes
    ----------
    poly : RnsPoly
    l1_norm : int
        The 1-norm of the centered coefficients.
    max_norm : int
        The infinity norm of the centered coefficients.

    """

    poly: RnsPoly
    l1_norm: int
    max_norm: int

    def at(self, level: int) -> RnsPoly:
        """Return the operand over the first ``level`` primes."""
        return self.poly.restrict(level)


def centered(values: np.ndarray, p: int) -> np.ndarray:
    """Map residues modulo p to (-p/2, p/2]."""
    values = np.asarray(values, dtype=np.int64) % p
    return np.where(values > p // 2, values - p, values)

