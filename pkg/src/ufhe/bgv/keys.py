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


"""Define secret, public and key switching keys."""


import logging
from dataclasses import dataclass, field
from typing import Dict, NamedTuple, Tuple

import numpy as np

from ..ring import RnsPoly


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SecretKey:
    """
    Hold the ternary secret s.

    Attributes
    ----------
    s : RnsPoly
        The secret over the full basis in evaluation form.
    coeffs : numpy.ndarray
        The coefficients of s in {-1, 0, 1}.

    """

    s: RnsPoly
    coeffs: np.ndarray = field(repr=False)

    def at(self, level: int) -> RnsPoly:
        return self.s.restrict(level)


@dataclass(frozen=True)
class PublicKey:
    """Hold (b, a) = (-a s + p e, a) in evaluation form over the full basis."""

    b: RnsPoly
    a: RnsPoly


@dataclass(frozen=True)
class KswKey:
    """
    Encrypt a target key under s, one component per prime and gadget digit.

    Component (i, t) satisfies ``b + a s = p e + 2^(w t) T`` modulo q_i and
    ``b + a s = p e`` modulo every other prime, where T is the target.

    Attributes
    ----------
    label : str
        Either ``relin`` or ``galois:<t>``.
    components : tuple of (int, int)
        The (prime index, digit index) of every component.
    digit_bits : int
        The gadget digit size w.
    b : numpy.ndarray
        Object array of shape (K, L + 1, n).
    a : numpy.ndarray
        Object array of shape (K, L + 1, n).

    """

    label: str
    components: Tuple[Tuple[int, int], ...]
    digit_bits: int
    b: np.ndarray = field(repr=False)
    a: np.ndarray = field(repr=False)

    def restrict(self, level: int) -> Tuple[np.ndarray, np.ndarray]:
        """Return the components for the first ``level`` primes."""
        selected = [k for k, (i, _) in enumerate(self.components) if i < level]
        return self.b[selected, :level], self.a[selected, :level]


class KeySet(NamedTuple):
    """Group the keys produced by key generation."""

    secret: SecretKey
    public: PublicKey
    relin: KswKey
    galois: Dict[int, KswKey]
