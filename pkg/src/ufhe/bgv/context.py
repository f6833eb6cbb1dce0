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


"""Bundle the parameters, transform plans and slot algebra of a BGV instance."""


import logging
from typing import Optional, Sequence

import numpy as np

from ..plainspace import SlotAlgebra, build_slot_algebra, encode_slots
from ..ring import CyclotomicRing, Rep, RnsPoly, convert
from ..transform import PlanCache
from .ciphertext import PlainOperand, centered
from .params import Params


logger = logging.getLogger(__name__)


class BgvContext:
    """
    Provide everything needed to compute on ciphertexts of one parameter set.

    Contexts are immutable after construction and can be shipped to worker
    processes.

    Parameters
    ----------
    params : Params
    cache : PlanCache, optional
        Transform plans are built into this cache, or a new one.
    slots : SlotAlgebra, optional
        A prebuilt slot algebra for (p, m).

    """

    def __init__(
        self,
        params: Params,
        cache: Optional[PlanCache] = None,
        slots: Optional[SlotAlgebra] = None,
        **kwargs,
    ) -> None:
        super().__init__(**kwargs)
        self.params = params
        self.ring = CyclotomicRing(params.m, params.basis, cache or PlanCache())
        self.slots = slots or build_slot_algebra(params.p, params.m)
        logger.info(
            "Prepared context %s: n=%d, l=%d, %d primes.",
            params.name,
            params.n,
            self.slots.l,
            params.basis.level_count,
        )

    @property
    def cache(self) -> PlanCache:
        return self.ring.cache

    @property
    def p(self) -> int:
        return self.params.p

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def gamma(self) -> int:
        return self.ring.gamma

    @property
    def slot_count(self) -> int:
        return self.slots.l

    def to_rep(self, poly: RnsPoly, rep: Rep) -> RnsPoly:
        """Convert a polynomial with the plans of this context."""
        return convert(poly, rep, self.cache)

    def encode(self, values: Sequence[int]) -> np.ndarray:
        """Encode one F_p value per slot into plaintext coefficients."""
        return self.slots.encode_fp(values)

    def encode_elements(self, values: Sequence) -> np.ndarray:
        """Encode arbitrary slot values, integers or field elements."""
        return encode_slots(values, self.slots)

    def decode(self, coeffs: Sequence[int]) -> np.ndarray:
        """Return the F_p value of every slot."""
        return self.slots.decode_fp(coeffs)

    def lift(self, coeffs: Sequence[int], level: Optional[int] = None) -> RnsPoly:
        """Embed centered plaintext coefficients over the first primes, coeff form."""
        basis = self.params.basis.prefix(
            level if level is not None else self.params.basis.level_count
        )
        return RnsPoly.from_integers(
            centered(coeffs, self.p).tolist(), basis, self.params.m
        )

    def plain_operand(self, coeffs: Sequence[int]) -> PlainOperand:
        """Lift plaintext coefficients into an evaluation-form operand."""
        small = centered(coeffs, self.p)
        return PlainOperand(
            poly=self.to_rep(self.lift(coeffs), Rep.EVAL),
            l1_norm=int(np.abs(small).sum()),
            max_norm=int(np.abs(small).max()) if len(small) else 0,
        )

    def plain_slots(self, values: Sequence[int]) -> PlainOperand:
        """Encode slot values directly into an operand."""
        return self.plain_operand(self.encode(values))
