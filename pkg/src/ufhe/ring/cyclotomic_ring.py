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


"""Bind an RNS basis to a cyclotomic ring with its transform plans."""


import logging
from dataclasses import dataclass, field

from ..arith import RnsBasis
from ..transform import PlanCache, build_plan, expansion_factor, unit_indices


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CyclotomicRing:
    """
    Describe R_Q = Z_Q[x] / Phi_m(x) with plans built for every prime.

    Attributes
    ----------
    m : int
    basis : RnsBasis
    cache : PlanCache
    n : int
        The degree phi(m).
    gamma : int
        The expansion factor of reducing products modulo Phi_m.

    """

    m: int
    basis: RnsBasis
    cache: PlanCache = field(default_factory=PlanCache, compare=False)
    n: int = field(init=False)
    gamma: int = field(init=False)

    def __post_init__(self) -> None:
        logger.info(
            "Building transform plans for m=%d over %d primes.",
            self.m,
            self.basis.level_count,
        )
        for mod in self.basis.primes:
            build_plan(self.m, mod, self.cache)
        object.__setattr__(self, "n", len(unit_indices(self.m)))
        object.__setattr__(self, "gamma", expansion_factor(self.m))
