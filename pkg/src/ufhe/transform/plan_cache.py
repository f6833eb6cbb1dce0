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


"""Cache Bluestein plans so that each (m, q) is only ever built once."""


import logging
import threading
from typing import Dict, Optional, Sequence, Tuple

from ..arith import ModulusLike, as_modulus
from ..exceptions import MissingPlan
from .bluestein import BluesteinPlan, PlanStack, build_bluestein_plan


logger = logging.getLogger(__name__)


PlanKey = Tuple[int, int]


class PlanCache:
    """
    Map (m, q) to an immutable Bluestein plan.

    Construction happens under an exclusive lock; once a plan is stored every
    later lookup returns the very same instance. Stacks of plans used by the
    batched transforms are cached separately and do not count as builds.

    Attributes
    ----------
    build_counter : int
        The number of plan constructions performed so far.

    """

    def __init__(self, **kwargs) -> None:
        super().__init__(**kwargs)
        self._plans: Dict[PlanKey, BluesteinPlan] = {}
        self._stacks: Dict[Tuple[int, Tuple[int, ...]], PlanStack] = {}
        self._lock = threading.Lock()
        self.build_counter = 0

    def __getstate__(self) -> dict:
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state: dict) -> None:
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._plans)

    def __contains__(self, key: PlanKey) -> bool:
        return key in self._plans

    def get(self, m: int, q: int) -> BluesteinPlan:
        """Return an existing plan or raise `MissingPlan`."""
        try:
            return self._plans[(m, q)]
        except KeyError:
            raise MissingPlan(f"No plan for m={m}, q={q}.") from None

    def build(self, m: int, mod: ModulusLike) -> BluesteinPlan:
        """Return the cached plan for (m, q), constructing it on first use."""
        mod = as_modulus(mod)
        key = (m, mod.q)
        plan = self._plans.get(key)
        if plan is not None:
            return plan
        with self._lock:
            plan = self._plans.get(key)
            if plan is None:
                logger.debug("Building Bluestein plan for m=%d, q=%d.", m, mod.q)
                plan = build_bluestein_plan(m, mod)
                self._plans[key] = plan
                self.build_counter += 1
        return plan

    def stack(self, m: int, primes: Sequence[int]) -> PlanStack:
        """Return the stacked tables of existing plans for several primes."""
        key = (m, tuple(int(q) for q in primes))
        stack = self._stacks.get(key)
        if stack is None:
            plans = [self.get(m, q) for q in key[1]]
            with self._lock:
                stack = self._stacks.setdefault(key, PlanStack.from_plans(plans))
        return stack

    def replace(self, m: int, q: int, plan: BluesteinPlan) -> Optional[BluesteinPlan]:
        """
        Substitute the plan stored for (m, q) and return the previous one.

        Stacks containing the prime are invalidated. The self-test suites use
        this to inject faulty tables.

        """
        with self._lock:
            previous = self._plans.get((m, q))
            self._plans[(m, q)] = plan
            for key in [k for k in self._stacks if k[0] == m and q in k[1]]:
                del self._stacks[key]
        return previous


def build_plan(m: int, mod: ModulusLike, cache: PlanCache) -> BluesteinPlan:
    """
    Return the plan for (m, q) from the cache, building it if necessary.

    Parameters
    ----------
    m : int
        The odd ring order.
    mod : Modulus or int
        A prime congruent to one modulo lcm(2m, M).
    cache : PlanCache

    Returns
    -------
    BluesteinPlan

    Raises
    ------
    OrderNotDividing
        If q - 1 lacks the required roots of unity.

    """
    return cache.build(m, mod)
