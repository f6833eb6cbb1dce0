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


"""Convert ring elements between coefficient and compact evaluation form."""


import logging
from typing import Sequence

import numpy as np

from .. import instrumentation
from ..exceptions import BadLength
from .bluestein import BluesteinPlan, PlanStack
from .cyclotomic import reduce_mod_cyclotomic
from .filtering import zmstar_filter, zmstar_scatter
from .ntt import Direction


logger = logging.getLogger(__name__)


def stacked_to_eval(coeffs: np.ndarray, stack: PlanStack) -> np.ndarray:
    """
    Evaluate every row of a (..., P, n) coefficient array at the Z_m* points.

    Row i along the prime axis is reduced modulo the i-th stacked prime.

    """
    n = stack.zmstar.n
    if coeffs.shape[-1] != n:
        raise BadLength(f"Expected {n} coefficients, got {coeffs.shape[-1]}.")
    with instrumentation.timed("transform"):
        extended = np.zeros(coeffs.shape[:-1] + (stack.m,), dtype=object)
        extended[..., :n] = coeffs
        return zmstar_filter(stack.dft(extended, Direction.FORWARD), stack.zmstar)


def stacked_from_eval(compact: np.ndarray, stack: PlanStack) -> np.ndarray:
    """Interpolate every row of a (..., P, n) evaluation array modulo Phi_m."""
    n = stack.zmstar.n
    if compact.shape[-1] != n:
        raise BadLength(f"Expected {n} evaluations, got {compact.shape[-1]}.")
    with instrumentation.timed("transform"):
        full = zmstar_scatter(compact, stack.zmstar)
        coeffs = stack.dft(full, Direction.INVERSE)
        return reduce_mod_cyclotomic(coeffs, stack.m) % stack.q


def to_eval(coeffs: Sequence[int], plan: BluesteinPlan) -> np.ndarray:
    """
    Return f(omega^j) for j in Z_m*, in ascending order of j.

    Parameters
    ----------
    coeffs : sequence of int
        The n coefficients of a polynomial of degree below n.
    plan : BluesteinPlan

    Returns
    -------
    numpy.ndarray
        The n compact evaluations.

    """
    vector = np.array([int(c) % plan.q for c in coeffs], dtype=object)
    return stacked_to_eval(vector[np.newaxis, :], PlanStack.from_plans([plan]))[0]


def from_eval(compact: Sequence[int], plan: BluesteinPlan) -> np.ndarray:
    """
    Return the unique polynomial of degree below n with the given evaluations.

    Zeros are placed at the non-unit points before the inverse transform; the
    result agrees with the true interpolant at every primitive m-th root and
    therefore equals it modulo Phi_m.

    """
    vector = np.array([int(v) % plan.q for v in compact], dtype=object)
    return stacked_from_eval(vector[np.newaxis, :], PlanStack.from_plans([plan]))[0]
