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


"""Filter full-length evaluations down to the points of Z_m* and back."""


import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from ..exceptions import BadLength


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZmStarIndex:
    """
    Hold the offline index map of the units modulo m.

    Attributes
    ----------
    m : int
    in_zmstar : numpy.ndarray
        Boolean mask, true at i iff gcd(i, m) = 1.
    prefix : numpy.ndarray
        Exclusive prefix sums of the mask, the output position of every unit.
    positions : numpy.ndarray
        The indices where the mask is true, in ascending order.

    """

    m: int
    in_zmstar: np.ndarray
    prefix: np.ndarray
    positions: np.ndarray

    @property
    def n(self) -> int:
        """Return the number of units, phi(m)."""
        return len(self.positions)


@lru_cache(maxsize=None)
def zmstar_index(m: int) -> ZmStarIndex:
    """Build the unit mask and its exclusive prefix sums for the ring order m."""
    mask = np.array([gcd(i, m) == 1 for i in range(m)], dtype=bool)
    prefix = np.concatenate(([0], np.cumsum(mask)[:-1])).astype(np.int64)
    positions = np.flatnonzero(mask)
    for array in (mask, prefix, positions):
        array.setflags(write=False)
    return ZmStarIndex(m=m, in_zmstar=mask, prefix=prefix, positions=positions)


def _as_index(index) -> ZmStarIndex:
    return index if isinstance(index, ZmStarIndex) else index.zmstar


def zmstar_filter_reference(evals: np.ndarray, index) -> np.ndarray:
    """Filter with the sequential, branching loop carrying the output cursor."""
    index = _as_index(index)
    if evals.shape[-1] != index.m:
        raise BadLength(f"Expected {index.m} evaluations, got {evals.shape[-1]}.")
    out = np.empty(evals.shape[:-1] + (index.n,), dtype=evals.dtype)
    cursor = 0
    for i in range(index.m):
        if gcd(i, index.m) == 1:
            out[..., cursor] = evals[..., i]
            cursor += 1
    return out


def zmstar_filter(evals: np.ndarray, index) -> np.ndarray:
    """
    Keep the evaluations at the units modulo m.

    The output position of every kept entry comes from the precomputed
    prefix sums, so the copy is a single branch-free scatter.

    Parameters
    ----------
    evals : numpy.ndarray
        Array of shape (..., m).
    index : ZmStarIndex or BluesteinPlan

    Returns
    -------
    numpy.ndarray
        Array of shape (..., n).

    """
    index = _as_index(index)
    if evals.shape[-1] != index.m:
        raise BadLength(f"Expected {index.m} evaluations, got {evals.shape[-1]}.")
    out = np.empty(evals.shape[:-1] + (index.n,), dtype=evals.dtype)
    out[..., index.prefix[index.positions]] = evals[..., index.positions]
    return out


def zmstar_scatter(compact: np.ndarray, index) -> np.ndarray:
    """Place compact values at the units modulo m and zeros elsewhere."""
    index = _as_index(index)
    if compact.shape[-1] != index.n:
        raise BadLength(f"Expected {index.n} values, got {compact.shape[-1]}.")
    out = np.zeros(compact.shape[:-1] + (index.m,), dtype=compact.dtype)
    out[..., index.positions] = compact[..., index.prefix[index.positions]]
    return out
