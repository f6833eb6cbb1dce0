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


"""Sample uniform, ternary and error polynomials from a seeded generator."""


import logging
from enum import Enum
from typing import Optional, Union

import numpy as np

from ..arith import RnsBasis
from ..helpers import make_rng
from .poly import Rep, RnsPoly


logger = logging.getLogger(__name__)


ERROR_SIGMA = 3.2
#: Tail cut of the error distribution, floor(6 * sigma).
ERROR_BOUND = int(6 * ERROR_SIGMA)


class SampleKind(str, Enum):
    """Define the distributions available to `sample`."""

    UNIFORM = "uniform"
    TERNARY = "ternary"
    ERROR = "error"


def sample_error_coefficients(width: int, rng: np.random.Generator) -> np.ndarray:
    """Draw rounded Gaussians with deviation 3.2, rejecting beyond the tail cut."""
    values = np.rint(rng.normal(0.0, ERROR_SIGMA, width)).astype(np.int64)
    outside = np.abs(values) > ERROR_BOUND
    while outside.any():
        values[outside] = np.rint(
            rng.normal(0.0, ERROR_SIGMA, int(outside.sum()))
        ).astype(np.int64)
        outside = np.abs(values) > ERROR_BOUND
    return values


def sample(
    kind: SampleKind,
    width: int,
    basis: RnsBasis,
    rng_seed: Union[int, np.random.Generator, None],
    m: Optional[int] = None,
    rep: Rep = Rep.COEFF,
) -> RnsPoly:
    """
    Sample a polynomial over the given basis.

    Parameters
    ----------
    kind : SampleKind
        ``uniform`` draws every residue independently below its prime, which
        is uniform over R_Q in either representation. ``ternary`` draws
        coefficients from {-1, 0, 1} and ``error`` from the bounded rounded
        Gaussian; both are coefficient-form samples.
    width : int
        The ring degree n.
    basis : RnsBasis
    rng_seed : int or numpy.random.Generator
        Identical seeds produce identical samples.
    m : int, optional
        The ring order the result belongs to.
    rep : Rep
        The representation label of a uniform sample.

    Returns
    -------
    RnsPoly

    """
    rng = make_rng(rng_seed)
    kind = SampleKind(kind)
    if kind is SampleKind.UNIFORM:
        rows = tuple(
            rng.integers(0, q, size=width, dtype=np.int64).astype(object)
            for q in basis.values
        )
        return RnsPoly(rep, rows, basis, m)
    if kind is SampleKind.TERNARY:
        coefficients = rng.integers(-1, 2, size=width)
    else:
        coefficients = sample_error_coefficients(width, rng)
    return RnsPoly.from_integers(coefficients.tolist(), basis, m)
