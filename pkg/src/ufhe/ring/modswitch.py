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


"""Drop the last prime of a polynomial while preserving it modulo p."""


import logging

import numpy as np

from .. import instrumentation
from ..exceptions import BasisTooSmall, RepMismatch
from .poly import Rep, RnsPoly


logger = logging.getLogger(__name__)


def mod_switch_drop(a: RnsPoly, p: int) -> RnsPoly:
    """
    Divide by the last prime q and drop it, keeping the residue class mod p.

    With r the centered last row, the correction ``delta = r + q * t`` uses
    the centered ``t = -r * q^-1 mod p``, so that delta is congruent to a
    modulo q and to zero modulo p. Then ``(a - delta) / q`` is exact and is
    congruent to ``a * q^-1`` modulo p.

    Parameters
    ----------
    a : RnsPoly
        A coefficient form polynomial over at least two primes.
    p : int
        The plaintext modulus, coprime to q.

    Returns
    -------
    RnsPoly
        The switched polynomial over the basis without its last prime.

    Raises
    ------
    BasisTooSmall
        If only one prime is active.

    """
    if a.level_count < 2:
        raise BasisTooSmall("Cannot drop the only remaining prime.")
    if a.rep is not Rep.COEFF:
        raise RepMismatch("Modulus switching requires the coefficient form.")
    q = a.basis.values[-1]
    with instrumentation.timed("elementwise"):
        last = a.rows[-1]
        centered = np.where(last > q // 2, last - q, last)
        t = (-centered * pow(q, -1, p)) % p
        t = np.where(t > p // 2, t - p, t)
        delta = centered + q * t
        basis = a.basis.prefix(a.level_count - 1)
        rows = tuple(
            (row - delta) % qj * pow(q % qj, -1, qj) % qj
            for row, qj in zip(a.rows[:-1], basis.values)
        )
    logger.debug("Dropped prime %d, %d primes remain.", q, basis.level_count)
    return RnsPoly(a.rep, rows, basis, a.m)
