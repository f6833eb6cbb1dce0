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


"""Define RNS polynomials in coefficient or compact evaluation form."""


import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from ..arith import RnsBasis, crt_compose_rows
from ..exceptions import BadLength, InvalidParameter


logger = logging.getLogger(__name__)


class Rep(str, Enum):
    """Define the representation of an RNS polynomial."""

    COEFF = "coeff"
    EVAL = "eval"


@dataclass(frozen=True)
class RnsPoly:
    """
    Represent an element of R_Q as one residue row per active prime.

    Rows may be allocated independently of each other. Values are never
    mutated after construction; every operation returns a new polynomial.

    Attributes
    ----------
    rep : Rep
        Coefficients of degree below n, or evaluations at the Z_m* points.
    rows : tuple of numpy.ndarray
        One object array of width n per prime, entries reduced.
    basis : RnsBasis
        The active primes.
    m : int, optional
        The ring order; required for conversions between representations.

    """

    rep: Rep
    rows: Tuple[np.ndarray, ...]
    basis: RnsBasis
    m: Optional[int] = None

    def __post_init__(self) -> None:
        if len(self.rows) != self.basis.level_count:
            raise InvalidParameter(
                f"Expected {self.basis.level_count} rows, got {len(self.rows)}."
            )
        widths = {len(row) for row in self.rows}
        if len(widths) > 1:
            raise BadLength("All rows must have the same width.")
        object.__setattr__(self, "rep", Rep(self.rep))

    @property
    def width(self) -> int:
        """Return the number of residues per row."""
        return len(self.rows[0]) if self.rows else 0

    @property
    def level_count(self) -> int:
        """Return the number of active primes."""
        return self.basis.level_count

    def matrix(self) -> np.ndarray:
        """Return a contiguous (level_count, width) copy of the rows."""
        return np.stack(self.rows)

    @classmethod
    def from_matrix(
        cls,
        matrix: np.ndarray,
        rep: Rep,
        basis: RnsBasis,
        m: Optional[int] = None,
    ) -> "RnsPoly":
        """Split a (level_count, width) array into independently owned rows."""
        return cls(rep, tuple(np.array(row, dtype=object) for row in matrix), basis, m)

    @classmethod
    def from_integers(
        cls,
        values: Sequence[int],
        basis: RnsBasis,
        m: Optional[int] = None,
        rep: Rep = Rep.COEFF,
    ) -> "RnsPoly":
        """Reduce signed integers modulo every prime of the basis."""
        vector = np.array([int(v) for v in values], dtype=object)
        return cls.from_matrix(vector[np.newaxis, :] % basis.column(), rep, basis, m)

    @classmethod
    def zero(
        cls, width: int, basis: RnsBasis, m: Optional[int] = None, rep: Rep = Rep.COEFF
    ) -> "RnsPoly":
        """Return the zero polynomial."""
        return cls.from_integers([0] * width, basis, m, rep)

    @classmethod
    def constant(
        cls,
        value: int,
        width: int,
        basis: RnsBasis,
        m: Optional[int] = None,
        rep: Rep = Rep.COEFF,
    ) -> "RnsPoly":
        """Return the constant polynomial ``value`` in either representation."""
        if Rep(rep) is Rep.EVAL:
            values = [value] * width
        else:
            values = [value] + [0] * (width - 1)
        return cls.from_integers(values, basis, m, rep)

    def to_integers(self) -> np.ndarray:
        """Compose the rows into centered integers modulo Q."""
        return crt_compose_rows(self.matrix(), self.basis)

    def restrict(self, count: int) -> "RnsPoly":
        """Keep the rows of the first ``count`` primes."""
        return RnsPoly(self.rep, self.rows[:count], self.basis.prefix(count), self.m)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RnsPoly):
            return NotImplemented
        return (
            self.rep is other.rep
            and self.basis.values == other.basis.values
            and self.m == other.m
            and all(np.array_equal(a, b) for a, b in zip(self.rows, other.rows))
        )

    __hash__ = None
