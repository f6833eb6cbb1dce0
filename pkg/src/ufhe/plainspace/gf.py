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


"""Provide arithmetic in the finite field F_{p^d} = F_p[x] / (f)."""


import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, primefactors
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_from_int_poly,
    gf_irreducible_p,
    gf_mul,
    gf_pow_mod,
    gf_rem,
    gf_sub,
)

from ..exceptions import InvalidParameter


logger = logging.getLogger(__name__)


Dense = List[int]


def to_dense(coeffs: Sequence[int], p: int) -> Dense:
    """Convert lowest-degree-first coefficients to a stripped galoistools list."""
    return gf_from_int_poly([int(c) for c in reversed(coeffs)], p)


def from_dense(poly: Dense, size: int) -> Tuple[int, ...]:
    """Convert a galoistools list to ``size`` lowest-degree-first coefficients."""
    if len(poly) > size:
        raise InvalidParameter(f"Polynomial of degree {len(poly) - 1} exceeds {size}.")
    coeffs = [int(c) for c in reversed(poly)]
    return tuple(coeffs + [0] * (size - len(coeffs)))


@dataclass(frozen=True)
class GfElem:
    """
    Represent an element of F_{p^d} by its d coefficients modulo p.

    Coefficients are ordered from the constant term upwards with respect to
    the field modulus of the owning `GaloisField`.

    """

    coeffs: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def in_prime_field(self) -> bool:
        """Return whether the element lies in F_p."""
        return not any(self.coeffs[1:])


def find_irreducible(p: int, d: int, seed: int = 0) -> Tuple[int, ...]:
    """
    Find a monic irreducible polynomial of degree d over F_p.

    Candidates are drawn from a seeded generator and tested with the
    Ben-Or irreducibility test, so the result is deterministic in the seed.

    """
    if d < 1:
        raise InvalidParameter(f"Field degree must be positive, got {d}.")
    if d == 1:
        return (0, 1)
    rng = np.random.default_rng(seed)
    while True:
        candidate = tuple(int(c) for c in rng.integers(0, p, size=d)) + (1,)
        if candidate[0] != 0 and gf_irreducible_p(to_dense(candidate, p), p, ZZ):
            return candidate


class GaloisField:
    """
    Compute in F_{p^d} represented as polynomials modulo an irreducible f.

    Parameters
    ----------
    p : int
        The characteristic.
    modulus : sequence of int
        The monic irreducible field polynomial, lowest degree first.

    """

    def __init__(self, p: int, modulus: Sequence[int], **kwargs) -> None:
        super().__init__(**kwargs)
        self.p = p
        self.modulus = tuple(int(c) for c in modulus)
        self.d = len(self.modulus) - 1
        self._modulus = to_dense(self.modulus, p)

    @property
    def order(self) -> int:
        """Return p^d."""
        return self.p ** self.d

    def element(self, coeffs: Sequence[int]) -> GfElem:
        """Reduce arbitrary coefficients into a field element."""
        return self._wrap(gf_rem(to_dense(coeffs, self.p), self._modulus, self.p, ZZ))

    def scalar(self, value: int) -> GfElem:
        """Embed an element of F_p."""
        return GfElem((int(value) % self.p,) + (0,) * (self.d - 1))

    @property
    def zero(self) -> GfElem:
        return self.scalar(0)

    @property
    def one(self) -> GfElem:
        return self.scalar(1)

    def _dense(self, a: GfElem) -> Dense:
        return to_dense(a.coeffs, self.p)

    def _wrap(self, poly: Dense) -> GfElem:
        return GfElem(from_dense(poly, self.d))

    def add(self, a: GfElem, b: GfElem) -> GfElem:
        return self._wrap(gf_add(self._dense(a), self._dense(b), self.p, ZZ))

    def sub(self, a: GfElem, b: GfElem) -> GfElem:
        return self._wrap(gf_sub(self._dense(a), self._dense(b), self.p, ZZ))

    def mul(self, a: GfElem, b: GfElem) -> GfElem:
        product = gf_mul(self._dense(a), self._dense(b), self.p, ZZ)
        return self._wrap(gf_rem(product, self._modulus, self.p, ZZ))

    def pow(self, a: GfElem, exponent: int) -> GfElem:
        if exponent < 0:
            raise InvalidParameter("Negative exponents are not supported.")
        power = gf_pow_mod(self._dense(a), exponent, self._modulus, self.p, ZZ)
        return self._wrap(power)

    def is_one(self, a: GfElem) -> bool:
        return a == self.one

    def root_of_unity(self, order: int, seed: int = 0) -> GfElem:
        """
        Return an element of multiplicative order exactly ``order``.

        Raises
        ------
        InvalidParameter
            If the order does not divide p^d - 1.

        """
        group = self.order - 1
        if group % order != 0:
            raise InvalidParameter(f"{order} does not divide {group}.")
        cofactor = group // order
        rng = np.random.default_rng(seed)
        while True:
            base = self.element(rng.integers(0, self.p, size=self.d).tolist())
            if base == self.zero:
                continue
            candidate = self.pow(base, cofactor)
            if all(
                not self.is_one(self.pow(candidate, order // r))
                for r in primefactors(order)
            ):
                return candidate

    def poly_from_roots(self, roots: Sequence[GfElem]) -> List[GfElem]:
        """Return the coefficients of prod (x - r), lowest degree first."""
        coeffs = [self.one]
        for root in roots:
            shifted = [self.zero] + coeffs
            for k, c in enumerate(coeffs):
                shifted[k] = self.sub(shifted[k], self.mul(root, c))
            coeffs = shifted
        return coeffs


def matrix_mod(rows: Sequence[Sequence[int]], p: int) -> np.ndarray:
    """Return an int64 matrix with entries reduced modulo p."""
    return np.array(rows, dtype=np.int64).reshape(len(rows), -1) % p


def embedding_matrix(
    field: GaloisField, generator: GfElem
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Return the matrix of b -> b(generator) and its inverse over F_p.

    Column k of the forward matrix holds the coordinates of generator^k.

    """
    columns = []
    power = field.one
    for _ in range(field.d):
        columns.append(power.coeffs)
        power = field.mul(power, generator)
    forward = Matrix(columns).T
    inverse = forward.inv_mod(field.p)
    return (
        matrix_mod(forward.tolist(), field.p),
        matrix_mod(inverse.tolist(), field.p),
    )


def residue_rows(
    size: int, modulus: Dense, p: int, width: Optional[int] = None
) -> np.ndarray:
    """Return x^k mod the modulus for k in [0, size) as coefficient rows."""
    width = width if width is not None else max(len(modulus) - 1, 1)
    rows = []
    power = [1]
    x = [1, 0]
    for _ in range(size):
        rows.append(from_dense(gf_rem(power, modulus, p, ZZ), width))
        power = gf_mul(power, x, p, ZZ)
    return matrix_mod(rows, p)
