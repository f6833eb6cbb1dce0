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


"""Build the SIMD slot structure of F_p[x] / Phi_m and encode slot vectors."""


import logging
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import totient
from sympy.ntheory import n_order
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcdex, gf_mul, gf_quo, gf_rem

from ..exceptions import (
    FactorizationMismatch,
    InvalidParameter,
    NotCoprime,
    WrongSlotCount,
)
from ..transform import cyclotomic_coefficients
from .gf import (
    GaloisField,
    GfElem,
    embedding_matrix,
    find_irreducible,
    from_dense,
    matrix_mod,
    residue_rows,
    to_dense,
)


logger = logging.getLogger(__name__)


SlotValue = Union[GfElem, int]


@dataclass(frozen=True)
class SlotAlgebra:
    """
    Describe the l slots of the plaintext ring F_p[x] / Phi_m.

    Slot i is the factor whose roots are zeta^j for j in ``cosets[i]``; its
    value is the image of the plaintext under x -> zeta^(reps[i]).

    Attributes
    ----------
    p : int
    m : int
    n : int
    d : int
        The multiplicative order of p modulo m.
    l : int
    field_poly : tuple of int
        The irreducible modulus of F_{p^d}, lowest degree first.
    cosets : tuple of tuple of int
    reps : tuple of int
        The embedding representative of every slot.
    factors : tuple of tuple of int
        The degree-d factors of Phi_m modulo p, lowest degree first.
    crt_units : tuple of tuple of int
        The idempotents, congruent to one modulo their factor only.
    rot_generator : int, optional
        Generates Z_m* / <p>; slot i then holds the coset of g^i.
    exact_rotations : bool
        Whether g^l = 1 modulo m, so that rotations carry no Frobenius twist.

    """

    p: int
    m: int
    n: int
    d: int
    l: int
    field_poly: Tuple[int, ...]
    cosets: Tuple[Tuple[int, ...], ...]
    reps: Tuple[int, ...]
    factors: Tuple[Tuple[int, ...], ...]
    crt_units: Tuple[Tuple[int, ...], ...]
    rot_generator: Optional[int]
    exact_rotations: bool
    gf: GaloisField = field(repr=False, compare=False)
    zeta: GfElem = field(repr=False, compare=False)
    encode_matrix: np.ndarray = field(repr=False, compare=False)
    decode_matrix: np.ndarray = field(repr=False, compare=False)
    slot_of: Dict[int, int] = field(repr=False, compare=False)

    def encode_fp(self, values: Sequence[int]) -> np.ndarray:
        """Encode l values of F_p, one per slot."""
        if len(values) != self.l:
            raise WrongSlotCount(f"Expected {self.l} slot values, got {len(values)}.")
        vector = np.array([int(v) % self.p for v in values], dtype=np.int64)
        return vector @ self.encode_matrix[:: self.d] % self.p

    def decode_fp(self, poly: Sequence[int]) -> np.ndarray:
        """Return the F_p coordinate of every slot."""
        vector = _plaintext_vector(poly, self)
        return vector @ self.decode_matrix[:, :: self.d] % self.p

    def rotation_element(self, k: int) -> int:
        """Return the Galois element rotating the slots left by k."""
        if self.rot_generator is None:
            raise InvalidParameter(
                f"Z_{self.m}*/<{self.p}> is not cyclic; rotations are unavailable."
            )
        return pow(self.rot_generator, k % self.l, self.m)


def _plaintext_vector(poly: Sequence[int], alg: SlotAlgebra) -> np.ndarray:
    vector = np.array([int(c) % alg.p for c in poly], dtype=np.int64)
    if len(vector) > alg.n:
        raise InvalidParameter(f"Plaintext degree must be below {alg.n}.")
    if len(vector) < alg.n:
        vector = np.concatenate((vector, np.zeros(alg.n - len(vector), np.int64)))
    return vector


def _cosets(p: int, m: int) -> Dict[int, Tuple[int, ...]]:
    """Map every unit to the sorted orbit containing it under x -> p * x."""
    orbit_of = {}
    for u in range(1, m):
        if gcd(u, m) != 1 or u in orbit_of:
            continue
        orbit = []
        value = u
        while value not in orbit:
            orbit.append(value)
            value = value * p % m
        coset = tuple(sorted(orbit))
        for value in coset:
            orbit_of[value] = coset
    return orbit_of


def _rotation_generator(
    p: int, m: int, l: int, orbit_of: Dict[int, Tuple[int, ...]]
) -> Tuple[Optional[int], bool]:
    """Find g whose powers visit every coset, preferring g^l = 1 modulo m."""
    fallback = None
    for g in sorted(orbit_of):
        visited = {orbit_of[pow(g, i, m)] for i in range(l)}
        if len(visited) != l:
            continue
        if pow(g, l, m) == 1:
            return g, True
        if fallback is None:
            fallback = g
    return fallback, False


def build_slot_algebra(p: int, m: int, seed: int = 0) -> SlotAlgebra:
    """
    Factor Phi_m modulo p into its slots and precompute the slot codecs.

    Parameters
    ----------
    p : int
        The plaintext prime.
    m : int
        The ring order, coprime to p.
    seed : int
        Seeds the search for the field polynomial and the root of unity.

    Returns
    -------
    SlotAlgebra

    Raises
    ------
    NotCoprime
        If p divides m.
    FactorizationMismatch
        If the computed factors are not in F_p[x] or do not multiply to Phi_m.

    """
    if gcd(p, m) != 1:
        raise NotCoprime(f"The plaintext modulus {p} must be coprime to m={m}.")
    n = int(totient(m))
    d = int(n_order(p, m)) if m > 1 else 1
    l = n // d
    logger.debug("Building slot algebra for p=%d, m=%d: d=%d, l=%d.", p, m, d, l)
    orbit_of = _cosets(p, m)
    generator, exact = _rotation_generator(p, m, l, orbit_of)
    if generator is not None:
        reps = tuple(pow(generator, i, m) for i in range(l))
    else:
        logger.warning(
            "Z_%d*/<%d> is not cyclic; slots are ordered by coset minimum.", m, p
        )
        reps = tuple(sorted({min(coset) for coset in orbit_of.values()}))
    cosets = tuple(orbit_of[r] for r in reps)

    field_poly = find_irreducible(p, d, seed)
    gf = GaloisField(p, field_poly)
    zeta = gf.root_of_unity(m, seed)

    factors = []
    for coset in cosets:
        roots = [gf.pow(zeta, j) for j in coset]
        coeffs = gf.poly_from_roots(roots)
        if not all(c.in_prime_field() for c in coeffs):
            raise FactorizationMismatch(f"Factor of coset {coset} is not over F_{p}.")
        factors.append(tuple(c.coeffs[0] for c in coeffs))
    phi = to_dense(cyclotomic_coefficients(m), p)
    dense_factors = [to_dense(f, p) for f in factors]
    product = reduce(lambda a, b: gf_mul(a, b, p, ZZ), dense_factors, [1])
    if product != phi:
        raise FactorizationMismatch(f"Slot factors do not multiply to Phi_{m} mod {p}.")

    units = []
    encode_blocks = []
    decode_blocks = []
    for rep, factor in zip(reps, dense_factors):
        cofactor = gf_quo(phi, factor, p, ZZ)
        s, _, h = gf_gcdex(cofactor, factor, p, ZZ)
        if h != [1]:
            raise FactorizationMismatch("Slot factors are not pairwise coprime.")
        unit = gf_rem(gf_mul(s, cofactor, p, ZZ), phi, p, ZZ)
        units.append(from_dense(unit, n))
        forward, inverse = embedding_matrix(gf, gf.pow(zeta, rep))
        shifted = []
        power = unit
        for _ in range(d):
            shifted.append(from_dense(power, n))
            power = gf_rem(gf_mul(power, [1, 0], p, ZZ), phi, p, ZZ)
        encode_blocks.append(inverse.T @ matrix_mod(shifted, p) % p)
        decode_blocks.append(residue_rows(n, factor, p, d) @ forward.T % p)

    slot_of = {value: i for i, coset in enumerate(cosets) for value in coset}
    return SlotAlgebra(
        p=p,
        m=m,
        n=n,
        d=d,
        l=l,
        field_poly=field_poly,
        cosets=cosets,
        reps=reps,
        factors=tuple(factors),
        crt_units=tuple(units),
        rot_generator=generator,
        exact_rotations=exact,
        gf=gf,
        zeta=zeta,
        encode_matrix=np.vstack(encode_blocks),
        decode_matrix=np.hstack(decode_blocks),
        slot_of=slot_of,
    )


def _as_element(value: SlotValue, alg: SlotAlgebra) -> GfElem:
    if isinstance(value, GfElem):
        if value.degree != alg.d:
            raise InvalidParameter(f"Expected {alg.d} coefficients per slot.")
        return GfElem(tuple(int(c) % alg.p for c in value.coeffs))
    return alg.gf.scalar(int(value))


def encode_slots(values: Sequence[SlotValue], alg: SlotAlgebra) -> np.ndarray:
    """
    Combine l slot values into one plaintext polynomial.

    Parameters
    ----------
    values : sequence of GfElem or int
        One value per slot; integers are embedded into F_p.
    alg : SlotAlgebra

    Returns
    -------
    numpy.ndarray
        The n coefficients of the plaintext, reduced modulo p.

    Raises
    ------
    WrongSlotCount

    """
    if len(values) != alg.l:
        raise WrongSlotCount(f"Expected {alg.l} slot values, got {len(values)}.")
    flat = [c for value in values for c in _as_element(value, alg).coeffs]
    return np.array(flat, dtype=np.int64) @ alg.encode_matrix % alg.p


def decode_slots(poly: Sequence[int], alg: SlotAlgebra) -> List[GfElem]:
    """Return the value of every slot of a plaintext of degree below n."""
    flat = _plaintext_vector(poly, alg) @ alg.decode_matrix % alg.p
    return [
        GfElem(tuple(int(c) for c in block)) for block in flat.reshape(alg.l, alg.d)
    ]


def slot_perm_for(t: int, alg: SlotAlgebra) -> Tuple[int, ...]:
    """
    Return the slot permutation induced by x -> x^t.

    Entry i is the slot whose value moves into slot i, up to a Frobenius
    power which fixes every F_p value.

    Raises
    ------
    NotCoprime
        If t is not a unit modulo m.

    """
    if gcd(t, alg.m) != 1:
        raise NotCoprime(f"{t} is not a unit modulo {alg.m}.")
    return tuple(alg.slot_of[rep * t % alg.m] for rep in alg.reps)
