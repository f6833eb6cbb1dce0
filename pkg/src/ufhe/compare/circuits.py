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


"""Build and verify the interpolated digit comparison polynomials."""


import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from sympy import isprime

from ..bgv import CircuitKind
from ..exceptions import CircuitVerificationError, InvalidParameter, UnsupportedP
from ..plainspace import Alphabet


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DigitCircuit:
    """
    Hold the polynomials evaluating LT on one digit per slot.

    Attributes
    ----------
    p : int
    kind : CircuitKind
    lt_bivar_coeffs : numpy.ndarray
        Entry (i, j) is the coefficient of x^i y^j in LT(x, y) = [x < y].
    lt_univar_coeffs : numpy.ndarray
        The coefficients of S(z), lowest degree first, which is one exactly
        for z in [(p + 1) / 2, p - 1].
    nonscalar_mult_budget : int
        The most non-scalar products one LT digit evaluation may use.

    """

    p: int
    kind: CircuitKind
    lt_bivar_coeffs: np.ndarray = field(repr=False, compare=False)
    lt_univar_coeffs: np.ndarray = field(repr=False, compare=False)
    nonscalar_mult_budget: int

    @property
    def alphabet(self) -> Alphabet:
        if self.kind is CircuitKind.BIVARIATE:
            return Alphabet.FULL
        return Alphabet.HALF

    @property
    def digit_bound(self) -> int:
        """Return the largest digit the circuit accepts."""
        return self.p - 1 if self.kind is CircuitKind.BIVARIATE else (self.p - 1) // 2

    @property
    def lt_eq_budget(self) -> int:
        """Return the product budget of the LT/EQ phase alone."""
        if self.kind is CircuitKind.BIVARIATE:
            p = self.p
            return max(2 * p - 6 + _ceil_log2(p - 1), p - 1)
        return self.nonscalar_mult_budget


def _ceil_log2(value: int) -> int:
    return max(value - 1, 0).bit_length()


def eq_mult_count(p: int) -> int:
    """Return the products used by square-and-multiply for the power p - 1."""
    exponent = p - 1
    return exponent.bit_length() - 1 + bin(exponent).count("1") - 1


def delta_coefficients(p: int, a: int) -> np.ndarray:
    """Return the coefficients of 1 - (x - a)^(p - 1), the indicator of a."""
    n = p - 1
    coeffs = np.array(
        [-math.comb(n, k) * pow(-a, n - k, p) for k in range(p)], dtype=np.int64
    )
    coeffs[0] += 1
    return coeffs % p


def evaluate(coeffs: np.ndarray, z: int, p: int) -> int:
    """Evaluate a univariate polynomial modulo p by Horner's rule."""
    value = 0
    for c in reversed(coeffs.tolist()):
        value = (value * z + c) % p
    return value


def evaluate_bivariate(table: np.ndarray, x: int, y: int, p: int) -> int:
    xs = np.array([pow(x, i, p) for i in range(table.shape[0])], dtype=np.int64)
    ys = np.array([pow(y, j, p) for j in range(table.shape[1])], dtype=np.int64)
    return int(xs @ (table % p) % p @ ys % p)


def lt_bivariate_table(p: int) -> np.ndarray:
    """Interpolate [x < y] over all p^2 points of F_p x F_p."""
    delta = np.stack([delta_coefficients(p, a) for a in range(p)])
    upper = np.triu(np.ones((p, p), dtype=np.int64), k=1)
    return delta.T @ upper % p @ delta % p


def sign_polynomial(p: int) -> np.ndarray:
    """Interpolate the indicator of the upper half [(p + 1) / 2, p - 1]."""
    coeffs = np.zeros(p, dtype=np.int64)
    for a in range((p + 1) // 2, p):
        coeffs = (coeffs + delta_coefficients(p, a)) % p
    return coeffs


def _verify(circuit: DigitCircuit) -> None:
    p = circuit.p
    for x in range(p):
        for y in range(p):
            if evaluate_bivariate(circuit.lt_bivar_coeffs, x, y, p) != int(x < y):
                raise CircuitVerificationError(
                    f"The LT table of p={p} fails at ({x}, {y})."
                )
    half = (p - 1) // 2
    for z in range(p):
        if evaluate(circuit.lt_univar_coeffs, z, p) != int(z > half):
            raise CircuitVerificationError(
                f"The sign polynomial of p={p} fails at {z}."
            )


@lru_cache(maxsize=None)
def build_digit_circuit(p: int, kind: CircuitKind) -> DigitCircuit:
    """
    Interpolate and exhaustively check the LT polynomials of F_p.

    Parameters
    ----------
    p : int
        An odd prime.
    kind : CircuitKind
        Selects the polynomial used by `lt_digit` and the digit alphabet.

    Returns
    -------
    DigitCircuit

    Raises
    ------
    UnsupportedP
        For p = 2, which has no odd digit alphabet.
    CircuitVerificationError
        If an interpolated polynomial disagrees with its indicator anywhere.

    """
    if p == 2:
        raise UnsupportedP("The digit circuits need an odd plaintext prime.")
    if not isprime(p):
        raise InvalidParameter(f"{p} is not a prime.")
    kind = CircuitKind(kind)
    if kind is CircuitKind.BIVARIATE:
        budget = 3 * p - 5
    else:
        budget = min(
            2 * math.ceil(math.sqrt(p)) + 2 * _ceil_log2(p), 3 * p - 5
        )
    circuit = DigitCircuit(
        p=p,
        kind=kind,
        lt_bivar_coeffs=lt_bivariate_table(p),
        lt_univar_coeffs=sign_polynomial(p),
        nonscalar_mult_budget=budget,
    )
    _verify(circuit)
    for table in (circuit.lt_bivar_coeffs, circuit.lt_univar_coeffs):
        table.setflags(write=False)
    logger.debug("Built and verified the %s digit circuit of p=%d.", kind.value, p)
    return circuit
