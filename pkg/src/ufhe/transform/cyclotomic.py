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


"""Compute cyclotomic polynomials and their exact reduction tables."""


import logging
from functools import lru_cache
from math import gcd
from typing import Tuple

import numpy as np
import sympy

from ..arith import Modulus, ModulusLike


logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def cyclotomic_coefficients(m: int) -> Tuple[int, ...]:
    """
    Return the integer coefficients of the m-th cyclotomic polynomial.

    Coefficients are ordered from the constant term upwards; the polynomial
    is computed exactly over the integers.

    """
    x = sympy.Symbol("x")
    poly = sympy.cyclotomic_poly(m, x, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def cyclotomic_poly(m: int, mod: ModulusLike) -> np.ndarray:
    """
    Return the coefficients of the m-th cyclotomic polynomial modulo q.

    Parameters
    ----------
    m : int
        The ring order, at least one.
    mod : Modulus or int

    Returns
    -------
    numpy.ndarray
        The phi(m) + 1 coefficients from the constant term upwards.

    """
    q = mod.q if isinstance(mod, Modulus) else int(mod)
    return np.array([c % q for c in cyclotomic_coefficients(m)], dtype=object)


@lru_cache(maxsize=None)
def unit_indices(m: int) -> np.ndarray:
    """Return the elements of Z_m* in ascending order."""
    units = np.array([i for i in range(m) if gcd(i, m) == 1], dtype=np.int64)
    units.setflags(write=False)
    return units


@lru_cache(maxsize=None)
def reduction_table(m: int) -> np.ndarray:
    """
    Return x^k mod Phi_m over the integers for k in [n, m).

    Row ``k - n`` holds the n coefficients of ``x^k mod Phi_m``, so that any
    polynomial of degree below m reduces as ``low + high @ table``.

    """
    phi = cyclotomic_coefficients(m)
    n = len(phi) - 1
    rows = []
    current = [-c for c in phi[:n]]
    for _ in range(n, m):
        rows.append(list(current))
        # Multiply by x and fold the overflowing top coefficient back in.
        top = current[-1]
        current = [0] + current[:-1]
        current = [c - top * phi[i] for i, c in enumerate(current)]
    table = np.array(rows, dtype=object).reshape(m - n, n)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def expansion_factor(m: int) -> int:
    """
    Return the coefficient growth of reducing products modulo Phi_m.

    The factor is ``max_j sum_k |coef_j(x^k mod Phi_m)|`` over the exponents
    of a product of two reduced polynomials, k in [0, 2n - 1). It bounds
    ``||a * b mod Phi_m|| <= n * gamma * ||a|| * ||b||`` in the infinity norm.

    """
    n = len(cyclotomic_coefficients(m)) - 1
    table = reduction_table(m)
    totals = [0] * n
    for k in range(2 * n - 1):
        exponent = k % m
        if exponent < n:
            totals[exponent] += 1
        else:
            for j, c in enumerate(table[exponent - n]):
                totals[j] += abs(int(c))
    return max(totals)


def reduce_mod_cyclotomic(coeffs: np.ndarray, m: int) -> np.ndarray:
    """
    Reduce integer polynomials of degree below m modulo Phi_m exactly.

    Parameters
    ----------
    coeffs : numpy.ndarray
        An object array of shape (..., m).
    m : int

    Returns
    -------
    numpy.ndarray
        An object array of shape (..., n) with unreduced integer entries.

    """
    table = reduction_table(m)
    n = table.shape[1]
    if table.shape[0] == 0:
        return coeffs[..., :n]
    return coeffs[..., :n] + coeffs[..., n:] @ table
