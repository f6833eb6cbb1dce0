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


"""Evaluate polynomials over F_p slot-wise with few non-scalar products."""


import logging
import math
from typing import List, Sequence, Tuple, Union

from .evaluators import Evaluator, Value


logger = logging.getLogger(__name__)


Partial = Union[int, Value]


def trim(coeffs: Sequence[int], p: int) -> List[int]:
    """Reduce modulo p and drop vanishing leading coefficients."""
    reduced = [int(c) % p for c in coeffs]
    while reduced and reduced[-1] == 0:
        reduced.pop()
    return reduced


def power_ladder(x: Value, top: int, ev: Evaluator) -> List[Value]:
    """
    Return [x, x^2, ..., x^top] at logarithmic depth.

    Each power is the product x^floor(i/2) * x^ceil(i/2), which takes
    top - 1 products.

    """
    powers = [x]
    for i in range(2, top + 1):
        powers.append(ev.mul(powers[i // 2 - 1], powers[(i + 1) // 2 - 1]))
    return powers


def linear_combination(
    terms: Sequence[Tuple[int, Value]], constant: int, ev: Evaluator
) -> Partial:
    """
    Return constant + sum of c * v using only scalar operations.

    The result is a plain integer when every coefficient vanishes.

    """
    acc = None
    for c, value in terms:
        c %= ev.p
        if c == 0:
            continue
        term = value if c == 1 else ev.mul_scalar(value, c)
        acc = term if acc is None else ev.add(acc, term)
    constant %= ev.p
    if acc is None:
        return constant
    return ev.add_scalar(acc, constant) if constant else acc


def mul_partial(acc: Partial, power: Value, ev: Evaluator) -> Partial:
    if isinstance(acc, int):
        return ev.mul_scalar(power, acc) if acc else 0
    return ev.mul(acc, power)


def add_partial(acc: Partial, block: Partial, ev: Evaluator) -> Partial:
    if isinstance(acc, int):
        if isinstance(block, int):
            return (acc + block) % ev.p
        return ev.add_scalar(block, acc) if acc else block
    if isinstance(block, int):
        return ev.add_scalar(acc, block) if block else acc
    return ev.add(acc, block)


def materialize(value: Partial, like: Value, ev: Evaluator) -> Value:
    return ev.constant_like(like, value) if isinstance(value, int) else value


def poly_eval_ps(coeffs: Sequence[int], x: Value, ev: Evaluator) -> Value:
    """
    Evaluate a polynomial by the Paterson-Stockmeyer method.

    With k = ceil(sqrt(D + 1)) for the degree D, the baby steps x, ..., x^k
    cost k - 1 products. The coefficients are cut into blocks of k which
    are evaluated with scalar operations only, and the blocks are combined
    by Horner's rule in x^k, which costs one product per block except the
    top one.

    Parameters
    ----------
    coeffs : sequence of int
        Lowest degree first.
    x : ciphertext or plain vector
    ev : Evaluator

    Returns
    -------
    The slot-wise value of the polynomial at x.

    Raises
    ------
    OutOfLevels
        If the evaluator runs out of multiplicative depth.

    """
    coeffs = trim(coeffs, ev.p)
    degree = len(coeffs) - 1
    if degree <= 0:
        return ev.constant_like(x, coeffs[0] if coeffs else 0)
    if coeffs == [0, 1]:
        return x
    if degree == 1:
        return materialize(linear_combination([(coeffs[1], x)], coeffs[0], ev), x, ev)
    k = math.ceil(math.sqrt(degree + 1))
    powers = power_ladder(x, k, ev)
    blocks = []
    for start in range(0, degree + 1, k):
        chunk = coeffs[start : start + k]
        terms = list(zip(chunk[1:], powers))
        blocks.append(linear_combination(terms, chunk[0], ev))
    giant = powers[k - 1]
    acc = blocks[-1]
    for block in reversed(blocks[:-1]):
        acc = add_partial(mul_partial(acc, giant, ev), block, ev)
    logger.debug(
        "Evaluated a degree-%d polynomial with %d baby steps and %d blocks.",
        degree,
        k,
        len(blocks),
    )
    return materialize(acc, x, ev)


def horner(coeffs: Sequence[int], x: Value, ev: Evaluator) -> Value:
    """Evaluate a polynomial with one product per degree."""
    coeffs = trim(coeffs, ev.p)
    if not coeffs:
        return ev.constant_like(x, 0)
    acc = ev.constant_like(x, coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = ev.mul(acc, x)
        if c:
            acc = ev.add_scalar(acc, c)
    return acc
