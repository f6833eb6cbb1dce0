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


"""Generate NTT-friendly primes and roots of unity."""


import logging
from math import lcm
from typing import List

import numpy as np
from sympy import factorint

from ..exceptions import InvalidParameter, NotEnoughPrimes, OrderNotDividing
from .modulus import Modulus, ModulusLike, as_modulus, pow_mod
from .rns import RnsBasis


logger = logging.getLogger(__name__)


# These witnesses make Miller-Rabin deterministic for every n < 3.3 * 10^24.
DETERMINISTIC_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
RANDOM_ROUNDS = 64
WITNESS_SEED = 0x5EED


def _is_witness(a: int, n: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x in (1, n - 1):
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_probable_prime(n: int) -> bool:
    """
    Test primality with the Miller-Rabin test.

    Inputs below 2^64 are decided exactly by a fixed witness set. Larger
    inputs additionally face 64 rounds with bases drawn from a fixed seed,
    bounding the error probability by 4^-64.

    """
    if n < 2:
        return False
    for small in DETERMINISTIC_WITNESSES:
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if any(_is_witness(a, n, d, s) for a in DETERMINISTIC_WITNESSES):
        return False
    if n < (1 << 64):
        return True
    rng = np.random.default_rng(WITNESS_SEED)
    for _ in range(RANDOM_ROUNDS):
        a = 2 + int(rng.integers(0, 1 << 62)) % (n - 3)
        if _is_witness(a, n, d, s):
            return False
    return True


def _is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0


def gen_ntt_primes(m: int, pad: int, bits: int, count: int) -> RnsBasis:
    """
    Find primes supporting both the 2m-th and the pad-th roots of unity.

    Parameters
    ----------
    m : int
        The odd ring order.
    pad : int
        The Bluestein pad length M, a power of two of at least 2m - 1.
    bits : int
        The bit size of every prime, in [20, 62].
    count : int
        The number of primes to return.

    Returns
    -------
    RnsBasis
        The smallest ``count`` primes of exactly ``bits`` bits that are
        congruent to one modulo ``lcm(2m, pad)``, in ascending order.

    Raises
    ------
    NotEnoughPrimes
        If the interval of ``bits``-bit integers holds fewer such primes.

    """
    if m < 3 or m % 2 == 0:
        raise InvalidParameter(f"Ring order must be odd and at least 3, got {m}.")
    if not _is_power_of_two(pad) or pad < 2 * m - 1:
        raise InvalidParameter(f"Pad length {pad} is not a power of two >= 2m - 1.")
    if not 20 <= bits <= 62:
        raise InvalidParameter(f"Prime size must lie in [20, 62] bits, got {bits}.")
    if count < 0:
        raise InvalidParameter("Prime count must be non-negative.")
    step = lcm(2 * m, pad)
    low = 1 << (bits - 1)
    high = 1 << bits
    candidate = ((low - 1) // step + 1) * step + 1
    primes: List[Modulus] = []
    while len(primes) < count:
        if candidate >= high:
            raise NotEnoughPrimes(
                f"Found only {len(primes)} of {count} {bits}-bit primes congruent to "
                f"1 mod {step}."
            )
        if is_probable_prime(candidate):
            primes.append(Modulus(candidate))
        candidate += step
    logger.debug("Generated %d primes congruent to 1 mod %d.", count, step)
    return RnsBasis(tuple(primes))


def find_root(order: int, mod: ModulusLike) -> int:
    """
    Return a primitive root of unity of the given order.

    The search is deterministic: candidates 2, 3, ... are raised to
    ``(q - 1) / order`` until the result has exact order ``order``.

    Raises
    ------
    OrderNotDividing
        If ``order`` does not divide ``q - 1``.

    """
    mod = as_modulus(mod)
    q = mod.q
    if order < 1 or (q - 1) % order != 0:
        raise OrderNotDividing(f"Order {order} does not divide {q} - 1.")
    if order == 1:
        return 1
    cofactor = (q - 1) // order
    prime_factors = list(factorint(order))
    for generator in range(2, q):
        root = pow_mod(generator, cofactor, mod)
        if all(pow_mod(root, order // r, mod) != 1 for r in prime_factors):
            return root
    raise OrderNotDividing(f"No root of order {order} exists modulo {q}.")
