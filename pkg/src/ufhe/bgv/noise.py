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


"""Track worst-case bounds on the decryption noise of ciphertexts."""


import math

from ..ring import ERROR_BOUND


#: The tail cut of the error sampler.
B_ERR = ERROR_BOUND


def threshold(big_q: int) -> int:
    """Return the largest norm of c0 + c1 * s that still decrypts correctly."""
    return big_q // 2


def fresh(p: int, n: int, gamma: int) -> int:
    """Bound p * (e * u + e1 * s + e0) + m of a fresh encryption."""
    return (p - 1) // 2 + p * B_ERR * (2 * n * gamma + 1)


def add(a: int, b: int) -> int:
    return a + b


def mul(a: int, b: int, n: int, gamma: int) -> int:
    """Bound the norm of the tensor product of two ciphertexts."""
    return a * b * n * gamma


def key_switch(p: int, n: int, gamma: int, digits: int, digit_bits: int) -> int:
    """Bound the noise added by switching with ``digits`` gadget digits."""
    return p * digits * n * gamma * ((1 << digit_bits) - 1) * B_ERR


def automorphism(bound: int, gamma: int) -> int:
    return bound * gamma


def mul_plain(bound: int, l1_norm: int, gamma: int) -> int:
    """Bound a product with a plaintext polynomial of the given 1-norm."""
    return bound * l1_norm * gamma


def mul_scalar(bound: int, scalar: int) -> int:
    return bound * abs(scalar)


def add_plain(bound: int, max_norm: int) -> int:
    return bound + max_norm


def mod_switch(bound: int, scale: int, q_drop: int, p: int, n: int, gamma: int) -> int:
    """
    Bound the noise after dividing by the dropped prime.

    The scaled noise shrinks by q_drop and the rounding correction
    contributes at most (p + 1) / 2 times the norm of 1 + s.

    """
    scaled = -(-abs(scale) * bound // q_drop)
    rounding = -(-(p + 1) * (1 + n * gamma) // 2)
    return scaled + rounding


def budget_bits(bound: int, big_q: int) -> float:
    """Return log2(threshold / bound), clamped at zero."""
    limit = threshold(big_q)
    if bound <= 0:
        return float(math.log2(limit))
    if bound >= limit:
        return 0.0
    return max(0.0, math.log2(limit) - math.log2(bound))
