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


"""Test modular arithmetic, prime generation and CRT composition."""


import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import isprime

from ufhe.arith import (
    Modulus,
    RnsBasis,
    crt_compose,
    crt_compose_rows,
    find_root,
    gen_ntt_primes,
    is_probable_prime,
    mul_mod,
    pow_mod,
)
from ufhe.exceptions import InvalidParameter, NotEnoughPrimes, OrderNotDividing


Q = (1 << 61) - 1


@given(
    a=st.integers(min_value=0, max_value=Q - 1),
    b=st.integers(min_value=0, max_value=Q - 1),
)
def test_barrett_product(a: int, b: int) -> None:
    """Expect Barrett reduction to agree with the remainder operator."""
    assert mul_mod(a, b, Q) == a * b % Q


@given(
    a=st.integers(min_value=0, max_value=96),
    e=st.integers(min_value=0, max_value=1000),
)
def test_pow_mod(a: int, e: int) -> None:
    """Expect square-and-multiply to agree with the builtin."""
    assert pow_mod(a, e, 97) == pow(a, e, 97)


@pytest.mark.parametrize("q", [1, 2, 4, 1 << 63])
def test_invalid_modulus(q: int) -> None:
    """Expect even, tiny or oversized moduli to be rejected."""
    with pytest.raises(InvalidParameter):
        Modulus(q)


def test_negative_exponent() -> None:
    """Expect a negative exponent to be rejected."""
    with pytest.raises(InvalidParameter):
        pow_mod(3, -1, 97)


@pytest.mark.parametrize(
    "n", [2, 3, 97, 561, 7919, 2 ** 61 - 1, 2 ** 64 + 13, 2 ** 89 - 1, 2 ** 67 - 1]
)
def test_primality(n: int) -> None:
    """Expect Miller-Rabin to agree with sympy, Carmichael numbers included."""
    assert is_probable_prime(n) == isprime(n)


@pytest.mark.parametrize("m", [91, 31, 61, 257])
def test_ntt_primes(m: int) -> None:
    """Expect primes of the right size supporting both roots of unity."""
    pad = 1 << (2 * m - 2).bit_length()
    basis = gen_ntt_primes(m, pad, 40, 3)
    assert basis.level_count == 3
    assert list(basis.values) == sorted(basis.values)
    for q in basis.values:
        assert q.bit_length() == 40
        assert isprime(q)
        assert (q - 1) % (2 * m) == 0
        assert (q - 1) % pad == 0


def test_not_enough_primes() -> None:
    """Expect a clear error when the interval runs out of primes."""
    with pytest.raises(NotEnoughPrimes):
        gen_ntt_primes(91, 256, 20, 1000)


@pytest.mark.parametrize("pad", [100, 128])
def test_invalid_pad(pad: int) -> None:
    """Expect a pad that is not a large enough power of two to be rejected."""
    with pytest.raises(InvalidParameter):
        gen_ntt_primes(91, pad, 40, 1)


def test_root_order() -> None:
    """Expect a root of exactly the requested order."""
    q = gen_ntt_primes(91, 256, 40, 1).values[0]
    root = find_root(182, q)
    assert pow(root, 182, q) == 1
    assert pow(root, 91, q) != 1
    assert pow(root, 26, q) != 1
    assert pow(root, 14, q) != 1


def test_root_order_not_dividing() -> None:
    """Expect an error for an order that does not divide q - 1."""
    with pytest.raises(OrderNotDividing):
        find_root(5, 97)


@given(x=st.integers(min_value=-(10 ** 20), max_value=10 ** 20))
def test_crt_round_trip(x: int) -> None:
    """Expect composition to invert decomposition for centered integers."""
    basis = RnsBasis.from_values([97, 193, 257, 7681, 12289, 40961, 65537])
    assert crt_compose(basis.decompose(x), basis) == x


def test_crt_rows() -> None:
    """Expect column-wise composition to agree with the scalar version."""
    basis = RnsBasis.from_values([97, 193, 257])
    values = [-1000, 0, 1, 2_400_000]
    matrix = np.array([basis.decompose(x) for x in values], dtype=object).T
    assert list(crt_compose_rows(matrix, basis)) == values


def test_duplicate_primes() -> None:
    """Expect a basis with repeated primes to be rejected."""
    with pytest.raises(InvalidParameter):
        RnsBasis.from_values([97, 97])


def test_composite_basis() -> None:
    """Expect a composite modulus to be rejected by the basis."""
    with pytest.raises(InvalidParameter):
        RnsBasis.from_values([97, 91])


def test_prefix() -> None:
    """Expect a prefix to keep the leading primes."""
    basis = RnsBasis.from_values([97, 193, 257])
    assert basis.prefix(2).values == (97, 193)
    assert basis.prefix(3) is basis
