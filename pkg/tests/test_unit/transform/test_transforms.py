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


"""Test the power-of-two NTT, the Bluestein DFT and the evaluation maps."""


from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ufhe.arith import gen_ntt_primes
from ufhe.exceptions import BadLength, OrderNotDividing
from ufhe.transform import (
    Direction,
    PlanCache,
    PlanStack,
    bit_reverse_indices,
    bluestein_dft,
    build_bluestein_plan,
    from_eval,
    ntt_pow2,
    pad_length,
    reduce_mod_cyclotomic,
    stacked_from_eval,
    stacked_to_eval,
    to_eval,
)


RINGS = [(3, 91), (5, 31), (7, 61), (17, 257)]


def naive_dft(values, root: int, q: int) -> list:
    size = len(values)
    return [
        sum(int(v) * pow(root, i * j, q) for i, v in enumerate(values)) % q
        for j in range(size)
    ]


def schoolbook(a, b, m: int, q: int) -> list:
    full = np.zeros(m, dtype=object)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            full[(i + j) % m] += int(x) * int(y)
    return list(reduce_mod_cyclotomic(full, m) % q)


@pytest.fixture(scope="module", params=[m for _, m in RINGS])
def plans(request) -> list:
    m = request.param
    basis = gen_ntt_primes(m, pad_length(m), 40, 3)
    cache = PlanCache()
    return [cache.build(m, q) for q in basis.values]


def test_bit_reverse() -> None:
    """Expect the bit-reversal permutation of eight indices."""
    assert list(bit_reverse_indices(8)) == [0, 4, 2, 6, 1, 5, 3, 7]


def test_bit_reverse_length() -> None:
    """Expect a length that is not a power of two to be rejected."""
    with pytest.raises(BadLength):
        bit_reverse_indices(12)


@settings(max_examples=20, deadline=None)
@given(
    values=st.lists(
        st.integers(min_value=0, max_value=256), min_size=16, max_size=16
    )
)
def test_ntt_against_naive(values: list) -> None:
    """Expect the butterfly NTT to agree with the naive DFT."""
    q = 257
    transformed = ntt_pow2(values, q, Direction.FORWARD, root=249)
    assert list(transformed) == naive_dft(values, 249, q)
    assert list(ntt_pow2(transformed, q, Direction.INVERSE, root=249)) == values


def test_ntt_order_not_dividing() -> None:
    """Expect an error when the length does not divide q - 1."""
    with pytest.raises(OrderNotDividing):
        ntt_pow2([1] * 64, 97)


@pytest.mark.parametrize("m, expected", [(3, 8), (91, 256), (257, 1024)])
def test_pad_length(m: int, expected: int) -> None:
    """Expect the smallest power of two of at least 2m - 1."""
    assert pad_length(m) == expected


def test_bluestein_against_naive(plans: list) -> None:
    """Expect the Bluestein DFT to agree with the naive length-m DFT."""
    plan = plans[0]
    rng = np.random.default_rng(1)
    values = [int(v) for v in rng.integers(0, plan.q, size=plan.m)]
    omega = plan.psi * plan.psi % plan.q
    forward = bluestein_dft(values, plan, Direction.FORWARD)
    assert list(forward) == naive_dft(values, omega, plan.q)
    assert list(bluestein_dft(forward, plan, Direction.INVERSE)) == values


def test_round_trip(plans: list) -> None:
    """Expect interpolation to invert evaluation exactly."""
    rng = np.random.default_rng(2)
    for plan in plans:
        coeffs = [int(v) for v in rng.integers(0, plan.q, size=plan.n)]
        assert list(from_eval(to_eval(coeffs, plan), plan)) == coeffs


def test_pointwise_product(plans: list) -> None:
    """Expect point-wise products to match schoolbook products modulo Phi_m."""
    rng = np.random.default_rng(3)
    for plan in plans:
        q = plan.q
        a = [int(v) for v in rng.integers(0, q, size=plan.n)]
        b = [int(v) for v in rng.integers(0, q, size=plan.n)]
        product = from_eval(to_eval(a, plan) * to_eval(b, plan) % q, plan)
        assert list(product) == schoolbook(a, b, plan.m, q)


def test_evaluation_points(plans: list) -> None:
    """Expect evaluations at the powers of omega indexed by Z_m*."""
    plan = plans[0]
    q, m = plan.q, plan.m
    omega = plan.psi * plan.psi % q
    coeffs = list(range(1, plan.n + 1))
    units = [j for j in range(m) if gcd(j, m) == 1]
    expected = [
        sum(c * pow(omega, i * j, q) for i, c in enumerate(coeffs)) % q for j in units
    ]
    assert list(to_eval(coeffs, plan)) == expected


def test_stacked_matches_single(plans: list) -> None:
    """Expect batched transforms to agree with one prime at a time."""
    stack = PlanStack.from_plans(plans)
    rng = np.random.default_rng(4)
    n = plans[0].n
    rows = np.array(
        [[int(v) for v in rng.integers(0, plan.q, size=n)] for plan in plans],
        dtype=object,
    )
    evals = stacked_to_eval(rows, stack)
    for row, plan, result in zip(rows, plans, evals):
        assert list(result) == list(to_eval(row, plan))
    assert (stacked_from_eval(evals, stack) == rows).all()


def test_wrong_length(plans: list) -> None:
    """Expect an error for a coefficient vector of the wrong length."""
    with pytest.raises(BadLength):
        to_eval([1, 2, 3], plans[0])


def test_plan_requires_roots() -> None:
    """Expect a prime without the needed roots of unity to be rejected."""
    with pytest.raises(OrderNotDividing):
        build_bluestein_plan(91, 97)
