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


"""Test RNS polynomials, staged kernels, automorphisms and modulus switching."""


import numpy as np
import pytest

from ufhe.arith import gen_ntt_primes
from ufhe.exceptions import BasisMismatch, BasisTooSmall, RepMismatch
from ufhe.ring import (
    CyclotomicRing,
    ElementwiseOp,
    Rep,
    RnsPoly,
    SampleKind,
    Workspace,
    automorphism,
    convert,
    elementwise,
    elementwise_reference,
    mod_switch_drop,
    sample,
)
from ufhe.ring.sampling import ERROR_BOUND
from ufhe.transform import pad_length


M = 91
N = 72


@pytest.fixture(scope="module")
def ring() -> CyclotomicRing:
    return CyclotomicRing(M, gen_ntt_primes(M, pad_length(M), 40, 11))


def random_poly(ring: CyclotomicRing, levels: int, seed: int, rep=Rep.EVAL):
    basis = ring.basis.prefix(levels)
    return sample(SampleKind.UNIFORM, N, basis, seed, M, rep)


@pytest.mark.parametrize("levels", [3, 6, 11])
@pytest.mark.parametrize("op", list(ElementwiseOp))
def test_staged_matches_reference(
    ring: CyclotomicRing, levels: int, op: ElementwiseOp
) -> None:
    """Expect fused kernels to equal row-by-row evaluation."""
    workspace = Workspace()
    for seed in range(10):
        a = random_poly(ring, levels, 2 * seed)
        b = random_poly(ring, levels, 2 * seed + 1)
        assert elementwise(op, a, b, workspace) == elementwise_reference(op, a, b)


def test_workspace_serves_lower_levels(ring: CyclotomicRing) -> None:
    """Expect a buffer sized for many rows to serve fewer rows correctly."""
    workspace = Workspace()
    big = random_poly(ring, 11, 1)
    small = random_poly(ring, 3, 2)
    elementwise(ElementwiseOp.ADD, big, big, workspace)
    result = elementwise(ElementwiseOp.MUL, small, small, workspace)
    assert result == elementwise_reference(ElementwiseOp.MUL, small, small)
    assert result.level_count == 3


def test_rows_are_independent(ring: CyclotomicRing) -> None:
    """Expect results not to alias the staging storage."""
    workspace = Workspace()
    a = random_poly(ring, 3, 1)
    first = elementwise(ElementwiseOp.ADD, a, a, workspace)
    snapshot = [row.copy() for row in first.rows]
    elementwise(ElementwiseOp.SUB, a, a, workspace)
    assert all(np.array_equal(x, y) for x, y in zip(first.rows, snapshot))


def test_product_requires_evaluation_form(ring: CyclotomicRing) -> None:
    """Expect a product in coefficient form to be refused."""
    a = random_poly(ring, 3, 1, Rep.COEFF)
    with pytest.raises(RepMismatch):
        elementwise(ElementwiseOp.MUL, a, a)


def test_basis_mismatch(ring: CyclotomicRing) -> None:
    """Expect operands over different primes to be refused."""
    with pytest.raises(BasisMismatch):
        elementwise(
            ElementwiseOp.ADD, random_poly(ring, 3, 1), random_poly(ring, 4, 2)
        )


def test_convert_round_trip(ring: CyclotomicRing) -> None:
    """Expect conversion to evaluation form and back to be the identity."""
    a = random_poly(ring, 4, 5, Rep.COEFF)
    evaluated = convert(a, Rep.EVAL, ring.cache)
    assert evaluated.rep is Rep.EVAL
    assert convert(evaluated, Rep.COEFF, ring.cache) == a


@pytest.mark.parametrize("t", [2, 3, 16, 90])
def test_automorphism_commutes_with_convert(ring: CyclotomicRing, t: int) -> None:
    """Expect the evaluation permutation to match the coefficient map."""
    a = random_poly(ring, 2, 6, Rep.COEFF)
    via_coeff = convert(automorphism(a, t), Rep.EVAL, ring.cache)
    via_eval = automorphism(convert(a, Rep.EVAL, ring.cache), t)
    assert via_coeff == via_eval


def test_automorphism_requires_unit(ring: CyclotomicRing) -> None:
    """Expect a non-unit Galois element to be rejected."""
    with pytest.raises(ValueError):
        automorphism(random_poly(ring, 2, 1), 7)


def test_mod_switch(ring: CyclotomicRing) -> None:
    """Expect division by the last prime that keeps the class modulo p."""
    p = 3
    basis = ring.basis.prefix(3)
    rng = np.random.default_rng(7)
    values = [
        int(high) * (1 << 40) + int(low)
        for high, low in rng.integers(-(1 << 60), 1 << 60, size=(N, 2))
    ]
    a = RnsPoly.from_integers(values, basis, M)
    switched = mod_switch_drop(a, p)
    q = basis.values[-1]
    assert switched.level_count == 2
    for before, after in zip(values, switched.to_integers()):
        assert (after - before * pow(q, -1, p)) % p == 0
        assert abs(after * q - before) <= p * q


def test_mod_switch_last_prime(ring: CyclotomicRing) -> None:
    """Expect a polynomial over a single prime not to be switched."""
    with pytest.raises(BasisTooSmall):
        mod_switch_drop(random_poly(ring, 1, 1, Rep.COEFF), 3)


def test_sampling_is_seeded(ring: CyclotomicRing) -> None:
    """Expect identical seeds to give identical samples."""
    assert random_poly(ring, 3, 42) == random_poly(ring, 3, 42)
    assert random_poly(ring, 3, 42) != random_poly(ring, 3, 43)


@pytest.mark.parametrize(
    "kind, bound", [(SampleKind.TERNARY, 1), (SampleKind.ERROR, ERROR_BOUND)]
)
def test_small_samples(ring: CyclotomicRing, kind: SampleKind, bound: int) -> None:
    """Expect small distributions to respect their bounds."""
    poly = sample(kind, N, ring.basis.prefix(2), 0, M)
    values = poly.to_integers()
    assert all(abs(v) <= bound for v in values)


def test_ring_degree(ring: CyclotomicRing) -> None:
    """Expect the degree phi(m) and plans for every prime."""
    assert ring.n == N
    assert ring.gamma >= 1
    assert ring.cache.build_counter == ring.basis.level_count
