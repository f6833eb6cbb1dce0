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


"""Test encryption, homomorphic operations, noise tracking and key switching."""


import dataclasses

import numpy as np
import pytest

from ufhe.bgv import (
    Ciphertext,
    decrypt_slots,
    encrypt_slots,
    fresh_zero_like,
    he_add,
    he_add_plain,
    he_add_scalar,
    he_mul,
    he_mul_plain,
    he_mul_scalar,
    he_neg,
    he_sub,
    keygen,
    mod_switch,
    mod_switch_to,
    noise_budget,
    rotate,
)
from ufhe.bgv import noise
from ufhe.exceptions import (
    LevelMismatch,
    MissingGaloisKey,
    NoiseBudgetExhausted,
    OutOfLevels,
)


pytestmark = pytest.mark.slow

P = 3


@pytest.fixture(scope="module")
def rng() -> np.random.Generator:
    return np.random.default_rng(11)


def encrypt(values, keys, ctx, seed=0) -> Ciphertext:
    return encrypt_slots([int(v) for v in values], keys.public, ctx, seed)


def decrypt(ct, keys, ctx) -> np.ndarray:
    return decrypt_slots(ct, keys.secret, ctx)


def test_round_trip(toy_context, toy_keys, rng) -> None:
    """Expect decryption to recover every slot."""
    values = rng.integers(0, P, size=toy_context.slot_count)
    ct = encrypt(values, toy_keys, toy_context)
    assert np.array_equal(decrypt(ct, toy_keys, toy_context), values)
    assert noise_budget(ct) > 0


def test_fresh_encryptions_differ(toy_context, toy_keys) -> None:
    """Expect different randomness to give different ciphertexts."""
    values = [1] * toy_context.slot_count
    assert encrypt(values, toy_keys, toy_context, 1) != encrypt(
        values, toy_keys, toy_context, 2
    )


def test_linear_operations(toy_context, toy_keys, rng) -> None:
    """Expect addition, subtraction, negation and scalar operations per slot."""
    ctx, keys = toy_context, toy_keys
    x = rng.integers(0, P, size=ctx.slot_count)
    y = rng.integers(0, P, size=ctx.slot_count)
    a, b = encrypt(x, keys, ctx, 1), encrypt(y, keys, ctx, 2)
    assert np.array_equal(decrypt(he_add(a, b, ctx), keys, ctx), (x + y) % P)
    assert np.array_equal(decrypt(he_sub(a, b, ctx), keys, ctx), (x - y) % P)
    assert np.array_equal(decrypt(he_neg(a), keys, ctx), -x % P)
    assert np.array_equal(decrypt(he_mul_scalar(a, 2, ctx), keys, ctx), 2 * x % P)
    assert np.array_equal(
        decrypt(he_add_scalar(a, 1, ctx), keys, ctx), (x + 1) % P
    )


def test_plaintext_operands(toy_context, toy_keys, rng) -> None:
    """Expect plaintext products and sums per slot."""
    ctx, keys = toy_context, toy_keys
    x = rng.integers(0, P, size=ctx.slot_count)
    mask = rng.integers(0, P, size=ctx.slot_count)
    a = encrypt(x, keys, ctx)
    operand = ctx.plain_slots(mask)
    assert np.array_equal(
        decrypt(he_mul_plain(a, operand, ctx), keys, ctx), x * mask % P
    )
    assert np.array_equal(decrypt(he_add_plain(a, operand), keys, ctx), (x + mask) % P)


def test_multiplication_chain(toy_context, toy_keys, rng) -> None:
    """Expect repeated products to stay correct while levels last."""
    ctx, keys = toy_context, toy_keys
    x = rng.integers(0, P, size=ctx.slot_count)
    ct = encrypt(x, keys, ctx)
    expected = x.copy()
    for _ in range(5):
        ct = he_mul(ct, ct, keys.relin, ctx)
        expected = expected * expected % P
        assert np.array_equal(decrypt(ct, keys, ctx), expected)
    assert ct.level == ctx.params.basis.level_count - 5


@pytest.mark.parametrize("k", [1, 3, 5, 11])
def test_rotation(toy_context, toy_keys, k: int) -> None:
    """Expect slot i to receive slot i + k."""
    values = np.arange(toy_context.slot_count) % P
    ct = rotate(encrypt(values, toy_keys, toy_context), k, toy_keys.galois, toy_context)
    assert np.array_equal(decrypt(ct, toy_keys, toy_context), np.roll(values, -k))


def test_missing_galois_key(toy_context, toy_keys) -> None:
    """Expect a rotation without keys to fail."""
    ct = encrypt([1] * toy_context.slot_count, toy_keys, toy_context)
    with pytest.raises(MissingGaloisKey):
        rotate(ct, 1, {}, toy_context)


def test_random_expressions(toy_context, toy_keys) -> None:
    """Expect random add, multiply and rotate trees to match plaintext."""
    ctx, keys = toy_context, toy_keys
    rng = np.random.default_rng(5)
    slots = ctx.slot_count
    for tree in range(100):
        x = rng.integers(0, P, size=slots)
        ct = encrypt(x, keys, ctx, tree)
        for _ in range(5):
            y = rng.integers(0, P, size=slots)
            other = encrypt(y, keys, ctx, int(rng.integers(1 << 30)))
            other = mod_switch_to(other, ct.level, ctx)
            choice = rng.integers(3)
            if choice == 0:
                ct, x = he_add(ct, other, ctx), (x + y) % P
            elif choice == 1:
                ct, x = he_mul(ct, other, keys.relin, ctx), x * y % P
            else:
                k = int(rng.integers(1, slots))
                ct, x = rotate(ct, k, keys.galois, ctx), np.roll(x, -k)
        assert np.array_equal(decrypt(ct, keys, ctx), x)


def test_mod_switch_preserves_plaintext(toy_context, toy_keys, rng) -> None:
    """Expect dropping primes to keep the message and lower the bound."""
    values = rng.integers(0, P, size=toy_context.slot_count)
    ct = encrypt(values, toy_keys, toy_context)
    switched = mod_switch(ct, toy_context)
    assert switched.level == ct.level - 1
    assert switched.noise_bound < ct.noise_bound
    assert np.array_equal(decrypt(switched, toy_keys, toy_context), values)


def test_level_mismatch(toy_context, toy_keys) -> None:
    """Expect operands at different levels to be refused."""
    ct = encrypt([1] * toy_context.slot_count, toy_keys, toy_context)
    with pytest.raises(LevelMismatch):
        he_add(ct, mod_switch(ct, toy_context), toy_context)


def test_out_of_levels(toy_context, toy_keys) -> None:
    """Expect a product at the last prime to be refused."""
    ct = mod_switch_to(
        encrypt([1] * toy_context.slot_count, toy_keys, toy_context), 1, toy_context
    )
    with pytest.raises(OutOfLevels):
        he_mul(ct, ct, toy_keys.relin, toy_context)


def test_noise_exhausted(toy_context, toy_keys) -> None:
    """Expect decryption to refuse a bound above the threshold."""
    ct = encrypt([1] * toy_context.slot_count, toy_keys, toy_context)
    broken = dataclasses.replace(
        ct, noise_bound=noise.threshold(ct.basis.big_q) + 1
    )
    with pytest.raises(NoiseBudgetExhausted):
        decrypt(broken, toy_keys, toy_context)


def test_fresh_zero(toy_context, toy_keys) -> None:
    """Expect the trivial encryption of zero to be noiseless."""
    ct = encrypt([2] * toy_context.slot_count, toy_keys, toy_context)
    zero = fresh_zero_like(ct, toy_context)
    assert zero.noise_bound == 0
    assert not decrypt(zero, toy_keys, toy_context).any()


def test_keygen_deterministic(toy_context, toy_keys) -> None:
    """Expect identical seeds to give identical public keys."""
    again = keygen(toy_context, 0)
    assert again.public.b == toy_keys.public.b
    assert set(again.galois) == set(toy_keys.galois)
