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


"""Test the binary formats of keys and ciphertexts."""


import numpy as np
import pytest

from ufhe.bgv import (
    decrypt_slots,
    dump_ciphertext,
    dump_galois_keys,
    dump_poly,
    dump_public_key,
    dump_secret_key,
    encrypt_slots,
    he_mul,
    load_ciphertext,
    load_galois_keys,
    load_poly,
    load_public_key,
    load_secret_key,
    rotate,
)
from ufhe.exceptions import SerializationError


pytestmark = pytest.mark.slow


VALUES = [2, 0, 1, 1, 2, 2, 0, 1, 0, 2, 1, 0]


def test_loaded_keys_work(toy_context, toy_keys) -> None:
    """Expect reloaded public and secret keys to encrypt and decrypt."""
    public = load_public_key(dump_public_key(toy_keys.public))
    secret = load_secret_key(dump_secret_key(toy_keys.secret))
    ct = encrypt_slots(VALUES, public, toy_context, seed=5)
    assert decrypt_slots(ct, secret, toy_context).tolist() == VALUES
    assert np.array_equal(secret.coeffs, toy_keys.secret.coeffs)


def test_ciphertext_keeps_noise_bound(toy_context, toy_keys) -> None:
    """Expect a product ciphertext to reload with its bound and level."""
    ct = encrypt_slots(VALUES, toy_keys.public, toy_context, seed=6)
    product = he_mul(ct, ct, toy_keys.relin, toy_context)
    loaded = load_ciphertext(dump_ciphertext(product))
    assert loaded == product
    assert loaded.level == product.level
    expected = [v * v % 3 for v in VALUES]
    assert decrypt_slots(loaded, toy_keys.secret, toy_context).tolist() == expected


def test_loaded_galois_keys_rotate(toy_context, toy_keys) -> None:
    galois = load_galois_keys(dump_galois_keys(toy_keys.galois))
    assert sorted(galois) == sorted(toy_keys.galois)
    ct = encrypt_slots(VALUES, toy_keys.public, toy_context, seed=7)
    moved = rotate(ct, 1, galois, toy_context)
    assert decrypt_slots(moved, toy_keys.secret, toy_context).tolist() == (
        VALUES[1:] + VALUES[:1]
    )


def test_poly_keeps_representation(toy_keys) -> None:
    poly = toy_keys.public.a
    assert load_poly(dump_poly(poly)) == poly


@pytest.mark.parametrize(
    "payload",
    [b"", b"NOPE1\x02", b"UFHE1\x02\x02\xff"],
    ids=["empty", "magic", "truncated"],
)
def test_invalid_payload(payload: bytes) -> None:
    with pytest.raises(SerializationError):
        load_ciphertext(payload)


def test_wrong_payload_kind(toy_keys) -> None:
    """Expect a public key to be refused where a ciphertext is expected."""
    with pytest.raises(SerializationError, match="kind"):
        load_ciphertext(dump_public_key(toy_keys.public))
