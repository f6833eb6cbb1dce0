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


"""Serialize polynomials, ciphertexts and keys into versioned byte strings."""


import logging
import struct
from typing import Dict, Tuple

import numpy as np

from ..arith import RnsBasis
from ..exceptions import SerializationError
from ..ring import Rep, RnsPoly
from .ciphertext import Ciphertext
from .keys import KswKey, PublicKey, SecretKey


logger = logging.getLogger(__name__)


MAGIC = b"UFHE1"

_POLY = 1
_CIPHERTEXT = 2
_SECRET_KEY = 3
_PUBLIC_KEY = 4
_KSW_KEY = 5
_GALOIS_KEYS = 6


class _Reader:
    def __init__(self, payload: bytes) -> None:
        self.payload = payload
        self.offset = 0

    def take(self, size: int) -> bytes:
        end = self.offset + size
        if end > len(self.payload):
            raise SerializationError("Truncated payload.")
        chunk = self.payload[self.offset : end]
        self.offset = end
        return chunk

    def unpack(self, fmt: str) -> Tuple:
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def block(self) -> bytes:
        (size,) = self.unpack("<I")
        return self.take(size)

    def words(self, count: int) -> np.ndarray:
        return np.frombuffer(self.take(8 * count), dtype="<u8").astype(object)


def _block(payload: bytes) -> bytes:
    return struct.pack("<I", len(payload)) + payload


def _words(values: np.ndarray) -> bytes:
    return np.asarray(values.astype(np.uint64), dtype="<u8").tobytes()


def _big_int(value: int) -> bytes:
    size = max(1, (value.bit_length() + 7) // 8)
    return _block(value.to_bytes(size, "little"))


def _header(kind: int) -> bytes:
    return MAGIC + struct.pack("<B", kind)


def _open(payload: bytes, kind: int) -> _Reader:
    if not payload.startswith(MAGIC):
        raise SerializationError("Missing UFHE1 header.")
    reader = _Reader(payload)
    reader.take(len(MAGIC))
    (found,) = reader.unpack("<B")
    if found != kind:
        raise SerializationError(f"Expected payload kind {kind}, found {found}.")
    return reader


def _poly_body(poly: RnsPoly) -> bytes:
    primes = poly.basis.values
    head = struct.pack(
        "<BIHI",
        0 if poly.rep is Rep.COEFF else 1,
        poly.m or 0,
        len(primes),
        poly.width,
    )
    return head + _words(np.array(primes, dtype=object)) + _words(poly.matrix())


def _read_poly(reader: _Reader) -> RnsPoly:
    rep, m, count, width = reader.unpack("<BIHI")
    primes = [int(q) for q in reader.words(count)]
    matrix = reader.words(count * width).reshape(count, width)
    basis = RnsBasis.from_values(primes)
    return RnsPoly.from_matrix(
        matrix, Rep.EVAL if rep else Rep.COEFF, basis, m or None
    )


def dump_poly(poly: RnsPoly) -> bytes:
    """Serialize an RNS polynomial."""
    return _header(_POLY) + _poly_body(poly)


def load_poly(payload: bytes) -> RnsPoly:
    return _read_poly(_open(payload, _POLY))


def dump_ciphertext(ct: Ciphertext) -> bytes:
    """Serialize a ciphertext with its noise bound; slot usage is not kept."""
    body = struct.pack("<B", ct.size) + _big_int(ct.noise_bound)
    body += b"".join(_block(_poly_body(part)) for part in ct.parts)
    return _header(_CIPHERTEXT) + body


def load_ciphertext(payload: bytes) -> Ciphertext:
    reader = _open(payload, _CIPHERTEXT)
    (size,) = reader.unpack("<B")
    bound = int.from_bytes(reader.block(), "little")
    parts = tuple(_read_poly(_Reader(reader.block())) for _ in range(size))
    return Ciphertext(parts, bound)


def dump_secret_key(sk: SecretKey) -> bytes:
    coeffs = np.asarray(sk.coeffs, dtype=np.int8)
    return (
        _header(_SECRET_KEY)
        + _block(_poly_body(sk.s))
        + struct.pack("<I", len(coeffs))
        + coeffs.tobytes()
    )


def load_secret_key(payload: bytes) -> SecretKey:
    reader = _open(payload, _SECRET_KEY)
    s = _read_poly(_Reader(reader.block()))
    (count,) = reader.unpack("<I")
    coeffs = np.frombuffer(reader.take(count), dtype=np.int8).astype(object)
    return SecretKey(s=s, coeffs=coeffs)


def dump_public_key(pk: PublicKey) -> bytes:
    return _header(_PUBLIC_KEY) + _block(_poly_body(pk.b)) + _block(_poly_body(pk.a))


def load_public_key(payload: bytes) -> PublicKey:
    reader = _open(payload, _PUBLIC_KEY)
    b = _read_poly(_Reader(reader.block()))
    a = _read_poly(_Reader(reader.block()))
    return PublicKey(b=b, a=a)


def _ksw_body(key: KswKey) -> bytes:
    count, levels, width = key.b.shape
    label = key.label.encode("utf-8")
    body = _block(label) + struct.pack("<BIHI", key.digit_bits, count, levels, width)
    body += b"".join(struct.pack("<HH", i, t) for i, t in key.components)
    return body + _words(key.b) + _words(key.a)


def _read_ksw(reader: _Reader) -> KswKey:
    label = reader.block().decode("utf-8")
    digit_bits, count, levels, width = reader.unpack("<BIHI")
    components = tuple(reader.unpack("<HH") for _ in range(count))
    shape = (count, levels, width)
    b = reader.words(count * levels * width).reshape(shape)
    a = reader.words(count * levels * width).reshape(shape)
    return KswKey(label, components, digit_bits, b, a)


def dump_ksw_key(key: KswKey) -> bytes:
    return _header(_KSW_KEY) + _ksw_body(key)


def load_ksw_key(payload: bytes) -> KswKey:
    return _read_ksw(_open(payload, _KSW_KEY))


def dump_galois_keys(keys: Dict[int, KswKey]) -> bytes:
    body = struct.pack("<H", len(keys))
    for element, key in sorted(keys.items()):
        body += struct.pack("<I", element) + _block(_ksw_body(key))
    return _header(_GALOIS_KEYS) + body


def load_galois_keys(payload: bytes) -> Dict[int, KswKey]:
    reader = _open(payload, _GALOIS_KEYS)
    (count,) = reader.unpack("<H")
    keys = {}
    for _ in range(count):
        (element,) = reader.unpack("<I")
        keys[element] = _read_ksw(_Reader(reader.block()))
    return keys
