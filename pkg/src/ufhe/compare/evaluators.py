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


"""Provide the encrypted and plaintext backends the comparison circuits run on."""


import copy
import logging
from dataclasses import dataclass, replace
from typing import Dict, Optional, Protocol, Sequence, Tuple, TypeVar

import numpy as np

from ..bgv import (
    BgvContext,
    Ciphertext,
    KeySet,
    PlainOperand,
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
    mod_switch,
    mod_switch_to,
    rotate,
)
from ..bgv import noise
from ..bgv.keyswitch import digit_count
from ..exceptions import (
    AlphabetViolation,
    InvalidParameter,
    OutOfLevels,
    WrongSlotCount,
)
from ..helpers import make_rng
from .counter import OpCounter


logger = logging.getLogger(__name__)


Value = TypeVar("Value")


class Evaluator(Protocol[Value]):
    """
    Describe the slot-wise operations every comparison circuit is built from.

    All values hold one element of F_p per slot. Rotations move slot i + k
    into slot i. Every operation is recorded on ``counter`` under its
    currently active phase.

    """

    p: int
    slots: int
    counter: OpCounter

    def encrypt(self, values: Sequence[int]) -> Value:
        ...

    def decrypt(self, value: Value) -> np.ndarray:
        ...

    def add(self, a: Value, b: Value) -> Value:
        ...

    def sub(self, a: Value, b: Value) -> Value:
        ...

    def neg(self, a: Value) -> Value:
        ...

    def mul(self, a: Value, b: Value) -> Value:
        ...

    def mul_scalar(self, a: Value, c: int) -> Value:
        ...

    def add_scalar(self, a: Value, c: int) -> Value:
        ...

    def mul_plain(self, a: Value, vector: Sequence[int]) -> Value:
        ...

    def add_plain(self, a: Value, vector: Sequence[int]) -> Value:
        ...

    def rotate(self, a: Value, k: int) -> Value:
        ...

    def constant_like(self, a: Value, c: int) -> Value:
        ...

    def plain_like(self, a: Value, vector: Sequence[int]) -> Value:
        ...

    def check_alphabet(self, a: Value, bound: int) -> None:
        ...

    def affords_move(self, a: Value) -> bool:
        ...

    def fork(self) -> "Evaluator[Value]":
        ...


def _slot_vector(vector: Sequence[int], slots: int, p: int) -> np.ndarray:
    values = np.asarray(vector, dtype=np.int64) % p
    if values.shape != (slots,):
        raise WrongSlotCount(f"Expected {slots} slot values, got {values.shape}.")
    return values


def _pad(values: Sequence[int], slots: int) -> np.ndarray:
    if len(values) > slots:
        raise WrongSlotCount(f"At most {slots} values fit, got {len(values)}.")
    padded = np.zeros(slots, dtype=np.int64)
    padded[: len(values)] = np.asarray(values, dtype=np.int64)
    return padded


@dataclass(frozen=True)
class PlainVector:
    """
    Hold the slot values of a plaintext computation.

    Attributes
    ----------
    values : numpy.ndarray
        One residue modulo p per slot.
    depth : int
        The multiplicative depth consumed so far.

    """

    values: np.ndarray
    depth: int = 0


class PlainEvaluator:
    """
    Run circuits directly on slot vectors over F_p.

    The backend mirrors the encrypted one operation for operation, so the
    counters of both agree. It is the oracle of the test suite and the only
    backend able to detect digits outside a circuit's alphabet.

    Parameters
    ----------
    p : int
    slots : int
    max_depth : int, optional
        Raise OutOfLevels once a product would exceed this depth.

    """

    def __init__(
        self, p: int, slots: int, max_depth: Optional[int] = None, **kwargs
    ) -> None:
        super().__init__(**kwargs)
        self.p = p
        self.slots = slots
        self.max_depth = max_depth
        self.counter = OpCounter()

    def fork(self) -> "PlainEvaluator":
        forked = copy.copy(self)
        forked.counter = OpCounter()
        return forked

    def _wrap(self, values: np.ndarray, depth: int) -> PlainVector:
        return PlainVector(np.asarray(values, dtype=np.int64) % self.p, depth)

    def encrypt(self, values: Sequence[int]) -> PlainVector:
        return self._wrap(_pad(values, self.slots), 0)

    def decrypt(self, value: PlainVector) -> np.ndarray:
        return value.values.copy()

    def add(self, a: PlainVector, b: PlainVector) -> PlainVector:
        self.counter.record("adds")
        return self._wrap(a.values + b.values, max(a.depth, b.depth))

    def sub(self, a: PlainVector, b: PlainVector) -> PlainVector:
        self.counter.record("adds")
        return self._wrap(a.values - b.values, max(a.depth, b.depth))

    def neg(self, a: PlainVector) -> PlainVector:
        self.counter.record("adds")
        return self._wrap(-a.values, a.depth)

    def mul(self, a: PlainVector, b: PlainVector) -> PlainVector:
        depth = max(a.depth, b.depth) + 1
        if self.max_depth is not None and depth > self.max_depth:
            raise OutOfLevels(
                f"A product of depth {depth} exceeds the limit of {self.max_depth}."
            )
        self.counter.record("nonscalar_mults")
        return self._wrap(a.values * b.values, depth)

    def mul_scalar(self, a: PlainVector, c: int) -> PlainVector:
        self.counter.record("scalar_mults")
        return self._wrap(a.values * (int(c) % self.p), a.depth)

    def add_scalar(self, a: PlainVector, c: int) -> PlainVector:
        self.counter.record("adds")
        return self._wrap(a.values + int(c) % self.p, a.depth)

    def mul_plain(self, a: PlainVector, vector: Sequence[int]) -> PlainVector:
        self.counter.record("scalar_mults")
        return self._wrap(a.values * _slot_vector(vector, self.slots, self.p), a.depth)

    def add_plain(self, a: PlainVector, vector: Sequence[int]) -> PlainVector:
        self.counter.record("adds")
        return self._wrap(a.values + _slot_vector(vector, self.slots, self.p), a.depth)

    def rotate(self, a: PlainVector, k: int) -> PlainVector:
        if k % self.slots == 0:
            return a
        self.counter.record("rotations")
        return replace(a, values=np.roll(a.values, -k))

    def constant_like(self, a: PlainVector, c: int) -> PlainVector:
        return self._wrap(np.full(self.slots, int(c) % self.p), a.depth)

    def plain_like(self, a: PlainVector, vector: Sequence[int]) -> PlainVector:
        return self._wrap(_slot_vector(vector, self.slots, self.p), a.depth)

    def check_alphabet(self, a: PlainVector, bound: int) -> None:
        """Raise if any slot holds a value above ``bound``."""
        offending = np.flatnonzero(a.values > bound)
        if len(offending):
            slot = int(offending[0])
            raise AlphabetViolation(
                f"Slot {slot} holds {int(a.values[slot])}, above the digit bound "
                f"{bound}."
            )

    def affords_move(self, a: PlainVector) -> bool:
        return True


class CipherEvaluator:
    """
    Run circuits on BGV ciphertexts.

    Operands at different levels are switched down to the lower one before
    they are combined. Products first switch their operands down while the
    tracked noise exceeds the size of the next prime to be dropped.

    Parameters
    ----------
    ctx : BgvContext
    keys : KeySet
        The secret key is only needed to decrypt and is never pickled.
    seed : int, optional
        Seeds the encryption randomness.

    """

    def __init__(
        self, ctx: BgvContext, keys: KeySet, seed: Optional[int] = None, **kwargs
    ) -> None:
        super().__init__(**kwargs)
        self.ctx = ctx
        self.keys = keys
        self.p = ctx.p
        self.slots = ctx.slot_count
        self.counter = OpCounter()
        self._rng = make_rng(seed)
        self._masks: Dict[Tuple[int, ...], PlainOperand] = {}

    def __getstate__(self) -> dict:
        state = self.__dict__.copy()
        state["keys"] = self.keys._replace(secret=None)
        state["_masks"] = {}
        return state

    def fork(self) -> "CipherEvaluator":
        forked = copy.copy(self)
        forked.counter = OpCounter()
        return forked

    def _operand(self, vector: Sequence[int]) -> PlainOperand:
        key = tuple(int(v) for v in _slot_vector(vector, self.slots, self.p))
        operand = self._masks.get(key)
        if operand is None:
            operand = self.ctx.plain_slots(key)
            self._masks[key] = operand
        return operand

    def _align(self, a: Ciphertext, b: Ciphertext) -> Tuple[Ciphertext, Ciphertext]:
        level = min(a.level, b.level)
        return mod_switch_to(a, level, self.ctx), mod_switch_to(b, level, self.ctx)

    def encrypt(self, values: Sequence[int]) -> Ciphertext:
        padded = _pad(values, self.slots)
        return encrypt_slots(padded.tolist(), self.keys.public, self.ctx, self._rng)

    def decrypt(self, value: Ciphertext) -> np.ndarray:
        if self.keys.secret is None:
            raise InvalidParameter("This evaluator holds no secret key.")
        return decrypt_slots(value, self.keys.secret, self.ctx)

    def add(self, a: Ciphertext, b: Ciphertext) -> Ciphertext:
        self.counter.record("adds")
        return he_add(*self._align(a, b), self.ctx)

    def sub(self, a: Ciphertext, b: Ciphertext) -> Ciphertext:
        self.counter.record("adds")
        return he_sub(*self._align(a, b), self.ctx)

    def neg(self, a: Ciphertext) -> Ciphertext:
        self.counter.record("adds")
        return he_neg(a)

    def _rescale(self, a: Ciphertext) -> Ciphertext:
        while a.level > 2:
            if a.noise_bound.bit_length() < a.basis.values[-1].bit_length():
                break
            a = mod_switch(a, self.ctx)
        return a

    def mul(self, a: Ciphertext, b: Ciphertext) -> Ciphertext:
        a, b = self._align(self._rescale(a), self._rescale(b))
        self.counter.record("nonscalar_mults")
        return he_mul(a, b, self.keys.relin, self.ctx)

    def mul_scalar(self, a: Ciphertext, c: int) -> Ciphertext:
        self.counter.record("scalar_mults")
        return he_mul_scalar(a, c, self.ctx)

    def add_scalar(self, a: Ciphertext, c: int) -> Ciphertext:
        self.counter.record("adds")
        return he_add_scalar(a, c, self.ctx)

    def mul_plain(self, a: Ciphertext, vector: Sequence[int]) -> Ciphertext:
        self.counter.record("scalar_mults")
        return he_mul_plain(a, self._operand(vector), self.ctx)

    def add_plain(self, a: Ciphertext, vector: Sequence[int]) -> Ciphertext:
        self.counter.record("adds")
        return he_add_plain(a, self._operand(vector))

    def rotate(self, a: Ciphertext, k: int) -> Ciphertext:
        if k % self.slots == 0:
            return a
        self.counter.record("rotations")
        return rotate(a, k, self.keys.galois, self.ctx)

    def constant_like(self, a: Ciphertext, c: int) -> Ciphertext:
        """Return the noiseless encryption of c in every slot at a's level."""
        return he_add_scalar(fresh_zero_like(a, self.ctx), c, self.ctx)

    def plain_like(self, a: Ciphertext, vector: Sequence[int]) -> Ciphertext:
        return he_add_plain(fresh_zero_like(a, self.ctx), self._operand(vector))

    def check_alphabet(self, a: Ciphertext, bound: int) -> None:
        """Trust the caller; encrypted digits cannot be inspected."""

    def affords_move(self, a: Ciphertext) -> bool:
        """
        Return whether a mask product and a rotation keep ``a`` decryptable.

        The mask is bounded by the worst plaintext norm and the rotation by
        one automorphism per bit of the slot count.

        """
        params = self.ctx.params
        gamma = self.ctx.gamma
        bound = noise.mul_plain(a.noise_bound, params.n * (self.p // 2), gamma)
        width = params.ksw_digit_bits
        digits = sum(digit_count(q, width) for q in a.basis.values)
        switch = noise.key_switch(self.p, params.n, gamma, digits, width)
        for _ in range(max(self.slots - 1, 1).bit_length()):
            bound = noise.automorphism(bound, gamma) + switch
        return bound <= noise.threshold(a.basis.big_q)
