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


"""Implement key generation, encryption and the homomorphic operations."""


import logging
from typing import Dict, Sequence, Union

import numpy as np

from ..exceptions import (
    InvalidParameter,
    LevelMismatch,
    MissingGaloisKey,
    NoiseBudgetExhausted,
    OutOfLevels,
)
from ..helpers import make_rng
from ..ring import (
    ElementwiseOp,
    Rep,
    RnsPoly,
    SampleKind,
    automorphism,
    elementwise,
    mod_switch_drop,
    negate,
    sample,
    scale,
)
from . import noise
from .ciphertext import Ciphertext, PlainOperand
from .context import BgvContext
from .keys import KeySet, KswKey, PublicKey, SecretKey
from .keyswitch import key_switch, make_ksw_key


logger = logging.getLogger(__name__)


Seed = Union[int, np.random.Generator, None]


def _add(a: RnsPoly, b: RnsPoly) -> RnsPoly:
    return elementwise(ElementwiseOp.ADD, a, b)


def _sub(a: RnsPoly, b: RnsPoly) -> RnsPoly:
    return elementwise(ElementwiseOp.SUB, a, b)


def _mul(a: RnsPoly, b: RnsPoly) -> RnsPoly:
    return elementwise(ElementwiseOp.MUL, a, b)


def galois_elements(ctx: BgvContext) -> Sequence[int]:
    """Return g^(2^j) modulo m for the rotation offsets 1, 2, 4, ... below l."""
    slots = ctx.slots
    if slots.rot_generator is None or slots.l < 2:
        return ()
    elements = []
    offset = 1
    while offset < slots.l:
        elements.append(slots.rotation_element(offset))
        offset *= 2
    return tuple(elements)


def keygen(ctx: BgvContext, seed: Seed = None) -> KeySet:
    """
    Generate the secret, public, relinearization and Galois keys.

    Galois keys cover the rotation offsets that are powers of two so that any
    rotation composes from at most log2(l) of them. Identical seeds yield
    identical keys.

    """
    rng = make_rng(seed)
    params = ctx.params
    basis = params.basis
    logger.info("Generating keys for %s.", params.name)
    secret_coeffs = sample(SampleKind.TERNARY, params.n, basis, rng, params.m)
    s = ctx.to_rep(secret_coeffs, Rep.EVAL)
    secret = SecretKey(s=s, coeffs=secret_coeffs.to_integers())
    a = sample(SampleKind.UNIFORM, params.n, basis, rng, params.m, Rep.EVAL)
    e = ctx.to_rep(sample(SampleKind.ERROR, params.n, basis, rng, params.m), Rep.EVAL)
    b = _add(negate(_mul(a, s)), scale(e, params.p))
    public = PublicKey(b=b, a=a)
    relin = make_ksw_key(_mul(s, s), secret, ctx, rng, "relin")
    galois: Dict[int, KswKey] = {}
    for element in galois_elements(ctx):
        galois[element] = make_ksw_key(
            automorphism(s, element), secret, ctx, rng, f"galois:{element}"
        )
    return KeySet(secret, public, relin, galois)


def encrypt(
    pt: Sequence[int], pk: PublicKey, ctx: BgvContext, seed: Seed = None
) -> Ciphertext:
    """
    Encrypt plaintext coefficients modulo p at the top level.

    Parameters
    ----------
    pt : sequence of int
        At most n coefficients modulo p.
    pk : PublicKey
    ctx : BgvContext
    seed : int or numpy.random.Generator, optional

    Returns
    -------
    Ciphertext

    """
    params = ctx.params
    if len(pt) > params.n:
        raise InvalidParameter(f"Plaintext degree must be below {params.n}.")
    coeffs = list(pt) + [0] * (params.n - len(pt))
    rng = make_rng(seed)
    basis = params.basis
    u = ctx.to_rep(sample(SampleKind.TERNARY, params.n, basis, rng, params.m), Rep.EVAL)
    e0 = ctx.to_rep(sample(SampleKind.ERROR, params.n, basis, rng, params.m), Rep.EVAL)
    e1 = ctx.to_rep(sample(SampleKind.ERROR, params.n, basis, rng, params.m), Rep.EVAL)
    message = ctx.to_rep(ctx.lift(coeffs), Rep.EVAL)
    c0 = _add(_add(_mul(pk.b, u), scale(e0, params.p)), message)
    c1 = _add(_mul(pk.a, u), scale(e1, params.p))
    return Ciphertext((c0, c1), noise.fresh(params.p, params.n, ctx.gamma))


def decrypt(
    ct: Ciphertext, sk: SecretKey, ctx: BgvContext, check: bool = True
) -> np.ndarray:
    """
    Decrypt to plaintext coefficients modulo p.

    Parameters
    ----------
    ct : Ciphertext
    sk : SecretKey
    ctx : BgvContext
    check : bool
        Whether to refuse ciphertexts whose tracked bound exceeds the
        threshold. Tests disable the check to exercise the tracker.

    Raises
    ------
    NoiseBudgetExhausted

    """
    if check and ct.noise_bound > noise.threshold(ct.basis.big_q):
        raise NoiseBudgetExhausted(
            f"Noise bound of {ct.noise_bound.bit_length()} bits exceeds the "
            f"threshold of level {ct.level}."
        )
    s = sk.at(ct.level)
    total = ct.parts[0]
    power = s
    for part in ct.parts[1:]:
        total = _add(total, _mul(part, power))
        power = _mul(power, s)
    values = ctx.to_rep(total, Rep.COEFF).to_integers()
    return np.array([int(v) % ctx.p for v in values], dtype=np.int64)


def _check_levels(a: Ciphertext, b: Ciphertext) -> None:
    if a.level != b.level:
        raise LevelMismatch(f"Ciphertexts at levels {a.level} and {b.level}.")


def _pad_parts(ct: Ciphertext, size: int, ctx: BgvContext):
    zero = RnsPoly.zero(ctx.n, ct.basis, ctx.params.m, Rep.EVAL)
    return ct.parts + (zero,) * (size - ct.size)


def he_add(a: Ciphertext, b: Ciphertext, ctx: BgvContext) -> Ciphertext:
    """Add two ciphertexts at the same level."""
    _check_levels(a, b)
    size = max(a.size, b.size)
    parts = tuple(
        _add(x, y) for x, y in zip(_pad_parts(a, size, ctx), _pad_parts(b, size, ctx))
    )
    return Ciphertext(parts, noise.add(a.noise_bound, b.noise_bound))


def he_sub(a: Ciphertext, b: Ciphertext, ctx: BgvContext) -> Ciphertext:
    """Subtract two ciphertexts at the same level."""
    _check_levels(a, b)
    size = max(a.size, b.size)
    parts = tuple(
        _sub(x, y) for x, y in zip(_pad_parts(a, size, ctx), _pad_parts(b, size, ctx))
    )
    return Ciphertext(parts, noise.add(a.noise_bound, b.noise_bound))


def he_neg(a: Ciphertext) -> Ciphertext:
    return Ciphertext(tuple(negate(part) for part in a.parts), a.noise_bound)


def he_add_plain(a: Ciphertext, pt: PlainOperand) -> Ciphertext:
    """Add a plaintext operand to the first part."""
    c0 = _add(a.parts[0], pt.at(a.level))
    return Ciphertext(
        (c0,) + a.parts[1:], noise.add_plain(a.noise_bound, pt.max_norm)
    )


def he_mul_plain(a: Ciphertext, pt: PlainOperand, ctx: BgvContext) -> Ciphertext:
    """Multiply every part by a plaintext operand."""
    operand = pt.at(a.level)
    return Ciphertext(
        tuple(_mul(part, operand) for part in a.parts),
        noise.mul_plain(a.noise_bound, pt.l1_norm, ctx.gamma),
    )


def _centered_scalar(value: int, p: int) -> int:
    value %= p
    return value - p if value > p // 2 else value


def he_mul_scalar(a: Ciphertext, value: int, ctx: BgvContext) -> Ciphertext:
    """Multiply by a constant of F_p."""
    c = _centered_scalar(value, ctx.p)
    return Ciphertext(
        tuple(scale(part, c) for part in a.parts), noise.mul_scalar(a.noise_bound, c)
    )


def he_add_scalar(a: Ciphertext, value: int, ctx: BgvContext) -> Ciphertext:
    """Add a constant of F_p to every slot."""
    c = _centered_scalar(value, ctx.p)
    constant = RnsPoly.constant(c, ctx.n, a.basis, ctx.params.m, Rep.EVAL)
    return Ciphertext(
        (_add(a.parts[0], constant),) + a.parts[1:],
        noise.add_plain(a.noise_bound, abs(c)),
    )


def tensor(a: Ciphertext, b: Ciphertext, ctx: BgvContext) -> Ciphertext:
    """Multiply two 2-part ciphertexts into a 3-part ciphertext."""
    _check_levels(a, b)
    if a.size != 2 or b.size != 2:
        raise InvalidParameter("Only 2-part ciphertexts can be multiplied.")
    a0, a1 = a.parts
    b0, b1 = b.parts
    parts = (_mul(a0, b0), _add(_mul(a0, b1), _mul(a1, b0)), _mul(a1, b1))
    return Ciphertext(parts, noise.mul(a.noise_bound, b.noise_bound, ctx.n, ctx.gamma))


def relinearize(a: Ciphertext, relin_key: KswKey, ctx: BgvContext) -> Ciphertext:
    """Switch the s^2 component of a 3-part ciphertext back to s."""
    if a.size == 2:
        return a
    c0, c1, c2 = a.parts
    new0, new1, digits = key_switch(c2, relin_key, ctx)
    params = ctx.params
    added = noise.key_switch(
        params.p, params.n, ctx.gamma, digits, params.ksw_digit_bits
    )
    return Ciphertext((_add(c0, new0), _add(c1, new1)), a.noise_bound + added)


def mod_switch(a: Ciphertext, ctx: BgvContext) -> Ciphertext:
    """
    Drop the last prime, preserving the plaintext.

    Every part is first scaled by the centered residue of q_drop modulo p,
    which cancels the factor q_drop^-1 introduced by the division.

    """
    p = ctx.p
    q_drop = a.basis.values[-1]
    factor = _centered_scalar(q_drop, p)
    parts = []
    for part in a.parts:
        coeff = ctx.to_rep(part, Rep.COEFF)
        switched = mod_switch_drop(scale(coeff, factor), p)
        parts.append(ctx.to_rep(switched, Rep.EVAL))
    bound = noise.mod_switch(a.noise_bound, factor, q_drop, p, ctx.n, ctx.gamma)
    return Ciphertext(tuple(parts), bound, a.usage)


def mod_switch_to(a: Ciphertext, level: int, ctx: BgvContext) -> Ciphertext:
    """Switch down until ``level`` primes remain."""
    if level > a.level:
        raise LevelMismatch(f"Cannot switch up from level {a.level} to {level}.")
    while a.level > level:
        a = mod_switch(a, ctx)
    return a


def he_mul(
    a: Ciphertext, b: Ciphertext, relin_key: KswKey, ctx: BgvContext
) -> Ciphertext:
    """
    Multiply, relinearize and drop one prime.

    Raises
    ------
    LevelMismatch
        If the operands are at different levels.
    OutOfLevels
        If a single prime is left.

    """
    _check_levels(a, b)
    if a.level < 2:
        raise OutOfLevels("No prime is left to absorb another multiplication.")
    return mod_switch(relinearize(tensor(a, b, ctx), relin_key, ctx), ctx)


def apply_galois(
    a: Ciphertext, element: int, key: KswKey, ctx: BgvContext
) -> Ciphertext:
    """Apply x -> x^t to both parts and switch the key back to s."""
    if a.size != 2:
        raise InvalidParameter("Relinearize before applying automorphisms.")
    c0, c1 = (automorphism(part, element) for part in a.parts)
    new0, new1, digits = key_switch(c1, key, ctx)
    params = ctx.params
    bound = noise.automorphism(a.noise_bound, ctx.gamma) + noise.key_switch(
        params.p, params.n, ctx.gamma, digits, params.ksw_digit_bits
    )
    return Ciphertext((_add(c0, new0), new1), bound)


def rotate(
    a: Ciphertext, k: int, galois_keys: Dict[int, KswKey], ctx: BgvContext
) -> Ciphertext:
    """
    Rotate the slots left by k, so that slot i receives slot i + k.

    The offset is taken modulo l and composed from the power-of-two keys.

    Raises
    ------
    MissingGaloisKey

    """
    slots = ctx.slots
    k %= slots.l
    bit = 0
    while k:
        if k & 1:
            element = slots.rotation_element(1 << bit)
            key = galois_keys.get(element)
            if key is None:
                raise MissingGaloisKey(f"No key for the Galois element {element}.")
            a = apply_galois(a, element, key, ctx)
        k >>= 1
        bit += 1
    return a


def noise_budget(ct: Ciphertext) -> float:
    """Return log2(threshold / noise bound) in bits, clamped at zero."""
    return ct.budget


def encrypt_slots(
    values: Sequence[int], pk: PublicKey, ctx: BgvContext, seed: Seed = None
) -> Ciphertext:
    """Encode one F_p value per slot and encrypt."""
    return encrypt(ctx.encode(values).tolist(), pk, ctx, seed)


def decrypt_slots(
    ct: Ciphertext, sk: SecretKey, ctx: BgvContext, check: bool = True
) -> np.ndarray:
    """Decrypt and decode the F_p value of every slot."""
    return ctx.decode(decrypt(ct, sk, ctx, check))


def fresh_zero_like(ct: Ciphertext, ctx: BgvContext) -> Ciphertext:
    """Return the trivial, noiseless encryption of zero at the same level."""
    zero = RnsPoly.zero(ctx.n, ct.basis, ctx.params.m, Rep.EVAL)
    return Ciphertext((zero, zero), 0)
