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


"""Switch ciphertext components between keys by gadget decomposition."""


import logging
from typing import List, Tuple

import numpy as np

from .. import instrumentation
from ..exceptions import BasisMismatch
from ..ring import Rep, RnsPoly, SampleKind, sample
from ..transform import stacked_to_eval
from .keys import KswKey, SecretKey


logger = logging.getLogger(__name__)


def digit_count(q: int, digit_bits: int) -> int:
    """Return the number of base-2^w digits of residues modulo q."""
    return -(-q.bit_length() // digit_bits)


def decompose(c: RnsPoly, digit_bits: int) -> Tuple[np.ndarray, List[Tuple[int, int]]]:
    """
    Split every residue row of a coefficient-form polynomial into digits.

    Returns
    -------
    numpy.ndarray
        Object array of shape (K, n) holding digits in [0, 2^w).
    list of (int, int)
        The (prime index, digit index) of each digit row.

    """
    mask = (1 << digit_bits) - 1
    rows = []
    components = []
    for i, (row, q) in enumerate(zip(c.rows, c.basis.values)):
        for t in range(digit_count(q, digit_bits)):
            rows.append((row >> (digit_bits * t)) & mask)
            components.append((i, t))
    return np.stack(rows), components


def make_ksw_key(target: RnsPoly, secret: SecretKey, ctx, rng, label: str) -> KswKey:
    """
    Generate the components encrypting a target key under s.

    Parameters
    ----------
    target : RnsPoly
        The key to switch away from, in evaluation form over the full basis.
    secret : SecretKey
    ctx : BgvContext
    rng : numpy.random.Generator
    label : str

    Returns
    -------
    KswKey

    """
    params = ctx.params
    basis = params.basis
    w = params.ksw_digit_bits
    column = basis.column()
    s = secret.s.matrix()
    goal = target.matrix()
    components = []
    key_b = []
    key_a = []
    for i, q in enumerate(basis.values):
        for t in range(digit_count(q, w)):
            a = sample(SampleKind.UNIFORM, params.n, basis, rng, params.m, Rep.EVAL)
            error = sample(SampleKind.ERROR, params.n, basis, rng, params.m)
            e = ctx.to_rep(error, Rep.EVAL)
            a_matrix = a.matrix()
            b_matrix = (-a_matrix * s + params.p * e.matrix()) % column
            b_matrix[i] = (b_matrix[i] + pow(2, w * t, q) * goal[i]) % q
            components.append((i, t))
            key_b.append(b_matrix)
            key_a.append(a_matrix)
    logger.debug("Generated %s key with %d components.", label, len(components))
    return KswKey(
        label=label,
        components=tuple(components),
        digit_bits=w,
        b=np.stack(key_b),
        a=np.stack(key_a),
    )


def key_switch(c: RnsPoly, key: KswKey, ctx) -> Tuple[RnsPoly, RnsPoly, int]:
    """
    Re-encrypt c T under s, returning (d0, d1) with d0 + d1 s = c T + p E.

    Parameters
    ----------
    c : RnsPoly
        The component keyed under the target, in evaluation form.
    key : KswKey
    ctx : BgvContext

    Returns
    -------
    tuple
        The two evaluation-form parts and the number of digits used.

    """
    level = c.level_count
    if c.basis.values != ctx.params.basis.values[:level]:
        raise BasisMismatch("Key switching requires a prefix of the key basis.")
    with instrumentation.timed("keyswitch"):
        digits, components = decompose(ctx.to_rep(c, Rep.COEFF), key.digit_bits)
        key_b, key_a = key.restrict(level)
        if len(components) != key_b.shape[0]:
            raise BasisMismatch("The key does not match the digit decomposition.")
        stack = ctx.cache.stack(ctx.params.m, c.basis.values)
        spread = np.repeat(digits[:, np.newaxis, :], level, axis=1)
        evals = stacked_to_eval(spread, stack)
        column = c.basis.column()
        new0 = (evals * key_b % column).sum(axis=0) % column
        new1 = (evals * key_a % column).sum(axis=0) % column
    return (
        RnsPoly.from_matrix(new0, Rep.EVAL, c.basis, c.m),
        RnsPoly.from_matrix(new1, Rep.EVAL, c.basis, c.m),
        len(components),
    )
