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


"""Provide the Bluestein chirp-z transform for arbitrary odd lengths."""


import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..arith import ModulusLike, as_modulus, find_root
from ..exceptions import BadLength, InvalidParameter
from .cyclotomic import cyclotomic_poly
from .filtering import ZmStarIndex, zmstar_index
from .ntt import Direction, Pow2Tables, butterflies


logger = logging.getLogger(__name__)


def pad_length(m: int) -> int:
    """Return the smallest power of two of at least 2m - 1."""
    target = 2 * m - 1
    return 1 << (target - 1).bit_length()


@dataclass(frozen=True)
class BluesteinPlan:
    """
    Hold the precomputed tables of the Bluestein transform for one (m, q).

    With psi a primitive 2m-th root of unity and omega = psi^2, the forward
    transform evaluates at the powers of omega.

    Attributes
    ----------
    m : int
    q : int
    pad : int
        The convolution length M, a power of two of at least 2m - 1.
    psi : int
    tf1 : numpy.ndarray
        The chirp ``psi^(k^2)`` for k in [0, m).
    tf1_inverse : numpy.ndarray
        The conjugate chirp ``psi^(-k^2)``, also the unpadded D polynomial.
    tf2 : Pow2Tables
        The radix-2 twiddles of the size-M convolution.
    dpad_hat : numpy.ndarray
        The forward size-M transform of the zero-padded D polynomial.
    dpad_inverse_hat : numpy.ndarray
        The same for the inverse direction, built from ``psi^(k^2)``.
    m_inverse : int
    zmstar : ZmStarIndex
        The unit mask and its prefix sums.
    phi_m : numpy.ndarray
        The coefficients of Phi_m reduced modulo q.

    """

    m: int
    q: int
    pad: int
    psi: int
    tf1: np.ndarray
    tf1_inverse: np.ndarray
    tf2: Pow2Tables
    dpad_hat: np.ndarray
    dpad_inverse_hat: np.ndarray
    m_inverse: int
    zmstar: ZmStarIndex
    phi_m: np.ndarray

    @property
    def n(self) -> int:
        """Return the ring degree phi(m)."""
        return self.zmstar.n

    @property
    def in_zmstar(self) -> np.ndarray:
        """Return the boolean unit mask."""
        return self.zmstar.in_zmstar

    @property
    def zmstar_prefix(self) -> np.ndarray:
        """Return the exclusive prefix sums of the unit mask."""
        return self.zmstar.prefix


def _chirp(base: int, m: int, q: int) -> np.ndarray:
    # base^(k^2) with (k+1)^2 = k^2 + 2k + 1 to avoid large exponents.
    table = np.empty(m, dtype=object)
    value, step, base_squared = 1, base, base * base % q
    for k in range(m):
        table[k] = value
        value = value * step % q
        step = step * base_squared % q
    return table


def build_bluestein_plan(m: int, mod: ModulusLike) -> BluesteinPlan:
    """
    Construct the Bluestein tables for the ring order m modulo q.

    Raises
    ------
    OrderNotDividing
        If q - 1 is not divisible by both 2m and the pad length.

    """
    mod = as_modulus(mod)
    if m < 3 or m % 2 == 0:
        raise InvalidParameter(f"Ring order must be odd and at least 3, got {m}.")
    q = mod.q
    pad = pad_length(m)
    psi = find_root(2 * m, mod)
    tf2 = Pow2Tables.build(pad, mod)
    tf1 = _chirp(psi, m, q)
    tf1_inverse = _chirp(mod.inverse(psi), m, q)
    q_column = np.array([[q]], dtype=object)
    dpad = np.zeros(pad, dtype=object)
    dpad[:m] = tf1_inverse
    dpad_hat = butterflies(dpad[np.newaxis, :], q_column, tf2.powers[np.newaxis, :])[0]
    dpad[:m] = tf1
    dpad_inverse_hat = butterflies(
        dpad[np.newaxis, :], q_column, tf2.powers[np.newaxis, :]
    )[0]
    plan = BluesteinPlan(
        m=m,
        q=q,
        pad=pad,
        psi=psi,
        tf1=tf1,
        tf1_inverse=tf1_inverse,
        tf2=tf2,
        dpad_hat=dpad_hat,
        dpad_inverse_hat=dpad_inverse_hat,
        m_inverse=mod.inverse(m % q),
        zmstar=zmstar_index(m),
        phi_m=cyclotomic_poly(m, mod),
    )
    for table in (tf1, tf1_inverse, dpad_hat, dpad_inverse_hat):
        table.setflags(write=False)
    return plan


@dataclass(frozen=True)
class PlanStack:
    """
    Stack the tables of several plans sharing m for batched transforms.

    Every table gains a leading prime axis so that arrays of shape
    (..., P, width) transform all rows at once.

    """

    m: int
    pad: int
    primes: tuple
    q: np.ndarray
    tf1: np.ndarray
    tf1_inverse: np.ndarray
    powers: np.ndarray
    inverse_powers: np.ndarray
    pad_inverse: np.ndarray
    dpad_hat: np.ndarray
    dpad_inverse_hat: np.ndarray
    m_inverse: np.ndarray
    zmstar: ZmStarIndex

    @classmethod
    def from_plans(cls, plans: Sequence[BluesteinPlan]) -> "PlanStack":
        """Stack plans for distinct primes of the same ring order."""
        if not plans:
            raise InvalidParameter("Cannot stack an empty list of plans.")
        m = plans[0].m
        if any(plan.m != m for plan in plans):
            raise InvalidParameter("All stacked plans must share the ring order.")

        def column(values):
            return np.array(values, dtype=object).reshape(-1, 1)

        return cls(
            m=m,
            pad=plans[0].pad,
            primes=tuple(plan.q for plan in plans),
            q=column([plan.q for plan in plans]),
            tf1=np.stack([plan.tf1 for plan in plans]),
            tf1_inverse=np.stack([plan.tf1_inverse for plan in plans]),
            powers=np.stack([plan.tf2.powers for plan in plans]),
            inverse_powers=np.stack([plan.tf2.inverse_powers for plan in plans]),
            pad_inverse=column([plan.tf2.size_inverse for plan in plans]),
            dpad_hat=np.stack([plan.dpad_hat for plan in plans]),
            dpad_inverse_hat=np.stack([plan.dpad_inverse_hat for plan in plans]),
            m_inverse=column([plan.m_inverse for plan in plans]),
            zmstar=plans[0].zmstar,
        )

    def dft(self, values: np.ndarray, direction: Direction) -> np.ndarray:
        """
        Compute the length-m DFT of every row through a size-M convolution.

        The pipeline multiplies by the chirp, zero-pads to M, convolves with
        the D polynomial through forward and inverse size-M transforms,
        folds the coefficients beyond m back with the chirp sign (which is
        -1 for odd m) and multiplies by the chirp again.

        """
        m, pad = self.m, self.pad
        if values.shape[-1] != m:
            raise BadLength(f"Expected {m} coefficients, got {values.shape[-1]}.")
        if values.shape[-2] != len(self.primes):
            raise BadLength("Expected one row per stacked prime.")
        q = self.q
        if Direction(direction) is Direction.FORWARD:
            chirp, kernel = self.tf1, self.dpad_hat
        else:
            chirp, kernel = self.tf1_inverse, self.dpad_inverse_hat
        padded = np.zeros(values.shape[:-1] + (pad,), dtype=object)
        padded[..., :m] = values * chirp % q
        spectrum = butterflies(padded, q, self.powers) * kernel % q
        convolved = butterflies(spectrum, q, self.inverse_powers) * self.pad_inverse % q
        folded = (convolved[..., :m] - convolved[..., m : 2 * m]) % q
        result = folded * chirp % q
        if Direction(direction) is Direction.INVERSE:
            result = result * self.m_inverse % q
        return result


def bluestein_dft(
    coeffs: Sequence[int], plan: BluesteinPlan, direction: Direction
) -> np.ndarray:
    """
    Compute the length-m DFT of a residue vector with one plan.

    Parameters
    ----------
    coeffs : sequence of int
        A vector of length m.
    plan : BluesteinPlan
    direction : Direction
        The forward transform returns f(omega^j) for j in [0, m); the inverse
        includes the 1/m scaling.

    Returns
    -------
    numpy.ndarray

    """
    vector = np.array([int(c) for c in coeffs], dtype=object)
    if len(vector) != plan.m:
        raise BadLength(f"Expected {plan.m} coefficients, got {len(vector)}.")
    stack = PlanStack.from_plans([plan])
    return stack.dft(vector[np.newaxis, :], direction)[0]
