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


"""Define BGV parameter sets and their advisory security estimate."""


import logging
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Optional

from sympy import totient
from sympy.ntheory import n_order

from ..arith import RnsBasis, gen_ntt_primes
from ..exceptions import InvalidParameter, NotCoprime
from ..transform import expansion_factor, pad_length


logger = logging.getLogger(__name__)


DEFAULT_PRIME_BITS = 59
DEFAULT_PRIME_COUNT = 8
DEFAULT_KSW_DIGIT_BITS = 20

#: Largest log2 Q for roughly 128-bit security with ternary secrets, per n.
_SECURITY_BANDS = (
    (1024, 27),
    (2048, 54),
    (4096, 109),
    (8192, 218),
    (16384, 438),
    (32768, 881),
    (65536, 1770),
)


class CircuitKind(str, Enum):
    """Define the two digit comparison circuits."""

    BIVARIATE = "bivariate"
    UNIVARIATE = "univariate"


def security_estimate(n: int, log_q: int) -> int:
    """
    Return a rough security level in bits from (n, log Q) bands.

    The admissible log Q at 128 bits is interpolated linearly between the
    bands and the level scales inversely with log Q. The figure is advisory.

    """
    if log_q <= 0:
        raise InvalidParameter("The modulus must have a positive bit size.")
    previous_n, previous_q = 0, 0
    admissible = None
    for band_n, band_q in _SECURITY_BANDS:
        if n <= band_n:
            admissible = previous_q + (band_q - previous_q) * (n - previous_n) / (
                band_n - previous_n
            )
            break
        previous_n, previous_q = band_n, band_q
    if admissible is None:
        admissible = previous_q * n / previous_n
    return int(128 * admissible / log_q)


@dataclass(frozen=True)
class Params:
    """
    Describe one BGV instance.

    Attributes
    ----------
    p : int
    m : int
    n : int
    d : int
    l : int
    basis : RnsBasis
        The ciphertext primes q_0, ..., q_L.
    circuit : CircuitKind
    ksw_digit_bits : int
        The gadget digit size w of key switching.
    name : str
    security_estimate : int
        Advisory only.

    """

    p: int
    m: int
    n: int
    d: int
    l: int
    basis: RnsBasis
    circuit: CircuitKind = CircuitKind.BIVARIATE
    ksw_digit_bits: int = DEFAULT_KSW_DIGIT_BITS
    name: str = ""
    security_estimate: int = 0

    @property
    def levels(self) -> int:
        """Return L, one less than the number of primes."""
        return self.basis.level_count - 1

    @property
    def pad(self) -> int:
        return pad_length(self.m)

    @property
    def gamma(self) -> int:
        return expansion_factor(self.m)

    @property
    def log_q(self) -> int:
        return self.basis.big_q.bit_length()


def make_params(
    p: int,
    m: int,
    prime_count: int = DEFAULT_PRIME_COUNT,
    prime_bits: int = DEFAULT_PRIME_BITS,
    circuit: CircuitKind = CircuitKind.BIVARIATE,
    ksw_digit_bits: int = DEFAULT_KSW_DIGIT_BITS,
    name: Optional[str] = None,
) -> Params:
    """
    Derive a parameter set, generating NTT-friendly primes for the ring.

    Parameters
    ----------
    p : int
        The plaintext prime, coprime to m.
    m : int
        The odd ring order.
    prime_count : int
        The number of ciphertext primes, L + 1.
    prime_bits : int
    circuit : CircuitKind
    ksw_digit_bits : int
    name : str, optional

    Returns
    -------
    Params

    Raises
    ------
    NotCoprime
        If p divides m.
    NotEnoughPrimes
        If too few primes of the requested size exist.

    """
    if gcd(p, m) != 1:
        raise NotCoprime(f"The plaintext modulus {p} must be coprime to m={m}.")
    if prime_count < 1:
        raise InvalidParameter("At least one ciphertext prime is required.")
    if not 1 <= ksw_digit_bits <= prime_bits:
        raise InvalidParameter(f"Key switching digits of {ksw_digit_bits} bits.")
    n = int(totient(m))
    d = int(n_order(p, m))
    basis = gen_ntt_primes(m, pad_length(m), prime_bits, prime_count)
    logger.info("Generated %d primes of %d bits for m=%d.", prime_count, prime_bits, m)
    return Params(
        p=p,
        m=m,
        n=n,
        d=d,
        l=n // d,
        basis=basis,
        circuit=CircuitKind(circuit),
        ksw_digit_bits=ksw_digit_bits,
        name=name or f"p{p}-m{m}",
        security_estimate=security_estimate(n, basis.big_q.bit_length()),
    )
