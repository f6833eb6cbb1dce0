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


"""Define the exception hierarchy of the package."""


from typing import Optional


class UFHEError(Exception):
    """Define the base class for all errors raised by this package."""


class InvalidParameter(UFHEError, ValueError):
    """Raised when a public argument violates its documented precondition."""


# Modular arithmetic.


class NotEnoughPrimes(UFHEError):
    """Raised when the prime search interval is exhausted."""


class OrderNotDividing(UFHEError):
    """Raised when a requested root order does not divide q - 1."""


# Transforms and ring arithmetic.


class BadLength(UFHEError):
    """Raised when a vector has the wrong length for a transform."""


class RepMismatch(UFHEError):
    """Raised when operands are not in the same representation."""


class BasisMismatch(UFHEError):
    """Raised when operands live over different RNS bases."""


class MissingPlan(UFHEError):
    """Raised when no transform plan is available for a prime."""


class BasisTooSmall(UFHEError):
    """Raised when a modulus switch would leave no prime."""


# Plaintext space.


class NotCoprime(UFHEError):
    """Raised when two integers are required to be coprime but are not."""


class FactorizationMismatch(UFHEError):
    """Raised when the slot factors do not multiply to the cyclotomic polynomial."""


class WrongSlotCount(UFHEError):
    """Raised when a slot vector has the wrong number of entries."""


class OutOfRange(UFHEError):
    """Raised when an integer does not fit the requested digit capacity."""


# Scheme level errors.


class LevelMismatch(UFHEError):
    """Raised when ciphertexts at different levels are combined."""


class OutOfLevels(UFHEError):
    """Raised when a multiplication would consume the last prime."""


class MissingGaloisKey(UFHEError):
    """Raised when no key switching key exists for a Galois element."""


class NoiseBudgetExhausted(UFHEError):
    """Raised when the tracked noise bound exceeds the decryption threshold."""


class SerializationError(UFHEError):
    """Raised when a serialized payload cannot be read."""


# Comparison circuits.


class UnsupportedP(UFHEError):
    """Raised for plaintext moduli the digit circuits cannot handle."""


class AlphabetViolation(UFHEError):
    """Raised when a plaintext digit lies outside the circuit's alphabet."""


class CircuitVerificationError(UFHEError):
    """Raised when a digit circuit fails its exhaustive build-time check."""


class WorkerPanic(UFHEError):
    """Raised when a job submitted to an executor fails."""

    def __init__(self, job_index: int, message: Optional[str] = None) -> None:
        self.job_index = job_index
        super().__init__(message or f"Job {job_index} failed.")


# Slot management and pipelines.


class LengthMismatch(UFHEError):
    """Raised when slot masks of different lengths are combined."""


class AlreadyConsumed(UFHEError):
    """Raised when a comparison handle is waited on a second time."""


class ComparisonFailed(UFHEError):
    """Raised when a deferred comparison terminated with an error."""


class CapacityExceeded(UFHEError):
    """Raised when a parameter set cannot be instantiated at this scale."""
