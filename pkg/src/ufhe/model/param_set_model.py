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


"""Provide data validation for parameter set table rows."""


from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, validator
from sympy import isprime

from ..bgv import CircuitKind


class ParamSource(str, Enum):
    """Define where a parameter set comes from."""

    PUBLISHED = "published"
    DERIVED = "derived"


class ParamSetModel(BaseModel):
    """
    Define one named BGV parameter set.

    For derived sets ``d`` is the slot degree and ``l`` the slot count. For
    published sets they are the digit packing and depth columns as given,
    and ``ints`` the published integer capacity.

    """

    name: str = Field(..., regex=r"^[A-Za-z0-9_.-]+$")
    p: int = Field(..., gt=2)
    m: int = Field(..., gt=2)
    n: int = Field(..., gt=0)
    circuit: CircuitKind
    d: int = Field(..., gt=0)
    l: int = Field(..., gt=0)
    log_q: Optional[int] = None
    security: Optional[int] = None
    ints: Optional[int] = None
    prime_bits: int = Field(59, ge=20, le=62)
    levels: int = Field(8, ge=1)
    source: ParamSource = ParamSource.DERIVED

    @validator("p")
    def plaintext_prime(cls, value: int) -> int:
        if not isprime(value):
            raise ValueError(f"{value} is not a prime.")
        return value

    @validator("m")
    def odd_order(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError(f"The ring order {value} must be odd.")
        return value
