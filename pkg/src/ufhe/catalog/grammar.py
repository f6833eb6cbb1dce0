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


"""Provide a parser for the parenthesized integer tuples of parameter tables."""


import logging
from typing import Tuple

import pyparsing as pp

from ..exceptions import InvalidParameter


logger = logging.getLogger(__name__)


class TupleParser:
    """Define a parser for tuples such as ``(3 34511 34510)`` or ``(6 7)``."""

    integer = pp.Word(pp.nums).setParseAction(lambda tokens: int(tokens[0]))
    integer.setName("integer")

    separator = pp.Optional(pp.Suppress(","))

    tuple_ = (
        pp.Suppress("(")
        + pp.Group(integer + pp.ZeroOrMore(separator + integer))("entries")
        + pp.Suppress(")")
    )
    tuple_.setName("tuple")

    @classmethod
    def parse(cls, text: str, size: int = 0) -> Tuple[int, ...]:
        """
        Parse a tuple of non-negative integers.

        Parameters
        ----------
        text : str
        size : int, optional
            The required number of entries; any number when zero.

        Returns
        -------
        tuple of int

        Raises
        ------
        InvalidParameter
            If the text is not a tuple of the requested size.

        """
        try:
            result = cls.tuple_.parseString(text, parseAll=True)
        except pp.ParseException as error:
            message = f"Cannot parse the tuple {text!r}: {error}."
            raise InvalidParameter(message) from error
        values = tuple(result["entries"])
        if size and len(values) != size:
            raise InvalidParameter(
                f"Expected {size} entries in {text!r}, got {len(values)}."
            )
        return values

    @classmethod
    def ring(cls, text: str) -> Tuple[int, int, int]:
        """Parse a ``(p m N)`` ring description."""
        p, m, n = cls.parse(text, 3)
        return p, m, n

    @classmethod
    def shape(cls, text: str) -> Tuple[int, int]:
        """Parse a two-entry ``(d l)`` description."""
        d, l = cls.parse(text, 2)
        return d, l
