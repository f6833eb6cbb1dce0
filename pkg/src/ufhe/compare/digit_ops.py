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


"""Compare one digit per slot for equality and order."""


import logging

from ..bgv import CircuitKind
from .circuits import DigitCircuit
from .counter import Phase
from .evaluators import Evaluator, Value
from .polyeval import (
    add_partial,
    linear_combination,
    materialize,
    mul_partial,
    poly_eval_ps,
    power_ladder,
)


logger = logging.getLogger(__name__)


def fermat_power(x: Value, exponent: int, ev: Evaluator) -> Value:
    """Raise x to a positive power by left-to-right square-and-multiply."""
    acc = x
    for bit in bin(exponent)[3:]:
        acc = ev.mul(acc, acc)
        if bit == "1":
            acc = ev.mul(acc, x)
    return acc


def eq_digit(x: Value, y: Value, ev: Evaluator) -> Value:
    """
    Return 1 - (x - y)^(p - 1), which is one exactly where the digits agree.

    The power costs floor(log2(p - 1)) + popcount(p - 1) - 1 products.

    """
    with ev.counter.phase(Phase.LT_EQ):
        power = fermat_power(ev.sub(x, y), ev.p - 1, ev)
        return ev.add_scalar(ev.neg(power), 1)


def _lt_bivariate(x: Value, y: Value, circuit: DigitCircuit, ev: Evaluator) -> Value:
    table = circuit.lt_bivar_coeffs
    rows = [i for i in range(table.shape[0]) if table[i].any()]
    top_x = max(rows)
    top_y = max(int(j) for i in rows for j in table[i].nonzero()[0])
    with ev.counter.phase(Phase.EXTRACTION):
        x_powers = power_ladder(x, max(top_x, 1), ev)
        y_powers = power_ladder(y, max(top_y, 1), ev)
    with ev.counter.phase(Phase.LT_EQ):
        result = 0
        for i in rows:
            g = linear_combination(
                [(int(c), y_powers[j - 1]) for j, c in enumerate(table[i]) if j],
                int(table[i, 0]),
                ev,
            )
            if i:
                g = mul_partial(g, x_powers[i - 1], ev)
            result = add_partial(result, g, ev)
        return materialize(result, x, ev)


def lt_digit(x: Value, y: Value, circuit: DigitCircuit, ev: Evaluator) -> Value:
    """
    Return the slot-wise indicator [x < y].

    The bivariate circuit evaluates the interpolated table over the power
    ladders of both digits, charging the ladders to the extraction phase.
    The univariate circuit evaluates the sign polynomial at x - y, which is
    only correct on the half alphabet [0, (p - 1) / 2].

    Raises
    ------
    AlphabetViolation
        On the plaintext backend, for digits above the circuit's bound.

    """
    ev.check_alphabet(x, circuit.digit_bound)
    ev.check_alphabet(y, circuit.digit_bound)
    if circuit.kind is CircuitKind.BIVARIATE:
        return _lt_bivariate(x, y, circuit, ev)
    with ev.counter.phase(Phase.LT_EQ):
        return poly_eval_ps(circuit.lt_univar_coeffs, ev.sub(x, y), ev)
