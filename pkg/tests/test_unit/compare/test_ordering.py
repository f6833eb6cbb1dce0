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


"""Test minimum, sorting and packing of integers on the plaintext backend."""


import numpy as np
import pytest

from ufhe.bgv import CircuitKind
from ufhe.compare import (
    Phase,
    PlainEvaluator,
    build_digit_circuit,
    compare_ints,
    min_matrix,
    min_tournament,
    pack_items,
    sort_rank,
    unpack_items,
)
from ufhe.exceptions import InvalidParameter
from ufhe.plainspace import Alphabet, DigitLayout, capacity


def _packed(values, layout: DigitLayout):
    ev = PlainEvaluator(layout.p, layout.slots)
    return ev, ev.encrypt(layout.encode(values))


@pytest.mark.parametrize(
    "values",
    [[4, 2, 2, 9], [8], [0, 26], [26, 25, 24, 23], [7, 7, 7, 7], [13, 5, 21]],
)
def test_min_matrix(values) -> None:
    """Expect the smallest integer to end up alone in block 0."""
    layout = DigitLayout(12, 3, 3)
    circuit = build_digit_circuit(3, CircuitKind.BIVARIATE)
    ev, packed = _packed(values, layout)
    result = ev.decrypt(min_matrix(packed, len(values), layout, circuit, ev))
    assert layout.decode(result, 1) == [min(values)]
    assert not result[layout.block :].any()


def test_min_matrix_univariate() -> None:
    layout = DigitLayout(12, 4, 5, Alphabet.HALF)
    circuit = build_digit_circuit(5, CircuitKind.UNIVARIATE)
    ev, packed = _packed([80, 17, 43], layout)
    result = ev.decrypt(min_matrix(packed, 3, layout, circuit, ev))
    assert layout.decode(result, 1) == [17]


def test_min_tournament() -> None:
    """Expect the slot-wise minimum of several values, padding included."""
    layout = DigitLayout(12, 3, 3)
    circuit = build_digit_circuit(3, CircuitKind.BIVARIATE)
    ev = PlainEvaluator(3, 12)
    columns = [[5, 0, 26, 7], [3, 9, 26, 1], [4, 0, 2, 8]]
    items = [ev.encrypt(layout.encode(column)) for column in columns]
    result = min_tournament(items, layout, circuit, ev)
    assert layout.decode(ev.decrypt(result), 4) == [3, 0, 2, 1]


def test_min_tournament_requires_items() -> None:
    layout = DigitLayout(12, 3, 3)
    circuit = build_digit_circuit(3, CircuitKind.BIVARIATE)
    with pytest.raises(InvalidParameter):
        min_tournament([], layout, circuit, PlainEvaluator(3, 12))


@pytest.mark.parametrize(
    "values", [[3, 1, 2], [1, 2, 3], [2, 2, 0], [5, 5, 5], [0, 8, 4]]
)
def test_sort_rank_small(values) -> None:
    """Expect ascending order, duplicates kept, with ranks in F_3."""
    layout = DigitLayout(6, 2, 3)
    circuit = build_digit_circuit(3, CircuitKind.BIVARIATE)
    ev, packed = _packed(values, layout)
    result = sort_rank(packed, len(values), layout, circuit, ev)
    assert layout.decode(ev.decrypt(result), len(values)) == sorted(values)


@pytest.mark.parametrize("kind", list(CircuitKind))
def test_sort_rank_random(kind: CircuitKind) -> None:
    """Expect random items in partially filled blocks to sort."""
    circuit = build_digit_circuit(7, kind)
    layout = DigitLayout(20, 3, 7, circuit.alphabet)
    rng = np.random.default_rng(11)
    values = rng.integers(0, capacity(7, 3, circuit.alphabet), size=5).tolist()
    ev, packed = _packed(values, layout)
    result = sort_rank(packed, 5, layout, circuit, ev)
    decoded = ev.decrypt(result)
    assert layout.decode(decoded, 5) == sorted(values)
    assert not decoded[5 * layout.block :].any()


def _comparison_products(layout: DigitLayout, circuit) -> int:
    ev, packed = _packed([0], layout)
    compare_ints(packed, packed, circuit, ev, layout.digits, layout.stride)
    return ev.counter.nonscalar(Phase.LT_EQ)


def test_sort_rank_shares_comparisons_across_regions() -> None:
    """Expect sixteen bytes to sort with three comparisons of two-digit words."""
    circuit = build_digit_circuit(17, CircuitKind.BIVARIATE)
    layout = DigitLayout(102, 2, 17)
    rng = np.random.default_rng(5)
    values = rng.integers(0, 256, size=16).tolist()
    values[3] = values[11]
    ev, packed = _packed(values, layout)
    decoded = ev.decrypt(sort_rank(packed, 16, layout, circuit, ev))
    assert layout.decode(decoded, 16) == sorted(values)
    assert not decoded[16 * layout.block :].any()
    products = _comparison_products(layout, circuit)
    assert ev.counter.nonscalar(Phase.LT_EQ) == 3 * products


@pytest.mark.parametrize("kind", list(CircuitKind))
def test_sort_rank_odd_count_in_regions(kind: CircuitKind) -> None:
    circuit = build_digit_circuit(7, kind)
    layout = DigitLayout(60, 2, 7, circuit.alphabet)
    top = capacity(7, 2, circuit.alphabet)
    values = [top - 1, 0, 3, top - 1, 5, 0, 1]
    ev, packed = _packed(values, layout)
    result = sort_rank(packed, 7, layout, circuit, ev)
    assert layout.decode(ev.decrypt(result), 7) == sorted(values)
    assert ev.counter.nonscalar(Phase.LT_EQ) == _comparison_products(
        layout, circuit
    )


@pytest.mark.parametrize("count", [2, 5, 16])
def test_min_matrix_compares_half_the_shifts(count: int) -> None:
    """Expect the minimum from count // 2 shifts spread over the free slots."""
    circuit = build_digit_circuit(17, CircuitKind.BIVARIATE)
    layout = DigitLayout(102, 2, 17)
    values = [(37 * j + 200) % 256 for j in range(count)]
    ev, packed = _packed(values, layout)
    result = ev.decrypt(min_matrix(packed, count, layout, circuit, ev))
    assert layout.decode(result, 1) == [min(values)]
    assert not result[layout.block :].any()
    regions = min(102 // (count * layout.block), count // 2)
    batches = -(-(count // 2) // regions)
    products = _comparison_products(layout, circuit)
    assert ev.counter.nonscalar(Phase.LT_EQ) == batches * products


def test_sort_rank_rejects_too_many_items() -> None:
    layout = DigitLayout(12, 3, 3)
    circuit = build_digit_circuit(3, CircuitKind.BIVARIATE)
    ev, packed = _packed([1, 2, 3, 4], layout)
    with pytest.raises(InvalidParameter):
        sort_rank(packed, 4, layout, circuit, ev)


def test_pack_and_unpack() -> None:
    """Expect block-0 integers to be gathered and split again."""
    layout = DigitLayout(12, 3, 3)
    ev = PlainEvaluator(3, 12)
    values = [17, 0, 26, 4]
    # Block 1 carries noise that packing must clear.
    items = [ev.encrypt(layout.encode([v, 13])) for v in values]
    packed = pack_items(items, layout, ev)
    assert layout.decode(ev.decrypt(packed), 4) == values
    for value, item in zip(values, unpack_items(packed, 4, layout, ev)):
        slots = ev.decrypt(item)
        assert layout.decode(slots, 1) == [value]
        assert not slots[layout.block :].any()


def test_pack_rejects_overflow() -> None:
    layout = DigitLayout(12, 3, 3)
    ev = PlainEvaluator(3, 12)
    items = [ev.encrypt(layout.encode([1]))] * 5
    with pytest.raises(InvalidParameter):
        pack_items(items, layout, ev)
