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


"""Test whole-integer comparison and the job executors."""


import itertools
import statistics
import time

import numpy as np
import pytest

from ufhe.bgv import CircuitKind
from ufhe.compare import (
    Job,
    OpCounter,
    Phase,
    PlainEvaluator,
    PooledExecutor,
    PoolKind,
    SequentialExecutor,
    build_digit_circuit,
    compare_batch,
    compare_ints,
    digit_columns,
    lex_combine,
    lex_fold,
    make_executor,
    run_job,
    schedule_digit_jobs,
)
from ufhe.exceptions import InvalidParameter, WorkerPanic
from ufhe.plainspace import DigitLayout, capacity, digits_needed


def _fail(ev, message: str) -> None:
    raise ValueError(message)


def _square(ev, value):
    return ev.mul(value, value)


def _pause(ev, seconds: float) -> float:
    time.sleep(seconds)
    return seconds


def _compare(p: int, kind: CircuitKind, pairs, bits: int, stride: int = 1):
    circuit = build_digit_circuit(p, kind)
    digits = digits_needed(bits, p, circuit.alphabet)
    layout = DigitLayout(
        len(pairs) * digits * stride, digits, p, circuit.alphabet, stride
    )
    ev = PlainEvaluator(p, layout.slots)
    a = ev.encrypt(layout.encode([x for x, _ in pairs]))
    b = ev.encrypt(layout.encode([y for _, y in pairs]))
    result = compare_ints(a, b, circuit, ev, digits, stride)
    lt = layout.read_results(ev.decrypt(result.lt), len(pairs))
    eq = layout.read_results(ev.decrypt(result.eq), len(pairs))
    return lt, eq, ev


def test_lex_fold_single_digit() -> None:
    """Expect a single digit to pass through unchanged."""
    ev = PlainEvaluator(3, 4)
    lt = ev.encrypt([1, 0, 0, 1])
    eq = ev.encrypt([0, 1, 0, 0])
    assert lex_combine(lt, eq, 1, ev) is lt


def test_lex_fold_most_significant_decides() -> None:
    """Expect the highest differing digit to decide, the lowest slot first."""
    ev = PlainEvaluator(5, 3)
    # Digits from least to most significant: EQ, LT, EQ means a < b.
    lt = ev.encrypt([0, 1, 0])
    eq = ev.encrypt([1, 0, 1])
    folded_lt, folded_eq = lex_fold(lt, eq, 3, ev)
    assert ev.decrypt(folded_lt)[0] == 1
    assert ev.decrypt(folded_eq)[0] == 0
    assert ev.counter.nonscalar(Phase.SHIFT_MUL) > 0
    assert ev.counter.nonscalar(Phase.SHIFT_ADD) > 0


@pytest.mark.parametrize(
    "p, kind",
    [
        (3, CircuitKind.BIVARIATE),
        (5, CircuitKind.BIVARIATE),
        (5, CircuitKind.UNIVARIATE),
        (7, CircuitKind.UNIVARIATE),
    ],
)
def test_compare_six_bit_exhaustive(p: int, kind: CircuitKind) -> None:
    """Expect LT and EQ to be exact for every pair of six-bit integers."""
    pairs = list(itertools.product(range(64), repeat=2))
    lt, eq, _ = _compare(p, kind, pairs, 6)
    assert lt == [int(x < y) for x, y in pairs]
    assert eq == [int(x == y) for x, y in pairs]


@pytest.mark.parametrize("p", [7, 13, 17])
@pytest.mark.parametrize("kind", list(CircuitKind))
def test_compare_random_wide(p: int, kind: CircuitKind) -> None:
    """Expect a thousand random 32-bit comparisons to be exact."""
    rng = np.random.default_rng(p)
    values = rng.integers(0, 2 ** 32, size=(1000, 2)).tolist()
    values[:250] = [[v, v] for v, _ in values[:250]]
    pairs = [tuple(pair) for pair in values]
    lt, eq, _ = _compare(p, kind, pairs, 32)
    assert lt == [int(x < y) for x, y in pairs]
    assert eq == [int(x == y) for x, y in pairs]


def test_compare_with_stride() -> None:
    """Expect spaced digits to compare like packed ones."""
    pairs = [(0, 0), (5, 9), (26, 3), (13, 13), (8, 9)]
    lt, eq, _ = _compare(3, CircuitKind.BIVARIATE, pairs, 4, stride=2)
    assert lt == [0, 1, 0, 0, 1]
    assert eq == [1, 0, 0, 1, 0]


def test_compare_counts_phases() -> None:
    """Expect every phase of a bivariate comparison to record products."""
    _, _, ev = _compare(5, CircuitKind.BIVARIATE, [(3, 17), (4, 4)], 8)
    for phase in (Phase.EXTRACTION, Phase.LT_EQ, Phase.SHIFT_MUL, Phase.SHIFT_ADD):
        assert ev.counter.nonscalar(phase) > 0
    assert ev.counter.phases[Phase.SHIFT_MUL].rotations > 0


def test_compare_batch_matches_single() -> None:
    """Expect a batch to give each pair's result and summed counters."""
    circuit = build_digit_circuit(3, CircuitKind.BIVARIATE)
    layout = DigitLayout(12, 3, 3)
    ev = PlainEvaluator(3, 12)
    first = [
        ev.encrypt(layout.encode(v)) for v in ([1, 20, 7, 0], [2, 19, 7, 26])
    ]
    second = [
        ev.encrypt(layout.encode(v)) for v in ([5, 5, 5, 5], [4, 6, 5, 0])
    ]
    batch = compare_batch([tuple(first), tuple(second)], circuit, ev, 3)
    assert layout.read_results(ev.decrypt(batch[0].lt), 4) == [1, 0, 0, 1]
    assert layout.read_results(ev.decrypt(batch[1].lt), 4) == [0, 1, 0, 0]
    assert layout.read_results(ev.decrypt(batch[1].eq), 4) == [0, 0, 1, 0]
    single = PlainEvaluator(3, 12)
    compare_ints(
        single.encrypt(layout.encode([1, 20, 7, 0])),
        single.encrypt(layout.encode([2, 19, 7, 26])),
        circuit,
        single,
        3,
    )
    assert ev.counter.nonscalar() == 2 * single.counter.nonscalar()


def test_run_job_isolates_counters() -> None:
    """Expect a job to count on a fork and report a snapshot."""
    ev = PlainEvaluator(5, 3)
    value = ev.encrypt([1, 2, 3])
    result, snapshot = run_job(Job(_square, (value,), Phase.LT_EQ), ev)
    assert ev.decrypt(result).tolist() == [1, 4, 4]
    assert ev.counter.nonscalar() == 0
    counter = OpCounter()
    counter.merge(snapshot)
    assert counter.nonscalar(Phase.LT_EQ) == 1


def test_sequential_executor_reports_failing_job() -> None:
    """Expect the index of the failing job in the raised error."""
    ev = PlainEvaluator(3, 1)
    jobs = [Job(_square, (ev.encrypt([1]),)), Job(_fail, ("broken",))]
    with SequentialExecutor(ev) as executor:
        with pytest.raises(WorkerPanic) as error:
            executor.map(jobs)
    assert error.value.job_index == 1
    assert isinstance(error.value.__cause__, ValueError)


def test_thread_pool_matches_sequential() -> None:
    """Expect pooled threads to give results and counters in job order."""
    circuit = build_digit_circuit(7, CircuitKind.BIVARIATE)
    layout = DigitLayout(30, 3, 7)
    rng = np.random.default_rng(7)
    operands = rng.integers(0, capacity(7, 3), size=(4, 2, 10)).tolist()
    outcomes = []
    for make in (
        SequentialExecutor,
        lambda ev: PooledExecutor(ev, 3, PoolKind.THREAD),
    ):
        ev = PlainEvaluator(7, 30)
        pairs = [
            (ev.encrypt(layout.encode(a)), ev.encrypt(layout.encode(b)))
            for a, b in operands
        ]
        with make(ev) as executor:
            batch = compare_batch(pairs, circuit, ev, 3, executor=executor, split=False)
        outcomes.append(
            ([ev.decrypt(cmp.lt).tolist() for cmp in batch], ev.counter.snapshot())
        )
    assert outcomes[0] == outcomes[1]


def test_digit_columns_partition_slots() -> None:
    columns = digit_columns(12, 3, 2)
    assert [mask.tolist()[:6] for mask in columns] == [
        [1, 1, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 1, 1],
    ]
    assert sum(columns).tolist() == [1] * 12


@pytest.mark.parametrize("stride", [1, 2])
@pytest.mark.parametrize("kind", list(CircuitKind))
def test_digit_column_jobs_match_joint(stride: int, kind: CircuitKind) -> None:
    """Expect per-column jobs to agree with one job per circuit."""
    circuit = build_digit_circuit(7, kind)
    digits = 3
    layout = DigitLayout(10 * digits * stride, digits, 7, circuit.alphabet, stride)
    rng = np.random.default_rng(11)
    top = capacity(7, digits, circuit.alphabet)
    a = rng.integers(0, top, size=10).tolist()
    b = rng.integers(0, top, size=10).tolist()
    b[::3] = a[::3]
    outcomes = []
    for workers, split in ((1, False), (3, True)):
        ev = PlainEvaluator(7, layout.slots)
        pair = (ev.encrypt(layout.encode(a)), ev.encrypt(layout.encode(b)))
        with PooledExecutor(ev, workers, PoolKind.THREAD) as executor:
            result = compare_ints(
                *pair, circuit, ev, digits, stride, executor=executor, split=split
            )
        outcomes.append(
            (
                layout.read_results(ev.decrypt(result.lt), 10),
                layout.read_results(ev.decrypt(result.eq), 10),
                ev.counter,
            )
        )
    (lt, eq, joint), (split_lt, split_eq, split_counter) = outcomes
    assert lt == split_lt == [int(x < y) for x, y in zip(a, b)]
    assert eq == split_eq == [int(x == y) for x, y in zip(a, b)]
    assert split_counter.nonscalar(Phase.LT_EQ) == digits * joint.nonscalar(
        Phase.LT_EQ
    )
    assert split_counter.nonscalar(Phase.SHIFT_MUL) == joint.nonscalar(
        Phase.SHIFT_MUL
    )


def test_thread_pool_reports_failing_job() -> None:
    ev = PlainEvaluator(3, 1)
    jobs = [Job(_fail, ("first",)), Job(_square, (ev.encrypt([2]),))]
    with PooledExecutor(ev, 2, PoolKind.THREAD) as executor:
        with pytest.raises(WorkerPanic) as error:
            executor.map(jobs)
    assert error.value.job_index == 0


@pytest.mark.slow
def test_process_pool_compare() -> None:
    """Expect worker processes to reproduce the inline comparison."""
    circuit = build_digit_circuit(5, CircuitKind.BIVARIATE)
    layout = DigitLayout(12, 3, 5)
    ev = PlainEvaluator(5, 12)
    a = ev.encrypt(layout.encode([0, 124, 50, 51]))
    b = ev.encrypt(layout.encode([1, 124, 49, 52]))
    with make_executor(ev, 2, PoolKind.PROCESS) as executor:
        result = compare_ints(a, b, circuit, ev, 3, executor=executor)
    assert layout.read_results(ev.decrypt(result.lt), 4) == [1, 0, 0, 1]
    assert layout.read_results(ev.decrypt(result.eq), 4) == [0, 1, 0, 0]


def test_make_executor() -> None:
    ev = PlainEvaluator(3, 1)
    assert isinstance(make_executor(ev, 1), SequentialExecutor)
    with pytest.raises(InvalidParameter):
        PooledExecutor(ev, 0, PoolKind.THREAD)


def test_schedule_digit_jobs_in_order() -> None:
    ev = PlainEvaluator(11, 2)
    jobs = [Job(_square, (ev.encrypt([v, v + 1]),)) for v in range(5)]
    outcomes = schedule_digit_jobs(jobs, 1, ev)
    assert [ev.decrypt(result).tolist() for result, _ in outcomes] == [
        [v * v % 11, (v + 1) ** 2 % 11] for v in range(5)
    ]


def _elapsed(workers: int) -> float:
    ev = PlainEvaluator(3, 1)
    jobs = [Job(_pause, (0.05,)) for _ in range(8)]
    timings = []
    with PooledExecutor(ev, workers, PoolKind.THREAD) as executor:
        for _ in range(10):
            start = time.perf_counter()
            executor.map(jobs)
            timings.append(time.perf_counter() - start)
    return statistics.median(timings)


@pytest.mark.slow
def test_thread_pool_scales_with_workers() -> None:
    """Expect eight workers to finish eight independent jobs much sooner."""
    assert _elapsed(8) <= 0.6 * _elapsed(1)
