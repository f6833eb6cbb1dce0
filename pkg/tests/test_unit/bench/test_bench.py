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


"""Test the benchmark, application and self-test runners."""


import time

import numpy as np
import pytest

from ufhe.bench import (
    SUITES,
    Session,
    run_compare_bench,
    run_min,
    run_private_query,
    run_selftest,
    run_sort,
    summarize,
)
from ufhe.bench.compare_bench import random_operands
from ufhe.catalog import load_param_sets
from ufhe.exceptions import InvalidParameter
from ufhe.model import ParamSource


def test_summarize() -> None:
    timing = summarize([1.0, 2.0, 6.0], integers=3)
    assert timing.mean == 3.0
    assert timing.median == 2.0
    assert timing.stdev == pytest.approx(np.std([1.0, 2.0, 6.0], ddof=1))
    assert timing.per_integer == 1.0


def test_summarize_single_sample() -> None:
    timing = summarize([0.5])
    assert timing.stdev == 0.0
    assert timing.per_integer is None


def test_random_operands() -> None:
    """Expect operands below the limit with a share of equal pairs."""
    a, b = random_operands(400, 50, np.random.default_rng(3))
    assert len(a) == len(b) == 400
    assert max(a + b) < 50
    equal = sum(x == y for x, y in zip(a, b))
    assert 60 < equal < 160


def test_session_layout_shrinks(toy_session: Session) -> None:
    """Expect a too wide request to fall back to the widest fitting layout."""
    layout = toy_session.layout(64, items=3)
    assert layout.digits == 4
    assert layout.capacity == 3
    assert any("using" in note for note in toy_session.notes)


def test_unknown_suite(toy_session: Session) -> None:
    with pytest.raises(InvalidParameter):
        run_selftest(toy_session, ["nonsense"])


@pytest.mark.slow
def test_compare_bench(toy_session: Session) -> None:
    """Expect verified reps with counters of a single comparison."""
    report = run_compare_bench(toy_session, reps=2, bits=4)
    assert report.verified
    assert report.reps == 2
    assert report.integers == 4
    assert len(report.timing.samples) == 2
    assert report.counters["LT/EQ"]["nonscalar_mults"] > 0


@pytest.mark.slow
def test_sort_app(toy_session: Session) -> None:
    report = run_sort(toy_session, n=3, bits=4)
    assert report.verified
    assert report.compaction is not None


@pytest.mark.slow
def test_min_app_without_compaction(toy_session: Session) -> None:
    report = run_min(toy_session, n=4, bits=4, compaction=False)
    assert report.verified
    assert report.compaction is None


@pytest.mark.slow
@pytest.mark.parametrize("query", ["add", "mult", "power"])
@pytest.mark.parametrize("op2", [64, 1024])
def test_private_query_app(toy_session: Session, query: str, op2: int) -> None:
    """Expect both modes to agree and the overlap to be recorded."""
    start = time.perf_counter()
    report = run_private_query(toy_session, query=query, op2=op2)
    assert report.verified
    assert time.perf_counter() - start < 600
    assert set(report.overlap) == {"nonblocking", "blocking", "ratio"}


@pytest.mark.slow
def test_selftest_passes(toy_session: Session) -> None:
    report = run_selftest(toy_session, ["transform", "filter", "circuits"])
    assert report.verified
    assert [suite.name for suite in report.suites] == [
        "transform",
        "filter",
        "circuits",
    ]
    assert all(suite.passed > 0 for suite in report.suites)


@pytest.mark.slow
def test_selftest_detects_fault() -> None:
    """Expect a corrupted transform plan to fail the affected suites."""
    session = Session.from_name("toy-p3", seed=0)
    report = run_selftest(session, ["transform", "bgv"], fault=True)
    assert not report.verified
    assert all(suite.failed > 0 for suite in report.suites)


def test_suite_names() -> None:
    assert set(SUITES) == {
        "transform",
        "filter",
        "plan-reuse",
        "staging",
        "bgv",
        "circuits",
        "compare",
        "compaction",
    }


DERIVED = [
    name
    for name, model in load_param_sets().items()
    if model.source is ParamSource.DERIVED
]


@pytest.mark.slow
@pytest.mark.parametrize("name", DERIVED)
def test_encrypted_compare_on_derived_sets(name: str) -> None:
    """Expect every shipped toy ring to rotate and compare packed integers."""
    session = Session.from_name(name, seed=3)
    report = run_selftest(session, ["compare"])
    assert report.verified, report.suites[0].errors


@pytest.mark.slow
@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
@pytest.mark.parametrize("suffix", ["", "-univariate"])
def test_encrypted_truth_tables(p: int, suffix: str) -> None:
    """Expect exact encrypted digit circuits on every small toy ring."""
    session = Session.from_name(f"toy-p{p}{suffix}", seed=p)
    report = run_selftest(session, ["circuits"])
    assert report.verified
    assert report.suites[0].failed == 0


@pytest.mark.slow
def test_sort_sixteen_bytes() -> None:
    """Expect sixteen encrypted bytes to come back in order within ten minutes."""
    start = time.perf_counter()
    session = Session.from_name("app-p17", seed=16)
    report = run_sort(session, n=16, bits=8)
    assert report.verified
    assert time.perf_counter() - start < 600


@pytest.mark.slow
def test_min_sixteen_words() -> None:
    start = time.perf_counter()
    session = Session.from_name("app-p17", seed=17)
    report = run_min(session, n=16, bits=16)
    assert report.verified
    assert time.perf_counter() - start < 600
