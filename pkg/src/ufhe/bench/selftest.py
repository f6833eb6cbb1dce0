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


"""Check the invariants of every layer at toy scale."""


import dataclasses
import logging
from typing import Callable, Dict, Iterator, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from ..compare import PlainEvaluator, compare_ints, eq_digit, lt_digit
from ..exceptions import InvalidParameter, UFHEError
from ..model import ReportModel, SuiteModel
from ..plainspace import capacity
from ..ring import ElementwiseOp, Rep, RnsPoly, elementwise, elementwise_reference
from ..slotmgr import SlotUsage, plan_compaction
from ..transform import (
    from_eval,
    reduce_mod_cyclotomic,
    to_eval,
    zmstar_filter,
    zmstar_filter_reference,
    zmstar_index,
)
from .session import Session


logger = logging.getLogger(__name__)


Check = Tuple[str, bool]
SuiteFunc = Callable[[Session, np.random.Generator], Iterator[Check]]


def _random_poly(rng: np.random.Generator, size: int, q: int) -> np.ndarray:
    return np.array([int(v) for v in rng.integers(0, q, size=size)], dtype=object)


def _schoolbook(a: np.ndarray, b: np.ndarray, m: int, q: int) -> np.ndarray:
    full = np.zeros(m, dtype=object)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            full[(i + j) % m] += x * y
    return reduce_mod_cyclotomic(full, m) % q


def check_transform(session: Session, rng: np.random.Generator) -> Iterator[Check]:
    """Round trips and products through the Bluestein transform."""
    ctx = session.ctx
    m, n = ctx.params.m, ctx.n
    for q in ctx.params.basis.values[:3]:
        plan = ctx.cache.build(m, q)
        for _ in range(3):
            a = _random_poly(rng, n, q)
            b = _random_poly(rng, n, q)
            restored = from_eval(to_eval(a, plan), plan)
            yield f"round trip q={q}", list(restored) == list(a)
            product = from_eval(to_eval(a, plan) * to_eval(b, plan) % q, plan)
            yield f"product q={q}", list(product) == list(_schoolbook(a, b, m, q))


def check_filter(session: Session, rng: np.random.Generator) -> Iterator[Check]:
    """The branch-free filter against the sequential loop."""
    index = zmstar_index(session.ctx.params.m)
    for _ in range(20):
        evals = rng.integers(0, 2 ** 31, size=(2, index.m))
        yield "filter", np.array_equal(
            zmstar_filter(evals, index), zmstar_filter_reference(evals, index)
        )


def check_plan_reuse(session: Session, rng: np.random.Generator) -> Iterator[Check]:
    """Repeated lookups return the cached plan without rebuilding it."""
    ctx = session.ctx
    q = ctx.params.basis.values[0]
    first = ctx.cache.build(ctx.params.m, q)
    builds = ctx.cache.build_counter
    yield "same instance", ctx.cache.build(ctx.params.m, q) is first
    yield "no rebuild", ctx.cache.build_counter == builds


def check_staging(session: Session, rng: np.random.Generator) -> Iterator[Check]:
    """Fused element-wise kernels against the row-by-row reference."""
    basis = session.ctx.params.basis
    n, m = session.ctx.n, session.ctx.params.m
    for op in ElementwiseOp:
        for _ in range(5):
            a, b = (
                RnsPoly.from_integers(
                    _random_poly(rng, n, basis.values[0]), basis, m, Rep.EVAL
                )
                for _ in range(2)
            )
            yield op.value, elementwise(op, a, b) == elementwise_reference(op, a, b)


def check_bgv(session: Session, rng: np.random.Generator) -> Iterator[Check]:
    """Homomorphic slot arithmetic against plaintext arithmetic."""
    ev = session.evaluator
    p, slots = ev.p, ev.slots
    for _ in range(3):
        x = rng.integers(0, p, size=slots)
        y = rng.integers(0, p, size=slots)
        cx, cy = ev.encrypt(x), ev.encrypt(y)
        yield "decrypt", np.array_equal(ev.decrypt(cx), x)
        yield "add", np.array_equal(ev.decrypt(ev.add(cx, cy)), (x + y) % p)
        yield "mul", np.array_equal(ev.decrypt(ev.mul(cx, cy)), (x * y) % p)
        yield "rotate", np.array_equal(ev.decrypt(ev.rotate(cx, 1)), np.roll(x, -1))


def _truth_table(ev, p: int, bound: int, circuit) -> Iterator[Check]:
    pairs = [(x, y) for x in range(bound + 1) for y in range(bound + 1)]
    for start in range(0, len(pairs), ev.slots):
        chunk = pairs[start : start + ev.slots]
        x = ev.encrypt([a for a, _ in chunk])
        y = ev.encrypt([b for _, b in chunk])
        eq = ev.decrypt(eq_digit(x, y, ev))[: len(chunk)]
        lt = ev.decrypt(lt_digit(x, y, circuit, ev))[: len(chunk)]
        yield "eq", [int(v) for v in eq] == [int(a == b) for a, b in chunk]
        yield "lt", [int(v) for v in lt] == [int(a < b) for a, b in chunk]


def check_circuits(session: Session, rng: np.random.Generator) -> Iterator[Check]:
    """Exhaustive digit truth tables, in plaintext and encrypted."""
    circuit = session.circuit
    p = circuit.p
    yield from _truth_table(
        PlainEvaluator(p, session.slots), p, circuit.digit_bound, circuit
    )
    yield from _truth_table(session.evaluator, p, circuit.digit_bound, circuit)


def check_compare(session: Session, rng: np.random.Generator) -> Iterator[Check]:
    """Encrypted integer comparison against the plaintext comparator."""
    ev = session.evaluator
    layout = session.layout(8)
    limit = min(256, capacity(layout.p, layout.digits, layout.alphabet))
    count = layout.capacity
    a = [int(v) for v in rng.integers(0, limit, size=count)]
    b = [int(v) for v in rng.integers(0, limit, size=count)]
    b[0] = a[0]
    result = compare_ints(
        ev.encrypt(layout.encode(a)),
        ev.encrypt(layout.encode(b)),
        session.circuit,
        ev,
        layout.digits,
        layout.stride,
    )
    lt = layout.read_results(ev.decrypt(result.lt), count)
    eq = layout.read_results(ev.decrypt(result.eq), count)
    yield "lt", lt == [int(x < y) for x, y in zip(a, b)]
    yield "eq", eq == [int(x == y) for x, y in zip(a, b)]


def check_compaction(session: Session, rng: np.random.Generator) -> Iterator[Check]:
    """Compaction plans are injective and as small as possible."""
    slots = session.slots
    for _ in range(10):
        usages = [
            SlotUsage.from_array(rng.random(slots) < 0.3, "random") for _ in range(4)
        ]
        plan = plan_compaction(usages)
        targets = [(dst, slot) for _, _, dst, slot in plan.moves]
        useful = sum(usage.useful for usage in usages)
        yield "injective", len(set(targets)) == len(targets)
        yield "complete", len(plan.moves) == useful
        yield "minimal", plan.dst_count == max(-(-useful // slots), 1)


SUITES: Dict[str, SuiteFunc] = {
    "transform": check_transform,
    "filter": check_filter,
    "plan-reuse": check_plan_reuse,
    "staging": check_staging,
    "bgv": check_bgv,
    "circuits": check_circuits,
    "compare": check_compare,
    "compaction": check_compaction,
}


def inject_fault(session: Session) -> None:
    """Corrupt the cached transform tables of the first prime."""
    ctx = session.ctx
    q = ctx.params.basis.values[0]
    plan = ctx.cache.build(ctx.params.m, q)
    broken = dataclasses.replace(plan, dpad_hat=(plan.dpad_hat + 1) % q)
    ctx.cache.replace(ctx.params.m, q, broken)
    logger.warning("Injected a corrupted plan for m=%d, q=%d.", ctx.params.m, q)


def run_suite(name: str, session: Session, seed: int) -> SuiteModel:
    """Run one suite, counting failed checks and collecting errors."""
    suite = SuiteModel(name=name)
    rng = np.random.default_rng(seed)
    try:
        for label, passed in SUITES[name](session, rng):
            if passed:
                suite.passed += 1
            else:
                suite.failed += 1
                suite.errors.append(f"{label} failed")
    except (UFHEError, ArithmeticError, ValueError) as error:
        suite.failed += 1
        suite.errors.append(f"{type(error).__name__}: {error}")
    return suite


def run_selftest(
    session: Session, suites: Sequence[str] = (), fault: bool = False
) -> ReportModel:
    """
    Run the named suites, or all of them, and report per-suite counts.

    Raises
    ------
    InvalidParameter
        If a suite name is unknown.

    """
    names = list(suites) or list(SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise InvalidParameter(f"Unknown suites: {', '.join(unknown)}.")
    if fault:
        inject_fault(session)
    results = []
    for name in tqdm(names, desc="Self-test", unit="suite"):
        result = run_suite(name, session, session.seed)
        logger.info(
            "Suite %s: %d passed, %d failed.", name, result.passed, result.failed
        )
        results.append(result)
    return ReportModel(
        command="selftest",
        param_set=session.model.name,
        circuit=session.circuit.kind.value,
        seed=session.seed,
        workers=session.workers,
        deterministic=session.deterministic,
        verified=all(result.failed == 0 for result in results),
        suites=results,
        notes=list(session.notes),
    )
