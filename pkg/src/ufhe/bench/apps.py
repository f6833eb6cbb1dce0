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


"""Run the sorting, minimum and private query applications."""


import logging
import time
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from .. import instrumentation
from ..compare import min_matrix, pack_items, sort_rank
from ..helpers import make_rng
from ..model import CompactionModel, ReportModel
from ..pipeline import QueryTag, private_query
from ..plainspace import DigitLayout, capacity
from ..slotmgr import UsageOp, compact_if_beneficial, track
from .compare_bench import summarize
from .session import Session


logger = logging.getLogger(__name__)


def _report(session: Session, command: str, **kwargs) -> ReportModel:
    return ReportModel(
        command=command,
        param_set=session.model.name,
        circuit=session.circuit.kind.value,
        seed=session.seed,
        workers=session.workers,
        deterministic=session.deterministic,
        counters=session.evaluator.counter.snapshot(),
        components=instrumentation.snapshot(),
        notes=list(session.notes),
        **kwargs,
    )


def _draw_items(layout: DigitLayout, n: int, bits: int, seed: int) -> List[int]:
    limit = min(2 ** bits, capacity(layout.p, layout.digits, layout.alphabet))
    rng = make_rng(seed)
    return [int(v) for v in rng.integers(0, limit, size=n)]


def gather_items(
    session: Session, values: Sequence[int], layout: DigitLayout, compaction: bool
) -> Tuple[Any, Optional[CompactionModel]]:
    """
    Encrypt one integer per ciphertext and gather them into one.

    With compaction on, the gathering is planned from the slot usages of the
    inputs and skipped when it does not pay off; the items are then packed
    block by block instead.

    """
    ev = session.evaluator
    items = [ev.encrypt(layout.encode([value])) for value in values]
    positions = [layout.digit_slot(0, digit) for digit in range(layout.digits)]
    meta = {"slots": layout.slots, "positions": positions}
    usages = [track(UsageOp.ENCODE, [], meta) for _ in items]
    report = None
    if compaction:
        packed, _, decision = compact_if_beneficial(items, usages, ev)
        report = CompactionModel(**vars(decision))
        if decision.applied and len(packed) == 1:
            return packed[0], report
    return pack_items(items, layout, ev, mask=False), report


def run_sort(
    session: Session, n: int = 16, bits: int = 8, compaction: bool = True
) -> ReportModel:
    """Sort ``n`` encrypted integers and check the order in plaintext."""
    ev = session.evaluator
    layout = session.layout(bits, n)
    values = _draw_items(layout, n, bits, session.seed)
    instrumentation.reset()
    ev.counter.reset()
    start = time.perf_counter()
    packed, report = gather_items(session, values, layout, compaction)
    with session.executor() as executor:
        result = sort_rank(packed, n, layout, session.circuit, ev, executor)
    decoded = layout.decode(ev.decrypt(result), n)
    elapsed = time.perf_counter() - start
    verified = decoded == sorted(values)
    if not verified:
        logger.error("The sorted output %r is not %r.", decoded, sorted(values))
    return _report(
        session,
        "app sort",
        verified=verified,
        bits=bits,
        integers=n,
        reps=1,
        timing=summarize([elapsed], n),
        compaction=report,
        ciphertexts={"inputs": n, "packed": 1, "outputs": 1},
    )


def run_min(
    session: Session, n: int = 16, bits: int = 16, compaction: bool = True
) -> ReportModel:
    """Find the minimum of ``n`` encrypted integers."""
    ev = session.evaluator
    layout = session.layout(bits, n)
    values = _draw_items(layout, n, bits, session.seed)
    instrumentation.reset()
    ev.counter.reset()
    start = time.perf_counter()
    packed, report = gather_items(session, values, layout, compaction)
    with session.executor() as executor:
        result = min_matrix(packed, n, layout, session.circuit, ev, executor)
    found = layout.decode(ev.decrypt(result), 1)[0]
    elapsed = time.perf_counter() - start
    verified = found == min(values)
    if not verified:
        logger.error("Found %d instead of the minimum %d.", found, min(values))
    return _report(
        session,
        "app min",
        verified=verified,
        bits=bits,
        integers=n,
        reps=1,
        timing=summarize([elapsed], n),
        compaction=report,
        ciphertexts={"inputs": n, "packed": 1, "outputs": 1},
    )


def expected_query(
    tag: QueryTag, data: np.ndarray, op1: np.ndarray, op2: int, p: int
) -> List[int]:
    """Return the plaintext result of a private query."""
    if tag is QueryTag.ADD:
        return [int(v) for v in (data + op1) % p]
    if tag is QueryTag.MULT:
        return [int(v) for v in (data * op1) % p]
    return [pow(int(v), op2, p) for v in data]


def run_private_query(
    session: Session,
    query: str = "add",
    op2: int = 64,
    nonblocking: bool = True,
    max_exponent: int = 4096,
) -> ReportModel:
    """
    Answer an encrypted query over encrypted slot data.

    In non-blocking mode the blocking variant runs as well, so the report
    holds both wall-clock times and their ratio; the two results must agree.

    """
    ev = session.evaluator
    p = ev.p
    tag = QueryTag[query.upper()]
    rng = make_rng(session.seed)
    data = rng.integers(0, p, size=ev.slots)
    op1 = rng.integers(0, p, size=ev.slots)
    encrypted_query = ev.encrypt([int(tag)] * ev.slots)
    encrypted_op1 = ev.encrypt(op1)
    encrypted_data = ev.encrypt(data)
    instrumentation.reset()
    ev.counter.reset()
    modes = [True, False] if nonblocking else [False]
    outputs = {}
    overlap = {}
    with session.helper() as helper:
        for mode in modes:
            start = time.perf_counter()
            result = private_query(
                encrypted_query,
                encrypted_op1,
                op2,
                encrypted_data,
                ev,
                executor=helper,
                nonblocking=mode,
                max_exponent=max_exponent,
            )
            outputs[mode] = [int(v) for v in ev.decrypt(result)]
            overlap["nonblocking" if mode else "blocking"] = (
                time.perf_counter() - start
            )
    expected = expected_query(tag, data, op1, op2, p)
    verified = all(output == expected for output in outputs.values())
    if not verified:
        logger.error("The %s query disagreed with the plaintext oracle.", query)
    if nonblocking:
        overlap["ratio"] = overlap["nonblocking"] / overlap["blocking"]
    return _report(
        session,
        "app private-query",
        verified=verified,
        integers=ev.slots,
        reps=1,
        timing=summarize([overlap["nonblocking" if nonblocking else "blocking"]]),
        ciphertexts={"inputs": 3, "outputs": 1},
        overlap=overlap,
    )
