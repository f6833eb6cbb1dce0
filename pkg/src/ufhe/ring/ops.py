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


"""Provide the element-wise kernels and representation conversions of R_Q."""


import logging
import operator
from functools import lru_cache
from enum import Enum
from typing import Callable, Dict, Optional

import numpy as np

from .. import instrumentation
from ..exceptions import BasisMismatch, BadLength, InvalidParameter, RepMismatch
from ..transform import PlanCache, stacked_from_eval, stacked_to_eval, unit_indices
from ..transform.cyclotomic import reduce_mod_cyclotomic
from .poly import Rep, RnsPoly
from .staging import Workspace, current_workspace


logger = logging.getLogger(__name__)


class ElementwiseOp(str, Enum):
    """Define the supported element-wise operations."""

    ADD = "add"
    SUB = "sub"
    MUL = "mul"


_KERNELS: Dict[ElementwiseOp, Callable] = {
    ElementwiseOp.ADD: operator.add,
    ElementwiseOp.SUB: operator.sub,
    ElementwiseOp.MUL: operator.mul,
}


def _check_compatible(op: ElementwiseOp, a: RnsPoly, b: RnsPoly) -> None:
    if a.rep is not b.rep:
        raise RepMismatch(f"Cannot {op.value} {a.rep.value} and {b.rep.value} forms.")
    if op is ElementwiseOp.MUL and a.rep is not Rep.EVAL:
        raise RepMismatch("Multiplication requires the evaluation form.")
    if a.basis.values != b.basis.values:
        raise BasisMismatch("Operands live over different RNS bases.")
    if a.width != b.width:
        raise BadLength(f"Widths {a.width} and {b.width} differ.")


def elementwise(
    op: ElementwiseOp,
    a: RnsPoly,
    b: RnsPoly,
    workspace: Optional[Workspace] = None,
) -> RnsPoly:
    """
    Apply an entry-wise modular operation to two RNS polynomials.

    The rows of both operands are gathered into contiguous staging buffers,
    one fused kernel processes the whole (L + 1) x n matrix against a column
    of primes, and the result is written back and scattered into new rows.

    Parameters
    ----------
    op : ElementwiseOp
    a : RnsPoly
    b : RnsPoly
    workspace : Workspace, optional
        The staging buffers to use; defaults to the calling thread's own.

    Returns
    -------
    RnsPoly

    Raises
    ------
    RepMismatch
        If the forms differ, or for a multiplication outside evaluation form.
    BasisMismatch
        If the active primes differ.

    """
    op = ElementwiseOp(op)
    _check_compatible(op, a, b)
    workspace = workspace or current_workspace()
    with instrumentation.timed("elementwise"):
        stage_a, stage_b = workspace.pair(a.level_count, a.width)
        left = stage_a.gather(a.rows)
        right = stage_b.gather(b.rows)
        stage_a.write_back(_KERNELS[op](left, right) % a.basis.column())
        rows = stage_a.scatter()
    return RnsPoly(a.rep, rows, a.basis, a.m)


def elementwise_reference(op: ElementwiseOp, a: RnsPoly, b: RnsPoly) -> RnsPoly:
    """Apply the operation row by row without staging."""
    op = ElementwiseOp(op)
    _check_compatible(op, a, b)
    kernel = _KERNELS[op]
    rows = tuple(
        np.array(
            [kernel(int(x), int(y)) % q for x, y in zip(row_a, row_b)], dtype=object
        )
        for row_a, row_b, q in zip(a.rows, b.rows, a.basis.values)
    )
    return RnsPoly(a.rep, rows, a.basis, a.m)


def negate(a: RnsPoly) -> RnsPoly:
    """Return -a."""
    with instrumentation.timed("elementwise"):
        matrix = -a.matrix() % a.basis.column()
    return RnsPoly.from_matrix(matrix, a.rep, a.basis, a.m)


def scale(a: RnsPoly, factor: int) -> RnsPoly:
    """Multiply every coefficient by an integer constant."""
    with instrumentation.timed("elementwise"):
        column = a.basis.column()
        matrix = a.matrix() * (factor % column) % column
    return RnsPoly.from_matrix(matrix, a.rep, a.basis, a.m)


def convert(a: RnsPoly, target: Rep, cache: PlanCache) -> RnsPoly:
    """
    Move a polynomial between coefficient and compact evaluation form.

    Parameters
    ----------
    a : RnsPoly
    target : Rep
    cache : PlanCache
        Must hold a plan for every active prime.

    Returns
    -------
    RnsPoly

    Raises
    ------
    MissingPlan
        If a prime has no plan in the cache.

    """
    target = Rep(target)
    if a.rep is target:
        return a
    if a.m is None:
        raise InvalidParameter("Converting requires a polynomial bound to a ring.")
    stack = cache.stack(a.m, a.basis.values)
    if target is Rep.EVAL:
        matrix = stacked_to_eval(a.matrix(), stack)
    else:
        matrix = stacked_from_eval(a.matrix(), stack)
    return RnsPoly.from_matrix(matrix, target, a.basis, a.m)


@lru_cache(maxsize=None)
def galois_permutation(m: int, t: int) -> np.ndarray:
    """
    Return the index map of sigma_t on compact evaluation vectors.

    Entry c is the position of ``units[c] * t mod m`` among the units, so that
    ``new = old[permutation]``.

    """
    units = unit_indices(m)
    position = {int(u): i for i, u in enumerate(units)}
    permutation = np.array([position[int(u) * t % m] for u in units], dtype=np.int64)
    permutation.setflags(write=False)
    return permutation


def automorphism(a: RnsPoly, t: int) -> RnsPoly:
    """
    Apply sigma_t: f(x) -> f(x^t) for t a unit modulo m.

    In evaluation form this permutes the evaluation points; in coefficient
    form the exponents are multiplied by t and reduced modulo Phi_m.

    """
    if a.m is None:
        raise InvalidParameter("Automorphisms require a polynomial bound to a ring.")
    m = a.m
    if np.gcd(t, m) != 1:
        raise InvalidParameter(f"Galois element {t} is not a unit modulo {m}.")
    t %= m
    matrix = a.matrix()
    if a.rep is Rep.EVAL:
        permuted = matrix[:, galois_permutation(m, t)]
        return RnsPoly.from_matrix(permuted, a.rep, a.basis, m)
    full = np.zeros((a.level_count, m), dtype=object)
    exponents = np.arange(a.width) * t % m
    full[:, exponents] = matrix
    reduced = reduce_mod_cyclotomic(full, m) % a.basis.column()
    return RnsPoly.from_matrix(reduced, a.rep, a.basis, m)
