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


"""Load, validate and instantiate the shipped parameter sets."""


import logging
from math import gcd
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd
from sympy import n_order, totient

from ..bgv import BgvContext, make_params
from ..exceptions import CapacityExceeded, InvalidParameter, UFHEError
from ..model import ParamSetModel, ParamSource
from ..plainspace import build_slot_algebra
from ..transform import PlanCache
from .grammar import TupleParser


logger = logging.getLogger(__name__)


DEFAULT_TABLE = Path(__file__).resolve().parents[1] / "data" / "param_sets.tsv"

#: Rings above this degree need explicit consent before they are built.
MAX_RING_DEGREE = 4096

#: Slot algebras are rebuilt during validation up to this ring order.
MAX_CHECKED_ORDER = 2000


def extract_param_table(filename: Path = DEFAULT_TABLE) -> pd.DataFrame:
    """
    Extract the tab-separated parameter set table.

    Parameters
    ----------
    filename : pathlib.Path
        The filesystem location of the table.

    Returns
    -------
    pandas.DataFrame

    """
    return pd.read_csv(filename, sep="\t", header=0)


def _optional(value) -> Optional[int]:
    return None if pd.isna(value) else int(value)


def transform_param_sets(table: pd.DataFrame) -> Dict[str, ParamSetModel]:
    """Parse the tuple columns and validate every row into a model."""
    models: Dict[str, ParamSetModel] = {}
    for row in table.itertuples(index=False):
        p, m, n = TupleParser.ring(row.ring)
        d, l = TupleParser.shape(row.shape)
        models[row.name] = ParamSetModel(
            name=row.name,
            p=p,
            m=m,
            n=n,
            circuit=row.circuit,
            d=d,
            l=l,
            log_q=_optional(row.log_q),
            security=_optional(row.security),
            ints=_optional(row.ints),
            prime_bits=int(row.prime_bits),
            levels=int(row.levels),
            source=row.source,
        )
    logger.debug("Loaded %d parameter sets.", len(models))
    return models


def load_param_sets(filename: Optional[Path] = None) -> Dict[str, ParamSetModel]:
    """Return all parameter sets of a table, the shipped one by default."""
    return transform_param_sets(extract_param_table(filename or DEFAULT_TABLE))


def get_param_set(name: str, filename: Optional[Path] = None) -> ParamSetModel:
    """
    Look up one parameter set by name.

    Raises
    ------
    InvalidParameter
        If no set of that name exists.

    """
    models = load_param_sets(filename)
    try:
        return models[name]
    except KeyError:
        raise InvalidParameter(
            f"Unknown parameter set {name!r}; choose from {', '.join(models)}."
        ) from None


def validate_param_set(model: ParamSetModel) -> List[str]:
    """
    Check a parameter set against the number theory of its ring.

    Every set must satisfy n = phi(m) and gcd(p, m) = 1. Derived sets must
    also state d = ord_m(p) and l = n / d, and small rings are checked
    against a freshly built slot algebra, which must offer cyclic rotations
    over all l slots.

    Returns
    -------
    list of str
        The problems found; empty for a consistent set.

    """
    problems = []
    if gcd(model.p, model.m) != 1:
        problems.append(f"p={model.p} divides m={model.m}.")
        return problems
    phi = int(totient(model.m))
    if phi != model.n:
        problems.append(f"phi({model.m}) is {phi}, not {model.n}.")
    if model.source is ParamSource.PUBLISHED:
        return problems
    order = int(n_order(model.p, model.m))
    if order != model.d:
        problems.append(f"ord_{model.m}({model.p}) is {order}, not {model.d}.")
    if phi // order != model.l:
        problems.append(f"The ring has {phi // order} slots, not {model.l}.")
    if not problems and model.m <= MAX_CHECKED_ORDER:
        try:
            algebra = build_slot_algebra(model.p, model.m)
        except UFHEError as error:
            problems.append(f"The slot algebra cannot be built: {error}")
        else:
            if (algebra.d, algebra.l) != (model.d, model.l):
                problems.append("The slot algebra disagrees with (d l).")
            if algebra.rot_generator is None:
                problems.append(
                    f"Z_{model.m}*/<{model.p}> is not cyclic; rotations are "
                    "unavailable."
                )
            elif not algebra.exact_rotations:
                problems.append(
                    f"Rotations of Z_{model.m}*/<{model.p}> do not close after "
                    f"{model.l} steps."
                )
    return problems


def instantiate(
    model: ParamSetModel, cache: Optional[PlanCache] = None, force: bool = False
) -> BgvContext:
    """
    Generate the primes of a parameter set and build its context.

    Raises
    ------
    CapacityExceeded
        For rings above `MAX_RING_DEGREE` unless forced.

    """
    if model.n > MAX_RING_DEGREE and not force:
        raise CapacityExceeded(
            f"The ring of {model.name} has degree {model.n}, above the supported "
            f"{MAX_RING_DEGREE} at desk scale; pass force to try anyway."
        )
    params = make_params(
        model.p,
        model.m,
        prime_count=model.levels,
        prime_bits=model.prime_bits,
        circuit=model.circuit,
        name=model.name,
    )
    return BgvContext(params, cache)
