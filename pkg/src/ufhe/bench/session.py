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


"""Bundle everything a benchmark or application run needs."""


import logging
from typing import List, Optional

from ..bgv import BgvContext, KeySet, keygen
from ..catalog import get_param_set, instantiate
from ..compare import (
    CipherEvaluator,
    DigitCircuit,
    DigitExecutor,
    PooledExecutor,
    SequentialExecutor,
    build_digit_circuit,
)
from ..exceptions import InvalidParameter
from ..model import ParamSetModel
from ..plainspace import DigitLayout, digits_needed, radix


logger = logging.getLogger(__name__)


class Session:
    """
    Hold the context, keys, evaluator and circuit of one parameter set.

    Parameters
    ----------
    model : ParamSetModel
    seed : int
        Seeds key generation and encryption.
    workers : int
    deterministic : bool
        Run all jobs in the calling thread regardless of ``workers``.
    circuit : str, optional
        Overrides the circuit of the parameter set.
    force : bool
        Build rings above the desk-scale limit.

    """

    def __init__(
        self,
        model: ParamSetModel,
        seed: int = 0,
        workers: int = 1,
        deterministic: bool = True,
        circuit: Optional[str] = None,
        force: bool = False,
        **kwargs,
    ) -> None:
        super().__init__(**kwargs)
        self.model = model
        self.seed = seed
        self.workers = workers
        self.deterministic = deterministic
        self.notes: List[str] = []
        self.ctx: BgvContext = instantiate(model, force=force)
        self.keys: KeySet = keygen(self.ctx, seed)
        self.evaluator = CipherEvaluator(self.ctx, self.keys, seed=seed + 1)
        self.circuit: DigitCircuit = build_digit_circuit(
            model.p, circuit or model.circuit
        )
        logger.info(
            "Session %s ready with the %s circuit.",
            model.name,
            self.circuit.kind.value,
        )

    @classmethod
    def from_name(cls, name: str, **kwargs) -> "Session":
        return cls(get_param_set(name), **kwargs)

    @property
    def slots(self) -> int:
        return self.ctx.slot_count

    def layout(self, bits: int, items: int = 1) -> DigitLayout:
        """
        Return the layout for integers of ``bits`` bits.

        When the requested width does not fit ``items`` integers into the
        slots, the largest width that does is used and noted.

        Raises
        ------
        InvalidParameter
            If not even a one-bit integer fits.

        """
        p = self.model.p
        alphabet = self.circuit.alphabet
        digits = digits_needed(bits, p, alphabet)
        if digits * items > self.slots:
            digits = self.slots // items
            if digits < 1:
                raise InvalidParameter(
                    f"{items} integers do not fit into {self.slots} slots."
                )
            supported = (radix(p, alphabet) ** digits).bit_length() - 1
            message = (
                f"{bits}-bit integers need more than {self.slots} slots; "
                f"using {supported} bits."
            )
            logger.warning(message)
            self.notes.append(message)
        return DigitLayout(self.slots, digits, p, alphabet)

    def executor(self) -> DigitExecutor:
        """Return the job executor of the run."""
        if self.deterministic or self.workers == 1:
            return SequentialExecutor(self.evaluator)
        return PooledExecutor(self.evaluator, self.workers)

    def helper(self) -> DigitExecutor:
        """Return an executor running deferred jobs off the calling thread."""
        if self.deterministic:
            return SequentialExecutor(self.evaluator)
        return PooledExecutor(self.evaluator, max(self.workers, 1))
