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


"""Provide shared fixtures on the smallest shipped parameter set."""


import pytest

from ufhe.bench import Session
from ufhe.compare import CipherEvaluator, PlainEvaluator


@pytest.fixture(scope="session")
def toy_session() -> Session:
    """Return a deterministic session on the p = 3, m = 91 ring."""
    return Session.from_name("toy-p3", seed=0)


@pytest.fixture(scope="session")
def toy_context(toy_session: Session):
    return toy_session.ctx


@pytest.fixture(scope="session")
def toy_keys(toy_session: Session):
    return toy_session.keys


@pytest.fixture()
def cipher_evaluator(toy_context, toy_keys) -> CipherEvaluator:
    """Return a fresh evaluator with its own counters."""
    return CipherEvaluator(toy_context, toy_keys, seed=1)


@pytest.fixture()
def plain_evaluator() -> PlainEvaluator:
    return PlainEvaluator(3, 12)
