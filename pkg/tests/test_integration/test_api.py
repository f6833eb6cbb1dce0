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


"""Ensure a consistent public package interface."""


from importlib import import_module

import pytest


@pytest.mark.parametrize(
    "public_module, symbol",
    [
        ("ufhe", "show_versions"),
        ("ufhe", "UFHEError"),
        ("ufhe", "get_param_set"),
        ("ufhe", "instantiate"),
        ("ufhe", "keygen"),
        ("ufhe", "CipherEvaluator"),
        ("ufhe", "PlainEvaluator"),
        ("ufhe", "compare_ints"),
        ("ufhe", "sort_rank"),
        ("ufhe", "min_matrix"),
        ("ufhe", "private_query"),
        ("ufhe", "spawn_compare"),
        ("ufhe", "compact_if_beneficial"),
        ("ufhe.arith", "RnsBasis"),
        ("ufhe.transform", "build_bluestein_plan"),
        ("ufhe.transform", "zmstar_filter"),
        ("ufhe.ring", "elementwise"),
        ("ufhe.plainspace", "build_slot_algebra"),
        ("ufhe.bgv", "he_mul"),
        ("ufhe.bgv", "rotate"),
        ("ufhe.compare", "lex_combine"),
        ("ufhe.compare", "make_executor"),
        ("ufhe.slotmgr", "plan_compaction"),
        ("ufhe.pipeline", "wait"),
        ("ufhe.bench", "run_selftest"),
    ],
)
def test_public_api(public_module: str, symbol: str) -> None:
    """Expect the given public package interface."""
    public_module = import_module(public_module)
    assert hasattr(public_module, symbol)
