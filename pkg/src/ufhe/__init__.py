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


"""Create top level imports."""


__author__ = "Moritz E. Beber"
__email__ = "midnighter@posteo.net"
__version__ = "0.1.0"


from ufhe.helpers import show_versions
from ufhe.exceptions import UFHEError
from ufhe.catalog import get_param_set, instantiate, load_param_sets
from ufhe.bgv import BgvContext, keygen
from ufhe.compare import (
    CipherEvaluator,
    PlainEvaluator,
    build_digit_circuit,
    compare_ints,
    min_matrix,
    sort_rank,
)
from ufhe.plainspace import DigitLayout
from ufhe.pipeline import private_query, spawn_compare
from ufhe.slotmgr import compact_if_beneficial
