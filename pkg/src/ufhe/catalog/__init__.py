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


from .grammar import TupleParser
from .table import (
    DEFAULT_TABLE,
    MAX_RING_DEGREE,
    extract_param_table,
    get_param_set,
    instantiate,
    load_param_sets,
    transform_param_sets,
    validate_param_set,
)
