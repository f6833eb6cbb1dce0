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


from .ntt import Direction, Pow2Tables, bit_reverse_indices, butterflies, ntt_pow2
from .cyclotomic import (
    cyclotomic_coefficients,
    cyclotomic_poly,
    expansion_factor,
    reduce_mod_cyclotomic,
    reduction_table,
    unit_indices,
)
from .filtering import (
    ZmStarIndex,
    zmstar_filter,
    zmstar_filter_reference,
    zmstar_index,
    zmstar_scatter,
)
from .bluestein import (
    BluesteinPlan,
    PlanStack,
    bluestein_dft,
    build_bluestein_plan,
    pad_length,
)
from .plan_cache import PlanCache, build_plan
from .evaluation import from_eval, stacked_from_eval, stacked_to_eval, to_eval
