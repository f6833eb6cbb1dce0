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


from .poly import Rep, RnsPoly
from .staging import StageBuffer, Workspace, current_workspace, install_workspace
from .ops import (
    ElementwiseOp,
    automorphism,
    convert,
    elementwise,
    elementwise_reference,
    galois_permutation,
    negate,
    scale,
)
from .sampling import ERROR_BOUND, ERROR_SIGMA, SampleKind, sample
from .modswitch import mod_switch_drop
from .cyclotomic_ring import CyclotomicRing
