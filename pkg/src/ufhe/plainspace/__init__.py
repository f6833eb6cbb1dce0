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


from .gf import GaloisField, GfElem, find_irreducible
from .slots import (
    SlotAlgebra,
    build_slot_algebra,
    decode_slots,
    encode_slots,
    slot_perm_for,
)
from .digits import (
    Alphabet,
    DigitVec,
    capacity,
    digits_needed,
    digits_to_int,
    int_to_digits,
    radix,
)
from .layout import DigitLayout
