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


from .params import CircuitKind, Params, make_params, security_estimate
from .ciphertext import Ciphertext, PlainOperand
from .context import BgvContext
from .keys import KeySet, KswKey, PublicKey, SecretKey
from .keyswitch import decompose, key_switch, make_ksw_key
from .operations import (
    apply_galois,
    decrypt,
    decrypt_slots,
    encrypt,
    encrypt_slots,
    fresh_zero_like,
    galois_elements,
    he_add,
    he_add_plain,
    he_add_scalar,
    he_mul,
    he_mul_plain,
    he_mul_scalar,
    he_neg,
    he_sub,
    keygen,
    mod_switch,
    mod_switch_to,
    noise_budget,
    relinearize,
    rotate,
    tensor,
)
from .serialization import (
    MAGIC,
    dump_ciphertext,
    dump_galois_keys,
    dump_ksw_key,
    dump_poly,
    dump_public_key,
    dump_secret_key,
    load_ciphertext,
    load_galois_keys,
    load_ksw_key,
    load_poly,
    load_public_key,
    load_secret_key,
)
