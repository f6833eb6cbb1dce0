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


from .counter import OpCounter, Phase, PhaseCounts
from .evaluators import CipherEvaluator, Evaluator, PlainEvaluator, PlainVector
from .circuits import DigitCircuit, build_digit_circuit, eq_mult_count
from .polyeval import horner, poly_eval_ps, power_ladder
from .digit_ops import eq_digit, fermat_power, lt_digit
from .rotations import block_mask, block_sums, broadcast, rotate_blocks, segment_fold
from .lexicographic import lex_combine, lex_fold
from .executor import (
    DigitExecutor,
    Job,
    PooledExecutor,
    PoolKind,
    SequentialExecutor,
    make_executor,
    run_job,
    schedule_digit_jobs,
)
from .integers import (
    Comparison,
    DigitJob,
    compare_batch,
    compare_ints,
    digit_columns,
)
from .ordering import min_matrix, min_tournament, pack_items, sort_rank, unpack_items
