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


"""Define general helper functions."""


from typing import Union

import numpy as np
from depinfo import print_dependencies


def show_versions():
    """Print dependency information."""
    print_dependencies("ufhe")


def make_rng(seed: Union[int, np.random.Generator, None]) -> np.random.Generator:
    """
    Return a numpy random generator for a seed or pass a generator through.

    Parameters
    ----------
    seed : int or numpy.random.Generator or None
        Either an integer seed, an existing generator that is returned as is,
        or ``None`` for fresh operating system entropy.

    Returns
    -------
    numpy.random.Generator

    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
