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


"""Accumulate wall-clock time per computational component."""


import logging
import threading
import time
from contextlib import contextmanager
from typing import Dict, Iterator


logger = logging.getLogger(__name__)


COMPONENTS = ("transform", "elementwise", "crt", "keyswitch", "other")

_lock = threading.Lock()
_totals: Dict[str, float] = {name: 0.0 for name in COMPONENTS}
_local = threading.local()


@contextmanager
def timed(component: str) -> Iterator[None]:
    """
    Attribute the wall-clock time of the enclosed block to a component.

    Nested blocks are only counted once, by the outermost timer, so that the
    components partition the total.

    """
    if component not in _totals:
        raise KeyError(f"Unknown component '{component}'.")
    if getattr(_local, "active", False):
        yield
        return
    _local.active = True
    start = time.perf_counter()
    try:
        yield
    finally:
        elapsed = time.perf_counter() - start
        _local.active = False
        with _lock:
            _totals[component] += elapsed


def snapshot() -> Dict[str, float]:
    """Return a copy of the accumulated component times in seconds."""
    with _lock:
        return dict(_totals)


def reset() -> None:
    """Zero all component timers."""
    with _lock:
        for name in _totals:
            _totals[name] = 0.0
