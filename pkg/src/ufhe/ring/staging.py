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


"""Stage independently allocated rows into contiguous buffers for fused kernels."""


import logging
import threading
from typing import Dict, Sequence, Tuple

import numpy as np


logger = logging.getLogger(__name__)


class StageBuffer:
    """
    Provide a contiguous scratch matrix together with a row directory.

    After `gather`, entry (i, j) of `data` equals ``rows[i][j]``. The
    directory remembers how many rows are live so that a buffer sized for
    the top level can also serve lower levels.

    """

    def __init__(self, capacity: int, width: int, **kwargs) -> None:
        super().__init__(**kwargs)
        self._storage = np.zeros((capacity, width), dtype=object)
        self.directory: Tuple[int, ...] = ()

    @property
    def capacity(self) -> int:
        return self._storage.shape[0]

    @property
    def width(self) -> int:
        return self._storage.shape[1]

    @property
    def data(self) -> np.ndarray:
        """Return a view on the live rows."""
        return self._storage[: len(self.directory)]

    def gather(self, rows: Sequence[np.ndarray]) -> np.ndarray:
        """Copy rows into the contiguous region and return a view on it."""
        for i, row in enumerate(rows):
            self._storage[i, :] = row
        self.directory = tuple(range(len(rows)))
        return self.data

    def write_back(self, values: np.ndarray) -> None:
        """Store kernel output in the live region."""
        self._storage[: len(self.directory)] = values

    def scatter(self) -> Tuple[np.ndarray, ...]:
        """Copy the live region out into freshly allocated rows."""
        return tuple(self._storage[i].copy() for i in self.directory)


class Workspace:
    """
    Own the staging buffers of one worker.

    Buffers are created lazily per width and grow to the largest number of
    rows requested; a workspace must not be shared between concurrent
    workers.

    """

    def __init__(self, **kwargs) -> None:
        super().__init__(**kwargs)
        self._buffers: Dict[int, Tuple[StageBuffer, StageBuffer]] = {}

    def pair(self, rows: int, width: int) -> Tuple[StageBuffer, StageBuffer]:
        """Return two buffers able to hold ``rows`` rows of ``width`` residues."""
        pair = self._buffers.get(width)
        if pair is None or pair[0].capacity < rows:
            logger.debug("Allocating staging buffers of %d x %d.", rows, width)
            pair = (StageBuffer(rows, width), StageBuffer(rows, width))
            self._buffers[width] = pair
        return pair


_local = threading.local()


def current_workspace() -> Workspace:
    """Return the workspace owned by the calling thread."""
    workspace = getattr(_local, "workspace", None)
    if workspace is None:
        workspace = Workspace()
        _local.workspace = workspace
    return workspace


def install_workspace(workspace: Workspace) -> None:
    """Make a workspace the one used by the calling thread."""
    _local.workspace = workspace
