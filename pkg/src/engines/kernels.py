"""
Round kernels - per-directed-edge and per-vertex neighborhood sums

Sums run column by column in a fixed order, so every row is computed
the same way whatever slice of rows a worker receives. Floating-point
addition is monotone under a fixed order, which keeps the message maps
exactly (anti)monotone in floating point as well.
"""

import concurrent.futures
from typing import Callable, Optional

import numpy as np

from ..graphs import Graph
from ..utils.logger import get_logger

# Rows per worker below which threading is not worth the overhead
MIN_ROWS_PER_WORKER = 4096


def _padded(values: np.ndarray) -> np.ndarray:
    """Append the neutral element read by padding slots"""
    return np.concatenate([values, np.zeros(1, dtype=values.dtype)])


def _row_sums(padded: np.ndarray, index: np.ndarray) -> np.ndarray:
    if index.shape[1] == 0:
        return np.zeros(index.shape[0], dtype=padded.dtype)
    acc = padded[index[:, 0]].copy()
    for j in range(1, index.shape[1]):
        acc += padded[index[:, j]]
    return acc


class RoundExecutor:
    """Runs a row kernel over a fixed number of rows, chunked across threads"""

    def __init__(self, threads: int = 1, min_rows_per_worker: int = MIN_ROWS_PER_WORKER):
        self.logger = get_logger("RoundExecutor")
        self.threads = max(1, int(threads))
        self.min_rows_per_worker = min_rows_per_worker
        self._pool: Optional[concurrent.futures.ThreadPoolExecutor] = None
        if self.threads > 1:
            self._pool = concurrent.futures.ThreadPoolExecutor(max_workers=self.threads)

    def run(self, kernel: Callable[[slice], np.ndarray], n_rows: int, dtype) -> np.ndarray:
        """
        Evaluate kernel on disjoint row slices and assemble the result

        Args:
            kernel: maps a slice of rows to the values of those rows
            n_rows: total number of rows
            dtype: dtype of the assembled output

        Returns:
            Fresh array of length n_rows
        """
        workers = min(self.threads, n_rows // self.min_rows_per_worker)
        if self._pool is None or workers < 2:
            return np.asarray(kernel(slice(0, n_rows)), dtype=dtype)

        out = np.empty(n_rows, dtype=dtype)
        bounds = np.linspace(0, n_rows, workers + 1).astype(np.int64)
        chunks = [slice(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]

        def fill(rows: slice) -> None:
            out[rows] = kernel(rows)

        futures = [self._pool.submit(fill, rows) for rows in chunks]
        for future in futures:
            future.result()
        return out

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None

    def __enter__(self) -> "RoundExecutor":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def exclusion_sums(g: Graph, values: np.ndarray,
                   executor: Optional[RoundExecutor] = None) -> np.ndarray:
    """For d = u -> v: sum of values[w -> u] over w in the neighborhood of u minus v"""
    padded = _padded(values)
    index = g.excluded_index
    if executor is None:
        return _row_sums(padded, index)
    return executor.run(lambda rows: _row_sums(padded, index[rows]), g.n_directed, padded.dtype)


def incoming_sums(g: Graph, values: np.ndarray) -> np.ndarray:
    """Per vertex v: sum of values[w -> v]"""
    return _row_sums(_padded(values), g.incoming_index)


def outgoing_sums(g: Graph, values: np.ndarray) -> np.ndarray:
    """Per vertex v: sum of values[v -> w]"""
    return _row_sums(_padded(values), g.outgoing_index)


def vertex_loads(g: Graph, x: np.ndarray) -> np.ndarray:
    """Per vertex v: sum of x_e over edges incident to v"""
    # edge k carries directed ids 2k and 2k + 1; either one lands on each endpoint
    return incoming_sums(g, np.repeat(np.asarray(x, dtype=float), 2))
