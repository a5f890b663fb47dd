"""Pure-numpy fallback for the shortest-path kernel.

Dense, row-vectorized Floyd-Warshall. Cubic in the vertex count but free of
any JIT dependency; selected via the ``HAZEMAP_BACKEND=numpy`` env flag.
"""

import numpy as np


def shortest_paths_dense(d0: np.ndarray) -> np.ndarray:
    """All-pairs shortest paths of a dense nonnegative weight matrix.

    ``d0[i, j]`` is the direct edge weight (``inf`` for absent edges). The
    diagonal is forced to zero. Updates happen in place on a copy, one pivot
    row at a time.
    """
    dist = np.array(d0, dtype=np.float64, copy=True)
    np.fill_diagonal(dist, 0.0)
    n = dist.shape[0]
    buf = np.empty_like(dist)
    for k in range(n):
        np.add.outer(dist[:, k], dist[k, :], out=buf)
        np.minimum(dist, buf, out=dist)
    return dist
