"""Backend selection for the shortest-path kernel.

Two interchangeable implementations exist:

* ``numba``: per-source Dijkstra over a CSR edge list, JIT-compiled and
  parallel across sources. Exploits the sparsity of k-NN derived graphs.
* ``numpy``: dense vectorized Floyd-Warshall. No JIT; cubic but adequate at
  desk scale.

The active backend is chosen by the ``HAZEMAP_BACKEND`` environment variable
(``numba`` or ``numpy``). Unset, numba is used when importable, numpy
otherwise. Both produce identical distances on the same input graph.
"""

from __future__ import annotations

import os

import numpy as np

BACKEND_ENV = "HAZEMAP_BACKEND"

_numba_kernels = None
_numba_failed = False


def _load_numba_kernels():
    global _numba_kernels, _numba_failed
    if _numba_kernels is None and not _numba_failed:
        try:
            from . import _kernels_numba
            _numba_kernels = _kernels_numba
        except ImportError:
            _numba_failed = True
    return _numba_kernels


def backend_name() -> str:
    """Resolve the active backend from the environment."""
    choice = os.environ.get(BACKEND_ENV, "").strip().lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if _load_numba_kernels() is None:
            raise RuntimeError(
                f"{BACKEND_ENV}=numba requested but numba is not importable"
            )
        return "numba"
    if choice:
        raise ValueError(
            f"unknown {BACKEND_ENV}={choice!r}; expected 'numba' or 'numpy'"
        )
    return "numba" if _load_numba_kernels() is not None else "numpy"


def _symmetrize_min(dist: np.ndarray) -> np.ndarray:
    """Take the smaller float evaluation of each symmetric pair.

    Per-source Dijkstra sums each undirected path in both traversal orders;
    the two results can differ in the last ulp. Both are evaluations of the
    same chain infimum, so the smaller one is kept, restoring bitwise
    symmetry.
    """
    return np.minimum(dist, dist.T)


def _csr_from_edges(n, src, dst, w):
    """Sorted CSR adjacency from directed edge arrays."""
    order = np.lexsort((dst, src))
    src = src[order]
    dst = dst[order]
    w = w[order]
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, dst.astype(np.int64), w.astype(np.float64)


def shortest_paths_from_edges(
    n: int, i: np.ndarray, j: np.ndarray, w: np.ndarray
) -> np.ndarray:
    """All-pairs shortest paths of an undirected weighted edge list.

    Parameters
    ----------
    n : int
        Vertex count.
    i, j : int arrays
        Endpoint indices (one entry per undirected edge, ``i != j``).
    w : float array
        Nonnegative finite edge weights.
    """
    i = np.asarray(i, dtype=np.int64)
    j = np.asarray(j, dtype=np.int64)
    w = np.asarray(w, dtype=np.float64)
    if w.size and w.min() < 0:
        raise ValueError("negative edge weight")
    if backend_name() == "numba":
        kern = _load_numba_kernels()
        src = np.concatenate([i, j])
        dst = np.concatenate([j, i])
        ww = np.concatenate([w, w])
        indptr, indices, weights = _csr_from_edges(n, src, dst, ww)
        dist = kern.dijkstra_all_pairs(indptr, indices, weights, n)
        return _symmetrize_min(dist)
    from ._kernels_numpy import shortest_paths_dense
    dense = np.full((n, n), np.inf)
    np.fill_diagonal(dense, 0.0)
    # duplicate edges keep the minimum weight
    np.minimum.at(dense, (i, j), w)
    np.minimum.at(dense, (j, i), w)
    return shortest_paths_dense(dense)


def shortest_paths_from_dense(d: np.ndarray) -> np.ndarray:
    """All-pairs shortest paths where ``d`` is a dense symmetric weight matrix.

    ``inf`` marks absent edges; the diagonal is ignored.
    """
    d = np.asarray(d, dtype=np.float64)
    if backend_name() == "numba":
        n = d.shape[0]
        off = ~np.eye(n, dtype=bool)
        finite = np.isfinite(d) & off
        i, j = np.nonzero(finite)
        kern = _load_numba_kernels()
        indptr, indices, weights = _csr_from_edges(n, i.astype(np.int64),
                                                   j.astype(np.int64), d[i, j])
        dist = kern.dijkstra_all_pairs(indptr, indices, weights, n)
        return _symmetrize_min(dist)
    from ._kernels_numpy import shortest_paths_dense
    return shortest_paths_dense(d)
