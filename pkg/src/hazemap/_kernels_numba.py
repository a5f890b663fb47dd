"""Numba kernels for the hot graph loops.

Imported lazily by :mod:`hazemap.backends`; do not import this module
directly unless numba is known to be installed.
"""

import numpy as np
from numba import njit, prange


@njit(cache=True)
def _dijkstra_one(indptr, indices, weights, source, dist):
    """Single-source Dijkstra over a CSR graph, writing into ``dist``.

    Uses an array-backed binary min-heap with lazy deletion. Heap capacity
    is E + 1: every relaxation pushes at most once.
    """
    n = dist.shape[0]
    for i in range(n):
        dist[i] = np.inf
    dist[source] = 0.0
    done = np.zeros(n, dtype=np.bool_)

    cap = indptr[n] + 1
    heap_d = np.empty(cap, dtype=np.float64)
    heap_v = np.empty(cap, dtype=np.int64)
    heap_d[0] = 0.0
    heap_v[0] = source
    size = 1

    while size > 0:
        d = heap_d[0]
        u = heap_v[0]
        size -= 1
        heap_d[0] = heap_d[size]
        heap_v[0] = heap_v[size]
        # sift down
        i = 0
        while True:
            left = 2 * i + 1
            right = left + 1
            smallest = i
            if left < size and heap_d[left] < heap_d[smallest]:
                smallest = left
            if right < size and heap_d[right] < heap_d[smallest]:
                smallest = right
            if smallest == i:
                break
            heap_d[i], heap_d[smallest] = heap_d[smallest], heap_d[i]
            heap_v[i], heap_v[smallest] = heap_v[smallest], heap_v[i]
            i = smallest

        if done[u]:
            continue
        done[u] = True

        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            nd = d + weights[e]
            if nd < dist[v]:
                dist[v] = nd
                # push and sift up
                j = size
                heap_d[j] = nd
                heap_v[j] = v
                size += 1
                while j > 0:
                    p = (j - 1) // 2
                    if heap_d[p] <= heap_d[j]:
                        break
                    heap_d[j], heap_d[p] = heap_d[p], heap_d[j]
                    heap_v[j], heap_v[p] = heap_v[p], heap_v[j]
                    j = p


@njit(cache=True, parallel=True)
def dijkstra_all_pairs(indptr, indices, weights, n):
    """All-pairs shortest paths: one Dijkstra per source, parallel over sources."""
    out = np.empty((n, n), dtype=np.float64)
    for s in prange(n):
        _dijkstra_one(indptr, indices, weights, s, out[s])
    return out
