"""Assemble star graphs into a multigraph, aggregate parallel edges, run geodesics.

Every star contributes its spokes and outer edges to a multigraph on the full
vertex set; a merge scheme collapses the parallel contributions of each edge
into one weight; all-pairs shortest paths over the result give the global
metric. Only edges are tracked: higher-order simplices cannot change pairwise
shortest-path distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .backends import shortest_paths_from_edges
from .matrices import DissimilarityMatrix
from .schemes import MScheme
from .stars import StarGraph

__all__ = [
    "MultiGraph",
    "HazyGraph",
    "GeodesicResult",
    "DisconnectedGraphError",
    "assemble",
    "aggregate",
    "geodesics",
    "star_matrix",
    "hazy_matrix",
    "save_edges",
    "load_edges",
]


@dataclass
class MultiGraph:
    """Vertex count plus unordered-pair -> list of parallel edge weights."""

    n: int
    edges: dict[tuple[int, int], list[float]]

    @property
    def contribution_count(self) -> int:
        return sum(len(v) for v in self.edges.values())


@dataclass
class HazyGraph:
    """Vertex count plus unordered-pair -> single aggregated weight."""

    n: int
    edges: dict[tuple[int, int], float]


class DisconnectedGraphError(ValueError):
    """Raised when geodesics hit a disconnected graph under the error policy."""

    def __init__(self, component_sizes: Sequence[int]):
        self.component_sizes = list(component_sizes)
        census = ", ".join(str(s) for s in self.component_sizes)
        super().__init__(
            f"graph has {len(self.component_sizes)} connected components "
            f"(sizes: {census})"
        )


def _edge_key(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def assemble(stars: Sequence[StarGraph], n: int) -> MultiGraph:
    """Collect every spoke and outer edge of every star into a multigraph.

    Contribution order is deterministic: stars by center index, spokes by
    neighbor index, outer edges by sorted endpoint pair.
    """
    edges: dict[tuple[int, int], list[float]] = {}
    for star in sorted(stars, key=lambda s: s.center):
        c = int(star.center)
        if not 0 <= c < n:
            raise IndexError(f"star center {c} out of range for n={n}")
        spoke_order = np.argsort(star.spoke_indices, kind="stable")
        for pos in spoke_order:
            v = int(star.spoke_indices[pos])
            if not 0 <= v < n:
                raise IndexError(f"neighbor {v} out of range for n={n}")
            edges.setdefault(_edge_key(c, v), []).append(float(star.spoke_weights[pos]))
        if star.outer_pairs.shape[0]:
            lo = np.minimum(star.outer_pairs[:, 0], star.outer_pairs[:, 1])
            hi = np.maximum(star.outer_pairs[:, 0], star.outer_pairs[:, 1])
            if lo.size and (lo.min() < 0 or hi.max() >= n):
                raise IndexError(f"outer edge endpoint out of range for n={n}")
            for pos in np.lexsort((hi, lo)):
                key = (int(lo[pos]), int(hi[pos]))
                edges.setdefault(_edge_key(*key), []).append(
                    float(star.outer_weights[pos]))
    return MultiGraph(n, edges)


def aggregate(mg: MultiGraph, scheme: MScheme) -> HazyGraph:
    """Fold the parallel contributions of every edge into a single weight.

    Matches ``schemes.fold`` per edge (sort ascending, left fold, inf acts as
    identity), but runs the folds for all edges in lockstep so large graphs
    stay vectorized.
    """
    items = [(key, vals) for key, vals in mg.edges.items() if vals]
    if not items:
        return HazyGraph(mg.n, {})
    lengths = np.array([len(vals) for _, vals in items], dtype=np.int64)
    flat = np.empty(int(lengths.sum()))
    pos = 0
    for _, vals in items:
        flat[pos:pos + len(vals)] = vals
        pos += len(vals)
    if np.isnan(flat).any():
        raise ValueError("edge weights contain NaN")
    if (flat < 0).any():
        raise ValueError("edge weights must be nonnegative")

    seg = np.repeat(np.arange(len(items)), lengths)
    order = np.lexsort((flat, seg))
    flat = flat[order]
    starts = np.zeros(len(items), dtype=np.int64)
    np.cumsum(lengths[:-1], out=starts[1:])

    acc = flat[starts].copy()
    for round_ in range(1, int(lengths.max())):
        mask = lengths > round_
        acc[mask] = scheme.apply_array(acc[mask], flat[starts[mask] + round_])

    return HazyGraph(mg.n, {key: float(a) for (key, _), a in zip(items, acc)})


@dataclass
class GeodesicResult:
    """All-pairs graph distances plus bookkeeping from the disconnect policy."""

    matrix: DissimilarityMatrix
    kept_indices: Optional[np.ndarray] = None
    capped_pairs: int = 0
    component_sizes: Optional[list[int]] = None


def _components_from_dist(dist: np.ndarray) -> list[np.ndarray]:
    """Connected components read off a finished distance matrix."""
    n = dist.shape[0]
    unseen = np.ones(n, dtype=bool)
    comps = []
    for v in range(n):
        if unseen[v]:
            members = np.nonzero(np.isfinite(dist[v]))[0]
            unseen[members] = False
            comps.append(members)
    return comps


def geodesics(g: HazyGraph, on_disconnect: str = "error",
              cap_factor: float = 3.0) -> GeodesicResult:
    """Shortest-path distances between all vertex pairs of a hazy graph.

    Disconnected pairs come out at ``inf``; the policy decides what happens
    then: ``error`` raises :class:`DisconnectedGraphError` with a component
    census, ``largest`` keeps only the largest component (ties to the one
    containing the lowest vertex index) and reports the kept indices, ``cap``
    replaces ``inf`` with the largest finite distance times ``cap_factor``.
    """
    if on_disconnect not in ("error", "largest", "cap"):
        raise ValueError(f"unknown on_disconnect policy {on_disconnect!r}")
    if cap_factor <= 0:
        raise ValueError("cap_factor must be positive")
    n = g.n
    keys = sorted(k for k, w in g.edges.items() if math.isfinite(w))
    i = np.array([k[0] for k in keys], dtype=np.int64)
    j = np.array([k[1] for k in keys], dtype=np.int64)
    w = np.array([g.edges[k] for k in keys], dtype=np.float64)
    if np.isnan(w).any():
        raise ValueError("edge weights contain NaN")
    if w.size and w.min() < 0:
        raise ValueError("negative edge weight")
    dist = shortest_paths_from_edges(n, i, j, w)

    if not np.isinf(dist).any():
        return GeodesicResult(DissimilarityMatrix(dist))

    comps = _components_from_dist(dist)
    sizes = [len(c) for c in comps]
    if on_disconnect == "error":
        raise DisconnectedGraphError(sizes)
    if on_disconnect == "largest":
        best = max(comps, key=len)
        sub = dist[np.ix_(best, best)]
        return GeodesicResult(DissimilarityMatrix(sub), kept_indices=best,
                              component_sizes=sizes)
    # cap: bounded stand-in distance for cross-component pairs
    finite_max = float(dist[np.isfinite(dist)].max())
    mask = np.isinf(dist)
    capped = int(mask.sum()) // 2
    dist[mask] = finite_max * cap_factor
    return GeodesicResult(DissimilarityMatrix(dist), capped_pairs=capped,
                          component_sizes=sizes)


def star_matrix(star: StarGraph, n: int) -> DissimilarityMatrix:
    """One star's contribution as a full n-point matrix (absent pairs inf)."""
    m = np.full((n, n), np.inf)
    np.fill_diagonal(m, 0.0)
    c = star.center
    m[c, star.spoke_indices] = star.spoke_weights
    m[star.spoke_indices, c] = star.spoke_weights
    if star.outer_pairs.shape[0]:
        u = star.outer_pairs[:, 0]
        v = star.outer_pairs[:, 1]
        m[u, v] = star.outer_weights
        m[v, u] = star.outer_weights
    return DissimilarityMatrix(m)


def hazy_matrix(g: HazyGraph) -> DissimilarityMatrix:
    """Dense matrix view of a hazy graph (absent pairs inf)."""
    m = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(m, 0.0)
    for (u, v), w in g.edges.items():
        m[u, v] = m[v, u] = w
    return DissimilarityMatrix(m)


def save_edges(g: HazyGraph, path) -> None:
    """Edge-list CSV ``i,j,weight`` sorted by pair."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("i,j,weight\n")
        for (u, v) in sorted(g.edges):
            fh.write(f"{u},{v},{g.edges[(u, v)]:.17g}\n")


def load_edges(path, n: int) -> HazyGraph:
    """Read an edge list written by :func:`save_edges`."""
    edges: dict[tuple[int, int], float] = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if header.strip() != "i,j,weight":
            raise ValueError(f"unexpected header {header.strip()!r}")
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected 3 fields")
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
            edges[_edge_key(u, v)] = w
    return HazyGraph(n, edges)
