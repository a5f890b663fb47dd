"""Exact k-nearest-neighbor search and density-normalized star graphs.

Each data point gets a local star graph: spokes to its k nearest neighbors
with weights rescaled by the local neighborhood size (distance to the k-th
neighbor), optionally shifted by the distance to the first. Edges between the
outer vertices can be absent, chained through the center, or taken from
rescaled ambient distances.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .matrices import DissimilarityMatrix

__all__ = ["PointCloud", "NeighborList", "StarGraph", "knn", "build_star"]

OUTER_MODES = ("none", "chain", "ambient")


@dataclass(frozen=True)
class PointCloud:
    """Points in Euclidean space, optionally tagged with a generator parameter."""

    coords: np.ndarray
    intrinsic_param: Optional[np.ndarray] = None

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=np.float64)
        if coords.ndim != 2:
            raise ValueError(f"coords must be 2-d, got shape {coords.shape}")
        if coords.shape[0] < 1:
            raise ValueError("point cloud must contain at least one point")
        if not np.isfinite(coords).all():
            raise ValueError("coords must be finite")
        object.__setattr__(self, "coords", coords)
        if self.intrinsic_param is not None:
            param = np.asarray(self.intrinsic_param, dtype=np.float64)
            if param.shape != (coords.shape[0],):
                raise ValueError("intrinsic_param must have one entry per point")
            object.__setattr__(self, "intrinsic_param", param)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]


@dataclass(frozen=True)
class NeighborList:
    """The k nearest others of one point, closest first, ties by index."""

    center: int
    neighbors: np.ndarray
    distances: np.ndarray


@dataclass(frozen=True)
class StarGraph:
    """One point's locally renormalized neighborhood.

    ``spoke_weights[j]`` is the rescaled center-to-neighbor distance, in the
    neighbor order of the source :class:`NeighborList`. ``outer_pairs`` and
    ``outer_weights`` hold edges between neighbors (empty in mode ``none``).
    """

    center: int
    spoke_indices: np.ndarray
    spoke_weights: np.ndarray
    rho: float
    sigma: float
    outer_pairs: np.ndarray = field(
        default_factory=lambda: np.empty((0, 2), dtype=np.int64))
    outer_weights: np.ndarray = field(
        default_factory=lambda: np.empty(0, dtype=np.float64))

    @property
    def k(self) -> int:
        return self.spoke_indices.shape[0]

    def local_matrix(self) -> DissimilarityMatrix:
        """Dissimilarity matrix on [center] + neighbors; absent pairs are inf."""
        idx = np.concatenate(([self.center], self.spoke_indices))
        pos = {int(v): p for p, v in enumerate(idx)}
        m = np.full((idx.size, idx.size), np.inf)
        np.fill_diagonal(m, 0.0)
        for j, w in zip(self.spoke_indices, self.spoke_weights):
            m[0, pos[int(j)]] = m[pos[int(j)], 0] = w
        for (u, v), w in zip(self.outer_pairs, self.outer_weights):
            m[pos[int(u)], pos[int(v)]] = m[pos[int(v)], pos[int(u)]] = w
        return DissimilarityMatrix(m)


def _pairwise_distances(coords: np.ndarray) -> np.ndarray:
    """Dense Euclidean distance matrix via one Gram product.

    Squared norms are read off the Gram diagonal so exact duplicate points
    come out at exactly zero distance.
    """
    g = coords @ coords.T
    g += g.T  # force bitwise symmetry; BLAS output is only symmetric to rounding
    g *= 0.5
    sq = np.diagonal(g).copy()
    g *= -2.0
    g += sq[:, None] + sq[None, :]  # symmetric term added to a symmetric term
    np.maximum(g, 0.0, out=g)
    np.sqrt(g, out=g)
    return g


def knn(points: PointCloud, k: int) -> list[NeighborList]:
    """Exact brute-force k nearest neighbors under Euclidean distance.

    Ties are broken by ascending point index; a point never lists itself.
    Requires ``1 <= k < n``.
    """
    n = points.n
    if not 1 <= k < n:
        raise ValueError(f"k must satisfy 1 <= k < n, got k={k}, n={n}")
    dist = _pairwise_distances(points.coords)
    np.fill_diagonal(dist, np.inf)
    order = np.argsort(dist, axis=1, kind="stable")[:, :k]
    rows = np.arange(n)[:, None]
    dists = dist[rows, order]
    return [
        NeighborList(center=i, neighbors=order[i].copy(), distances=dists[i].copy())
        for i in range(n)
    ]


def build_star(nl: NeighborList, subtract_rho: bool, outer_mode: str,
               outer_factor: float = 1.0,
               points: Optional[PointCloud] = None) -> StarGraph:
    """Renormalize a neighbor list into a star graph.

    Spoke j gets weight ``(d_j - rho * subtract_rho) / sigma`` where ``rho``
    is the first and ``sigma`` the k-th neighbor distance. Outer modes:

    * ``none``: no edges between neighbors (absent pairs read as inf).
    * ``chain``: weight ``outer_factor * (w_j + w_l)`` for every neighbor
      pair, going through the center. Factor 1 keeps the local triangle
      inequality; larger factors always break it, smaller ones need enough
      spread between the nearest and farthest spoke.
    * ``ambient``: Euclidean distance between the neighbors divided by
      ``sigma``, so units match the spokes. Requires ``points``.

    A star whose neighbors all coincide with the center (``sigma == 0``)
    falls back to ``sigma = 1`` with a warning, leaving zero weights.
    """
    if outer_mode not in OUTER_MODES:
        raise ValueError(f"outer_mode must be one of {OUTER_MODES}")
    d = np.asarray(nl.distances, dtype=np.float64)
    rho = float(d[0])
    sigma = float(d[-1])
    if sigma == 0.0:
        warnings.warn(
            f"point {nl.center} has {d.size} zero-distance neighbors; "
            "using sigma=1", stacklevel=2)
        sigma = 1.0
    weights = (d - rho) / sigma if subtract_rho else d / sigma

    if outer_mode == "none":
        return StarGraph(nl.center, np.asarray(nl.neighbors), weights, rho, sigma)

    k = d.size
    ju, lu = np.triu_indices(k, 1)
    pairs = np.stack([nl.neighbors[ju], nl.neighbors[lu]], axis=1)
    if outer_mode == "chain":
        if not outer_factor > 0:
            raise ValueError("chain factor must be positive")
        outer = outer_factor * (weights[ju] + weights[lu])
    else:
        if points is None:
            raise ValueError("ambient outer mode needs the point cloud")
        diffs = points.coords[pairs[:, 0]] - points.coords[pairs[:, 1]]
        outer = np.sqrt(np.einsum("ij,ij->i", diffs, diffs)) / sigma
    return StarGraph(nl.center, np.asarray(nl.neighbors), weights, rho, sigma,
                     pairs, outer)
