"""2D embedding of a finite metric: classical MDS init, then SMACOF refinement.

Classical MDS double-centers the squared distances and scales the top
eigenvectors; SMACOF then iterates the Guttman transform, which never
increases the stress

    sum over unordered pairs (i < j) of (|y_i - y_j| - D[i, j])^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .matrices import DissimilarityMatrix
from .stars import _pairwise_distances

__all__ = ["MdsConfig", "Embedding", "classical_mds", "smacof", "stress"]


@dataclass
class MdsConfig:
    max_iterations: int = 500
    relative_stress_tolerance: float = 1e-6
    eigen_tolerance: float = 1e-10
    eigen_max_iterations: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1 or self.eigen_max_iterations < 1:
            raise ValueError("iteration limits must be >= 1")
        if self.relative_stress_tolerance <= 0 or self.eigen_tolerance <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class Embedding:
    """Final coordinates plus the stress trajectory that produced them."""

    coords: np.ndarray
    stress: float
    iterations_used: int
    stress_history: np.ndarray = field(repr=False)


def _dissim_values(d) -> np.ndarray:
    if isinstance(d, DissimilarityMatrix):
        return d.values
    return np.asarray(d, dtype=np.float64)


def _top_eigenpairs(b: np.ndarray, dim: int, tol: float, max_iter: int,
                    seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Leading eigenpairs of a symmetric matrix by deflated power iteration.

    Iterates on ``b + shift*I`` (shift = inf-norm bound on the spectrum) so
    the most positive eigenvalues dominate even when ``b`` is indefinite.
    Previously found vectors are projected out every step.
    """
    n = b.shape[0]
    rng = np.random.default_rng(seed)
    shift = float(np.abs(b).sum(axis=1).max())
    vals = np.zeros(dim)
    vecs = np.zeros((n, dim))
    for m in range(min(dim, n)):
        v = rng.standard_normal(n)
        for p in range(m):
            v -= (vecs[:, p] @ v) * vecs[:, p]
        norm = np.linalg.norm(v)
        if norm == 0.0:
            continue
        v /= norm
        lam_shifted = 0.0
        for _ in range(max_iter):
            w = b @ v + shift * v
            for p in range(m):
                w -= (vecs[:, p] @ w) * vecs[:, p]
            norm = np.linalg.norm(w)
            if norm == 0.0:
                lam_shifted = 0.0
                break
            v = w / norm
            w = b @ v + shift * v
            for p in range(m):
                w -= (vecs[:, p] @ w) * vecs[:, p]
            lam_shifted = v @ w
            if np.linalg.norm(w - lam_shifted * v) <= tol * max(1.0, abs(lam_shifted)):
                break
        vals[m] = lam_shifted - shift
        vecs[:, m] = v
    return vals, vecs


def classical_mds(d, dim: int = 2, cfg: MdsConfig | None = None) -> np.ndarray:
    """Classical (Torgerson) MDS coordinates of a finite symmetric matrix.

    Double-centers the squared distances, takes the ``dim`` leading
    eigenpairs (negative eigenvalues clipped to zero), and returns centered
    coordinates with columns ordered by descending eigenvalue.
    """
    cfg = cfg or MdsConfig()
    a = _dissim_values(d)
    if not np.isfinite(a).all():
        raise ValueError("classical MDS requires finite distances")
    if not np.array_equal(a, a.T):
        raise ValueError("classical MDS requires a symmetric matrix")
    sq = a * a
    row = sq.mean(axis=1, keepdims=True)
    col = sq.mean(axis=0, keepdims=True)
    b = -0.5 * (sq - row - col + sq.mean())
    vals, vecs = _top_eigenpairs(b, dim, cfg.eigen_tolerance,
                                 cfg.eigen_max_iterations, cfg.seed)
    order = np.argsort(vals)[::-1]
    vals = np.maximum(vals[order], 0.0)
    coords = vecs[:, order] * np.sqrt(vals)[None, :]
    return coords - coords.mean(axis=0)


def stress(d, coords: np.ndarray) -> float:
    """Sum of squared differences between embedded and target distances."""
    a = _dissim_values(d)
    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim != 2 or coords.shape[0] != a.shape[0]:
        raise ValueError(
            f"coords shape {coords.shape} does not match matrix n={a.shape[0]}")
    diff = _pairwise_distances(coords) - a
    iu = np.triu_indices(a.shape[0], 1)
    return float(np.sum(diff[iu] ** 2))


def smacof(d, init: np.ndarray, cfg: MdsConfig | None = None) -> Embedding:
    """Minimize stress from ``init`` by iterating the Guttman transform.

    Stops at ``max_iterations`` or when the relative per-step stress decrease
    falls below ``relative_stress_tolerance``. The recorded history never
    increases (coincident points contribute zero to the transform, the
    standard majorization convention).
    """
    cfg = cfg or MdsConfig()
    a = _dissim_values(d)
    if not np.isfinite(a).all():
        raise ValueError("SMACOF requires finite distances")
    if not np.array_equal(a, a.T):
        raise ValueError("SMACOF requires a symmetric matrix")
    x = np.array(init, dtype=np.float64, copy=True)
    if not np.isfinite(x).all():
        raise ValueError("init contains non-finite values")
    if x.ndim != 2 or x.shape[0] != a.shape[0]:
        raise ValueError(
            f"init shape {x.shape} does not match matrix n={a.shape[0]}")

    n = a.shape[0]
    prev = stress(a, x)
    history = [prev]
    used = 0
    for _ in range(cfg.max_iterations):
        dist = _pairwise_distances(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dist > 0.0, a / dist, 0.0)
        np.fill_diagonal(ratio, 0.0)
        bmat = -ratio
        np.fill_diagonal(bmat, ratio.sum(axis=1))
        x_new = (bmat @ x) / n
        cur = stress(a, x_new)
        if cur > prev:
            # float-noise uptick at the convergence plateau; keep the old point
            break
        x = x_new
        used += 1
        history.append(cur)
        if prev == 0.0 or (prev - cur) < cfg.relative_stress_tolerance * prev:
            break
        prev = cur

    x = x - x.mean(axis=0)
    return Embedding(coords=x, stress=history[-1], iterations_used=used,
                     stress_history=np.array(history))
