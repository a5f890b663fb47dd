"""Dissimilarity matrices: duality, merging, validation, shortest-path completion.

A dissimilarity matrix is square, nonnegative (``inf`` allowed), with a zero
diagonal. Symmetry and the triangle inequality are *not* assumed; they are
checked, and the triangle inequality can be restored by chain-infimum
completion (all-pairs shortest paths over the finite entries).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .backends import shortest_paths_from_dense
from .schemes import MScheme

__all__ = [
    "DissimilarityMatrix",
    "TriangleViolation",
    "ValidationReport",
    "dual",
    "merge_pointwise",
    "symmetrize",
    "metric_completion",
    "validate",
    "diameter",
    "save_csv",
    "load_csv",
]


class DissimilarityMatrix:
    """Immutable square matrix of extended nonnegative values, zero diagonal."""

    def __init__(self, entries):
        arr = np.array(entries, dtype=np.float64, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        if np.isnan(arr).any():
            raise ValueError("matrix contains NaN")
        with np.errstate(invalid="ignore"):
            if (arr < 0).any():
                raise ValueError("matrix contains negative entries")
        if arr.shape[0] and np.diagonal(arr).any():
            raise ValueError("diagonal must be zero")
        arr.flags.writeable = False
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def n(self) -> int:
        return self._values.shape[0]

    @cached_property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self._values, self._values.T))

    @cached_property
    def is_uber_metric(self) -> bool:
        if not self.is_symmetric:
            return False
        return not validate(self, cap=1).violations

    def __getitem__(self, idx):
        return self._values[idx]

    def __eq__(self, other) -> bool:
        return (isinstance(other, DissimilarityMatrix)
                and np.array_equal(self._values, other._values))

    def __repr__(self) -> str:
        return f"DissimilarityMatrix(n={self.n})"


@dataclass(frozen=True)
class TriangleViolation:
    """A triple (i, j, k) where going around through j is a shortcut."""

    i: int
    j: int
    k: int
    lhs: float  # D[i, k]
    rhs: float  # D[i, j] + D[j, k]


@dataclass
class ValidationReport:
    """Triangle-inequality violations plus a symmetry summary."""

    violations: list[TriangleViolation]
    is_symmetric: bool
    max_asymmetry: float
    truncated: bool

    @property
    def is_uber_metric(self) -> bool:
        return self.is_symmetric and not self.violations


def dual(d: DissimilarityMatrix) -> DissimilarityMatrix:
    """Swap the orientation of every pair (the transpose)."""
    return DissimilarityMatrix(d.values.T)


def merge_pointwise(d1: DissimilarityMatrix, d2: DissimilarityMatrix,
                    scheme: MScheme) -> DissimilarityMatrix:
    """Merge two matrices entry by entry with a scheme."""
    if d1.n != d2.n:
        raise ValueError(f"dimension mismatch: {d1.n} vs {d2.n}")
    return DissimilarityMatrix(scheme.apply_array(d1.values, d2.values))


def symmetrize(d: DissimilarityMatrix, scheme: MScheme) -> DissimilarityMatrix:
    """Merge a matrix with its dual, yielding a symmetric matrix."""
    return merge_pointwise(d, dual(d), scheme)


def metric_completion(d: DissimilarityMatrix) -> DissimilarityMatrix:
    """Chain-infimum completion: shortest-path distances over finite entries.

    The result never exceeds the input, satisfies the triangle inequality,
    equals the input wherever it already did, and keeps ``inf`` for pairs with
    no finite-weight chain between them.
    """
    if not d.is_symmetric:
        raise ValueError("metric completion requires a symmetric matrix")
    return DissimilarityMatrix(shortest_paths_from_dense(d.values))


def validate(d: DissimilarityMatrix, cap: int = 100) -> ValidationReport:
    """Scan all triples for triangle-inequality violations.

    Stops collecting after ``cap`` violations (``truncated`` is set) to keep
    the cubic scan bounded when a matrix is badly non-metric. An ``inf`` entry
    with a finite two-hop detour counts as a violation.
    """
    a = d.values
    n = d.n
    violations: list[TriangleViolation] = []
    truncated = False
    with np.errstate(invalid="ignore"):
        for j in range(n):
            via = a[:, j, None] + a[None, j, :]
            bad = a > via
            if bad.any():
                for i, k in zip(*np.nonzero(bad)):
                    violations.append(
                        TriangleViolation(int(i), int(j), int(k),
                                          float(a[i, k]), float(via[i, k]))
                    )
                    if len(violations) >= cap:
                        truncated = True
                        break
            if truncated:
                break

    eq = a == a.T
    symmetric = bool(eq.all())
    if symmetric:
        max_asym = 0.0
    else:
        mism = ~eq
        if (~np.isfinite(a) & mism).any() or (~np.isfinite(a.T) & mism).any():
            max_asym = float("inf")
        else:
            max_asym = float(np.max(np.abs(a[mism] - a.T[mism])))
    return ValidationReport(violations, symmetric, max_asym, truncated)


def diameter(d: DissimilarityMatrix) -> float:
    """Largest entry of the matrix."""
    if d.n == 0:
        return 0.0
    return float(np.max(d.values))


def save_csv(d: DissimilarityMatrix, path) -> None:
    """Write as n rows of n comma-separated values; ``inf`` spelled out."""
    np.savetxt(path, d.values, delimiter=",", fmt="%.17g")


def load_csv(path) -> DissimilarityMatrix:
    """Read a matrix written by :func:`save_csv`."""
    arr = np.loadtxt(path, delimiter=",", ndmin=2)
    return DissimilarityMatrix(arr)
