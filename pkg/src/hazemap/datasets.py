"""Seeded toy-manifold generators and CSV point-cloud ingestion.

All generators draw from one ``numpy.random.default_rng(seed)`` (PCG64)
stream with a fixed draw order (documented per generator), so clouds are
bit-identical across platforms for the same spec. Gaussian noise, when
requested, is always drawn last.

Each cloud carries an intrinsic parameter for coloring and validation:
the roll angle for the swiss rolls, the major angle for the torus, the
moon label for the moons, the strip angle for the mobius band.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .stars import PointCloud

__all__ = ["DatasetSpec", "generate", "load_csv", "DATASET_KINDS"]

DATASET_KINDS = ("swiss_roll", "swiss_roll_hole", "torus", "two_moons",
                 "mobius", "csv")

# Swiss roll: (t cos t, h, t sin t), t in [1.5 pi, 4.5 pi], h in [0, 21];
# the hole variant rejects (t, h) inside the central rectangle below.
ROLL_T_RANGE = (1.5 * math.pi, 4.5 * math.pi)
ROLL_HEIGHT = 21.0
ROLL_HOLE_T = (2.7 * math.pi, 3.3 * math.pi)
ROLL_HOLE_H = (8.0, 13.0)

TORUS_MAJOR = 2.0
TORUS_MINOR = 1.0

MOONS_OFFSET = (1.0, 0.5)


@dataclass(frozen=True)
class DatasetSpec:
    """What to generate: kind, size, noise level, seed, or a CSV path."""

    kind: str
    n: int = 1000
    noise: float = 0.0
    seed: int = 0
    path: Optional[str] = None

    def __post_init__(self):
        if self.kind not in DATASET_KINDS:
            raise ValueError(f"unknown dataset kind {self.kind!r}")
        if self.kind == "csv":
            if not self.path:
                raise ValueError("csv dataset needs a path")
            return
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.noise < 0:
            raise ValueError("noise must be >= 0")


def _swiss_roll(rng: np.random.Generator, n: int, hole: bool):
    """Draw order: t batch, h batch; repeated for rejected points (hole)."""
    if not hole:
        t = rng.uniform(*ROLL_T_RANGE, n)
        h = rng.uniform(0.0, ROLL_HEIGHT, n)
    else:
        ts, hs = [], []
        needed = n
        while needed > 0:
            t_try = rng.uniform(*ROLL_T_RANGE, max(needed * 2, 16))
            h_try = rng.uniform(0.0, ROLL_HEIGHT, t_try.size)
            inside = ((ROLL_HOLE_T[0] <= t_try) & (t_try <= ROLL_HOLE_T[1])
                      & (ROLL_HOLE_H[0] <= h_try) & (h_try <= ROLL_HOLE_H[1]))
            keep = ~inside
            ts.append(t_try[keep][:needed])
            hs.append(h_try[keep][:needed])
            needed = n - sum(a.size for a in ts)
        t = np.concatenate(ts)
        h = np.concatenate(hs)
    coords = np.column_stack([t * np.cos(t), h, t * np.sin(t)])
    return coords, t


def _torus(rng: np.random.Generator, n: int):
    """Draw order: major angle u, minor angle v."""
    u = rng.uniform(0.0, 2.0 * math.pi, n)
    v = rng.uniform(0.0, 2.0 * math.pi, n)
    ring = TORUS_MAJOR + TORUS_MINOR * np.cos(v)
    coords = np.column_stack([ring * np.cos(u), ring * np.sin(u),
                              TORUS_MINOR * np.sin(v)])
    return coords, u


def _two_moons(rng: np.random.Generator, n: int):
    """Draw order: outer angles (first ceil(n/2) points), then inner angles."""
    n_outer = (n + 1) // 2
    n_inner = n - n_outer
    a = rng.uniform(0.0, math.pi, n_outer)
    b = rng.uniform(0.0, math.pi, n_inner)
    outer = np.column_stack([np.cos(a), np.sin(a)])
    inner = np.column_stack([MOONS_OFFSET[0] - np.cos(b),
                             MOONS_OFFSET[1] - np.sin(b)])
    coords = np.vstack([outer, inner])
    label = np.concatenate([np.zeros(n_outer), np.ones(n_inner)])
    return coords, label


def _mobius(rng: np.random.Generator, n: int):
    """Draw order: strip angle t, width position w."""
    t = rng.uniform(0.0, 2.0 * math.pi, n)
    w = rng.uniform(-1.0, 1.0, n)
    half = 0.5 * w
    ring = 1.0 + half * np.cos(0.5 * t)
    coords = np.column_stack([ring * np.cos(t), ring * np.sin(t),
                              half * np.sin(0.5 * t)])
    return coords, t


def generate(spec: DatasetSpec) -> PointCloud:
    """Materialize a dataset spec into a point cloud."""
    if spec.kind == "csv":
        return load_csv(spec.path)
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "swiss_roll":
        coords, param = _swiss_roll(rng, spec.n, hole=False)
    elif spec.kind == "swiss_roll_hole":
        coords, param = _swiss_roll(rng, spec.n, hole=True)
    elif spec.kind == "torus":
        coords, param = _torus(rng, spec.n)
    elif spec.kind == "two_moons":
        coords, param = _two_moons(rng, spec.n)
    else:
        coords, param = _mobius(rng, spec.n)
    if spec.noise > 0:
        coords = coords + rng.normal(0.0, spec.noise, coords.shape)
    return PointCloud(coords=coords, intrinsic_param=param)


def load_csv(path) -> PointCloud:
    """Read a point cloud from comma-separated numeric rows.

    An optional header row is detected by failing to parse as numbers; a
    final column labeled ``param`` is split off as the intrinsic parameter.
    Ragged or non-numeric rows raise ``ValueError`` naming the row.
    """
    with open(path, encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if not rows:
        raise ValueError(f"{path}: no data rows")

    header: Optional[list[str]] = None
    try:
        [float(c) for c in rows[0]]
    except ValueError:
        header = [c.strip().lower() for c in rows[0]]
        rows = rows[1:]
        if not rows:
            raise ValueError(f"{path}: header but no data rows") from None

    width = len(rows[0])
    data = np.empty((len(rows), width))
    for r, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ValueError(
                f"{path}: row {r} has {len(row)} fields, expected {width}")
        try:
            data[r - 1] = [float(c) for c in row]
        except ValueError:
            raise ValueError(f"{path}: row {r} has a non-numeric field") from None

    param = None
    if header is not None and header and header[-1] == "param":
        param = data[:, -1]
        data = data[:, :-1]
    return PointCloud(coords=data, intrinsic_param=param)
