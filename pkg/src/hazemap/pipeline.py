"""End-to-end pipeline: dataset -> stars -> merge -> geodesics -> embedding.

Produces three artifacts per run in the output directory: ``coords.csv``
(``index,x,y`` rows), ``plot.svg`` (scatter colored by the intrinsic
parameter), and ``report.json`` (config echo, stage timings, edge counts,
violation counts before completion, stress trajectory).
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .datasets import DatasetSpec, generate
from .graphs import aggregate, assemble, geodesics, hazy_matrix
from .matrices import validate
from .mds import MdsConfig, classical_mds, smacof
from .schemes import parse_scheme
from .stars import OUTER_MODES, build_star, knn
from .svg import save_scatter

__all__ = ["PipelineConfig", "RunReport", "run"]


@dataclass
class PipelineConfig:
    dataset: DatasetSpec
    k: int = 15
    scheme: str = "min"
    subtract_rho: bool = False
    outer_mode: str = "chain"
    outer_factor: float = 1.0
    on_disconnect: str = "error"
    cap_factor: float = 3.0
    mds: MdsConfig = field(default_factory=MdsConfig)
    out_dir: str = "out"

    def validated(self) -> "PipelineConfig":
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.outer_mode not in OUTER_MODES:
            raise ValueError(f"outer_mode must be one of {OUTER_MODES}")
        if self.on_disconnect not in ("error", "largest", "cap"):
            raise ValueError(f"unknown on_disconnect {self.on_disconnect!r}")
        parse_scheme(self.scheme)
        return self

    def as_dict(self) -> dict:
        d = dataclasses.asdict(self)
        return d


@dataclass
class RunReport:
    config: dict
    timings: dict[str, float]
    contribution_count: int
    unique_edges: int
    violations_pre_completion: int
    violations_truncated: bool
    kept_points: int
    kept_indices: Optional[list[int]]
    capped_pairs: int
    final_stress: float
    iterations_used: int
    stress_history: list[float]
    outputs: dict[str, str]

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


class _Timer:
    def __init__(self):
        self.timings: dict[str, float] = {}
        self._last = time.perf_counter()

    def lap(self, stage: str):
        now = time.perf_counter()
        self.timings[stage] = now - self._last
        self._last = now


def _write_coords_csv(path: Path, coords: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("index,x,y\n")
        for i, (x, y) in enumerate(coords):
            fh.write(f"{i},{x:.17g},{y:.17g}\n")


def run(config: PipelineConfig) -> RunReport:
    """Execute the full pipeline and write artifacts to ``config.out_dir``."""
    config.validated()
    scheme = parse_scheme(config.scheme)
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    timer = _Timer()

    points = generate(config.dataset)
    timer.lap("dataset")

    neighbor_lists = knn(points, config.k)
    timer.lap("knn")

    stars = [
        build_star(nl, config.subtract_rho, config.outer_mode,
                   config.outer_factor, points)
        for nl in neighbor_lists
    ]
    timer.lap("stars")

    mg = assemble(stars, points.n)
    timer.lap("assemble")

    hg = aggregate(mg, scheme)
    timer.lap("aggregate")

    pre = validate(hazy_matrix(hg), cap=100)
    timer.lap("validate_pre")

    geo = geodesics(hg, config.on_disconnect, config.cap_factor)
    timer.lap("geodesics")

    init = classical_mds(geo.matrix, 2, config.mds)
    timer.lap("classical_mds")

    emb = smacof(geo.matrix, init, config.mds)
    timer.lap("smacof")

    color: Optional[np.ndarray] = points.intrinsic_param
    if geo.kept_indices is not None and color is not None:
        color = color[geo.kept_indices]

    coords_path = out / "coords.csv"
    svg_path = out / "plot.svg"
    report_path = out / "report.json"
    _write_coords_csv(coords_path, emb.coords)
    save_scatter(svg_path, emb.coords, color)
    timer.lap("artifacts")

    report = RunReport(
        config=config.as_dict(),
        timings=timer.timings,
        contribution_count=mg.contribution_count,
        unique_edges=len(hg.edges),
        violations_pre_completion=len(pre.violations),
        violations_truncated=pre.truncated,
        kept_points=geo.matrix.n,
        kept_indices=(None if geo.kept_indices is None
                      else [int(i) for i in geo.kept_indices]),
        capped_pairs=geo.capped_pairs,
        final_stress=emb.stress,
        iterations_used=emb.iterations_used,
        stress_history=[float(s) for s in emb.stress_history],
        outputs={
            "coords_csv": str(coords_path),
            "plot_svg": str(svg_path),
            "report_json": str(report_path),
        },
    )
    with open(report_path, "w", encoding="utf-8") as fh:
        json.dump(report.as_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return report
