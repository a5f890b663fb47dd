"""Command-line pipeline runner and sweep harness.

``hazemap run`` executes one dataset -> embedding pipeline; ``hazemap sweep``
runs a scheme x parameter grid and lays the resulting plots out in a gallery
(rows are schemes, columns parameters; parameterless schemes appear in the
1.0 column, matching the usual presentation).

Configuration comes from flags, or from a JSON config file (``--config``)
with flags taking precedence.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from .datasets import DATASET_KINDS, DatasetSpec
from .graphs import DisconnectedGraphError
from .mds import MdsConfig
from .pipeline import PipelineConfig, RunReport, run

__all__ = ["main", "sweep"]

PARAMETRIZED_SCHEMES = ("mv", "mw", "mpi")
PLAIN_SCHEMES = ("min", "ext", "h")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--dataset", choices=DATASET_KINDS,
                   help="dataset kind (or csv with --csv-path)")
    p.add_argument("--csv-path", help="point-cloud CSV for --dataset csv")
    p.add_argument("--n", type=int, help="number of points")
    p.add_argument("--noise", type=float, help="gaussian noise stddev")
    p.add_argument("--seed", type=int, help="seed for dataset and MDS init")
    p.add_argument("--k", type=int, help="neighbors per point (default 15)")
    p.add_argument("--scheme",
                   help="merge scheme code: min | ext | mv:<a> | mw:<c> | mpi:<c> | h")
    p.add_argument("--subtract-rho", action=argparse.BooleanOptionalAction,
                   default=None,
                   help="subtract the first-neighbor distance in star weights")
    p.add_argument("--outer-mode", choices=("none", "chain", "ambient"),
                   help="edges between a star's outer vertices (default chain)")
    p.add_argument("--a", type=float, dest="outer_factor",
                   help="chain factor for outer edges (default 1.0)")
    p.add_argument("--on-disconnect", choices=("error", "largest", "cap"),
                   help="policy for disconnected graphs (default error)")
    p.add_argument("--cap-factor", type=float,
                   help="multiplier of the max finite distance under cap policy")
    p.add_argument("--max-iterations", type=int, help="SMACOF iteration cap")
    p.add_argument("--stress-tol", type=float,
                   help="SMACOF relative stress tolerance")
    p.add_argument("--out", help="output directory")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hazemap",
        description="Manifold visualization via merged star graphs, geodesics, and MDS",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run the pipeline once")
    _add_common_flags(p_run)
    p_sweep = sub.add_parser("sweep", help="run a scheme x parameter grid")
    _add_common_flags(p_sweep)
    p_sweep.add_argument("--sweep-spec", required=True,
                         help='JSON file: {"schemes": [...], "params": [...]}')
    p_sweep.add_argument("--workers", type=int, default=1,
                         help="concurrent sweep cells (default 1)")
    return parser


def _build_config(args: argparse.Namespace,
                  default_kind: Optional[str] = None) -> PipelineConfig:
    data: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)

    ds = dict(data.get("dataset", {}))
    if args.dataset is not None:
        ds["kind"] = args.dataset
    if args.csv_path is not None:
        ds["path"] = args.csv_path
    if args.n is not None:
        ds["n"] = args.n
    if args.noise is not None:
        ds["noise"] = args.noise
    if args.seed is not None:
        ds["seed"] = args.seed
    if "kind" not in ds:
        if default_kind is None:
            raise SystemExit(
                "error: no dataset given (use --dataset or a config file)")
        ds["kind"] = default_kind
    dataset = DatasetSpec(**ds)

    mds = dict(data.get("mds", {}))
    if args.seed is not None:
        mds["seed"] = args.seed
    if args.max_iterations is not None:
        mds["max_iterations"] = args.max_iterations
    if args.stress_tol is not None:
        mds["relative_stress_tolerance"] = args.stress_tol
    mds_cfg = MdsConfig(**mds)

    cfg = PipelineConfig(dataset=dataset, mds=mds_cfg)
    for flag, key in (
        ("k", "k"),
        ("scheme", "scheme"),
        ("subtract_rho", "subtract_rho"),
        ("outer_mode", "outer_mode"),
        ("outer_factor", "outer_factor"),
        ("on_disconnect", "on_disconnect"),
        ("cap_factor", "cap_factor"),
        ("out", "out_dir"),
    ):
        if key in data:
            setattr(cfg, key, data[key])
        value = getattr(args, flag)
        if value is not None:
            setattr(cfg, key, value)
    return cfg.validated()


def _cell_name(code: str) -> str:
    return code.replace(":", "_")


def _expand_grid(schemes: Sequence[str], params: Sequence[float]) -> list[tuple[str, Optional[float]]]:
    """Grid cells as (scheme code, parameter or None)."""
    if not schemes:
        raise ValueError("sweep needs at least one scheme")
    cells: list[tuple[str, Optional[float]]] = []
    for kind in schemes:
        kind = kind.strip().lower()
        if kind in PARAMETRIZED_SCHEMES:
            if not params:
                raise ValueError(f"scheme {kind!r} needs a parameter grid")
            cells.extend((f"{kind}:{p:g}", float(p)) for p in params)
        elif kind in PLAIN_SCHEMES:
            cells.append((kind, None))
        else:
            raise ValueError(f"unknown sweep scheme {kind!r}")
    return cells


def _run_cell(config: PipelineConfig) -> RunReport:
    return run(config)


def _gallery_tables(schemes: list[str], params: list[float],
                    cell_status: dict[str, str], out_dir: Path) -> None:
    """Write gallery.md and gallery.html laying plots out schemes x params."""
    columns = [f"{p:g}" for p in params] if params else ["1"]
    anchor = "1" if "1" in columns else columns[-1]

    def cell_for(kind: str, col: str) -> str:
        if kind in PLAIN_SCHEMES and col != anchor:
            return ""
        code = kind if kind in PLAIN_SCHEMES else f"{kind}:{col}"
        return cell_status.get(code, "")

    md = ["| scheme | " + " | ".join(columns) + " |",
          "|---" * (len(columns) + 1) + "|"]
    html = ["<html><body><table border='1' style='border-collapse:collapse'>",
            "<tr><th>scheme</th>" + "".join(f"<th>{c}</th>" for c in columns)
            + "</tr>"]
    for kind in schemes:
        md_cells, html_cells = [], []
        for col in columns:
            status = cell_for(kind, col)
            if status == "ok":
                rel = f"{_cell_name(kind if kind in PLAIN_SCHEMES else f'{kind}:{col}')}/plot.svg"
                md_cells.append(f"![{kind} {col}]({rel})")
                html_cells.append(f"<td><img src='{rel}' width='260'></td>")
            elif status:
                md_cells.append(f"failed: {status}")
                html_cells.append(f"<td>failed: {status}</td>")
            else:
                md_cells.append("")
                html_cells.append("<td></td>")
        md.append(f"| {kind} | " + " | ".join(md_cells) + " |")
        html.append(f"<tr><th>{kind}</th>" + "".join(html_cells) + "</tr>")
    html.append("</table></body></html>")
    (out_dir / "gallery.md").write_text("\n".join(md) + "\n", encoding="utf-8")
    (out_dir / "gallery.html").write_text("\n".join(html) + "\n", encoding="utf-8")


def sweep(base: PipelineConfig, schemes: Sequence[str], params: Sequence[float],
          workers: int = 1) -> tuple[list[RunReport], dict[str, str]]:
    """Run every (scheme, parameter) cell under ``base.out_dir``.

    Returns the successful reports and a cell -> status map ("ok" or the
    error text). Failed cells never abort the sweep.
    """
    cells = _expand_grid(schemes, list(params))
    out_root = Path(base.out_dir)
    out_root.mkdir(parents=True, exist_ok=True)

    configs = []
    for code, _ in cells:
        cfg = PipelineConfig(
            dataset=base.dataset, k=base.k, scheme=code,
            subtract_rho=base.subtract_rho, outer_mode=base.outer_mode,
            outer_factor=base.outer_factor, on_disconnect=base.on_disconnect,
            cap_factor=base.cap_factor, mds=base.mds,
            out_dir=str(out_root / _cell_name(code)),
        )
        configs.append((code, cfg))

    reports: list[RunReport] = []
    status: dict[str, str] = {}
    if workers > 1:
        # spawn, not fork: the JIT backend's thread pool is not fork-safe
        ctx = multiprocessing.get_context("spawn")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            futures = {code: pool.submit(_run_cell, cfg) for code, cfg in configs}
            for code, fut in futures.items():
                try:
                    reports.append(fut.result())
                    status[code] = "ok"
                except Exception as exc:
                    status[code] = str(exc)
    else:
        for code, cfg in configs:
            try:
                reports.append(run(cfg))
                status[code] = "ok"
            except Exception as exc:
                status[code] = str(exc)

    _gallery_tables([k.strip().lower() for k in schemes], list(params),
                    status, out_root)
    with open(out_root / "sweep_report.json", "w", encoding="utf-8") as fh:
        json.dump({"cells": status,
                   "reports": [r.as_dict() for r in reports]},
                  fh, indent=2, sort_keys=True)
        fh.write("\n")
    return reports, status


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        # the sweep grid reproduces the standard comparison table, whose
        # reference dataset is the swiss roll with a hole
        default_kind = "swiss_roll_hole" if args.command == "sweep" else None
        config = _build_config(args, default_kind)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.command == "run":
        try:
            report = run(config)
        except DisconnectedGraphError as exc:
            print(f"error: {exc}", file=sys.stderr)
            print("hint: rerun with --on-disconnect largest or cap",
                  file=sys.stderr)
            return 2
        except (ValueError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"stress={report.final_stress:.6g} "
              f"iterations={report.iterations_used} "
              f"edges={report.unique_edges} -> {report.outputs['coords_csv']}")
        return 0

    with open(args.sweep_spec, encoding="utf-8") as fh:
        spec = json.load(fh)
    try:
        reports, status = sweep(config, spec.get("schemes", []),
                                spec.get("params", []), workers=args.workers)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    failed = {c: s for c, s in status.items() if s != "ok"}
    print(f"sweep: {len(status) - len(failed)}/{len(status)} cells ok "
          f"-> {Path(config.out_dir) / 'gallery.html'}")
    for code, err in sorted(failed.items()):
        print(f"  failed {code}: {err}", file=sys.stderr)
    return 0 if not failed else 3


if __name__ == "__main__":
    sys.exit(main())
