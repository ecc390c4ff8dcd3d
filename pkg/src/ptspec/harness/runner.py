"""Experiment orchestration: run per-L jobs and persist their spectra.

Each half-width L is an independent job (build grid, differentiate,
assemble, eigensolve, classify, locate the transition).  Jobs may run on a
bounded thread pool; the heavy kernels release the interpreter lock inside
LAPACK, and each job writes only its own files.  An eigensolver
convergence failure aborts that L with a recorded diagnostic while the
remaining half-widths still complete.

Persisted layout under <output_dir>/<run name>/:
    L<value>/eigenvalues.csv   columns re, im, label, tail_ratio
    summary.json               counts, transitions, config snapshot, version
    timing.json                wall-clock seconds per stage (kept separate so
                               summary.json is bit-for-bit reproducible)
"""

from __future__ import annotations

import csv
import dataclasses
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import metadata
from pathlib import Path
from typing import Dict, Optional, Tuple

from ..chebdiff import build_diff_matrices, build_grid
from ..eigensolver import ConvergenceError, eigenvalues
from ..hamiltonian import assemble
from ..potentials import PotentialSpec
from ..precision import from_name
from ..spectrum import SpectrumResult, classify, with_transition
from .config import ExperimentConfig

try:
    TOOL_VERSION = metadata.version("ptspec")
except metadata.PackageNotFoundError:  # running from a source tree
    TOOL_VERSION = "unknown"


@dataclass(frozen=True)
class RunArtifact:
    """Everything one run produced: results, failures, timings, version."""

    config: ExperimentConfig
    results: Dict[float, SpectrumResult] = field(default_factory=dict)
    failures: Dict[float, str] = field(default_factory=dict)
    timings: Dict[float, Dict[str, float]] = field(default_factory=dict)
    tool_version: str = TOOL_VERSION


def run_single(config: ExperimentConfig, half_width: float
               ) -> Tuple[SpectrumResult, Dict[str, float]]:
    """Run the full pipeline for one half-width; returns (result, timings)."""
    precision = from_name(config.precision_mode)
    spec = PotentialSpec(config.family, config.strength)
    timings: Dict[str, float] = {}
    t0 = time.perf_counter()
    grid = build_grid(half_width, config.n_intervals, precision=precision)
    diff = build_diff_matrices(grid)
    op = assemble(grid, diff, spec)
    timings["assemble"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    solution = eigenvalues(op.matrix, precision=precision)
    timings["eigensolve"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    result = classify(solution, op, grid, policy=config.policy,
                      precision=precision)
    result = with_transition(result)
    timings["classify"] = time.perf_counter() - t0
    return result, timings


def run_experiment(config: ExperimentConfig, workers: int = 1) -> RunArtifact:
    """Run every half-width in the config; failures abort only their own L."""
    artifact = RunArtifact(config=config)

    def job(half_width: float):
        try:
            result, timings = run_single(config, half_width)
        except ConvergenceError as exc:
            return half_width, None, None, str(exc)
        return half_width, result, timings, None

    if workers > 1 and len(config.half_widths) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(job, config.half_widths))
    else:
        outcomes = [job(w) for w in config.half_widths]

    for half_width, result, timings, error in outcomes:
        if error is not None:
            artifact.failures[half_width] = error
        else:
            artifact.results[half_width] = result
            artifact.timings[half_width] = timings
    return artifact


def _format_float(value: Optional[float]) -> str:
    return "" if value is None else repr(value)


def write_eigenvalue_csv(result: SpectrumResult, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["re", "im", "label", "tail_ratio"])
        for record in result.records:
            writer.writerow([
                repr(record.value.real),
                repr(record.value.imag),
                record.label,
                _format_float(record.tail_ratio),
            ])


def _result_summary(result: SpectrumResult) -> dict:
    labels: Dict[str, int] = {}
    for record in result.records:
        labels[record.label] = labels.get(record.label, 0) + 1
    return {
        "bound_pairs": result.bound_pairs,
        "transition_point": result.transition_point,
        "label_counts": labels,
        "n_eigenvalues": len(result.records),
    }


def persist(artifact: RunArtifact, out_dir: Optional[Path] = None,
            run_name: Optional[str] = None) -> Path:
    """Write the artifact's CSV/JSON files; returns the run directory."""
    config = artifact.config
    if out_dir is None:
        out_dir = Path(config.output_dir)
    if run_name is None:
        run_name = (f"{config.family}_A{config.strength:g}"
                    f"_N{config.n_intervals}_{config.precision_mode}")
    run_dir = Path(out_dir) / run_name
    run_dir.mkdir(parents=True, exist_ok=True)

    summary = {
        "tool_version": artifact.tool_version,
        "config": {
            "family": config.family,
            "strength": config.strength,
            "half_widths": list(config.half_widths),
            "n_intervals": config.n_intervals,
            "precision": config.precision_mode,
        },
        "runs": {},
        "failures": dict(sorted(artifact.failures.items())),
    }
    for half_width in sorted(artifact.results):
        result = artifact.results[half_width]
        l_dir = run_dir / f"L{half_width:g}"
        l_dir.mkdir(exist_ok=True)
        if config.output_format == "csv":
            write_eigenvalue_csv(result, l_dir / "eigenvalues.csv")
        else:
            rows = [
                {
                    "re": r.value.real,
                    "im": r.value.imag,
                    "label": r.label,
                    "tail_ratio": r.tail_ratio,
                }
                for r in result.records
            ]
            with open(l_dir / "eigenvalues.json", "w") as fh:
                json.dump(rows, fh, indent=1)
        summary["runs"][f"L{half_width:g}"] = _result_summary(result)

    with open(run_dir / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=1, sort_keys=True)
    with open(run_dir / "timing.json", "w") as fh:
        json.dump(
            {f"L{w:g}": t for w, t in sorted(artifact.timings.items())},
            fh, indent=1, sort_keys=True,
        )
    return run_dir
