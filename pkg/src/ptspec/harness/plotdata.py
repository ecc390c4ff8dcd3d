"""Figure-ready CSV exports of a classified spectrum.

Three kinds of plot data:
    complex_plane -- (re, im, label) scatter of every eigenvalue;
    log_im        -- (re, log10_abs_im) of the continuum records, with the
                     detected transition appended as a separate marker row;
    loglog_bound  -- (log10_re, log10_abs_im) of the bound records only.
No images are rendered; the files plot directly with any tool.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

from ..spectrum import BOUND, CONTINUUM_COMPLEX, CONTINUUM_REAL, SpectrumResult

PLOT_KINDS = ("complex_plane", "log_im", "loglog_bound")

# keeps log10 finite for eigenvalues with an exactly zero component
_LOG_FLOOR = 1e-300


def emit_plot_data(result: SpectrumResult, kind: str, path: Path) -> Path:
    if kind not in PLOT_KINDS:
        raise ValueError(f"kind must be one of {PLOT_KINDS}, got {kind!r}")
    path = Path(path)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if kind == "complex_plane":
            writer.writerow(["re", "im", "label"])
            for r in result.records:
                writer.writerow([repr(r.value.real), repr(r.value.imag), r.label])
        elif kind == "log_im":
            writer.writerow(["re", "log10_abs_im", "kind"])
            for r in result.records:
                if r.label not in (CONTINUUM_REAL, CONTINUUM_COMPLEX):
                    continue
                log_im = math.log10(abs(r.value.imag) + _LOG_FLOOR)
                writer.writerow([repr(r.value.real), repr(log_im), "point"])
            if result.transition_point is not None:
                writer.writerow([repr(result.transition_point), "", "transition"])
        else:
            writer.writerow(["log10_re", "log10_abs_im"])
            for r in result.records:
                if r.label != BOUND or r.value.imag <= 0:
                    continue
                writer.writerow([
                    repr(math.log10(abs(r.value.real) + _LOG_FLOOR)),
                    repr(math.log10(abs(r.value.imag) + _LOG_FLOOR)),
                ])
    return path
