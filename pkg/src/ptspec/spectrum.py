"""Bound-state vs continuum classification of computed eigenvalues.

A truncated-interval discretization can only produce discrete eigenvalues,
so membership in the continuous spectrum is decided from the eigenfunction:
genuine bound states decay smoothly (exponentially) well before the
boundary, while continuum eigenfunctions stay O(1) and drop abruptly at
one or both endpoints.  The classifier fetches eigenvectors (by shifted
inverse iteration) only for eigenvalues whose imaginary part is large
enough to make them bound-state candidates; everything else is treated as
numerically real continuum.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .chebdiff import Grid
from .eigensolver import EigenSolution, HessenbergWorkspace, RefinementError
from .hamiltonian import OperatorMatrix
from .precision import ScalarPrecision, to_complex128

BOUND = "bound"
CONTINUUM_COMPLEX = "continuum_complex"
CONTINUUM_REAL = "continuum_real"
UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class ClassificationPolicy:
    """Thresholds steering the eigenfunction-based classification.

    ``vector_threshold`` is an absolute |Im| cut: below it an eigenvalue is
    taken as (numerically real) continuum without fetching its eigenvector.
    The strict bound test requires the boundary-band amplitude to be tiny
    and the envelope non-increasing; the relaxed test admits shallow,
    slowly decaying states whose outer envelope still fits an exponential.

    The relaxed test's tail cut is ``relaxed_tail_coeff / L**2``: a bound
    state's boundary amplitude shrinks exponentially as the interval
    grows, while pre-transition continuum levels keep boundary amplitudes
    of order 1e-4 at any L, so a fixed cut lax enough to catch marginally
    converged bound states on small intervals would sweep in whole bands
    of continuum on large ones.
    """

    vector_threshold: float = 0.05
    tail_band_fraction: float = 0.05
    bound_tail_threshold: float = 1e-6
    relaxed_tail_coeff: float = 0.5
    relaxed_band_fraction: float = 0.20
    relaxed_min_correlation: float = 0.999
    monotone_slack: float = 1e-6
    pairing_tol_factor: float = 1e-8
    jump_min_decades: float = 6.0
    log_floor: Optional[float] = None  # None: tiny absolute floor
    max_vector_iterations: int = 10
    vector_seed: int = 42


@dataclass(frozen=True)
class EigenRecord:
    value: complex
    label: str = UNRESOLVED
    tail_ratio: Optional[float] = None
    pair_index: Optional[int] = None


@dataclass(frozen=True)
class SpectrumMeta:
    half_width: float
    n_intervals: int
    family: str
    strength: float
    precision_mode: str
    matrix_fro_norm: float


@dataclass(frozen=True)
class SpectrumResult:
    records: Tuple[EigenRecord, ...]
    bound_pairs: int
    transition_point: Optional[float]
    meta: SpectrumMeta
    policy: ClassificationPolicy

    def bound_values(self) -> List[complex]:
        return [r.value for r in self.records if r.label == BOUND]

    def continuum_values(self) -> List[complex]:
        return [
            r.value
            for r in self.records
            if r.label in (CONTINUUM_REAL, CONTINUUM_COMPLEX)
        ]


def _sort_key(z: complex):
    return (z.real, z.imag)


def _tail_classification(absv: np.ndarray, x: np.ndarray, grid: Grid,
                         policy: ClassificationPolicy):
    """Return (tail_ratio, is_bound) for one normalized |eigenvector|."""
    L = grid.half_width
    edge = (1.0 - policy.tail_band_fraction) * L
    band = np.abs(x) >= edge
    tail_ratio = float(absv[band].max()) if band.any() else 0.0
    tail_ratio = min(tail_ratio, 1.0)

    # interior-to-boundary envelope sequences on both sides (x is descending);
    # entries already below the tail threshold are exempt from the monotone
    # requirement (at that level the vector is dominated by solver noise)
    right = absv[x >= edge][::-1]
    left = absv[x <= -edge]

    def non_increasing(seq, floor):
        if seq.size < 2:
            return True
        for a, b in zip(seq[:-1], seq[1:]):
            if b > a * (1.0 + policy.monotone_slack) and b > floor:
                return False
        return True

    if (
        tail_ratio < policy.bound_tail_threshold
        and non_increasing(right, policy.bound_tail_threshold)
        and non_increasing(left, policy.bound_tail_threshold)
    ):
        return tail_ratio, True

    # relaxed test for shallow, slowly decaying states: the envelope over
    # a band well inside the boundary region (before the Dirichlet
    # condition bends the profile down to 0) must fit an exponential
    relaxed_threshold = policy.relaxed_tail_coeff / (L * L)
    redge = (1.0 - policy.relaxed_band_fraction) * L
    fedge = (1.0 - 2.0 * policy.tail_band_fraction) * L

    def side_ok(mask, toward_positive):
        xs = x[mask]
        vs = absv[mask]
        # a side already below the strict threshold is bound-like as is;
        # fitting its noise-level wiggles would reject it spuriously
        if vs.size == 0 or vs.max() < policy.bound_tail_threshold:
            return True
        keep = vs > 0
        xs, vs = xs[keep], vs[keep]
        if xs.size < 4:
            return False
        logs = np.log(vs)
        r = np.corrcoef(xs, logs)[0, 1]
        slope = np.polyfit(xs, logs, 1)[0]
        decaying = slope < 0 if toward_positive else slope > 0
        return decaying and abs(r) > policy.relaxed_min_correlation

    if tail_ratio < relaxed_threshold:
        fit_right = (x >= redge) & (x < fedge)
        fit_left = (x <= -redge) & (x > -fedge)
        if (
            non_increasing(right, relaxed_threshold)
            and non_increasing(left, relaxed_threshold)
            and side_ok(fit_right, True)
            and side_ok(fit_left, False)
        ):
            return tail_ratio, True
    return tail_ratio, False


def classify(
    solution: EigenSolution,
    op: OperatorMatrix,
    grid: Grid,
    policy: Optional[ClassificationPolicy] = None,
    precision: Optional[ScalarPrecision] = None,
) -> SpectrumResult:
    """Label every eigenvalue and pair complex conjugates.

    Inverse-iteration failures are recorded as ``unresolved`` rather than
    silently promoted to bound states.
    """
    policy = policy or ClassificationPolicy()
    precision = precision or solution.precision
    raw = list(solution.eigenvalues)
    order = sorted(range(len(raw)), key=lambda i: _sort_key(complex(raw[i])))
    x = to_complex128(grid.interior_nodes).real

    fro = float(np.linalg.norm(to_complex128(op.matrix)))
    workspace = None
    records: List[EigenRecord] = []
    for i in order:
        lam = raw[i]
        z = complex(lam)
        if abs(z.imag) <= policy.vector_threshold:
            records.append(EigenRecord(value=z, label=CONTINUUM_REAL))
            continue
        if workspace is None:
            workspace = HessenbergWorkspace(op.matrix, precision=precision)
        try:
            sample = workspace.inverse_iteration(
                lam,
                max_iterations=policy.max_vector_iterations,
                seed=policy.vector_seed,
            )
        except RefinementError:
            records.append(EigenRecord(value=z, label=UNRESOLVED))
            continue
        absv = np.abs(to_complex128(sample.vector))
        tail_ratio, is_bound = _tail_classification(absv, x, grid, policy)
        label = BOUND if is_bound else CONTINUUM_COMPLEX
        records.append(EigenRecord(value=z, label=label, tail_ratio=tail_ratio))

    records = pair_conjugates(records, tol=None, tol_factor=policy.pairing_tol_factor)
    # a bound/complex record without a conjugate partner is suspect
    records = [
        dataclasses.replace(r, label=UNRESOLVED)
        if r.label in (BOUND, CONTINUUM_COMPLEX) and r.pair_index is None
        else r
        for r in records
    ]
    n_bound = sum(1 for r in records if r.label == BOUND)
    meta = SpectrumMeta(
        half_width=grid.half_width,
        n_intervals=grid.n_intervals,
        family=op.spec.family,
        strength=op.spec.strength,
        precision_mode=precision.mode,
        matrix_fro_norm=fro,
    )
    return SpectrumResult(
        records=tuple(records),
        bound_pairs=n_bound // 2,
        transition_point=None,
        meta=meta,
        policy=policy,
    )


def pair_conjugates(
    records: Sequence[EigenRecord],
    tol: Optional[float] = None,
    tol_factor: float = 1e-8,
) -> List[EigenRecord]:
    """Match complex records with their conjugate partners (greedy nearest).

    Candidates are records not labeled continuum_real and with nonzero
    imaginary part; matched records get mutual pair_index values.
    """
    records = list(records)
    if tol is None:
        scale = max((abs(r.value) for r in records), default=0.0)
        tol = tol_factor * scale
    cand = [
        i
        for i, r in enumerate(records)
        if r.label != CONTINUUM_REAL and r.value.imag != 0.0
    ]
    pairs = []
    for ii, i in enumerate(cand):
        for j in cand[ii + 1:]:
            if records[i].value.imag * records[j].value.imag >= 0:
                continue
            d = abs(records[i].value - records[j].value.conjugate())
            if d <= tol:
                pairs.append((d, i, j))
    pairs.sort(key=lambda t: (t[0], t[1], t[2]))
    used = set()
    out = records[:]
    for d, i, j in pairs:
        if i in used or j in used:
            continue
        used.add(i)
        used.add(j)
        out[i] = dataclasses.replace(out[i], pair_index=j)
        out[j] = dataclasses.replace(out[j], pair_index=i)
    return out


def detect_transition(
    result: SpectrumResult,
    jump_min_decades: Optional[float] = None,
    log_floor: Optional[float] = None,
) -> Optional[float]:
    """Locate the sharp complex-to-real drop in the continuum |Im| profile.

    Scans continuum records in order of increasing real part and returns
    the midpoint of the first adjacent pair whose drop of
    log10(|Im| + floor) spans at least ``jump_min_decades`` decades;
    otherwise None.  Taking the first qualifying drop (rather than the
    globally largest) keeps the detector robust against marginally
    resolved high-frequency modes that re-enter the complex plane above
    the physical transition at desk-scale grid resolutions.
    """
    info = transition_info(result, jump_min_decades, log_floor)
    return None if info is None else info[0]


def transition_info(
    result: SpectrumResult,
    jump_min_decades: Optional[float] = None,
    log_floor: Optional[float] = None,
) -> Optional[Tuple[float, float]]:
    """(location, drop in decades) of the continuum transition, or None."""
    policy = result.policy
    if jump_min_decades is None:
        jump_min_decades = policy.jump_min_decades
    if log_floor is None:
        log_floor = policy.log_floor
    if log_floor is None:
        eps = 2.0 ** -52 if result.meta.precision_mode == "double64" else 2.0 ** -112
        log_floor = eps * eps * max(result.meta.matrix_fro_norm, 1.0)
    cont = [r.value for r in result.records
            if r.label in (CONTINUUM_REAL, CONTINUUM_COMPLEX)]
    if len(cont) < 10:
        return None
    cont.sort(key=_sort_key)
    logs = [math.log10(abs(z.imag) + log_floor) for z in cont]
    for a, b, la, lb in zip(cont[:-1], cont[1:], logs[:-1], logs[1:]):
        drop = la - lb
        if drop >= jump_min_decades:
            return 0.5 * (a.real + b.real), drop
    return None


def with_transition(result: SpectrumResult) -> SpectrumResult:
    """Attach the detected transition point (if any) to the result."""
    return dataclasses.replace(result, transition_point=detect_transition(result))


def continuum_collapse_metric(results: Sequence[SpectrumResult]) -> List[float]:
    """Max continuum |Im| per result, ordered by increasing half-width.

    The inputs must share family, strength, and grid resolution; the
    returned sequence is expected (not enforced) to decrease with L.
    """
    if len(results) < 2:
        raise ValueError("need results at two or more half-widths")
    key = {(r.meta.family, r.meta.strength, r.meta.n_intervals) for r in results}
    if len(key) != 1:
        raise ValueError("results mix potential families, strengths, or N")
    ordered = sorted(results, key=lambda r: r.meta.half_width)
    out = []
    for r in ordered:
        vals = r.continuum_values()
        out.append(max((abs(z.imag) for z in vals), default=0.0))
    return out
