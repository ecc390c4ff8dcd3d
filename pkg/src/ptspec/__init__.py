"""Spectra of 1-D PT-symmetric Schrodinger operators H = p^2 + V(x)
with decaying imaginary-odd potentials: Chebyshev collocation on a
truncated interval, dense nonsymmetric eigensolves in double or software
extended precision, bound/continuum classification from eigenfunction
boundary behavior, and Richardson extrapolation of the bound-state
sequence of the long-range family.
"""

from .chebdiff import DiffMatrices, Grid, build_diff_matrices, build_grid
from .eigensolver import (
    ConvergenceError,
    EigenSolution,
    EigenvectorSample,
    HessenbergWorkspace,
    RefinementError,
    eigenvalues,
    inverse_iteration,
)
from .extrapolate import (
    BalmerEstimate,
    InsufficientDataError,
    RichardsonTable,
    bound_sequence,
    build_table,
    estimate_balmer,
    richardson,
)
from .hamiltonian import (
    HermiticityReport,
    OperatorMatrix,
    assemble,
    dump_matrix,
    hermiticity_report,
    load_matrix,
)
from .potentials import FAMILIES, PotentialSpec, evaluate, evaluate_on_grid
from .precision import DOUBLE, EXTENDED, ScalarPrecision, from_name
from .spectrum import (
    BOUND,
    CONTINUUM_COMPLEX,
    CONTINUUM_REAL,
    UNRESOLVED,
    ClassificationPolicy,
    EigenRecord,
    SpectrumResult,
    classify,
    continuum_collapse_metric,
    detect_transition,
    pair_conjugates,
    transition_info,
    with_transition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
