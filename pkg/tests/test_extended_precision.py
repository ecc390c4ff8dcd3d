import math

import mpmath
import numpy as np
import pytest

from ptspec.eigensolver import eigenvalues, inverse_iteration
from ptspec.precision import (
    DOUBLE,
    EXTENDED,
    as_working,
    from_name,
    to_complex128,
    working_precision,
)


def _to_extended(a):
    with working_precision(EXTENDED):
        return as_working(a, EXTENDED)


def test_precision_names():
    assert from_name("double") is DOUBLE
    assert from_name("extended") is EXTENDED
    assert from_name("extended128").bits == 113
    with pytest.raises(ValueError):
        from_name("half")


def test_working_precision_context():
    with working_precision(EXTENDED):
        x = mpmath.mpf(1) / 3
        assert mpmath.mp.prec == 113
    assert abs(float(x) - 1.0 / 3.0) < 1e-15


def test_round_trip_conversions():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    ext = _to_extended(a)
    assert ext.dtype == object
    assert np.array_equal(to_complex128(ext), a)


def test_software_engine_matches_lapack():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))
    with working_precision(EXTENDED):
        sol = eigenvalues(_to_extended(a), precision=EXTENDED)
        ev_soft = np.sort_complex(to_complex128(np.asarray(sol.eigenvalues)))
    ev_lapack = np.sort_complex(np.linalg.eigvals(a))
    assert np.max(np.abs(ev_soft - ev_lapack)) < 1e-12 * np.linalg.norm(a)


def test_extended_residuals_beat_double_limit():
    rng = np.random.default_rng(2)
    n = 20
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    fro = np.linalg.norm(a)
    with working_precision(EXTENDED):
        mat = _to_extended(a)
        sol = eigenvalues(mat, precision=EXTENDED)
        for lam in sol.eigenvalues[:4]:
            sample = inverse_iteration(mat, lam, precision=EXTENDED)
            assert float(sample.residual) < 1e-24 * fro


def test_extended_eigenvalues_deterministic():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    with working_precision(EXTENDED):
        mat = _to_extended(a)
        first = [mpmath.mpc(v) for v in eigenvalues(mat, precision=EXTENDED).eigenvalues]
        second = [mpmath.mpc(v) for v in eigenvalues(mat, precision=EXTENDED).eigenvalues]
    assert first == second


def test_extended_trace_identity_tight():
    rng = np.random.default_rng(4)
    n = 10
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    with working_precision(EXTENDED):
        mat = _to_extended(a)
        sol = eigenvalues(mat, precision=EXTENDED)
        trace = sum(mat[i, i] for i in range(n))
        gap = abs(sum(sol.eigenvalues) - trace)
        assert float(gap) < 1e-26 * np.linalg.norm(a) * n
