import numpy as np
import pytest

from ptspec.eigensolver import (
    HessenbergWorkspace,
    balance,
    eigenvalues,
    hessenberg_reduce,
    inverse_iteration,
    qr_eigenvalues,
)


def _random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def _companion(coeffs):
    """Companion matrix of the monic polynomial with the given roots."""
    poly = np.poly(coeffs)
    n = len(coeffs)
    c = np.zeros((n, n), dtype=complex)
    c[1:, :-1] = np.eye(n - 1)
    c[:, -1] = -poly[1:][::-1]
    return c


def test_companion_matrix_roots():
    roots = np.array([1.0, 2.0, -0.5 + 1.5j, -0.5 - 1.5j, 3.0 + 0j])
    ev = np.sort_complex(np.asarray(eigenvalues(_companion(roots)).eigenvalues))
    assert np.allclose(ev, np.sort_complex(roots), atol=1e-10)


def test_balance_preserves_eigenvalues():
    rng = np.random.default_rng(0)
    a = _random_complex(rng, 12)
    a[0] *= 1e6  # force nontrivial scaling
    balanced, d = balance(a)
    assert np.all(np.log2(d) == np.round(np.log2(d)))  # powers of two
    restored = np.diag(d) @ balanced @ np.diag(1.0 / d)
    assert np.allclose(restored, a, rtol=0, atol=0)  # exact similarity
    ev_a = np.sort_complex(np.linalg.eigvals(a))
    ev_b = np.sort_complex(np.linalg.eigvals(balanced))
    assert np.allclose(ev_a, ev_b, rtol=1e-8)


def test_hessenberg_similarity():
    rng = np.random.default_rng(1)
    a = _random_complex(rng, 15)
    h, q = hessenberg_reduce(a, accumulate_q=True)
    assert np.max(np.abs(np.tril(h, -2))) < 1e-12 * np.linalg.norm(a)
    assert np.allclose(q @ h @ q.conj().T, a, atol=1e-12 * np.linalg.norm(a))


def test_qr_on_hessenberg_matches_direct():
    rng = np.random.default_rng(2)
    a = _random_complex(rng, 20)
    h, _ = hessenberg_reduce(a, accumulate_q=False)
    ev_qr = np.sort_complex(np.asarray(qr_eigenvalues(h).eigenvalues))
    ev_ref = np.sort_complex(np.linalg.eigvals(a))
    assert np.max(np.abs(ev_qr - ev_ref)) < 1e-10 * np.linalg.norm(a)


def test_trace_identity():
    rng = np.random.default_rng(3)
    for _ in range(5):
        a = _random_complex(rng, 30)
        sol = eigenvalues(a)
        gap = abs(np.sum(sol.eigenvalues) - np.trace(a))
        assert gap < 1e-10 * np.linalg.norm(a) * 30


def test_transpose_has_same_spectrum():
    rng = np.random.default_rng(4)
    a = _random_complex(rng, 25)
    ev = np.sort_complex(np.asarray(eigenvalues(a).eigenvalues))
    ev_t = np.sort_complex(np.asarray(eigenvalues(a.T).eigenvalues))
    assert np.max(np.abs(ev - ev_t)) < 1e-10 * np.linalg.norm(a)


def test_bitwise_determinism():
    rng = np.random.default_rng(5)
    a = _random_complex(rng, 40)
    first = eigenvalues(a)
    second = eigenvalues(a)
    assert np.array_equal(np.asarray(first.eigenvalues),
                          np.asarray(second.eigenvalues))
    v1 = inverse_iteration(a, first.eigenvalues[0])
    v2 = inverse_iteration(a, first.eigenvalues[0])
    assert np.array_equal(v1.vector, v2.vector)


def test_inverse_iteration_residual_and_normalization():
    rng = np.random.default_rng(6)
    a = _random_complex(rng, 30)
    fro = np.linalg.norm(a)
    for lam in eigenvalues(a).eigenvalues[:5]:
        sample = inverse_iteration(a, lam)
        assert sample.residual < 1e-10 * fro
        assert np.max(np.abs(sample.vector)) == pytest.approx(1.0)
        # residual really is ||A v - lambda v||
        direct = np.linalg.norm(a @ sample.vector - sample.eigenvalue * sample.vector)
        assert direct == pytest.approx(sample.residual, rel=1e-6, abs=1e-12)


def test_workspace_matches_dense_inverse_iteration():
    rng = np.random.default_rng(8)
    a = _random_complex(rng, 25)
    ws = HessenbergWorkspace(a)
    fro = np.linalg.norm(a)
    for lam in eigenvalues(a).eigenvalues[:5]:
        sample = ws.inverse_iteration(lam)
        assert sample.residual < 1e-10 * fro
        direct = np.linalg.norm(a @ sample.vector - lam * sample.vector)
        assert direct < 1e-9 * fro


def test_diagonal_matrix_exact():
    d = np.diag(np.array([1.0 + 2j, -3.0, 0.5j]))
    ev = np.sort_complex(np.asarray(eigenvalues(d).eigenvalues))
    assert np.allclose(ev, np.sort_complex(np.array([1 + 2j, -3, 0.5j])),
                       atol=1e-14)


def test_solution_metadata():
    rng = np.random.default_rng(9)
    a = _random_complex(rng, 10)
    sol = eigenvalues(a)
    assert sol.precision.mode == "double64"
    assert sol.residual_bound > 0
    assert len(sol.eigenvalues) == 10
