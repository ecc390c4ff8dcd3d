import numpy as np
import pytest

from ptspec.chebdiff import Grid, build_diff_matrices, build_grid
from ptspec.precision import EXTENDED, to_complex128, working_precision


def test_nodes_descending_with_endpoints():
    grid = build_grid(10.0, 16)
    assert grid.n_nodes == 17
    assert grid.nodes[0] == pytest.approx(10.0)
    assert grid.nodes[-1] == pytest.approx(-10.0)
    assert np.all(np.diff(grid.nodes) < 0)


def test_odd_intervals_skip_origin():
    grid = build_grid(5.0, 15)
    assert np.min(np.abs(grid.nodes)) > 1e-3


def test_interior_nodes_drop_endpoints():
    grid = build_grid(2.0, 8)
    assert grid.interior_nodes.shape == (7,)
    assert np.max(np.abs(grid.interior_nodes)) < 2.0


def test_two_interval_corner_entry():
    # hand-built 3-node grid on [-1, 1]: the (0, 0) entry is (2*2^2+1)/6
    nodes = np.cos(np.pi * np.arange(3) / 2)
    diff = build_diff_matrices(Grid(half_width=1.0, n_intervals=2, nodes=nodes))
    assert diff.d1[0, 0] == pytest.approx(1.5)


def test_first_derivative_spectral_accuracy():
    grid = build_grid(1.0, 32)
    diff = build_diff_matrices(grid)
    f = np.exp(grid.nodes) * np.sin(2 * grid.nodes)
    exact = np.exp(grid.nodes) * (np.sin(2 * grid.nodes) + 2 * np.cos(2 * grid.nodes))
    assert np.max(np.abs(diff.d1 @ f - exact)) < 1e-10


def test_second_derivative_is_square_of_first():
    grid = build_grid(3.0, 24)
    diff = build_diff_matrices(grid)
    assert np.allclose(diff.d2, diff.d1 @ diff.d1)


def test_second_derivative_accuracy():
    grid = build_grid(2.0, 40)
    diff = build_diff_matrices(grid)
    f = np.cos(3 * grid.nodes)
    assert np.max(np.abs(diff.d2 @ f + 9 * f)) < 1e-8


def test_constant_annihilated():
    grid = build_grid(7.0, 20)
    diff = build_diff_matrices(grid)
    ones = np.ones(grid.n_nodes)
    assert np.max(np.abs(diff.d1 @ ones)) < 1e-10


def test_half_width_scaling():
    base = build_diff_matrices(build_grid(1.0, 12)).d1
    scaled = build_diff_matrices(build_grid(4.0, 12)).d1
    assert np.allclose(scaled, base / 4.0)


@pytest.mark.parametrize("half_width", [0.0, -3.0])
def test_rejects_nonpositive_half_width(half_width):
    with pytest.raises(ValueError):
        build_grid(half_width, 16)


def test_rejects_tiny_interval_count():
    with pytest.raises(ValueError):
        build_grid(1.0, 3)


def test_extended_precision_beats_double_roundoff():
    with working_precision(EXTENDED):
        grid = build_grid(1.0, 8, precision=EXTENDED)
        assert grid.nodes.dtype == object
        diff = build_diff_matrices(grid)
        x = grid.nodes
        cubic = np.array([v ** 3 for v in x], dtype=object)
        deriv = diff.d1 @ cubic
        err = max(abs(complex(d - 3 * v ** 2)) for d, v in zip(deriv, x))
    assert err < 1e-25


def test_extended_matches_double_grid():
    with working_precision(EXTENDED):
        grid_e = build_grid(10.0, 16, precision=EXTENDED)
    grid_d = build_grid(10.0, 16)
    assert np.allclose(to_complex128(grid_e.nodes).real, grid_d.nodes)
