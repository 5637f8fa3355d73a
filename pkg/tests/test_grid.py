import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from acidsim.errors import NonDivisibleSpacing, NonpositiveDiffusivity
from acidsim.grid import Grid1D, build_grid, div_psi_grad, ghost_extend, laplacian_neumann

finite = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)


def test_standard_grid_has_201_nodes():
    g = build_grid(-5.0, 5.0, 0.05)
    assert g.n_interior == 201
    assert g.dx == pytest.approx(0.05, rel=1e-15)
    assert g.x[0] == -5.0 and g.x[-1] == pytest.approx(5.0, abs=1e-12)


def test_three_node_grid():
    g = build_grid(0.0, 1.0, 0.5)
    np.testing.assert_array_equal(g.x, [0.0, 0.5, 1.0])


@pytest.mark.parametrize("dx", [0.3, 0.07, 3.0])
def test_non_divisible_spacing(dx):
    with pytest.raises(NonDivisibleSpacing):
        build_grid(-5.0, 5.0, dx)


def test_grid_rejects_too_few_nodes():
    with pytest.raises(ValueError):
        Grid1D(0.0, 1.0, 2)


def test_node_coordinates_follow_index():
    g = build_grid(-5.0, 5.0, 0.05)
    i = np.arange(g.n_interior)
    np.testing.assert_allclose(g.x, -5.0 + i * g.dx, rtol=0, atol=1e-12)


def test_trapezoid_weights_sum_to_length():
    g = build_grid(-5.0, 5.0, 0.05)
    assert g.trapezoid_weights.sum() == pytest.approx(10.0, rel=1e-13)
    assert g.trapezoid_weights[0] == pytest.approx(0.025)


def test_displacements_antisymmetric():
    d = build_grid(-5.0, 5.0, 0.05).displacements()
    np.testing.assert_array_equal(d, -d.T)
    assert np.all(np.diag(d) == 0.0)


@pytest.mark.parametrize(
    "f, expected",
    [([1, 2, 3], [1, 1, 2, 3, 3]), ([0, 5], [0, 0, 5, 5]), ([7, 7, 7], [7] * 5)],
)
def test_ghost_extend(f, expected):
    np.testing.assert_array_equal(ghost_extend(np.array(f, float)), expected)


@given(arrays(float, st.integers(3, 40), elements=finite))
def test_ghost_extend_restriction_idempotent(f):
    ext = ghost_extend(f)
    np.testing.assert_array_equal(ext[1:-1], f)
    np.testing.assert_array_equal(ghost_extend(ext[1:-1]), ext)


def test_laplacian_exact_on_quadratic():
    g = build_grid(-1.0, 1.0, 0.5)
    lap = laplacian_neumann(g.x**2, g)
    assert lap[2] == pytest.approx(2.0, abs=1e-12)


def test_laplacian_zero_on_linear_interior():
    g = build_grid(-2.0, 2.0, 0.25)
    lap = laplacian_neumann(3.0 * g.x - 1.0, g)
    np.testing.assert_allclose(lap[1:-1], 0.0, atol=1e-10)


def test_laplacian_boundary_rows_use_mirror():
    g = build_grid(0.0, 1.0, 0.25)
    f = np.array([0.0, 1.0, 4.0, 9.0, 16.0])
    lap = laplacian_neumann(f, g)
    assert lap[0] == pytest.approx((f[1] - f[0]) / g.dx**2)
    assert lap[-1] == pytest.approx((f[-2] - f[-1]) / g.dx**2)


@given(st.floats(-1, 1), st.integers(3, 50))
def test_laplacian_annihilates_constants(c, n):
    g = Grid1D(-5.0, 5.0, n)
    assert np.max(np.abs(laplacian_neumann(np.full(n, c), g))) <= 1e-13


@settings(max_examples=60)
@given(arrays(float, st.integers(3, 60), elements=finite))
def test_laplacian_discrete_conservation(f):
    # mirrored ghosts telescope the fluxes, so the plain nodal sum vanishes
    g = Grid1D(-5.0, 5.0, f.size)
    lap = laplacian_neumann(f, g)
    assert abs(np.sum(lap) * g.dx) <= 1e-12 * max(1.0, np.abs(f).max()) / g.dx


def test_div_psi_grad_constant_reduces_exactly():
    g = build_grid(-5.0, 5.0, 0.05)
    u = np.sin(g.x) + 0.1 * g.x**2
    np.testing.assert_array_equal(div_psi_grad(u, np.full(g.n_interior, 0.5), g), 0.5 * laplacian_neumann(u, g))


@given(arrays(float, st.integers(3, 40), elements=finite), st.floats(0.01, 5.0))
def test_div_psi_grad_constant_property(u, psi):
    g = Grid1D(0.0, 1.0, u.size)
    got = div_psi_grad(u, np.full(u.size, psi), g)
    np.testing.assert_allclose(got, psi * laplacian_neumann(u, g), rtol=0, atol=1e-14 * (1 + np.abs(got).max()))


def test_div_psi_grad_constant_u_zero():
    g = build_grid(0.0, 1.0, 0.1)
    np.testing.assert_array_equal(div_psi_grad(np.full(g.n_interior, 3.0), np.ones(g.n_interior), g), 0.0)


def test_div_psi_grad_variable_coefficient():
    # d/dx((1 + x) * d/dx x) = 1; the flux stencil is exact for this product
    g = build_grid(0.0, 1.0, 0.25)
    out = div_psi_grad(g.x.copy(), 1.0 + g.x, g)
    assert out[2] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("bad", [0.0, -0.1])
def test_div_psi_grad_rejects_nonpositive(bad):
    g = build_grid(0.0, 1.0, 0.25)
    psi = np.ones(g.n_interior)
    psi[1] = bad
    with pytest.raises(NonpositiveDiffusivity):
        div_psi_grad(g.x, psi, g)
