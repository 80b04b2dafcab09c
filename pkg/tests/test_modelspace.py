import numpy as np
import pytest

from ttolab import (
    boundary_kernel_norm_check,
    build_basis,
    circle_inner_product,
    kernel_density,
    make_blaschke,
    reproducing_kernel,
    tm_values,
)
from ttolab.blaschke import ConditioningWarning
from ttolab.errors import (
    BasePointOnCircle,
    BasePointOutside,
    GridMismatch,
    QuadratureStall,
)

from conftest import random_product


def test_monomial_basis_is_power_basis(basis_z3):
    z = basis_z3.grid_z
    for k in range(3):
        assert np.max(np.abs(basis_z3.values[k] - z**k)) < 1e-14
    assert basis_z3.gram_defect < 1e-14


def test_monomial_basis_small_explicit_grid():
    basis = build_basis(make_blaschke([0.0] * 3), N=16)
    assert basis.gram_defect < 1e-14


def test_single_zero_basis_closed_form():
    # e_1 = sqrt(0.75) / (1 - 0.5 z); norm 1 by the geometric series
    # 0.75 * sum 0.25^n = 1
    basis = build_basis(make_blaschke([0.5]))
    z = basis.grid_z
    expected = np.sqrt(0.75) / (1.0 - 0.5 * z)
    assert np.max(np.abs(basis.values[0] - expected)) < 1e-14
    norm = circle_inner_product(basis.values[0], basis.values[0])
    assert norm == pytest.approx(1.0, abs=1e-12)


def test_gram_defect_certified(rng):
    for degree in (2, 5, 9):
        basis = build_basis(random_product(rng, degree))
        assert basis.gram_defect < 1e-10


def test_explicit_grid_validation():
    u = make_blaschke([0.0] * 3)
    with pytest.raises(ValueError):
        build_basis(u, N=100)  # not a power of two
    with pytest.raises(ValueError):
        build_basis(u, N=8)  # below 4 * degree


def test_quadrature_stall_near_boundary():
    with pytest.warns(ConditioningWarning):
        u = make_blaschke([1.0 - 3e-11])
    with pytest.raises(QuadratureStall):
        build_basis(u)


def test_prefix_property_nested_products():
    zeros = [0.5, -0.3j, 0.2 + 0.4j, -0.55, 0.1 - 0.2j, 0.3]
    small = build_basis(make_blaschke(zeros[:3]), N=2048)
    large = build_basis(make_blaschke(zeros), N=2048)
    assert np.max(np.abs(large.values[:3] - small.values)) < 1e-12


def test_basis_bounded_by_factor_form(rng):
    # sup_T |e_k| <= gamma_k / (1 - |a_k|), a bound read off the factors;
    # finite grid values can never exceed it
    u = random_product(rng, 6)
    basis = build_basis(u)
    for k, a in enumerate(u.zeros):
        bound = np.sqrt(1 - abs(a) ** 2) / (1 - abs(a))
        assert np.max(np.abs(basis.values[k])) <= bound * (1 + 1e-12)


def test_kernel_at_zero_monomial():
    basis = build_basis(make_blaschke([0.0, 0.0]))
    kv = reproducing_kernel(basis, 0.0)
    assert np.max(np.abs(kv.grid_values - 1.0)) < 1e-14


def test_kernel_norm_at_zero(rng):
    for _ in range(5):
        u = random_product(rng, 4)
        basis = build_basis(u)
        kv = reproducing_kernel(basis, 0.0)
        assert kv.norm**2 == pytest.approx(1 - abs(u.eval(0.0)) ** 2, abs=1e-10)


def test_kernel_rational_simplification():
    # u = z^2, lam = 1/2: k(z) = (1 - z^2/4) / (1 - z/2) = 1 + z/2
    basis = build_basis(make_blaschke([0.0, 0.0]))
    kv = reproducing_kernel(basis, 0.5)
    z = basis.grid_z
    assert np.max(np.abs(kv.grid_values - (1.0 + 0.5 * z))) < 1e-14


def test_reproducing_property(rng):
    u = random_product(rng, 5)
    basis = build_basis(u)
    lam = 0.4 - 0.3j
    kv = reproducing_kernel(basis, lam)
    at_lam = basis.eval_basis([lam])[:, 0]
    for k in range(basis.dimension):
        inner = circle_inner_product(basis.values[k], kv.grid_values)
        assert inner == pytest.approx(at_lam[k], abs=1e-8)


def test_kernel_coords_match_grid_projection(rng):
    u = random_product(rng, 6)
    basis = build_basis(u)
    lam = 0.55 * np.exp(0.7j)
    kv = reproducing_kernel(basis, lam)
    projection = basis.values.conj() @ kv.grid_values / basis.quadrature_points
    assert np.max(np.abs(projection - kv.coords)) < 1e-10


def test_kernel_on_circle_no_nan(rng):
    # lam exactly on a grid node: the 0/0 node must be patched
    u = random_product(rng, 3)
    basis = build_basis(u)
    kv = reproducing_kernel(basis, 1.0)
    assert np.all(np.isfinite(kv.grid_values))
    expansion = kv.coords @ basis.values
    assert np.max(np.abs(kv.grid_values - expansion)) < 1e-8


def test_base_point_outside():
    basis = build_basis(make_blaschke([0.0]))
    with pytest.raises(BasePointOutside):
        reproducing_kernel(basis, 1.2)


def test_density_monomial_is_one():
    basis = build_basis(make_blaschke([0.0]))
    F = kernel_density(basis, 0.0, basis.grid_t)
    assert np.max(np.abs(F - 1.0)) < 1e-14


def test_density_mean_one(rng):
    u = random_product(rng, 5)
    basis = build_basis(u)
    F = kernel_density(basis, 0.3, basis.grid_t)
    assert np.all(F >= 0)
    assert np.mean(F) == pytest.approx(1.0, abs=1e-8)


def test_density_rejects_circle_point():
    basis = build_basis(make_blaschke([0.0]))
    with pytest.raises(BasePointOnCircle):
        kernel_density(basis, 1.0, 0.0)


def test_density_small_away_from_accumulation():
    # zeros 1 - 2^{-k}, k <= 8, base point at the innermost zero: away from
    # the accumulation arc the density is controlled by
    # C * (1 - |lam|^2) / (1 - |u(lam)|^2) with C = 4 / min |1 - conj(lam) z|^2
    zeros = [1.0 - 2.0 ** (-k) for k in range(1, 9)]
    u = make_blaschke(zeros)
    basis = build_basis(u)
    lam = zeros[-1]
    t = basis.grid_t
    away = (t >= 0.5) & (t <= 2 * np.pi - 0.5)
    F = kernel_density(basis, lam, t[away])
    gap = np.min(np.abs(1.0 - lam * np.exp(1j * t[away])))
    C = 4.0 / gap**2
    ulam = u.eval(lam)
    bound = C * (1 - abs(lam) ** 2) / (1 - abs(ulam) ** 2)
    assert np.max(F) <= bound


def test_circle_inner_product_basics():
    ones = np.ones(8, dtype=complex)
    assert circle_inner_product(ones, ones) == pytest.approx(1.0)
    t = 2 * np.pi * np.arange(8) / 8
    e1 = np.exp(1j * t)
    e2 = np.exp(2j * t)
    assert abs(circle_inner_product(e1, e2)) < 1e-15
    assert circle_inner_product(e1, e1) == pytest.approx(1.0)
    with pytest.raises(GridMismatch):
        circle_inner_product(np.ones(8), np.ones(16))


def test_boundary_norm_monomials():
    basis = build_basis(make_blaschke([0.0]))
    norm2, der = boundary_kernel_norm_check(basis, 1.0)
    assert norm2 == pytest.approx(1.0, abs=1e-10)
    assert der == pytest.approx(1.0, abs=1e-12)
    basis2 = build_basis(make_blaschke([0.0, 0.0]))
    norm2, der = boundary_kernel_norm_check(basis2, 1.0)
    assert norm2 == pytest.approx(2.0, abs=1e-10)
    assert der == pytest.approx(2.0, abs=1e-12)


def test_boundary_norm_agreement(rng):
    basis = build_basis(make_blaschke([0.5]))
    norm2, der = boundary_kernel_norm_check(basis, -1.0)
    assert norm2 == pytest.approx(der, rel=1e-6)
    u = random_product(rng, 6)
    basis = build_basis(u)
    zeta = np.exp(1j * rng.uniform(0, 2 * np.pi))
    norm2, der = boundary_kernel_norm_check(basis, zeta)
    assert norm2 == pytest.approx(der, rel=1e-6)


def test_tm_values_shape():
    vals = tm_values([0.2, 0.4j], np.array([0.0, 0.5, 0.5j]))
    assert vals.shape == (2, 3)


def test_export_csv(basis_z3):
    text = basis_z3.export_csv()
    lines = text.strip().split("\n")
    assert lines[0] == "k,j,t_j,re,im"
    assert len(lines) == 1 + 3 * basis_z3.quadrature_points
