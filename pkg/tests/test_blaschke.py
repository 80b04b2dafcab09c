import numpy as np
import pytest

from ttolab import (
    accumulation_family,
    eval_inner,
    inner_spectrum,
    make_blaschke,
)
from ttolab.blaschke import ConditioningWarning
from ttolab.errors import (
    BadPhase,
    BadPoint,
    BadRate,
    EmptyProduct,
    PoleHit,
    ZeroOutsideDisk,
)

from conftest import random_product
from oracles import blaschke_value, derivative_central


def test_single_zero_at_origin_is_z():
    u = make_blaschke([0.0])
    for z in (0.3, -0.5j, 0.1 + 0.2j):
        assert u.eval(z) == pytest.approx(z)


def test_double_zero_is_z_squared():
    u = make_blaschke([0.0, 0.0])
    assert u.eval(0.5) == pytest.approx(0.25)
    assert eval_inner(u, 0.5) == pytest.approx(0.25)


def test_zero_and_unimodularity():
    u = make_blaschke([0.5])
    assert abs(u.eval(0.5)) < 1e-15
    for t in np.linspace(0.1, 6.2, 7):
        assert abs(abs(u.eval(np.exp(1j * t))) - 1.0) < 1e-12


def test_eval_at_boundary_point_one():
    u = make_blaschke([0.5])
    assert eval_inner(u, 1.0) == pytest.approx((1 - 0.5) / (1 - 0.5))


def test_eval_matches_direct_rational_oracle(rng):
    u = random_product(rng, 6)
    for _ in range(10):
        z = 0.95 * rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        assert u.eval(z) == pytest.approx(
            blaschke_value(u.zeros, u.phase, z), abs=1e-12
        )


def test_unimodular_on_circle_many_points(rng):
    u = random_product(rng, 8)
    t = rng.uniform(0, 2 * np.pi, size=100)
    vals = u.eval(np.exp(1j * t))
    assert np.max(np.abs(np.abs(vals) - 1.0)) < 1e-12


def test_pole_hit():
    u = make_blaschke([0.5])
    with pytest.raises(PoleHit):
        eval_inner(u, 2.0)  # 1/conj(0.5)


def test_zero_outside_disk_rejected():
    with pytest.raises(ZeroOutsideDisk):
        make_blaschke([1.0])
    with pytest.raises(ZeroOutsideDisk):
        make_blaschke([1.0 - 1e-13])


def test_bad_phase_and_empty():
    with pytest.raises(BadPhase):
        make_blaschke([0.1], phase=2.0)
    with pytest.raises(EmptyProduct):
        make_blaschke([])


def test_near_boundary_warns_but_builds():
    with pytest.warns(ConditioningWarning):
        u = make_blaschke([1.0 - 1e-7])
    assert u.degree == 1


def test_derivative_matches_central_difference(rng):
    u = random_product(rng, 7)
    t = rng.uniform(0, 2 * np.pi, size=20)
    for zeta in np.exp(1j * t):
        fd = derivative_central(u.eval, zeta)
        an = u.derivative(zeta)
        assert abs(an - fd) / abs(fd) < 1e-6


def test_derivative_at_a_zero(rng):
    # naive log-derivative formula would blow up here
    u = make_blaschke([0.4, -0.2])
    h = 1e-6
    fd = (u.eval(0.4 + h) - u.eval(0.4 - h)) / (2 * h)
    assert u.derivative(0.4) == pytest.approx(fd, rel=1e-6)


def test_inner_spectrum_monomial():
    assert inner_spectrum(make_blaschke([0, 0, 0])) == {0}


def test_inner_spectrum_family_geometric_half():
    fam = accumulation_family(1.0, 0.5, [3])
    assert inner_spectrum(fam) == {0.5, 0.75, 0.875, 1.0}


def test_inner_spectrum_inside_disk_only():
    spec = inner_spectrum(make_blaschke([0.3, 0.3j]))
    assert spec == {0.3, 0.3j}
    assert all(abs(abs(z) - 1.0) > 1e-6 for z in spec)


def test_family_zeros_third():
    fam = accumulation_family(1.0, 1.0 / 3.0, [2])
    zeros = fam.member(0).zeros
    assert zeros[0] == pytest.approx(2.0 / 3.0)
    assert zeros[1] == pytest.approx(8.0 / 9.0)


def test_family_nesting_prefix():
    fam = accumulation_family(1.0, 0.5, [1, 2])
    small = fam.member(0).zeros
    large = fam.member(1).zeros
    assert large[: len(small)] == small


def test_family_negative_point():
    fam = accumulation_family(-1.0, 0.5, [3])
    assert fam.member(0).zeros == (-0.5, -0.75, -0.875)


def test_family_validation():
    with pytest.raises(BadRate):
        accumulation_family(1.0, 1.5, [2])
    with pytest.raises(BadPoint):
        accumulation_family(0.9, 0.5, [2])
    with pytest.raises(ValueError):
        accumulation_family(1.0, 0.5, [3, 2])


def test_family_member_beyond_float64_guard():
    # rate 1/3 puts zero j inside the boundary guard once (1/3)**j < 1e-12,
    # i.e. from degree 26 on; materialization must refuse, not project
    fam = accumulation_family(1.0, 1.0 / 3.0, [8, 32])
    assert fam.member(0).degree == 8
    with pytest.raises(ZeroOutsideDisk):
        fam.member(1)


def test_json_round_trip(rng):
    u = random_product(rng, 4)
    u2 = type(u).from_json_dict(u.to_json_dict())
    assert u2.zeros == u.zeros
    assert u2.phase == pytest.approx(u.phase)
    fam = accumulation_family(1j, 0.5, [2, 4], phase=-1.0)
    fam2 = type(fam).from_json_dict(fam.to_json_dict())
    assert fam2 == fam
