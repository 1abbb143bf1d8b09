import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirac_sidharth.dispersion import (
    ModelParams,
    ScaleCatalog,
    energy_branches,
    energy_squared,
    group_velocity,
    scale_hierarchy_holds,
    snyder_energy,
    to_natural,
)
from dirac_sidharth.errors import DomainError, ValidationError
from dirac_sidharth.plane_wave import effective_hamiltonian_h

from oracles import central_difference, dispersion_e2_exact

REF = ModelParams(m=1.0, alpha=1.0, ell=0.1)
# Frozen from dispersion_e2_exact(1, 1, 0.1, 2) at 50 digits.
REF_E2 = 5.16
REF_E = 2.27156333832011


def test_params_validation():
    with pytest.raises(ValidationError):
        ModelParams(m=-1)
    with pytest.raises(ValidationError):
        ModelParams(alpha=-0.1)
    with pytest.raises(ValidationError):
        ModelParams(ell=0)
    with pytest.raises(ValidationError):
        ModelParams(m=float("nan"))
    assert ModelParams(alpha=4, ell=0.5).beta == 1.0


@pytest.mark.parametrize("alpha, ell", [(1, 1), (4, 0.5)])
def test_snyder_energy(alpha, ell):
    assert snyder_energy(ModelParams(alpha=alpha, ell=ell)) == pytest.approx(1.0, abs=1e-15)


def test_snyder_energy_needs_alpha():
    with pytest.raises(DomainError):
        snyder_energy(ModelParams(alpha=0))


def test_energy_squared_examples():
    assert energy_squared(ModelParams(m=2.5, alpha=1, ell=3), 0) == 6.25
    assert energy_squared(ModelParams(m=1, alpha=0), 1) == 2
    assert energy_squared(REF, 2) == pytest.approx(REF_E2, rel=1e-15)
    assert float(dispersion_e2_exact(1, 1, 0.1, 2)) == pytest.approx(REF_E2, rel=1e-15)


def test_energy_squared_array_and_negative_p():
    out = energy_squared(REF, np.array([0.0, 2.0]))
    np.testing.assert_allclose(out, [1.0, REF_E2], rtol=1e-15)
    with pytest.raises(ValidationError):
        energy_squared(REF, -1.0)


def test_energy_branches_examples():
    assert energy_branches(ModelParams(m=1), 0) == (1.0, -1.0)
    assert energy_branches(ModelParams(m=0, alpha=0), 3) == (3.0, -3.0)
    e_plus, e_minus = energy_branches(REF, 2)
    assert e_plus == pytest.approx(REF_E, rel=1e-14)
    assert e_minus == -e_plus


def test_group_velocity_examples():
    assert group_velocity(ModelParams(m=1, alpha=1, ell=1), 0) == 0
    assert group_velocity(ModelParams(m=0, alpha=0), 2) == pytest.approx(1.0, abs=1e-15)
    fd = central_difference(lambda p: energy_branches(REF, p)[0], 2.0)
    assert group_velocity(REF, 2.0) == pytest.approx(fd, rel=1e-8)


def test_group_velocity_undefined_for_massless_rest():
    with pytest.raises(DomainError):
        group_velocity(ModelParams(m=0), 0.0)


def test_group_velocity_not_clamped():
    assert group_velocity(ModelParams(m=1, alpha=1, ell=1), 10.0) > 1.0


@pytest.mark.parametrize("p", np.logspace(-2, 1.5, 25))
def test_group_velocity_matches_finite_difference(p):
    for params in (REF, ModelParams(m=0.3, alpha=2.0, ell=0.4), ModelParams(m=2.0)):
        fd = central_difference(lambda q: energy_branches(params, q)[0], p, 1e-5)
        assert group_velocity(params, p) == pytest.approx(fd, rel=1e-8)


params_st = st.builds(
    ModelParams,
    m=st.floats(0, 5),
    alpha=st.floats(0, 3),
    ell=st.floats(1e-3, 2),
)


@settings(max_examples=200, deadline=None)
@given(params_st, st.floats(0, 50))
def test_energy_at_least_mass(params, p):
    assert energy_squared(params, p) >= params.m ** 2


@settings(max_examples=200, deadline=None)
@given(params_st, st.floats(1e-3, 20), st.floats(1e-3, 5))
def test_energy_strictly_increasing(params, p, dp):
    assert energy_squared(params, p + dp) > energy_squared(params, p)


@pytest.mark.parametrize("alpha", [1e-6, 1e-8])
@pytest.mark.parametrize("p", [0.5, 1.0, 2.0])
def test_small_alpha_first_order(alpha, p):
    params0 = ModelParams(m=1.0, alpha=0.0, ell=1.0)
    params = ModelParams(m=1.0, alpha=alpha, ell=1.0)
    e0 = energy_branches(params0, p)[0]
    shift = energy_branches(params, p)[0] - e0
    predicted = alpha * p ** 4 / (2 * e0)
    assert shift == pytest.approx(predicted, rel=1e-3)


@settings(max_examples=200, deadline=None)
@given(params_st, st.floats(0, 10), st.sampled_from([1, -1]))
def test_h_squared_is_e_squared(params, p, eps):
    h = effective_hamiltonian_h(params, p, eps)
    e2 = energy_squared(params, p)
    assert np.max(np.abs(h @ h - e2 * np.eye(2))) <= 1e-12 * max(1.0, e2)


def test_scale_catalog():
    cat = ScaleCatalog()
    assert (cat.ell_planck, cat.ell_lhc, cat.ell_compton) == (1.6e-33, 2e-18, 1e-12)
    assert scale_hierarchy_holds(cat)
    assert not scale_hierarchy_holds(ScaleCatalog(1, 1, 1))
    assert not scale_hierarchy_holds(ScaleCatalog(ell_planck=1e-12, ell_compton=1.6e-33))
    with pytest.raises(ValidationError):
        scale_hierarchy_holds(ScaleCatalog(ell_planck=0.0))


def test_si_conversion_round_numbers():
    from scipy import constants as sc

    m, ell, p = to_natural("si", m=sc.m_e, ell=sc.hbar / (sc.m_e * sc.c), p=np.array([sc.m_e * sc.c]))
    assert m == pytest.approx(1.0)
    assert ell == pytest.approx(1.0)
    assert p[0] == pytest.approx(1.0)
    assert to_natural("electron", m=2.0, ell=3.0, p=4.0) == (2.0, 3.0, 4.0)
    with pytest.raises(ValidationError):
        to_natural("cgs", m=1, ell=1)
