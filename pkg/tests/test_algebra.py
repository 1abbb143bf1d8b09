import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirac_sidharth.algebra import (
    I4,
    apply_similarity,
    build_gamma_set,
    clifford_residual,
    dirac_weyl_transform,
    invariant_residuals,
    kron,
    parity_gamma5_residual,
    pauli,
)
from dirac_sidharth.errors import UsageError, ValidationError

ATOL = 1e-12
s0, s1, s2, s3 = (pauli(k) for k in range(4))


def random_unitary(rng, n=4):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_pauli_values():
    np.testing.assert_array_equal(pauli(0), np.eye(2))
    np.testing.assert_array_equal(pauli(3), [[1, 0], [0, -1]])
    np.testing.assert_array_equal(pauli(2), [[0, -1j], [1j, 0]])
    np.testing.assert_array_equal(pauli(1), [[0, 1], [1, 0]])


@pytest.mark.parametrize("k", [1, 2, 3])
def test_pauli_hermitian_unitary_traceless(k):
    s = pauli(k)
    assert np.allclose(s, s.conj().T, atol=ATOL)
    assert np.allclose(s @ s.conj().T, np.eye(2), atol=ATOL)
    assert abs(np.trace(s)) < ATOL


@pytest.mark.parametrize("k", [-1, 4, 1.0, "1", True])
def test_pauli_rejects_bad_index(k):
    with pytest.raises(UsageError):
        pauli(k)


def test_pauli_returns_copies():
    a = pauli(1)
    a[0, 0] = 7
    assert pauli(1)[0, 0] == 0


def test_kron_examples():
    np.testing.assert_array_equal(kron(s3, s0), np.diag([1, 1, -1, -1]))
    np.testing.assert_array_equal(kron(s0, s0), np.eye(4))
    block = np.block([[np.zeros((2, 2)), np.eye(2)], [np.eye(2), np.zeros((2, 2))]])
    np.testing.assert_array_equal(kron(s1, s0), block)


def test_kron_block_layout():
    a = np.array([[1, 2j], [3, 4]])
    b = np.array([[5, 6], [7j, 8]])
    expected = np.block([[a[0, 0] * b, a[0, 1] * b], [a[1, 0] * b, a[1, 1] * b]])
    np.testing.assert_array_equal(kron(a, b), expected)


coef = st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=4, max_size=4)


def _span(c):
    return sum(ci * pauli(i) for i, ci in enumerate(c))


@settings(max_examples=60, deadline=None)
@given(coef, coef, coef, coef)
def test_kron_mixed_product(ca, cb, cc, cd):
    a, b, c, d = map(_span, (ca, cb, cc, cd))
    lhs = kron(a, b) @ kron(c, d)
    rhs = kron(a @ c, b @ d)
    assert np.max(np.abs(lhs - rhs)) <= ATOL * max(1.0, np.max(np.abs(rhs)))


@settings(max_examples=60, deadline=None)
@given(coef, coef, coef, st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_kron_bilinear(ca, cb, cc, lam):
    a, b, c = map(_span, (ca, cb, cc))
    assert np.allclose(kron(a + lam * b, c), kron(a, c) + lam * kron(b, c), atol=ATOL * 100)
    assert np.allclose(kron(c, a + lam * b), kron(c, a) + lam * kron(c, b), atol=ATOL * 100)


def test_dirac_set_literal():
    g = build_gamma_set("dirac")
    np.testing.assert_array_equal(g.gamma0, np.diag([1, 1, -1, -1]))
    np.testing.assert_array_equal(g.gamma5, kron(s1, s0))
    z = np.zeros((2, 2))
    for gj, sj in zip((g.gamma1, g.gamma2, g.gamma3), (s1, s2, s3)):
        np.testing.assert_array_equal(gj, np.block([[z, sj], [-sj, z]]))


def test_gamma5_is_product():
    for rep in ("dirac", "weyl"):
        g = build_gamma_set(rep)
        assert np.max(np.abs(g.gamma5_from_product() - g.gamma5)) <= ATOL


@pytest.mark.parametrize("rep", ["dirac", "weyl", "Dirac", "WEYL"])
def test_all_invariants_hold(rep):
    for name, value in invariant_residuals(build_gamma_set(rep)).items():
        assert value <= ATOL, name


def test_unknown_representation():
    with pytest.raises(UsageError):
        build_gamma_set("majorana")


def test_weyl_matrices():
    g = build_gamma_set("weyl")
    assert g.representation == "weyl"
    assert np.allclose(g.gamma0, kron(s1, s0), atol=ATOL)
    # Forced by T: (s3+s1) s1 (s3+s1)/2 = s3.
    assert np.allclose(g.gamma5, np.diag([1, 1, -1, -1]), atol=ATOL)
    for gj, sj in zip((g.gamma1, g.gamma2, g.gamma3), (s1, s2, s3)):
        assert np.allclose(gj, kron(-1j * s2, sj), atol=ATOL)


def test_transform_properties():
    t = dirac_weyl_transform()
    assert np.allclose(t @ t, I4, atol=ATOL)
    assert np.allclose(t, t.conj().T, atol=ATOL)
    assert np.allclose(t @ build_gamma_set("dirac").gamma0 @ t, kron(s1, s0), atol=ATOL)
    chi, phi = np.array([1.0, 0.0]), np.array([1.0, 0.0])
    out = t @ np.concatenate([chi, phi])
    assert np.allclose(out, np.concatenate([chi + phi, chi - phi]) / np.sqrt(2), atol=ATOL)
    assert np.allclose(out, [np.sqrt(2), 0, 0, 0], atol=ATOL)


def test_clifford_residual_detects_missing_gamma1():
    g = build_gamma_set("dirac").with_matrix("gamma1", np.zeros((4, 4)))
    assert clifford_residual(g) == pytest.approx(2.0, abs=ATOL)


def test_parity_residual_examples():
    assert parity_gamma5_residual(build_gamma_set("dirac")) <= ATOL
    assert parity_gamma5_residual(build_gamma_set("weyl")) <= ATOL
    g = build_gamma_set("dirac").with_matrix("gamma5", I4)
    assert parity_gamma5_residual(g) == pytest.approx(2.0, abs=ATOL)


def test_similarity_identity():
    g = build_gamma_set("dirac")
    h = apply_similarity(g, np.eye(4))
    for a, b in zip(g.mu + (g.gamma5,), h.mu + (h.gamma5,)):
        np.testing.assert_array_equal(a, b)


def test_similarity_rejects_non_unitary():
    with pytest.raises(ValidationError):
        apply_similarity(build_gamma_set("dirac"), 2 * np.eye(4))
    with pytest.raises(ValidationError):
        apply_similarity(build_gamma_set("dirac"), np.eye(3))


@pytest.mark.parametrize("seed", range(10))
def test_invariants_survive_random_unitary(seed):
    u = random_unitary(np.random.default_rng(seed))
    g = apply_similarity(build_gamma_set("dirac"), u)
    for name, value in invariant_residuals(g).items():
        assert value <= ATOL, name


def test_gamma_set_is_immutable():
    g = build_gamma_set("dirac")
    with pytest.raises(ValueError):
        g.gamma0[0, 0] = 5
