import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nmwork.errors import InvalidArgumentError
from nmwork.linalg import (I2, MEMORY, SX, SY, SZ, SYSTEM, DensityMatrix, entropy_from_eigvals,
                           herm_eigvals, partial_trace, singlet, singlet_ket, tensor,
                           von_neumann_entropy)
from nmwork.verify import random_state, random_unitary


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + a.conj().T)


def test_tensor_identity():
    assert np.array_equal(tensor(I2, I2), np.eye(4))


def test_tensor_ordering_puts_system_on_the_left():
    ket0, ket1 = np.array([1, 0]), np.array([0, 1])
    # |10> is basis index 2
    assert tensor(np.outer(ket1, ket1), np.outer(ket0, ket0))[2, 2] == 1


def test_tensor_rejects_wrong_dims():
    with pytest.raises(InvalidArgumentError):
        tensor(np.eye(4), I2)


def test_singlet_layout():
    ket = singlet_ket()
    assert ket[2] == pytest.approx(1 / math.sqrt(2))
    assert ket[1] == pytest.approx(-1 / math.sqrt(2))
    assert ket[0] == ket[3] == 0


@pytest.mark.parametrize("keep", [SYSTEM, MEMORY])
def test_singlet_reductions_are_maximally_mixed(keep):
    red = partial_trace(singlet(), keep)
    assert np.allclose(red.mat, I2 / 2, atol=1e-15)


def test_partial_trace_of_product():
    rng = np.random.default_rng(1)
    for _ in range(20):
        a, b = random_state(rng, 2), random_state(rng, 2)
        rho = DensityMatrix(tensor(a, b))
        assert np.max(np.abs(partial_trace(rho, SYSTEM).mat - a)) < 1e-12
        assert np.max(np.abs(partial_trace(rho, MEMORY).mat - b)) < 1e-12


def test_eigvals_known_spectra():
    assert herm_eigvals(np.diag([0.75, 0.25])) == pytest.approx([0.25, 0.75], abs=1e-15)
    assert herm_eigvals(SX) == pytest.approx([-1.0, 1.0], abs=1e-15)
    assert herm_eigvals(SY) == pytest.approx([-1.0, 1.0], abs=1e-15)


def test_eigvals_against_lapack_and_charpoly():
    rng = np.random.default_rng(2)
    for dim in (2, 4):
        for _ in range(50):
            h = random_hermitian(rng, dim)
            vals = herm_eigvals(h)
            assert vals == sorted(vals)
            assert np.max(np.abs(np.array(vals) - np.linalg.eigvalsh(h))) < 1e-12
            assert abs(sum(vals) - np.trace(h).real) < 1e-10
            for lam in vals:
                assert abs(np.linalg.det(h - lam * np.eye(dim))) < 1e-9


def test_eigvals_2x2_quadratic_formula():
    rng = np.random.default_rng(3)
    for _ in range(100):
        h = random_hermitian(rng, 2)
        a, d, b = h[0, 0].real, h[1, 1].real, abs(h[0, 1])
        disc = math.sqrt(0.25 * (a - d) ** 2 + b * b)
        expected = [0.5 * (a + d) - disc, 0.5 * (a + d) + disc]
        assert herm_eigvals(h) == pytest.approx(expected, abs=1e-12)


def test_eigvals_degenerate_and_diagonal():
    assert herm_eigvals(np.eye(4)) == [1.0, 1.0, 1.0, 1.0]
    assert herm_eigvals(tensor(SZ, SZ)) == pytest.approx([-1, -1, 1, 1], abs=1e-15)


def test_eigvals_rejects_non_hermitian_and_bad_shapes():
    with pytest.raises(InvalidArgumentError):
        herm_eigvals(np.array([[0, 1], [0, 0]]))
    with pytest.raises(InvalidArgumentError):
        herm_eigvals(np.eye(3))
    with pytest.raises(InvalidArgumentError):
        herm_eigvals(np.array([[np.nan, 0], [0, 1]]))


def test_density_matrix_validation():
    with pytest.raises(InvalidArgumentError):
        DensityMatrix(np.eye(2))  # trace 2
    with pytest.raises(InvalidArgumentError):
        DensityMatrix(np.diag([1.5, -0.5]))  # not PSD
    with pytest.raises(InvalidArgumentError):
        DensityMatrix(np.array([[0.5, 0.5], [0.0, 0.5]]))  # not Hermitian
    rho = DensityMatrix(I2 / 2)
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 1.0


def test_entropy_anchors():
    assert von_neumann_entropy(DensityMatrix(I2 / 2)) == pytest.approx(1.0, abs=1e-15)
    assert von_neumann_entropy(DensityMatrix(np.eye(4) / 4)) == pytest.approx(2.0, abs=1e-15)
    assert von_neumann_entropy(singlet()) == pytest.approx(0.0, abs=1e-14)
    rng = np.random.default_rng(4)
    ket = rng.normal(size=4) + 1j * rng.normal(size=4)
    assert von_neumann_entropy(DensityMatrix.from_ket(ket)) == pytest.approx(0.0, abs=1e-12)


def test_entropy_clamping_tolerance():
    assert entropy_from_eigvals([-5e-10, 1.0]) == 0.0
    with pytest.raises(InvalidArgumentError):
        entropy_from_eigvals([-2e-9, 1.0])


def test_entropy_unitary_invariance():
    rng = np.random.default_rng(5)
    for dim in (2, 4):
        for _ in range(25):
            rho = random_state(rng, dim)
            u = random_unitary(rng, dim)
            h1 = von_neumann_entropy(DensityMatrix(rho))
            h2 = von_neumann_entropy(DensityMatrix(u @ rho @ u.conj().T))
            assert abs(h1 - h2) < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(0.0, 1.0), min_size=4, max_size=4).filter(lambda w: sum(w) > 1e-3))
def test_entropy_of_diagonal_state_matches_shannon(w):
    p = np.array(w) / sum(w)
    expected = -sum(x * math.log2(x) for x in p if x > 0)
    h = von_neumann_entropy(DensityMatrix(np.diag(p)))
    assert h == pytest.approx(expected, abs=1e-12)
    assert 0.0 <= h <= 2.0
