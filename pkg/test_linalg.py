"""
Tests for the Jacobi eigensolver and state validation.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mub_coherence.errors import (
    NoConvergenceError,
    NotHermitianError,
    NotPositiveError,
    NotSquareError,
    TraceMismatchError,
)
from mub_coherence.linalg import (
    PAULI,
    as_complex_matrix,
    batch_eigenvalues,
    batch_is_physical,
    hermitian_eigenvalues,
    hermitian_eigh,
    hermitian_operator,
    is_physical,
    jacobi_eigh,
    tensor_product,
    validate_density,
    von_neumann_entropy,
)

unit = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


def random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


def random_density(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def test_as_complex_matrix_is_read_only():
    m = as_complex_matrix([[1, 2], [3, 4]])
    assert m.dtype == np.complex128
    with pytest.raises(ValueError):
        m[0, 0] = 5


@pytest.mark.parametrize("bad", [[1, 2, 3], [[np.nan, 0], [0, 1]], [[np.inf]]])
def test_as_complex_matrix_rejects_bad_input(bad):
    with pytest.raises(ValueError):
        as_complex_matrix(bad)


@pytest.mark.parametrize("n", [2, 3, 4, 6, 9])
def test_jacobi_matches_numpy_eigvalsh(n):
    rng = np.random.default_rng(n)
    for _ in range(20):
        m = random_hermitian(rng, n)
        expected = np.sort(np.linalg.eigvalsh(m))[::-1]
        got = np.array(hermitian_eigenvalues(m).eigenvalues)
        np.testing.assert_allclose(got, expected, atol=1e-10)


def test_eigenvectors_reconstruct_matrix():
    rng = np.random.default_rng(3)
    m = random_hermitian(rng, 5)
    w, v = hermitian_eigh(m)
    np.testing.assert_allclose(v @ np.diag(w) @ v.conj().T, m, atol=1e-10)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(5), atol=1e-12)
    assert np.all(np.diff(w) <= 0)


def test_batch_results_do_not_depend_on_batch_mates():
    rng = np.random.default_rng(11)
    stack = np.stack([random_hermitian(rng, 4) for _ in range(8)])
    together = batch_eigenvalues(stack)
    alone = np.stack([batch_eigenvalues(m[None])[0] for m in stack])
    np.testing.assert_array_equal(together, alone)


def test_diagonal_input_is_returned_sorted():
    spectrum = hermitian_eigenvalues(np.diag([0.1, 0.7, 0.2]))
    assert spectrum.eigenvalues == (0.7, 0.2, 0.1)
    assert spectrum.max == 0.7
    assert spectrum.min == 0.1
    assert spectrum.total == pytest.approx(1.0, abs=1e-15)


def test_sweep_budget_exhaustion_raises():
    with pytest.raises(NoConvergenceError) as excinfo:
        jacobi_eigh(PAULI.sigma_x[None], max_sweeps=0)
    assert excinfo.value.sweeps == 0
    assert excinfo.value.off_norm > 0


def test_non_hermitian_input_rejected():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues(np.array([[1.0, 1.0], [0.0, 1.0]]))


@settings(max_examples=200, deadline=None)
@given(a=unit, d=unit, re=unit, im=unit)
def test_two_by_two_closed_form(a, d, re, im):
    m = np.array([[a, complex(re, -im)], [complex(re, im), d]])
    mean = 0.5 * (a + d)
    radius = np.hypot(0.5 * (a - d), abs(complex(re, im)))
    got = hermitian_eigenvalues(m).eigenvalues
    assert got[0] == pytest.approx(mean + radius, abs=1e-12)
    assert got[1] == pytest.approx(mean - radius, abs=1e-12)


def test_validate_density_accepts_mixed_state():
    rho = validate_density(np.eye(2) / 2)
    assert rho.dim == 2
    np.testing.assert_array_equal(rho.mat, np.eye(2) / 2)


@pytest.mark.parametrize("matrix, error", [
    (np.ones((2, 3)) / 2, NotSquareError),
    (np.array([[0.5, 0.1], [0.3, 0.5]]), NotHermitianError),
    (np.eye(2), TraceMismatchError),
    (np.diag([1.5, -0.5]), NotPositiveError),
])
def test_validate_density_errors(matrix, error):
    with pytest.raises(error):
        validate_density(matrix)


def test_validation_errors_are_value_errors():
    with pytest.raises(ValueError):
        validate_density(np.diag([1.5, -0.5]))


def test_validate_density_random_states():
    rng = np.random.default_rng(5)
    for n in (2, 3, 4):
        for _ in range(10):
            assert validate_density(random_density(rng, n)).dim == n


def test_hermitian_operator_flags_non_physical():
    op = hermitian_operator(np.diag([1.5, -0.5]))
    assert not op.physical
    assert hermitian_operator(np.eye(3) / 3).physical


def test_is_physical_and_batch_agree():
    stack = np.stack([np.eye(2) / 2, np.diag([1.2, -0.2]), np.diag([1.0, 0.0])])
    expected = [is_physical(m) for m in stack]
    assert expected == [True, False, True]
    assert batch_is_physical(stack).tolist() == expected


def test_von_neumann_entropy_in_bits():
    assert von_neumann_entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-15)
    assert von_neumann_entropy([1.0, 0.0]) == 0.0
    assert von_neumann_entropy([0.25] * 4) == pytest.approx(2.0, abs=1e-15)
    assert von_neumann_entropy([1.0, -1e-17]) == 0.0


def test_tensor_product_layout():
    a = np.array([[1, 2], [3, 4]])
    b = np.array([[0, 1], [1, 0]])
    out = tensor_product(a, b)
    assert out.shape == (4, 4)
    assert out[1, 2] == a[0, 1] * b[1, 0]
    assert not out.flags.writeable
    ket = tensor_product(np.array([[1], [0]]), np.array([[0], [1]]))
    np.testing.assert_array_equal(ket.ravel(), [0, 1, 0, 0])


def test_tensor_product_is_associative():
    rng = np.random.default_rng(17)
    mats = [rng.integers(-1, 2, size=(2, 2)) for _ in range(20)]
    for a, b, c in zip(mats, mats[1:], mats[2:]):
        np.testing.assert_array_equal(tensor_product(tensor_product(a, b), c),
                                      tensor_product(a, tensor_product(b, c)))


def test_eigen_reconstruction_small_dims():
    rng = np.random.default_rng(23)
    for k in range(100):
        n = 2 + k % 3
        m = random_hermitian(rng, n)
        w, v = hermitian_eigh(m)
        np.testing.assert_allclose(v @ np.diag(w) @ v.conj().T, m, atol=1e-10)
        np.testing.assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-12)
