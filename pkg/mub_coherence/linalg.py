"""
Dense complex linear algebra for small quantum states.

Matrices are numpy complex128 arrays. Values handed out by this module are
read-only copies, so they can be shared freely between threads.
"""

import logging
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .errors import (
    NoConvergenceError,
    NotHermitianError,
    NotPositiveError,
    NotSquareError,
    TraceMismatchError,
)
from .mubcoh_config import (
    HERMITIAN_INPUT_TOL,
    JACOBI_MAX_SWEEPS,
    JACOBI_THRESHOLD,
    VALIDATION_TOL,
)

logger = logging.getLogger(__name__)


def as_complex_matrix(data) -> np.ndarray:
    """
    Convert nested sequences or an array to a read-only complex128 matrix.

    Args:
        data: anything numpy can turn into a 2D array

    Returns:
        np.ndarray: frozen (rows, cols) complex128 copy

    Raises:
        ValueError: if the input is not 2D, is empty, or has NaN/Inf entries
    """
    mat = np.array(data, dtype=np.complex128)
    if mat.ndim != 2 or mat.size == 0:
        raise ValueError(f"Expected a non-empty 2D matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise ValueError("Matrix has non-finite entries")
    mat.setflags(write=False)
    return mat


def max_asymmetry(m: np.ndarray) -> float:
    """Largest entry of |m - m^dagger|."""
    return float(np.max(np.abs(m - m.conj().T)))


def hermitian_part(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Kronecker product, entry[(i*rb + k), (j*cb + l)] = a[i, j] * b[k, l].

    Column kets (shape (d, 1)) tensor into column kets.
    """
    out = np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class PauliSet:
    sigma_x: np.ndarray
    sigma_y: np.ndarray
    sigma_z: np.ndarray
    identity_2: np.ndarray

    def as_tuple(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.sigma_x, self.sigma_y, self.sigma_z


PAULI = PauliSet(
    sigma_x=as_complex_matrix([[0, 1], [1, 0]]),
    sigma_y=as_complex_matrix([[0, -1j], [1j, 0]]),
    sigma_z=as_complex_matrix([[1, 0], [0, -1]]),
    identity_2=as_complex_matrix(np.eye(2)),
)


@dataclass(frozen=True)
class DensityMatrix:
    """A validated quantum state: Hermitian, unit trace, positive semidefinite."""

    dim: int
    mat: np.ndarray


@dataclass(frozen=True)
class HermitianOperator:
    """
    Hermitian unit-trace matrix that may fail positivity.

    Produced by state constructors when physicality is not required;
    `physical` records whether the matrix is a valid state.
    """

    dim: int
    mat: np.ndarray
    physical: bool


StateLike = Union[DensityMatrix, HermitianOperator]


@dataclass(frozen=True)
class HermitianSpectrum:
    eigenvalues: Tuple[float, ...]  # descending

    @property
    def total(self) -> float:
        return float(sum(self.eigenvalues))

    @property
    def min(self) -> float:
        return self.eigenvalues[-1]

    @property
    def max(self) -> float:
        return self.eigenvalues[0]


def jacobi_eigh(stack: np.ndarray,
                threshold: float = JACOBI_THRESHOLD,
                max_sweeps: int = JACOBI_MAX_SWEEPS) -> Tuple[np.ndarray, np.ndarray]:
    """
    Cyclic Jacobi diagonalization of a stack of Hermitian matrices.

    Pivots are visited row by row, (0,1), (0,2), ..., (n-2,n-1), once per
    sweep. A matrix stops rotating once its off-diagonal Frobenius norm is at
    most threshold * max(1, ||m||_F). Each matrix in the stack evolves
    independently, so results do not depend on what else is in the batch.

    Args:
        stack: (batch, n, n) Hermitian matrices
        threshold: relative off-diagonal norm at which a matrix counts as diagonal
        max_sweeps: sweep budget

    Returns:
        (eigenvalues, eigenvectors): (batch, n) reals in Jacobi output order and
        (batch, n, n) unitary matrices whose columns are the eigenvectors

    Raises:
        NoConvergenceError: if some matrix is still off-diagonal after max_sweeps
    """
    a = np.array(stack, dtype=np.complex128)
    batch, n, _ = a.shape
    vecs = np.broadcast_to(np.eye(n, dtype=np.complex128), (batch, n, n)).copy()
    scale = np.maximum(1.0, np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2))))
    off_mask = ~np.eye(n, dtype=bool)
    pivots = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]

    for sweep in range(max_sweeps + 1):
        off_norm = np.sqrt(np.sum(np.abs(a[:, off_mask]) ** 2, axis=1))
        active = off_norm > threshold * scale
        if not active.any():
            logger.debug(f"Jacobi converged after {sweep} sweeps for {batch} matrices of dim {n}")
            return a.diagonal(axis1=1, axis2=2).real.copy(), vecs
        if sweep == max_sweeps:
            raise NoConvergenceError(max_sweeps, float(off_norm.max()))

        for p, q in pivots:
            apq = a[:, p, q]
            mag = np.abs(apq)
            rotate = active & (mag > 0.0)
            if not rotate.any():
                continue
            safe = np.where(rotate, mag, 1.0)
            phase = np.where(rotate, apq / safe, 1.0)
            theta = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
            t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(rotate, t, 0.0)
            c = (1.0 / np.sqrt(t * t + 1.0))[:, None]
            s = (t[:, None] * c)
            ph = phase[:, None]

            # A <- A J with J[p,p] = J[q,q] = c, J[p,q] = s e^{i phi}, J[q,p] = -s e^{-i phi}
            col_p, col_q = a[:, :, p].copy(), a[:, :, q].copy()
            a[:, :, p] = c * col_p - s * ph.conj() * col_q
            a[:, :, q] = s * ph * col_p + c * col_q
            # A <- J^dagger A
            row_p, row_q = a[:, p, :].copy(), a[:, q, :].copy()
            a[:, p, :] = c * row_p - s * ph * row_q
            a[:, q, :] = s * ph.conj() * row_p + c * row_q
            a[rotate, p, q] = 0.0
            a[rotate, q, p] = 0.0

            vec_p, vec_q = vecs[:, :, p].copy(), vecs[:, :, q].copy()
            vecs[:, :, p] = c * vec_p - s * ph.conj() * vec_q
            vecs[:, :, q] = s * ph * vec_p + c * vec_q

    raise NoConvergenceError(max_sweeps, float("nan"))  # unreachable


def _check_hermitian_stack(stack: np.ndarray, tol: float) -> None:
    if stack.ndim != 3 or stack.shape[1] != stack.shape[2]:
        raise NotSquareError(stack.shape[-2:])
    asym = np.max(np.abs(stack - np.conj(np.swapaxes(stack, 1, 2)))) if stack.size else 0.0
    if asym > tol:
        raise NotHermitianError(asym)


def batch_eigenvalues(stack: np.ndarray) -> np.ndarray:
    """
    Descending eigenvalues for a (batch, n, n) stack of Hermitian matrices.

    Ties keep their Jacobi output order.
    """
    stack = np.asarray(stack, dtype=np.complex128)
    _check_hermitian_stack(stack, HERMITIAN_INPUT_TOL)
    values, _ = jacobi_eigh(stack)
    order = np.argsort(-values, axis=1, kind="stable")
    return np.take_along_axis(values, order, axis=1)


def hermitian_eigh(m: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigen-decomposition of one Hermitian matrix.

    Returns:
        (eigenvalues, eigenvectors) with eigenvalues descending and the
        matching eigenvectors as columns, so m = V diag(w) V^dagger
    """
    m = np.asarray(m, dtype=np.complex128)
    _check_hermitian_stack(m[None], HERMITIAN_INPUT_TOL)
    values, vecs = jacobi_eigh(m[None])
    order = np.argsort(-values[0], kind="stable")
    return values[0][order], vecs[0][:, order]


def hermitian_eigenvalues(m: np.ndarray) -> HermitianSpectrum:
    """
    Eigenvalues of a Hermitian matrix, sorted descending.

    Raises:
        NotHermitianError: if max |m - m^dagger| exceeds 1e-9
        NoConvergenceError: if the Jacobi sweep budget is exhausted
    """
    return HermitianSpectrum(tuple(float(x) for x in batch_eigenvalues(np.asarray(m)[None])[0]))


def von_neumann_entropy(eigenvalues) -> float:
    """Entropy in bits, with 0 log 0 = 0. Non-positive eigenvalues contribute nothing."""
    w = np.asarray(eigenvalues, dtype=float)
    w = w[w > 0.0]
    return float(-np.sum(w * np.log2(w)))


def is_physical(m: np.ndarray, tol: float = VALIDATION_TOL) -> bool:
    """True if the Hermitian part of m has no eigenvalue below -tol."""
    return hermitian_eigenvalues(hermitian_part(np.asarray(m, dtype=np.complex128))).min >= -tol


def batch_is_physical(stack: np.ndarray, tol: float = VALIDATION_TOL) -> np.ndarray:
    """Vectorized is_physical over a (batch, n, n) stack."""
    stack = np.asarray(stack, dtype=np.complex128)
    herm = 0.5 * (stack + np.conj(np.swapaxes(stack, 1, 2)))
    return batch_eigenvalues(herm)[:, -1] >= -tol


def validate_density(m, tol: float = VALIDATION_TOL) -> DensityMatrix:
    """
    Check the state axioms and wrap m as a DensityMatrix.

    Entries are passed through unmodified.

    Args:
        m: square complex matrix
        tol: tolerance for Hermiticity, trace and positivity

    Raises:
        NotSquareError, NotHermitianError, TraceMismatchError, NotPositiveError
    """
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    arr = np.asarray(m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotSquareError(arr.shape)
    mat = as_complex_matrix(arr)

    asym = max_asymmetry(mat)
    if asym > tol:
        raise NotHermitianError(asym)

    trace = complex(np.trace(mat))
    if abs(trace - 1.0) > tol:
        raise TraceMismatchError(trace)

    spectrum = hermitian_eigenvalues(hermitian_part(mat))
    if spectrum.min < -tol:
        raise NotPositiveError(spectrum.min)

    return DensityMatrix(dim=mat.shape[0], mat=mat)


def hermitian_operator(m, tol: float = VALIDATION_TOL) -> HermitianOperator:
    """
    Wrap a Hermitian unit-trace matrix without requiring positivity.

    Raises:
        NotSquareError, NotHermitianError, TraceMismatchError
    """
    arr = np.asarray(m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotSquareError(arr.shape)
    mat = as_complex_matrix(arr)
    asym = max_asymmetry(mat)
    if asym > tol:
        raise NotHermitianError(asym)
    trace = complex(np.trace(mat))
    if abs(trace - 1.0) > tol:
        raise TraceMismatchError(trace)
    return HermitianOperator(dim=mat.shape[0], mat=mat, physical=is_physical(mat, tol))
