"""
Constructors for the state families analysed in MUB bases: single-qubit
Bloch states, qutrit X states, two-qubit Bell-diagonal states and their
Werner and isotropic specializations.

Each conjugate pair of entries is written once, so constructor outputs are
exactly Hermitian.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from .errors import BlochNormExceededError, NotPositiveError, ParamOutOfRangeError
from .linalg import (
    PAULI,
    DensityMatrix,
    HermitianOperator,
    as_complex_matrix,
    hermitian_eigenvalues,
    tensor_product,
    validate_density,
)
from .mubcoh_config import BLOCH_NORM_SLACK, VALIDATION_TOL

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.z)):
            raise ValueError(f"Bloch vector has non-finite components: {self}")
        if self.norm_squared > 1.0 + BLOCH_NORM_SLACK:
            raise BlochNormExceededError(self.norm_squared)

    @property
    def norm_squared(self) -> float:
        return self.x * self.x + self.y * self.y + self.z * self.z


class QutritXVariant(str, Enum):
    """Which pair of qutrit levels carries the real coherence z."""

    OUTER = "outer"  # levels 0 and 2
    LOWER = "lower"  # levels 1 and 2
    UPPER = "upper"  # levels 0 and 1


@dataclass(frozen=True)
class QutritXParams:
    variant: QutritXVariant
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class CorrelationTriple:
    """Bell-diagonal correlations c_i = Tr[rho sigma_i (x) sigma_i], each in [-1, 1]."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name, value in (("c1", self.c1), ("c2", self.c2), ("c3", self.c3)):
            if not (-1.0 <= value <= 1.0):
                raise ParamOutOfRangeError(name, value, -1.0, 1.0)

    def as_tuple(self):
        return self.c1, self.c2, self.c3


def _check_unit_interval(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0):
        raise ParamOutOfRangeError(name, value, 0.0, 1.0)


def werner_triple(p: float) -> CorrelationTriple:
    """c1 = c2 = c3 = 4p/3 - 1."""
    _check_unit_interval("p", p)
    c = 4.0 * p / 3.0 - 1.0
    return CorrelationTriple(c, c, c)


def isotropic_triple(F: float) -> CorrelationTriple:
    """c1 = c3 = (4F - 1)/3, c2 = -(4F - 1)/3."""
    _check_unit_interval("F", F)
    c = (4.0 * F - 1.0) / 3.0
    return CorrelationTriple(c, -c, c)


def _finish(mat: np.ndarray, require_physical: bool) -> Union[DensityMatrix, HermitianOperator]:
    mat = as_complex_matrix(mat)
    if require_physical:
        return validate_density(mat, VALIDATION_TOL)
    min_eig = hermitian_eigenvalues(mat).min
    physical = min_eig >= -VALIDATION_TOL
    if not physical:
        logger.debug(f"Returning non-physical operator (min eigenvalue {min_eig:.3e})")
    return HermitianOperator(dim=mat.shape[0], mat=mat, physical=physical)


def bloch_state(v: BlochVector) -> DensityMatrix:
    """rho = (I + r . sigma) / 2 = 1/2 [[1+z, x-iy], [x+iy, 1-z]]."""
    mat = np.zeros((2, 2), dtype=np.complex128)
    mat[0, 0] = 0.5 * (1.0 + v.z)
    mat[1, 1] = 0.5 * (1.0 - v.z)
    mat[0, 1] = 0.5 * complex(v.x, -v.y)
    mat[1, 0] = mat[0, 1].conjugate()
    return validate_density(mat, VALIDATION_TOL)


# Diagonal slots of (x, y, 1 - x - y) and the coupled level pair per variant
_X_LAYOUT = {
    QutritXVariant.OUTER: ((0, 2, 1), (0, 2)),
    QutritXVariant.LOWER: ((1, 2, 0), (1, 2)),
    QutritXVariant.UPPER: ((0, 1, 2), (0, 1)),
}


def qutrit_x_matrices(variant: QutritXVariant, x, y, z) -> np.ndarray:
    """
    Vectorized qutrit X-state matrices.

    Args:
        variant: which level pair carries z
        x, y, z: broadcastable real arrays

    Returns:
        (n, 3, 3) complex array, each of trace 1
    """
    x, y, z = (np.atleast_1d(np.asarray(a, dtype=float)) for a in (x, y, z))
    x, y, z = np.broadcast_arrays(x, y, z)
    (ix, iy, irest), (i, j) = _X_LAYOUT[QutritXVariant(variant)]
    out = np.zeros((x.shape[0], 3, 3), dtype=np.complex128)
    out[:, ix, ix] = x
    out[:, iy, iy] = y
    out[:, irest, irest] = 1.0 - x - y
    out[:, i, j] = z
    out[:, j, i] = z
    return out


def qutrit_x_matrix(params: QutritXParams) -> np.ndarray:
    """Raw 3x3 X-state matrix; trace 1 for any real x, y, z."""
    return qutrit_x_matrices(params.variant, params.x, params.y, params.z)[0]


def qutrit_x_state(params: QutritXParams,
                   require_physical: bool = True) -> Union[DensityMatrix, HermitianOperator]:
    """
    Qutrit X state with one real coherence between two levels.

    Args:
        params: variant and real parameters x, y, z
        require_physical: enforce positivity (x, y >= 0, x + y <= 1, z^2 <= xy)

    Returns:
        DensityMatrix when require_physical, otherwise a HermitianOperator
        whose `physical` flag records positivity

    Raises:
        NotPositiveError: only when require_physical and the matrix is not PSD
    """
    return _finish(qutrit_x_matrix(params), require_physical)


# sigma_i (x) sigma_i for i = x, y, z; every entry is real
_PAULI_PAIRS = np.stack([tensor_product(s, s) for s in PAULI.as_tuple()])


def bell_diagonal_matrices(triples: np.ndarray) -> np.ndarray:
    """
    Vectorized 1/4 (I (x) I + sum_i c_i sigma_i (x) sigma_i).

    Args:
        triples: (batch, 3) array of (c1, c2, c3)

    Returns:
        (batch, 4, 4) complex array in the computational basis
    """
    c = np.asarray(triples, dtype=float).reshape(-1, 3)
    return 0.25 * (np.eye(4, dtype=np.complex128) + np.einsum("bi,ijk->bjk", c, _PAULI_PAIRS))


def bell_diagonal_matrix(c: CorrelationTriple) -> np.ndarray:
    return bell_diagonal_matrices(np.array([c.as_tuple()]))[0]


def bell_diagonal(c: CorrelationTriple,
                  require_physical: bool = True) -> Union[DensityMatrix, HermitianOperator]:
    """
    Two-qubit Bell-diagonal state.

    Raises:
        NotPositiveError: only when require_physical and the triple lies
            outside the physical tetrahedron
    """
    return _finish(bell_diagonal_matrix(c), require_physical)


def werner(p: float) -> DensityMatrix:
    """
    Werner state, the Bell-diagonal state with c1 = c2 = c3 = 4p/3 - 1.

    Raises:
        ParamOutOfRangeError: unless 0 <= p <= 1
    """
    _check_unit_interval("p", p)
    mat = np.zeros((4, 4), dtype=np.complex128)
    mat[0, 0] = mat[3, 3] = p / 3.0
    mat[1, 1] = mat[2, 2] = -p / 3.0 + 0.5
    mat[1, 2] = mat[2, 1] = 2.0 * p / 3.0 - 0.5
    return validate_density(mat, VALIDATION_TOL)


def isotropic(F: float) -> DensityMatrix:
    """
    Isotropic two-qubit state with singlet-fraction parameter F.

    Raises:
        ParamOutOfRangeError: unless 0 <= F <= 1
    """
    _check_unit_interval("F", F)
    mat = np.zeros((4, 4), dtype=np.complex128)
    mat[0, 0] = mat[3, 3] = F / 3.0 + 1.0 / 6.0
    mat[1, 1] = mat[2, 2] = 1.0 / 3.0 - F / 3.0
    mat[0, 3] = mat[3, 0] = 2.0 * F / 3.0 - 1.0 / 6.0
    return validate_density(mat, VALIDATION_TOL)


def require_density(state: Union[DensityMatrix, HermitianOperator]) -> DensityMatrix:
    """Promote a physical HermitianOperator to a DensityMatrix."""
    if isinstance(state, DensityMatrix):
        return state
    if not state.physical:
        raise NotPositiveError(hermitian_eigenvalues(state.mat).min)
    return validate_density(state.mat, VALIDATION_TOL)
