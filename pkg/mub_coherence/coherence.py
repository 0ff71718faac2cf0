"""
Coherence of states in a chosen orthonormal basis.

A state is re-expressed in a basis by unitary conjugation, a = U^dagger rho U,
with U holding the basis kets as columns. Two measures are read off the
coefficient matrix: the l1 norm of the off-diagonal part and the relative
entropy of coherence S(diag a) - S(rho) in bits.

The closed forms for Bloch states and Bell-diagonal states, and the
hand-solved coefficient matrices they come from, live here as well. They are
used as independent oracles against the generic conjugation path.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from .errors import DimensionMismatchError
from .linalg import (
    HermitianOperator,
    StateLike,
    batch_is_physical,
    hermitian_eigenvalues,
    von_neumann_entropy,
)
from .mub import MubSet, OrthonormalBasis
from .states import BlochVector, CorrelationTriple, QutritXParams, bell_diagonal_matrices, require_density

logger = logging.getLogger(__name__)

# Entropies below this are rounding noise, anything more negative is logged
REL_ENTROPY_NOISE = 1e-10

QUBIT_AXES = ("z", "x", "y")
BELL_AXES = ("zz", "xx", "yy")


@dataclass(frozen=True)
class CoefficientMatrix:
    """Entries a_ij of a state written as sum_ij a_ij |b_i><b_j|."""

    dim: int
    entries: np.ndarray
    basis_label: str

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))


@dataclass(frozen=True)
class CoherenceReport:
    basis_label: str
    l1: float
    relative_entropy: Optional[float]  # None for non-physical operators

    def to_dict(self) -> Dict[str, object]:
        return {"basis": self.basis_label, "l1": self.l1, "relative_entropy": self.relative_entropy}


def coefficients_in_basis(rho: StateLike, b: OrthonormalBasis) -> CoefficientMatrix:
    """
    Express rho in basis b.

    Returns:
        CoefficientMatrix with entries U^dagger rho U

    Raises:
        DimensionMismatchError: if rho and b live in different dimensions
    """
    if rho.dim != b.dim:
        raise DimensionMismatchError(b.dim, rho.dim)
    u = b.matrix
    entries = u.conj().T @ rho.mat @ u
    entries.setflags(write=False)
    return CoefficientMatrix(dim=b.dim, entries=entries, basis_label=b.label)


def off_diagonal_l1(entries: np.ndarray) -> float:
    """sum_{i != j} |a_ij|"""
    a = np.abs(np.asarray(entries))
    return float(a.sum() - np.trace(a))


def l1_coherence(rho: StateLike, b: OrthonormalBasis) -> float:
    return off_diagonal_l1(coefficients_in_basis(rho, b).entries)


def rel_entropy_coherence(rho: StateLike, b: OrthonormalBasis) -> float:
    """
    Relative entropy of coherence in bits.

    Values in [-1e-10, 0) are rounding noise and clamp to 0; anything more
    negative is still clamped but logged.

    Raises:
        NotPositiveError: if rho is a HermitianOperator that is not PSD
    """
    rho = require_density(rho)
    coeffs = coefficients_in_basis(rho, b)
    populations = np.diag(coeffs.entries).real
    value = von_neumann_entropy(populations) - von_neumann_entropy(hermitian_eigenvalues(rho.mat).eigenvalues)
    if value < 0.0:
        if value < -REL_ENTROPY_NOISE:
            logger.warning(f"Relative entropy of coherence {value:.3e} in '{b.label}' is below zero; clamping")
        value = 0.0
    return value


def coherence_report(rho: StateLike, b: OrthonormalBasis) -> CoherenceReport:
    """l1 and relative entropy in one basis; the entropy is left out for non-PSD operators."""
    physical = not isinstance(rho, HermitianOperator) or rho.physical
    return CoherenceReport(
        basis_label=b.label,
        l1=l1_coherence(rho, b),
        relative_entropy=rel_entropy_coherence(rho, b) if physical else None,
    )


def coherence_reports(rho: StateLike, mubs: MubSet) -> List[CoherenceReport]:
    """One report per basis of the set, in set order."""
    if rho.dim != mubs.dim:
        raise DimensionMismatchError(mubs.dim, rho.dim)
    return [coherence_report(rho, b) for b in mubs.bases]


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def _axis_index(which: str, axes) -> int:
    try:
        return axes.index(which)
    except ValueError:
        raise ValueError(f"Unknown basis '{which}' (choose from {list(axes)})")


def qubit_closed_forms(vectors: np.ndarray) -> np.ndarray:
    """
    l1 coherence of Bloch states in the z, x and y eigenbases.

    Args:
        vectors: (n, 3) Bloch vectors (x, y, z)

    Returns:
        (n, 3) columns sqrt(x^2+y^2), sqrt(z^2+y^2), sqrt(z^2+x^2)
    """
    v = np.asarray(vectors, dtype=float)
    x, y, z = v[:, 0], v[:, 1], v[:, 2]
    return np.stack([np.hypot(x, y), np.hypot(z, y), np.hypot(z, x)], axis=1)


def qubit_closed_form(v: BlochVector, which: str) -> float:
    """which is "z", "x" or "y", naming the Pauli eigenbasis."""
    k = _axis_index(which, QUBIT_AXES)
    return float(qubit_closed_forms(np.array([[v.x, v.y, v.z]]))[0, k])


def half_abs_sum(a, b):
    """(|a - b| + |a + b|) / 2, which equals max(|a|, |b|)."""
    return 0.5 * (np.abs(a - b) + np.abs(a + b))


def bell_closed_forms(triples: np.ndarray) -> np.ndarray:
    """
    l1 coherence of Bell-diagonal states in the zz, xx and yy product bases.

    Args:
        triples: (n, 3) correlations (c1, c2, c3)

    Returns:
        (n, 3) array
    """
    c = np.asarray(triples, dtype=float)
    c1, c2, c3 = c[:, 0], c[:, 1], c[:, 2]
    return np.stack([half_abs_sum(c1, c2), half_abs_sum(c3, c2), half_abs_sum(c3, c1)], axis=1)


def bell_closed_form(c: CorrelationTriple, which: str) -> float:
    """which is "zz", "xx" or "yy", naming the self-tensored Pauli basis."""
    k = _axis_index(which, BELL_AXES)
    return float(bell_closed_forms(np.array([c.as_tuple()]))[0, k])


def bell_sum(c: CorrelationTriple) -> float:
    """Summed l1 coherence over the three product bases, in [0, 3]."""
    return float(bell_closed_forms(np.array([c.as_tuple()]))[0].sum())


def bell_sum_max_form(triples: np.ndarray) -> np.ndarray:
    """max(|c1|,|c2|) + max(|c2|,|c3|) + max(|c1|,|c3|) for an (n, 3) array."""
    a = np.abs(np.asarray(triples, dtype=float))
    return (np.maximum(a[:, 0], a[:, 1]) + np.maximum(a[:, 1], a[:, 2])
            + np.maximum(a[:, 0], a[:, 2]))


# ---------------------------------------------------------------------------
# Hand-solved coefficient matrices
# ---------------------------------------------------------------------------

def qubit_coefficients_closed_form(v: BlochVector, which: str) -> np.ndarray:
    """Coefficients of a Bloch state solved by hand in the z, x or y eigenbasis."""
    x, y, z = v.x, v.y, v.z
    k = _axis_index(which, QUBIT_AXES)
    if k == 0:
        diag, off = z, complex(x, -y)
    elif k == 1:
        diag, off = x, complex(z, y)
    else:
        diag, off = y, complex(z, -x)
    return 0.5 * np.array([[1.0 + diag, off], [off.conjugate(), 1.0 - diag]], dtype=np.complex128)


def qutrit_x_fourier_coefficients(params: QutritXParams) -> np.ndarray:
    """
    Coefficients of the outer qutrit X state in the Fourier basis.

    The last diagonal entry is (1 - z)/3, which unit trace forces.
    """
    return qutrit_x_fourier_coefficients_batch(params.x, params.y, params.z)[0]


def qutrit_x_fourier_coefficients_batch(x, y, z) -> np.ndarray:
    """(n, 3, 3) version of qutrit_x_fourier_coefficients for arrays x, y, z."""
    x, y, z = np.broadcast_arrays(*(np.atleast_1d(np.asarray(a, dtype=float)) for a in (x, y, z)))
    r3 = math.sqrt(3.0)
    b12 = ((3 * x + z - 1) - 1j * r3 * (x + 2 * y + z - 1)) / 6.0
    b13 = ((3 * x + z - 1) + 1j * r3 * (x + 2 * y + z - 1)) / 6.0
    b23 = ((3 * x - 2 * z - 1) - 1j * r3 * (x + 2 * y - 2 * z - 1)) / 6.0
    out = np.empty((x.shape[0], 3, 3), dtype=np.complex128)
    out[:, 0, 0] = (1 + 2 * z) / 3
    out[:, 1, 1] = out[:, 2, 2] = (1 - z) / 3
    out[:, 0, 1], out[:, 1, 0] = b12, b12.conj()
    out[:, 0, 2], out[:, 2, 0] = b13, b13.conj()
    out[:, 1, 2], out[:, 2, 1] = b23, b23.conj()
    return out


def bell_coefficients_closed_form(triples: np.ndarray, which: str) -> np.ndarray:
    """
    Bell-diagonal coefficient matrices solved by hand in a product basis.

    Every case keeps the X layout of the computational-basis matrix with the
    correlations relabelled: (c1, c2, c3) in zz, (c3, c2, c1) in xx and
    (c3, c1, c2) in yy.

    Args:
        triples: (n, 3) correlations
        which: "zz", "xx" or "yy"

    Returns:
        (n, 4, 4) complex array
    """
    c = np.asarray(triples, dtype=float)
    k = _axis_index(which, BELL_AXES)
    order = ((0, 1, 2), (2, 1, 0), (2, 0, 1))[k]
    c1, c2, c3 = c[:, order[0]], c[:, order[1]], c[:, order[2]]
    out = np.zeros((c.shape[0], 4, 4), dtype=np.complex128)
    out[:, 0, 0] = out[:, 3, 3] = (1.0 + c3) / 4.0
    out[:, 1, 1] = out[:, 2, 2] = (1.0 - c3) / 4.0
    out[:, 0, 3] = out[:, 3, 0] = (c1 - c2) / 4.0
    out[:, 1, 2] = out[:, 2, 1] = (c1 + c2) / 4.0
    return out


# ---------------------------------------------------------------------------
# Batched helpers for sweeps
# ---------------------------------------------------------------------------

def conjugate_batch(stack: np.ndarray, b: OrthonormalBasis) -> np.ndarray:
    """U^dagger m U for every m in a (n, d, d) stack."""
    stack = np.asarray(stack, dtype=np.complex128)
    if stack.shape[-1] != b.dim:
        raise DimensionMismatchError(b.dim, stack.shape[-1])
    u = b.matrix
    return np.einsum("ji,njk,kl->nil", u.conj(), stack, u)


def l1_batch(coefficients: np.ndarray) -> np.ndarray:
    """Off-diagonal l1 norm of every matrix in a (n, d, d) stack."""
    a = np.abs(coefficients)
    return a.sum(axis=(1, 2)) - np.trace(a, axis1=1, axis2=2)


def bloch_matrices(vectors: np.ndarray) -> np.ndarray:
    """(n, 2, 2) Bloch-state matrices for an (n, 3) array of vectors."""
    v = np.asarray(vectors, dtype=float)
    x, y, z = v[:, 0], v[:, 1], v[:, 2]
    out = np.empty((v.shape[0], 2, 2), dtype=np.complex128)
    out[:, 0, 0] = 0.5 * (1.0 + z)
    out[:, 1, 1] = 0.5 * (1.0 - z)
    out[:, 0, 1] = 0.5 * (x - 1j * y)
    out[:, 1, 0] = 0.5 * (x + 1j * y)
    return out


def sample_bloch_ball(rng: np.random.Generator, n: int, pure_only: bool = False) -> np.ndarray:
    """
    Uniform samples from the Bloch ball (or its surface when pure_only).

    Direction from three normalized standard normals, radius the cube root of
    a uniform variate.
    """
    directions = rng.standard_normal((n, 3))
    norms = np.linalg.norm(directions, axis=1)
    norms[norms == 0.0] = 1.0
    directions /= norms[:, None]
    if pure_only:
        return directions
    radii = np.cbrt(rng.uniform(0.0, 1.0, n))
    return directions * radii[:, None]


def sample_physical_triples(rng: np.random.Generator, n: int) -> np.ndarray:
    """
    Uniform samples of (c1, c2, c3) from the cube, kept only when the
    Bell-diagonal matrix is positive semidefinite.
    """
    kept = []
    count = 0
    while count < n:
        draw = rng.uniform(-1.0, 1.0, (max(3 * (n - count), 16), 3))
        ok = batch_is_physical(bell_diagonal_matrices(draw))
        kept.append(draw[ok])
        count += int(ok.sum())
    triples = np.concatenate(kept, axis=0)[:n]
    logger.debug(f"Sampled {n} physical correlation triples")
    return triples
