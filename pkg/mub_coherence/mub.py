"""
Mutually unbiased bases (MUBs) for qubits and qutrits, their self-tensored
product bases, and the unbiasedness checks for both.

Ket phases and ordering follow the standard listings exactly (no re-phasing
or sorting), so coefficient matrices computed in these bases can be compared
entry by entry with hand-derived ones.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from .errors import BasisError, DimensionMismatchError
from .linalg import tensor_product
from .mubcoh_config import VALIDATION_TOL

logger = logging.getLogger(__name__)

# Cube root of unity, built from the angle rather than decimal literals
OMEGA = complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))


@dataclass(frozen=True)
class OrthonormalBasis:
    """
    Ordered orthonormal basis of C^dim.

    Args:
        dim: Hilbert space dimension
        label: name used in reports and files
        kets: dim read-only vectors of length dim
    """

    dim: int
    label: str
    kets: Tuple[np.ndarray, ...]

    @classmethod
    def from_kets(cls, label: str, kets: Sequence[Sequence[complex]],
                  tol: float = VALIDATION_TOL, renormalize: bool = False) -> "OrthonormalBasis":
        """
        Build a basis from raw kets and validate it.

        Args:
            label: basis name
            kets: d kets, each of length d
            tol: orthonormality tolerance on |U^dagger U - I|
            renormalize: rescale each ket to unit norm before checking

        Raises:
            BasisError: wrong shape, a ket of wrong norm, or non-orthogonal kets
        """
        arr = np.array(kets, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise BasisError(f"Basis '{label}' needs d kets of length d, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise BasisError(f"Basis '{label}' has non-finite entries")

        if renormalize:
            norms = np.linalg.norm(arr, axis=1)
            if np.any(norms == 0.0):
                raise BasisError(f"Basis '{label}' has a zero ket")
            if np.any(np.abs(norms - 1.0) > tol):
                logger.warning(f"Renormalizing kets of basis '{label}' (norms {np.round(norms, 12).tolist()})")
            arr = arr / norms[:, None]

        gram = arr.conj() @ arr.T
        norm_dev = np.abs(np.diag(gram).real - 1.0)
        if norm_dev.max() > tol:
            j = int(np.argmax(norm_dev))
            raise BasisError(f"Basis '{label}': ket {j} has squared norm {gram[j, j].real:.17g}")
        off = np.abs(gram - np.diag(np.diag(gram)))
        if off.max() > tol:
            i, j = np.unravel_index(int(np.argmax(off)), off.shape)
            raise BasisError(f"Basis '{label}': kets {i} and {j} overlap by {off[i, j]:.3e}")

        frozen = []
        for ket in arr:
            ket = ket.copy()
            ket.setflags(write=False)
            frozen.append(ket)
        return cls(dim=arr.shape[0], label=label, kets=tuple(frozen))

    @property
    def matrix(self) -> np.ndarray:
        """Unitary whose j-th column is the j-th ket."""
        return np.column_stack(self.kets)

    def unitarity_deviation(self) -> float:
        u = self.matrix
        return float(np.max(np.abs(u.conj().T @ u - np.eye(self.dim))))


@dataclass(frozen=True)
class OverlapCheck:
    passed: bool
    max_deviation: float
    target: float


def _check_dims(b1: OrthonormalBasis, b2: OrthonormalBasis) -> None:
    if b1.dim != b2.dim:
        raise DimensionMismatchError(b1.dim, b2.dim)


def check_unbiased(b1: OrthonormalBasis, b2: OrthonormalBasis, tol: float = VALIDATION_TOL) -> OverlapCheck:
    """
    Test | |<i|j>|^2 - 1/d | <= tol over all d^2 cross pairs.

    Raises:
        DimensionMismatchError: if the bases live in different dimensions
    """
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    _check_dims(b1, b2)
    overlaps = np.abs(b1.matrix.conj().T @ b2.matrix) ** 2
    target = 1.0 / b1.dim
    dev = float(np.max(np.abs(overlaps - target)))
    return OverlapCheck(passed=dev <= tol, max_deviation=dev, target=target)


def check_tensor_unbiased(b1: OrthonormalBasis, b2: OrthonormalBasis, d: int,
                          tol: float = VALIDATION_TOL) -> OverlapCheck:
    """
    Test the unsquared condition |<ij|mn>| = 1/d for product bases of C^d x C^d.

    Raises:
        DimensionMismatchError: if either basis is not of dimension d^2
    """
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    for b in (b1, b2):
        if b.dim != d * d:
            raise DimensionMismatchError(d * d, b.dim)
    overlaps = np.abs(b1.matrix.conj().T @ b2.matrix)
    target = 1.0 / d
    dev = float(np.max(np.abs(overlaps - target)))
    return OverlapCheck(passed=dev <= tol, max_deviation=dev, target=target)


@dataclass(frozen=True)
class MubSet:
    """A set of pairwise mutually unbiased bases in one dimension."""

    dim: int
    bases: Tuple[OrthonormalBasis, ...]

    def __post_init__(self):
        for b in self.bases:
            if b.dim != self.dim:
                raise DimensionMismatchError(self.dim, b.dim)
        for i, b1 in enumerate(self.bases):
            for b2 in self.bases[i + 1:]:
                check = check_unbiased(b1, b2, VALIDATION_TOL)
                if not check.passed:
                    raise BasisError(f"Bases '{b1.label}' and '{b2.label}' are not unbiased "
                                     f"(deviation {check.max_deviation:.3e})")

    @property
    def labels(self) -> List[str]:
        return [b.label for b in self.bases]

    def by_label(self, label: str) -> OrthonormalBasis:
        for b in self.bases:
            if b.label == label:
                return b
        raise KeyError(f"No basis labelled '{label}' (have {self.labels})")


def computational_basis(d: int, label: str = "computational") -> OrthonormalBasis:
    return OrthonormalBasis.from_kets(label, np.eye(d))


def pauli_mubs() -> MubSet:
    """Eigenbases of sigma_z, sigma_x, sigma_y, in that order."""
    s = 1.0 / math.sqrt(2.0)
    bases = (
        computational_basis(2, "pauli_z"),
        OrthonormalBasis.from_kets("pauli_x", [[s, s], [s, -s]]),
        OrthonormalBasis.from_kets("pauli_y", [[s, 1j * s], [s, -1j * s]]),
    )
    return MubSet(dim=2, bases=bases)


def dim3_mubs() -> MubSet:
    """
    The four qutrit MUBs: computational, Fourier, and the two Fourier bases
    twisted by diag(1, 1, w^2) and diag(1, 1, w), w = exp(2 pi i / 3).
    """
    w, w2 = OMEGA, OMEGA * OMEGA
    s = 1.0 / math.sqrt(3.0)
    listings = (
        ("qutrit_fourier", [[1, 1, 1], [1, w, w2], [1, w2, w]]),
        ("qutrit_fourier_w2", [[1, 1, w2], [1, w2, 1], [1, w, w]]),
        ("qutrit_fourier_w1", [[1, 1, w], [1, w, 1], [1, w2, w2]]),
    )
    bases = (computational_basis(3, "qutrit_computational"),) + tuple(
        OrthonormalBasis.from_kets(label, np.array(kets, dtype=np.complex128) * s)
        for label, kets in listings
    )
    return MubSet(dim=3, bases=bases)


def _tensor_label(label: str) -> str:
    family, _, axis = label.rpartition("_")
    if family and len(axis) == 1:
        return f"{family}_{axis}{axis}"
    return f"{label}_sq"


def self_tensor_bases(source: MubSet) -> MubSet:
    """
    Tensor every basis with itself: {|i> (x) |j> : i, j} in lexicographic (i, j) order.

    For the Pauli set this gives the zz, xx and yy product bases of two qubits.
    """
    bases = []
    for b in source.bases:
        kets = [np.ravel(tensor_product(ki[:, None], kj[:, None])) for ki in b.kets for kj in b.kets]
        bases.append(OrthonormalBasis.from_kets(_tensor_label(b.label), kets))
    logger.debug(f"Built {len(bases)} self-tensored bases of dimension {source.dim ** 2}")
    return MubSet(dim=source.dim ** 2, bases=tuple(bases))


BUILTIN_SETS: Dict[str, Callable[[], MubSet]] = {
    "pauli": pauli_mubs,
    "qutrit": dim3_mubs,
    "pauli-tensor": lambda: self_tensor_bases(pauli_mubs()),
    "qutrit-tensor": lambda: self_tensor_bases(dim3_mubs()),
}


def builtin_set(name: str) -> MubSet:
    try:
        return BUILTIN_SETS[name]()
    except KeyError:
        raise KeyError(f"Unknown basis set '{name}' (choose from {sorted(BUILTIN_SETS)})")
