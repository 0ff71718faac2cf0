"""
MUB Coherence Module

l1-norm and relative-entropy coherence of qubit, qutrit and two-qubit
states in mutually unbiased bases.
"""

from .coherence import (
    CoefficientMatrix,
    CoherenceReport,
    bell_closed_form,
    bell_sum,
    coefficients_in_basis,
    coherence_report,
    coherence_reports,
    l1_coherence,
    qubit_closed_form,
    rel_entropy_coherence,
)
from .errors import InputError, MubCoherenceError
from .linalg import (
    DensityMatrix,
    HermitianOperator,
    HermitianSpectrum,
    hermitian_eigenvalues,
    is_physical,
    tensor_product,
    validate_density,
)
from .mub import (
    MubSet,
    OrthonormalBasis,
    builtin_set,
    check_tensor_unbiased,
    check_unbiased,
    dim3_mubs,
    pauli_mubs,
    self_tensor_bases,
)
from .states import (
    BlochVector,
    CorrelationTriple,
    QutritXParams,
    QutritXVariant,
    bell_diagonal,
    bloch_state,
    isotropic,
    qutrit_x_state,
    werner,
)
from .surface import HeightMap, ScalarField3, TriangleMesh, coherence_field, coherence_heightmap, isosurface
from .verify import VerificationReport, run_all

__all__ = [
    'BlochVector', 'CoefficientMatrix', 'CoherenceReport', 'CorrelationTriple', 'DensityMatrix',
    'HeightMap', 'HermitianOperator', 'HermitianSpectrum', 'InputError', 'MubCoherenceError', 'MubSet',
    'OrthonormalBasis', 'QutritXParams', 'QutritXVariant', 'ScalarField3', 'TriangleMesh',
    'VerificationReport', 'bell_closed_form', 'bell_diagonal', 'bell_sum', 'bloch_state', 'builtin_set',
    'check_tensor_unbiased', 'check_unbiased', 'coefficients_in_basis', 'coherence_field',
    'coherence_heightmap', 'coherence_report', 'coherence_reports', 'dim3_mubs', 'hermitian_eigenvalues',
    'is_physical', 'isosurface', 'isotropic', 'l1_coherence', 'pauli_mubs', 'qubit_closed_form',
    'qutrit_x_state', 'rel_entropy_coherence', 'run_all', 'self_tensor_bases', 'tensor_product',
    'validate_density', 'werner',
]
