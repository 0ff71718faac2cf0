"""
Default numerical settings for MUB coherence computations.
"""

# Tolerances
VALIDATION_TOL = 1e-9  # State validity (Hermitian, unit trace, PSD) and basis orthonormality
IDENTITY_TOL = 1e-12  # Closed-form identity checks
BLOCH_NORM_SLACK = 1e-12  # Allowed excess of x^2+y^2+z^2 over 1
HERMITIAN_INPUT_TOL = 1e-9  # Eigensolver input check

# Jacobi eigensolver
JACOBI_THRESHOLD = 1e-14  # Off-diagonal Frobenius norm, relative to max(1, ||m||_F)
JACOBI_MAX_SWEEPS = 100
MAX_DIM = 16

# Verification runs
DEFAULT_SAMPLES = 10000
DEFAULT_SEED = 42
DEFAULT_GRID_POINTS = 21  # Werner p / isotropic F grid over [0, 1]
SELF_TEST_PERTURBATION = 1e-6  # Injected into one closed form by negative controls

# Level surfaces
HEIGHTMAP_RESOLUTION = 201
FIELD_RESOLUTION = 101
DEFAULT_LEVELS = (0.5, 1.0, 2.0)

# Output
SIGNIFICANT_DIGITS = 17  # Exact round trip for doubles
