"""
Exceptions raised by the mub_coherence package.

Every error carries the offending quantity both as an attribute and in its
message, so the CLI can report which invariant failed.
"""


class MubCoherenceError(Exception):
    """Base class for all package errors."""


class NotSquareError(MubCoherenceError, ValueError):
    def __init__(self, shape):
        self.shape = tuple(shape)
        super().__init__(f"Matrix is not square: shape {self.shape}")


class NotHermitianError(MubCoherenceError, ValueError):
    def __init__(self, max_asymmetry: float):
        self.max_asymmetry = float(max_asymmetry)
        super().__init__(f"Matrix is not Hermitian: max |m - m^dagger| = {self.max_asymmetry:.3e}")


class TraceMismatchError(MubCoherenceError, ValueError):
    def __init__(self, trace: complex):
        self.trace = complex(trace)
        super().__init__(f"Trace is not 1: trace = {self.trace.real:.17g}")


class NotPositiveError(MubCoherenceError, ValueError):
    def __init__(self, min_eigenvalue: float):
        self.min_eigenvalue = float(min_eigenvalue)
        super().__init__(f"Matrix is not positive semidefinite: min eigenvalue = {self.min_eigenvalue:.3e}")


class NoConvergenceError(MubCoherenceError, RuntimeError):
    def __init__(self, sweeps: int, off_norm: float):
        self.sweeps = sweeps
        self.off_norm = float(off_norm)
        super().__init__(f"Jacobi iteration did not converge after {sweeps} sweeps "
                         f"(off-diagonal norm {self.off_norm:.3e})")


class DimensionMismatchError(MubCoherenceError, ValueError):
    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Dimension mismatch: expected {expected}, got {actual}")


class BasisError(MubCoherenceError, ValueError):
    """Kets are not unit vectors or not mutually orthogonal."""


class BlochNormExceededError(MubCoherenceError, ValueError):
    def __init__(self, norm_squared: float):
        self.norm_squared = float(norm_squared)
        super().__init__(f"Bloch vector outside the unit ball: x^2+y^2+z^2 = {self.norm_squared:.17g}")


class ParamOutOfRangeError(MubCoherenceError, ValueError):
    def __init__(self, name: str, value: float, low: float, high: float):
        self.name = name
        self.value = float(value)
        super().__init__(f"Parameter {name} = {value} outside [{low}, {high}]")


class EmptyLevelSetError(MubCoherenceError, ValueError):
    def __init__(self, level: float, vmin: float, vmax: float):
        self.level = float(level)
        super().__init__(f"Level {level} outside field range ({vmin:.6g}, {vmax:.6g})")


class InputError(MubCoherenceError):
    """Unreadable or invalid input file."""

    def __init__(self, path, reason: str):
        self.path = str(path)
        self.reason = reason
        super().__init__(f"{self.path}: {reason}")
