"""
Seeded verification runs for the coherence identities.

Each verifier sweeps a parameter domain, compares closed forms with the
generic conjugation path, and reduces everything to one max deviation checked
against a tolerance. Sweeps are vectorized over samples and reductions are
plain maxima, so a run is bit-reproducible from (samples, seed, tolerance).

Every verifier accepts a `perturbation` that is added to one closed form. The
self-test runs use it as a negative control: a perturbed run must fail.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .coherence import (
    bell_closed_forms,
    bell_coefficients_closed_form,
    bell_sum_max_form,
    bloch_matrices,
    conjugate_batch,
    l1_batch,
    l1_coherence,
    qubit_closed_forms,
    qutrit_x_fourier_coefficients_batch,
    sample_bloch_ball,
    sample_physical_triples,
)
from .mub import dim3_mubs, pauli_mubs, self_tensor_bases
from .mubcoh_config import (
    DEFAULT_GRID_POINTS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    IDENTITY_TOL,
    SELF_TEST_PERTURBATION,
)
from .states import (
    QutritXVariant,
    bell_diagonal_matrices,
    bell_diagonal_matrix,
    isotropic,
    isotropic_triple,
    qutrit_x_matrices,
    werner,
    werner_triple,
)

logger = logging.getLogger(__name__)

# claim id -> what is being checked
CLAIMS: Dict[str, str] = {
    "qubit-bound": "squared l1 coherences of a qubit summed over the three Pauli "
                   "eigenbases equal 2|r|^2 and never exceed 2",
    "xstate-equality": "l1 coherence of every qutrit X state is the same in the Fourier "
                       "basis and both twisted Fourier bases",
    "bell-forms": "Bell-diagonal coherence in the zz, xx and yy product bases matches "
                  "(|a-b|+|a+b|)/2 forms, hand-solved coefficient matrices and the max form of the sum",
    "werner-isotropic": "Werner and isotropic states have equal coherence |c| in all three "
                        "product bases",
}

# claim id -> the single result it checks, written into every report
CLAIM_ANCHORS: Dict[str, str] = {
    "qubit-bound": "qubit: sum of C_l1^2 over pauli_z, pauli_x, pauli_y <= 2, equality on pure states",
    "xstate-equality": "qutrit: C_l1 equal in qutrit_fourier, qutrit_fourier_w2, qutrit_fourier_w1 "
                       "for outer, lower and upper X states",
    "bell-forms": "two qubits: C_l1 in pauli_zz, pauli_xx, pauli_yy and their sum for Bell-diagonal states",
    "werner-isotropic": "two qubits: C_l1 = |c| in pauli_zz, pauli_xx, pauli_yy for Werner and isotropic states",
}


@dataclass(frozen=True)
class VerificationReport:
    claim_id: str
    samples: int
    seed: int
    max_deviation: float
    tolerance: float
    passed: bool
    details: str

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def _report(claim_id: str, samples: int, seed: int, deviations: Dict[str, float],
            tol: float, note: str = "") -> VerificationReport:
    max_dev = max(deviations.values()) if deviations else 0.0
    parts = [CLAIMS[claim_id], f"anchor: {CLAIM_ANCHORS[claim_id]}"]
    parts += [f"{name}={value:.3e}" for name, value in deviations.items()]
    if note:
        parts.append(note)
    report = VerificationReport(
        claim_id=claim_id,
        samples=samples,
        seed=seed,
        max_deviation=float(max_dev),
        tolerance=tol,
        passed=bool(max_dev <= tol),
        details="; ".join(parts),
    )
    logger.debug(f"{claim_id}: max deviation {max_dev:.3e} over {samples} samples (passed={report.passed})")
    return report


def _check_samples(samples: int) -> None:
    if samples < 0:
        raise ValueError(f"Sample count must be non-negative, got {samples}")


def _max(values) -> float:
    values = np.asarray(values)
    return float(values.max()) if values.size else 0.0


def verify_qubit_bound(samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                       tol: float = IDENTITY_TOL, pure_only: bool = False,
                       perturbation: float = 0.0) -> VerificationReport:
    """
    Check the qubit closed forms and the bound on their summed squares.

    Args:
        samples: Bloch vectors drawn uniformly from the ball, plus as many
            from the sphere for the equality case
        seed: generator seed
        tol: pass threshold on the max deviation
        pure_only: draw from the sphere only, where the bound is tight
        perturbation: added to the z-basis closed form (negative control)
    """
    _check_samples(samples)
    if samples == 0:
        return _report("qubit-bound", 0, seed, {}, tol, note="vacuous: no samples drawn")

    rng = np.random.default_rng(seed)
    vectors = sample_bloch_ball(rng, samples, pure_only=pure_only)
    closed = qubit_closed_forms(vectors)
    closed[:, 0] += perturbation

    mats = bloch_matrices(vectors)
    generic = np.stack([l1_batch(conjugate_batch(mats, b)) for b in pauli_mubs().bases], axis=1)

    squares = np.sum(closed ** 2, axis=1)
    norm_sq = np.sum(vectors ** 2, axis=1)
    deviations = {
        "closed_vs_generic": _max(np.abs(closed - generic)),
        "bound_excess": _max(np.maximum(squares - 2.0, 0.0)),
        "identity": _max(np.abs(squares - 2.0 * norm_sq)),
    }
    # the bound is tight on the sphere
    if pure_only:
        pure_squares = squares
    else:
        pure_squares = np.sum(qubit_closed_forms(sample_bloch_ball(rng, samples, pure_only=True)) ** 2, axis=1)
    deviations["pure_equality"] = _max(np.abs(pure_squares - 2.0))
    return _report("qubit-bound", samples, seed, deviations, tol,
                   note="pure states only" if pure_only else "")


def _draw_x_params(rng: np.random.Generator, samples: int, physical: bool, zero_z: bool):
    if physical:
        weights = rng.dirichlet((1.0, 1.0, 1.0), samples)
        x, y = weights[:, 0], weights[:, 1]
        bound = np.sqrt(x * y)
        z = rng.uniform(-1.0, 1.0, samples) * bound
    else:
        x, y, z = rng.uniform(-1.0, 1.0, (3, samples))
    if zero_z:
        z = np.zeros(samples)
    return x, y, z


def verify_xstate_equality(samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                           tol: float = IDENTITY_TOL,
                           variants: Optional[Sequence[QutritXVariant]] = None,
                           zero_z: bool = False,
                           perturbation: float = 0.0) -> VerificationReport:
    """
    Check that qutrit X states have one l1 coherence across the three
    Fourier-type bases, for physical and unrestricted parameter draws.

    For the outer variant the Fourier coefficients are also compared with the
    hand-solved matrix.

    Args:
        samples: draws per variant and per draw mode
        variants: subset of variants to sweep (default all three)
        zero_z: force the coherence parameter to zero
        perturbation: added to the Fourier-basis coherence (negative control)
    """
    _check_samples(samples)
    variants = [QutritXVariant(v) for v in (variants or list(QutritXVariant))]
    if samples == 0:
        return _report("xstate-equality", 0, seed, {}, tol, note="vacuous: no samples drawn")

    rng = np.random.default_rng(seed)
    mubs = dim3_mubs()
    fourier_bases = [mubs.by_label(label) for label in
                     ("qutrit_fourier", "qutrit_fourier_w2", "qutrit_fourier_w1")]

    deviations = {}
    for variant in variants:
        for mode, physical in (("physical", True), ("unrestricted", False)):
            x, y, z = _draw_x_params(rng, samples, physical, zero_z)
            mats = qutrit_x_matrices(variant, x, y, z)
            coeffs = [conjugate_batch(mats, b) for b in fourier_bases]
            l1 = np.stack([l1_batch(a) for a in coeffs], axis=1)
            l1[:, 0] += perturbation
            deviations[f"{variant.value}_{mode}_spread"] = _max(l1.max(axis=1) - l1.min(axis=1))

            if variant is QutritXVariant.OUTER:
                hand = qutrit_x_fourier_coefficients_batch(x, y, z)
                deviations[f"outer_{mode}_coefficients"] = _max(np.abs(coeffs[0] - hand))
                upper = np.abs(coeffs[0][:, [0, 0, 1], [1, 2, 2]]).sum(axis=1)
                deviations[f"outer_{mode}_structure"] = _max(np.abs(l1[:, 0] - 2.0 * upper))

    note = f"variants={','.join(v.value for v in variants)}"
    if zero_z:
        note += "; z=0"
    return _report("xstate-equality", samples, seed, deviations, tol, note=note)


def verify_bell_forms(samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                      tol: float = IDENTITY_TOL,
                      perturbation: float = 0.0) -> VerificationReport:
    """
    Check the Bell-diagonal closed forms on physical triples.

    Covers the closed forms against generic l1, the conjugated coefficient
    matrices against the hand-solved ones, and the max form of the summed
    coherence on the whole cube.

    Args:
        perturbation: added to the xx closed form (negative control)
    """
    _check_samples(samples)
    if samples == 0:
        return _report("bell-forms", 0, seed, {}, tol, note="vacuous: no samples drawn")

    rng = np.random.default_rng(seed)
    triples = sample_physical_triples(rng, samples)
    closed = bell_closed_forms(triples)
    closed[:, 1] += perturbation

    mats = bell_diagonal_matrices(triples)
    product_bases = self_tensor_bases(pauli_mubs()).bases
    deviations = {}
    generic = []
    for which, basis in zip(("zz", "xx", "yy"), product_bases):
        coeffs = conjugate_batch(mats, basis)
        generic.append(l1_batch(coeffs))
        deviations[f"{which}_coefficients"] = _max(np.abs(coeffs - bell_coefficients_closed_form(triples, which)))
    generic = np.stack(generic, axis=1)
    deviations["closed_vs_generic"] = _max(np.abs(closed - generic))
    deviations["sum_vs_generic"] = _max(np.abs(closed.sum(axis=1) - generic.sum(axis=1)))

    cube = rng.uniform(-1.0, 1.0, (samples, 3))
    deviations["sum_max_form"] = _max(np.abs(bell_closed_forms(cube).sum(axis=1) - bell_sum_max_form(cube)))
    return _report("bell-forms", samples, seed, deviations, tol)


def verify_werner_isotropic(grid_points: int = DEFAULT_GRID_POINTS, tol: float = IDENTITY_TOL,
                            perturbation: float = 0.0) -> VerificationReport:
    """
    Check Werner and isotropic coherence on uniform grids over [0, 1].

    Args:
        grid_points: points per family, at least 2
        perturbation: added to the Werner closed value (negative control)

    Raises:
        ValueError: if grid_points < 2
    """
    if grid_points < 2:
        raise ValueError(f"Need at least 2 grid points, got {grid_points}")
    product_bases = self_tensor_bases(pauli_mubs()).bases
    grid = np.linspace(0.0, 1.0, grid_points)

    families = (
        ("werner", werner, werner_triple, perturbation),
        ("isotropic", isotropic, isotropic_triple, 0.0),
    )
    deviations = {}
    for name, build, to_triple, shift in families:
        closed_dev = spread_dev = matrix_dev = 0.0
        for t in grid:
            t = float(t)
            rho = build(t)
            triple = to_triple(t)
            target = abs(triple.c1) + shift
            values = [l1_coherence(rho, b) for b in product_bases]
            closed_dev = max(closed_dev, max(abs(v - target) for v in values))
            spread_dev = max(spread_dev, max(values) - min(values))
            matrix_dev = max(matrix_dev, float(np.max(np.abs(rho.mat - bell_diagonal_matrix(triple)))))
        deviations[f"{name}_closed"] = closed_dev
        deviations[f"{name}_spread"] = spread_dev
        deviations[f"{name}_matrix"] = matrix_dev
    return _report("werner-isotropic", 2 * grid_points, 0, deviations, tol, note="deterministic grid")


VERIFIERS: Dict[str, Callable[..., VerificationReport]] = {
    "qubit-bound": verify_qubit_bound,
    "xstate-equality": verify_xstate_equality,
    "bell-forms": verify_bell_forms,
    "werner-isotropic": verify_werner_isotropic,
}


def _run(claim_id: str, samples: int, seed: int, tol: float, grid_points: int,
         perturbation: float = 0.0) -> VerificationReport:
    if claim_id == "werner-isotropic":
        return verify_werner_isotropic(grid_points, tol, perturbation=perturbation)
    return VERIFIERS[claim_id](samples, seed, tol, perturbation=perturbation)


def run_all(samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED, tol: float = IDENTITY_TOL,
            grid_points: int = DEFAULT_GRID_POINTS) -> List[VerificationReport]:
    """Every claim once, in CLAIMS order."""
    return [_run(claim_id, samples, seed, tol, grid_points) for claim_id in CLAIMS]


def self_test(claim_id: str, samples: int = 1000, seed: int = DEFAULT_SEED,
              tol: float = IDENTITY_TOL, grid_points: int = DEFAULT_GRID_POINTS,
              perturbation: float = SELF_TEST_PERTURBATION) -> VerificationReport:
    """
    Negative control: rerun a claim with a perturbed closed form.

    The returned report is expected to have passed=False.
    """
    if claim_id not in CLAIMS:
        raise KeyError(f"Unknown claim '{claim_id}' (choose from {list(CLAIMS)})")
    report = _run(claim_id, samples, seed, tol, grid_points, perturbation=perturbation)
    if report.passed:
        logger.error(f"Negative control for {claim_id} passed; the check is vacuous")
    return report

