#!/usr/bin/env python3
"""
Command-line entry point for MUB coherence computations.

This script:
1. Generates and checks basis files (built-in MUBs or user-supplied kets)
2. Writes state files for Bloch, qutrit X, Bell-diagonal, Werner and isotropic states
3. Reports l1 and relative-entropy coherence of a state in a list of bases
4. Runs the seeded verification sweeps and their negative controls
5. Writes heightmap CSV and level-surface OBJ files

Exit status is 0 on success, 1 when a verification or basis check fails,
2 on usage or input errors.

Usage:
    python mubcoh.py verify all
    python mubcoh.py state werner --p 0.75 --out w.json
    python mubcoh.py coherence --state w.json --set pauli-tensor
    python mubcoh.py surface isosurface --levels 0.5 1 2 --out sum.obj
"""

import argparse
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, List, Optional

try:
    from colorama import init, Fore, Style
    init()
except ImportError:
    # Fallback if colorama not installed
    class Fore:
        RED = GREEN = YELLOW = CYAN = MAGENTA = ""
    class Style:
        RESET_ALL = BRIGHT = ""

from mub_coherence.coherence import coherence_report, coherence_reports
from mub_coherence.errors import InputError, MubCoherenceError
from mub_coherence.matrix_io import read_basis, read_state, write_basis, write_json, write_state
from mub_coherence.mub import BUILTIN_SETS, builtin_set, check_tensor_unbiased, check_unbiased
from mub_coherence.mubcoh_config import (
    DEFAULT_GRID_POINTS,
    DEFAULT_LEVELS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    FIELD_RESOLUTION,
    HEIGHTMAP_RESOLUTION,
    IDENTITY_TOL,
    VALIDATION_TOL,
)
from mub_coherence.states import (
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
from mub_coherence.surface import (
    coherence_field,
    coherence_heightmap,
    isosurface,
    write_field_csv,
    write_heightmap_csv,
    write_obj,
)
from mub_coherence.verify import (
    CLAIMS,
    self_test,
    verify_bell_forms,
    verify_qubit_bound,
    verify_werner_isotropic,
    verify_xstate_equality,
)

logging.basicConfig(level=logging.INFO, format='%(levelname)s: %(message)s')
logger = logging.getLogger(__name__)

# CLI name -> claim id
VERIFY_TARGETS = {
    "qubit": "qubit-bound",
    "xstate": "xstate-equality",
    "bell": "bell-forms",
    "werner-iso": "werner-isotropic",
}


@contextmanager
def _output(path: Optional[str]):
    """Yield a text stream for --out, or stdout when no path is given."""
    if path is None:
        yield sys.stdout
        return
    with open(path, "w") as f:
        yield f
    logger.info(f"{Fore.GREEN}✓ Wrote {path}{Style.RESET_ALL}")


def _status(passed: bool, text: str) -> None:
    if passed:
        logger.info(f"{Fore.GREEN}✓ {text}{Style.RESET_ALL}")
    else:
        logger.error(f"{Fore.RED}✗ {text}{Style.RESET_ALL}")


# ---------------------------------------------------------------------------
# basis
# ---------------------------------------------------------------------------

def cmd_basis_gen(args) -> int:
    mubs = builtin_set(args.set)
    label = args.label or mubs.labels[0]
    try:
        basis = mubs.by_label(label)
    except KeyError as e:
        logger.error(str(e))
        return 2
    with _output(args.out) as out:
        write_basis(basis, out)
    return 0


def cmd_basis_check(args) -> int:
    bases = [read_basis(path, renormalize=args.renormalize, tol=VALIDATION_TOL) for path in args.files]
    for b in bases:
        logger.info(f"Basis '{b.label}': dim {b.dim}, unitarity deviation {b.unitarity_deviation():.3e}")

    pairs = []
    for i, b1 in enumerate(bases):
        for b2 in bases[i + 1:]:
            if args.tensor_dim:
                check = check_tensor_unbiased(b1, b2, args.tensor_dim, args.tol)
            else:
                check = check_unbiased(b1, b2, args.tol)
            _status(check.passed, f"{b1.label} vs {b2.label}: deviation {check.max_deviation:.3e}")
            pairs.append({"a": b1.label, "b": b2.label, "passed": check.passed,
                          "max_deviation": check.max_deviation, "target": check.target})

    passed = all(p["passed"] for p in pairs)
    with _output(args.out) as out:
        write_json({"bases": [b.label for b in bases], "pairs": pairs, "passed": passed}, out)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# state
# ---------------------------------------------------------------------------

def cmd_state(args) -> int:
    kind = args.state_kind
    if kind == "bloch":
        state = bloch_state(BlochVector(args.x, args.y, args.z))
    elif kind == "qutrit-x":
        params = QutritXParams(QutritXVariant(args.variant), args.x, args.y, args.z)
        state = qutrit_x_state(params, require_physical=args.require_physical)
    elif kind == "bell":
        state = bell_diagonal(CorrelationTriple(args.c1, args.c2, args.c3),
                              require_physical=args.require_physical)
    elif kind == "werner":
        state = werner(args.p)
    else:
        state = isotropic(args.F)

    if getattr(state, "physical", True) is False:
        logger.warning(f"{Fore.YELLOW}Writing a non-physical {kind} operator{Style.RESET_ALL}")
    with _output(args.out) as out:
        write_state(state, out)
    return 0


# ---------------------------------------------------------------------------
# coherence
# ---------------------------------------------------------------------------

def cmd_coherence(args) -> int:
    state = read_state(args.state, require_physical=args.require_physical)
    if getattr(state, "physical", True) is False:
        logger.warning(f"{Fore.YELLOW}State is not positive semidefinite; relative entropy reported as null{Style.RESET_ALL}")
    if args.set:
        reports = coherence_reports(state, builtin_set(args.set))
    else:
        bases = [read_basis(path, renormalize=args.renormalize) for path in args.basis]
        reports = [coherence_report(state, b) for b in bases]

    for r in reports:
        entropy = "n/a" if r.relative_entropy is None else f"{r.relative_entropy:.12g} bits"
        logger.info(f"{r.basis_label}: l1 = {r.l1:.12g}, relative entropy = {entropy}")
    with _output(args.out) as out:
        write_json({"state": str(args.state), "reports": [r.to_dict() for r in reports]}, out)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _run_claim(claim_id: str, args):
    if claim_id == "qubit-bound":
        return verify_qubit_bound(args.samples, args.seed, args.tol, pure_only=args.pure_only)
    if claim_id == "xstate-equality":
        variants = [QutritXVariant(v) for v in args.variant] if args.variant else None
        return verify_xstate_equality(args.samples, args.seed, args.tol, variants=variants,
                                      zero_z=args.zero_z)
    if claim_id == "bell-forms":
        return verify_bell_forms(args.samples, args.seed, args.tol)
    return verify_werner_isotropic(args.grid_points, args.tol)


def cmd_verify(args) -> int:
    claim_ids = list(CLAIMS) if args.target == "all" else [VERIFY_TARGETS[args.target]]

    if args.self_test:
        results: List[Dict[str, object]] = []
        ok = True
        for claim_id in claim_ids:
            report = self_test(claim_id, args.samples, args.seed, args.tol, args.grid_points)
            caught = not report.passed
            ok = ok and caught
            _status(caught, f"negative control for {claim_id} "
                            f"{'failed as expected' if caught else 'passed unexpectedly'}")
            results.append({**report.to_dict(), "control_caught": caught})
        with _output(args.out) as out:
            write_json({"self_test": True, "reports": results, "passed": ok}, out)
        return 0 if ok else 1

    reports = [_run_claim(claim_id, args) for claim_id in claim_ids]
    for r in reports:
        _status(r.passed, f"{r.claim_id}: max deviation {r.max_deviation:.3e} "
                          f"(tol {r.tolerance:g}, {r.samples} samples)")
    passed = all(r.passed for r in reports)
    with _output(args.out) as out:
        write_json({"reports": [r.to_dict() for r in reports], "passed": passed}, out)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# surface
# ---------------------------------------------------------------------------

def _level_path(out: Path, level: float, many: bool) -> Path:
    if not many:
        return out
    return out.with_name(f"{out.stem}_level{level:g}{out.suffix}")


def cmd_surface(args) -> int:
    if args.surface_kind == "heightmap":
        hm = coherence_heightmap(args.n)
        with _output(args.out) as out:
            write_heightmap_csv(hm, out)
        return 0

    if args.out is None:
        logger.error("surface isosurface needs --out")
        return 2
    field = coherence_field(args.n)
    if args.field_csv:
        with _output(args.field_csv) as out:
            write_field_csv(field, out)

    out_path = Path(args.out)
    many = len(args.levels) > 1
    for level in args.levels:
        mesh = isosurface(field, level, physical=args.physical)
        summary = f"level {level:g}: {len(mesh.vertices)} vertices, {len(mesh.triangles)} triangles"
        if len(mesh.vertices):
            lo, hi = mesh.bounding_box()
            summary += f", box [{lo[0]:.3f}, {hi[0]:.3f}] x [{lo[1]:.3f}, {hi[1]:.3f}] x [{lo[2]:.3f}, {hi[2]:.3f}]"
        logger.info(summary)
        region = "physical" if args.physical else "cube"
        with _output(str(_level_path(out_path, level, many))) as out:
            write_obj(mesh, out, comment=f"summed l1 coherence = {level:g} ({region}, n={args.n})")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=str, help="Output file (default: stdout)")
    common.add_argument("--debug", action="store_true", help="Enable debug logging")

    parser = argparse.ArgumentParser(prog="mubcoh", description="Quantum coherence in mutually unbiased bases")
    sub = parser.add_subparsers(dest="command", required=True)

    # basis
    basis = sub.add_parser("basis", help="Generate or check basis files")
    basis_sub = basis.add_subparsers(dest="action", required=True)
    gen = basis_sub.add_parser("gen", parents=[common], help="Write a built-in basis as JSON")
    gen.add_argument("--set", choices=sorted(BUILTIN_SETS), default="pauli", help="Built-in MUB set (default: pauli)")
    gen.add_argument("--label", type=str, help="Basis label within the set (default: first basis)")
    gen.set_defaults(func=cmd_basis_gen)
    check = basis_sub.add_parser("check", parents=[common], help="Check orthonormality and pairwise unbiasedness")
    check.add_argument("files", nargs="+", help="Basis JSON files")
    check.add_argument("--tensor-dim", type=int, default=0,
                       help="Check the unsquared product-basis condition |<ij|mn>| = 1/d for this d")
    check.add_argument("--tol", type=float, default=IDENTITY_TOL, help=f"Overlap tolerance (default: {IDENTITY_TOL})")
    check.add_argument("--renormalize", action="store_true", help="Rescale kets to unit norm before checking")
    check.set_defaults(func=cmd_basis_check)

    # state
    state = sub.add_parser("state", help="Write a state file")
    state_sub = state.add_subparsers(dest="kind", required=True)
    bloch = state_sub.add_parser("bloch", parents=[common], help="Qubit state from a Bloch vector")
    for name in ("x", "y", "z"):
        bloch.add_argument(f"--{name}", type=float, default=0.0)
    qx = state_sub.add_parser("qutrit-x", aliases=["x3"], parents=[common], help="Qutrit X state")
    qx.add_argument("--variant", choices=[v.value for v in QutritXVariant], default="outer")
    for name in ("x", "y", "z"):
        qx.add_argument(f"--{name}", type=float, required=True)
    qx.add_argument("--require-physical", action=argparse.BooleanOptionalAction, default=True)
    bell = state_sub.add_parser("bell", parents=[common], help="Bell-diagonal two-qubit state")
    for name in ("c1", "c2", "c3"):
        bell.add_argument(f"--{name}", type=float, required=True)
    bell.add_argument("--require-physical", action=argparse.BooleanOptionalAction, default=True)
    wer = state_sub.add_parser("werner", parents=[common], help="Werner state")
    wer.add_argument("--p", type=float, required=True)
    iso = state_sub.add_parser("iso", parents=[common], help="Isotropic state")
    iso.add_argument("--F", type=float, required=True)
    # kind is set explicitly so aliases resolve to the canonical name
    for p, kind in ((bloch, "bloch"), (qx, "qutrit-x"), (bell, "bell"), (wer, "werner"), (iso, "iso")):
        p.set_defaults(func=cmd_state, state_kind=kind)

    # coherence
    coh = sub.add_parser("coherence", parents=[common], help="Coherence of a state in a list of bases")
    coh.add_argument("--state", type=str, required=True, help="State JSON file")
    which = coh.add_mutually_exclusive_group(required=True)
    which.add_argument("--basis", nargs="+", help="Basis JSON files")
    which.add_argument("--set", choices=sorted(BUILTIN_SETS), help="Use every basis of a built-in set")
    coh.add_argument("--require-physical", action=argparse.BooleanOptionalAction, default=True)
    coh.add_argument("--renormalize", action="store_true", help="Rescale basis kets to unit norm")
    coh.set_defaults(func=cmd_coherence)

    # verify
    ver = sub.add_parser("verify", parents=[common], help="Run verification sweeps")
    ver.add_argument("target", choices=list(VERIFY_TARGETS) + ["all"])
    ver.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help=f"Samples (default: {DEFAULT_SAMPLES})")
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"Seed (default: {DEFAULT_SEED})")
    ver.add_argument("--tol", type=float, default=IDENTITY_TOL, help=f"Tolerance (default: {IDENTITY_TOL})")
    ver.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS,
                     help=f"Werner/isotropic grid size (default: {DEFAULT_GRID_POINTS})")
    ver.add_argument("--pure-only", action="store_true", help="qubit: sample pure states only")
    ver.add_argument("--variant", nargs="+", choices=[v.value for v in QutritXVariant],
                     help="xstate: restrict to these variants")
    ver.add_argument("--zero-z", action="store_true", help="xstate: force z = 0")
    ver.add_argument("--self-test", action="store_true", help="Run negative controls instead")
    ver.set_defaults(func=cmd_verify)

    # surface
    surf = sub.add_parser("surface", help="Write coherence landscape files")
    surf_sub = surf.add_subparsers(dest="kind", required=True)
    hm = surf_sub.add_parser("heightmap", aliases=["fig1"], parents=[common], help="zz-basis coherence over (c1, c2) as CSV")
    hm.add_argument("--n", type=int, default=HEIGHTMAP_RESOLUTION,
                    help=f"Grid points per axis (default: {HEIGHTMAP_RESOLUTION})")
    iso_s = surf_sub.add_parser("isosurface", aliases=["fig2"], parents=[common], help="Level surfaces of the summed coherence as OBJ")
    iso_s.add_argument("--n", type=int, default=FIELD_RESOLUTION,
                       help=f"Grid points per axis (default: {FIELD_RESOLUTION})")
    iso_s.add_argument("--levels", type=float, nargs="+", default=list(DEFAULT_LEVELS),
                       help=f"Levels (default: {' '.join(f'{v:g}' for v in DEFAULT_LEVELS)})")
    iso_s.add_argument("--physical", action="store_true", help="Keep only the physical Bell-diagonal region")
    iso_s.add_argument("--field-csv", type=str, help="Also write the sampled field as CSV")
    for p, kind in ((hm, "heightmap"), (iso_s, "isosurface")):
        p.set_defaults(func=cmd_surface, surface_kind=kind)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if getattr(args, "debug", False):
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        return args.func(args)
    except InputError as e:
        logger.error(f"Input error: {e}")
        return 2
    except MubCoherenceError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 2
    except (OSError, ValueError) as e:
        logger.error(f"Error: {e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
