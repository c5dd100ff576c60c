"""
Command-line front end.

    pb-oscillator [--abs-tol X] [--rel-tol X] [--out PATH] [-v] <command> ...

Commands: build, closure, structure-constants, phase, susy. The global flags
are also accepted after the command name. Reports go to stdout, or to the
file named by --out.

Exit codes: 0 pass, 1 verification failure, 2 usage or domain error, 3 I/O error.
"""

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from pb_oscillator import __version__
from pb_oscillator.errors import (
    CertificationFailure,
    ClosureNotReached,
    DimensionError,
    DomainError,
    NumericError,
)
from pb_oscillator.lie_closure import (
    SPAN_TOL,
    TRACE_TOL,
    UNITARITY_TOL,
    build_certificate,
    close_family,
    structure_constants,
)
from pb_oscillator.linalg import Tolerance, as_cmatrix, commutator, freeze, max_abs
from pb_oscillator.pb_operators import (
    GENERATOR_NAMES,
    LADDER_NAMES,
    OscillatorFamily,
    Provenance,
    build_family,
    require_cutoff,
)
from pb_oscillator.phase import build_phase_basis, number_state, phase_distribution
from pb_oscillator.susy import (
    EXACT_TOL,
    WINDOW_TOL,
    JcParams,
    build_susy_rep,
    default_block_dim,
    jc_hamiltonian_direct,
    jc_hamiltonian_susy_form,
    quasialgebra_check,
    safe_cells,
    susy_pb_hamiltonian,
    verify_susy_algebra,
)
from pb_oscillator.utils import deep_close

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

ROUND_TRIP_TOL = 1e-12
HAMILTONIAN_FORM_TOL = 1e-11
JACOBI_TOL = 1e-8


@dataclass
class ReportEnvelope:
    """
    Machine-readable result of one command.

    `passed` is recomputed from the residuals on every call.
    """

    command: str
    parameters: Dict[str, Any]
    results: Dict[str, Any] = field(default_factory=dict)
    residuals: List[Dict[str, Any]] = field(default_factory=list)
    tool_version: str = __version__

    def add_residual(self, name: str, value: float, tolerance: float) -> None:
        value = float(value)
        self.residuals.append(
            {
                "name": name,
                "value": value,
                "tolerance": float(tolerance),
                "pass": bool(value <= tolerance),
            }
        )

    @property
    def passed(self) -> bool:
        return all(entry["pass"] for entry in self.residuals)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "residuals": self.residuals,
            "pass": self.passed,
            "tool_version": self.tool_version,
        }


def encode_matrix(X: Any) -> List[List[List[float]]]:
    """Row-major rows of [re, im] pairs."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(X)]


def decode_matrix(rows: Any) -> np.ndarray:
    arr = np.asarray(rows, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[-1] != 2:
        raise DimensionError(f"Expected rows of [re, im] pairs, got shape {arr.shape}.")
    return as_cmatrix(arr[..., 0] + 1j * arr[..., 1])


def family_to_dict(family: OscillatorFamily) -> Dict[str, Any]:
    """JSON-ready form: "s", "dim", "generators" keyed by canonical name, "provenance"."""
    return {
        "s": family.s,
        "dim": family.dim,
        "generators": {name: encode_matrix(X) for name, X in family.generators().items()},
        "provenance": {name: p.to_dict() for name, p in family.provenance.items()},
    }


def family_from_dict(data: Dict[str, Any]) -> OscillatorFamily:
    """
    Rebuilds an OscillatorFamily from `family_to_dict` output.

    Raises:
        DomainError: On a bad cutoff or unknown generator names.
        DimensionError: If a matrix does not have size dim.
    """
    s = require_cutoff(data["s"])
    generators = data["generators"]
    unknown = set(generators) - set(GENERATOR_NAMES)
    if unknown:
        raise DomainError(f"Unknown generators in family payload: {sorted(unknown)}.")
    matrices = {name: decode_matrix(rows) for name, rows in generators.items()}
    for name, X in matrices.items():
        if X.shape[0] != s + 1:
            raise DimensionError(f"Generator {name} has dimension {X.shape[0]}, expected {s + 1}.")
    provenance = {
        name: Provenance(name, tuple(entry["bracket"]), float(entry["coefficient"]))
        for name, entry in data.get("provenance", {}).items()
    }
    return OscillatorFamily(
        s=s,
        a=freeze(matrices["a"]),
        a_dag=freeze(matrices["a_dag"]),
        A=freeze(matrices["A"]),
        derived={name: freeze(matrices[name]) for name in LADDER_NAMES if name in matrices},
        provenance=provenance,
    )


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as handle:
        handle.write(text)
    logger.info("wrote %s", out)


def _emit_envelope(envelope: ReportEnvelope, out: Optional[str]) -> int:
    _emit(json.dumps(envelope.to_dict(), indent=2) + "\n", out)
    return EXIT_OK if envelope.passed else EXIT_FAILED


def _tolerance(args: argparse.Namespace) -> Tolerance:
    defaults = Tolerance()
    return Tolerance(
        abs_tol=defaults.abs_tol if args.abs_tol is None else args.abs_tol,
        rel_tol=defaults.rel_tol if args.rel_tol is None else args.rel_tol,
    )


def _check_tolerance(args: argparse.Namespace, default: float, scale: float = 1.0) -> float:
    """`default` unless --abs-tol or --rel-tol was given; then the parsed bound at `scale`."""
    if args.abs_tol is None and args.rel_tol is None:
        return default
    return _tolerance(args).bound(scale)


def cmd_build(args: argparse.Namespace) -> int:
    family = build_family(args.s)
    payload = family_to_dict(family)
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    if args.out is None:
        return EXIT_OK

    with open(args.out, encoding="utf-8") as handle:
        reread = json.load(handle)
    round_trip_tol = _check_tolerance(args, ROUND_TRIP_TOL)
    if not deep_close(payload, reread, round_trip_tol):
        logger.error("Family written to %s does not read back identically.", args.out)
        return EXIT_FAILED
    reloaded = family_from_dict(reread)
    residual = max_abs(commutator(reloaded.a, reloaded.a_dag) - reloaded.A)
    if residual > round_trip_tol:
        logger.error("Reloaded family violates [a,a_dag]=A (residual %.3e).", residual)
        return EXIT_FAILED
    return EXIT_OK


def cmd_closure(args: argparse.Namespace) -> int:
    s = require_cutoff(args.s)
    tol = _tolerance(args)
    family = build_family(s)
    envelope = ReportEnvelope(
        "closure", {"s": s, "abs_tol": tol.abs_tol, "rel_tol": tol.rel_tol}
    )
    envelope.results["expected_dimension"] = (s + 1) ** 2 - 1
    try:
        basis = close_family(family, tol=tol, max_workers=args.workers)
    except ClosureNotReached as exc:
        logger.error("%s", exc)
        envelope.results.update(dimension=exc.dimension, rounds=exc.rounds, error=str(exc))
        envelope.add_residual(
            "dimension", abs(envelope.results["expected_dimension"] - exc.dimension), 0.0
        )
        envelope.add_residual("unclosed_rounds", 1.0, 0.0)
        return _emit_envelope(envelope, args.out)

    certificate = build_certificate(
        basis,
        tol,
        trace_tol=_check_tolerance(args, TRACE_TOL),
        span_tol=_check_tolerance(args, SPAN_TOL),
        unitarity_tol=_check_tolerance(args, UNITARITY_TOL),
    )
    envelope.results.update(
        dimension=basis.dimension,
        rounds=basis.closure_rounds,
        certificate=certificate.to_dict(),
    )
    for clause in certificate.clauses:
        envelope.add_residual(clause.name, clause.residual, clause.tolerance)
    if not certificate.passed:
        logger.error("%s", CertificationFailure(certificate.failed_clauses(), certificate))
    return _emit_envelope(envelope, args.out)


def cmd_structure_constants(args: argparse.Namespace) -> int:
    s = require_cutoff(args.s)
    tol = _tolerance(args)
    basis = close_family(build_family(s), tol=tol, max_workers=args.workers)
    constants = structure_constants(basis)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["a", "b", "c", "f"])
    for a, b, c, value in constants.nonzero(tol.abs_tol):
        writer.writerow([a, b, c, f"{value:.15g}"])
    _emit(buffer.getvalue(), args.out)

    print(
        f"# dimension={constants.dimension} "
        f"antisymmetry_residual={constants.antisymmetry_residual:.3e} "
        f"jacobi_residual={constants.jacobi_residual:.3e}",
        file=sys.stderr,
    )
    jacobi_tol = _check_tolerance(args, JACOBI_TOL)
    if not constants.antisymmetric or constants.jacobi_residual > jacobi_tol:
        logger.error("Structure constants failed antisymmetry or Jacobi checks.")
        return EXIT_FAILED
    return EXIT_OK


def parse_state_spec(spec: str, s: int) -> np.ndarray:
    """
    "n:<int>" for the number state |n>, or "file:<path>" for a JSON list of
    amplitudes, each a number or an [re, im] pair.

    Raises:
        DomainError: On a malformed spec or amplitude list.
        OSError: If the file cannot be read.
    """
    kind, sep, value = spec.partition(":")
    if not sep:
        raise DomainError(f"State spec must be 'n:<int>' or 'file:<path>', got {spec!r}.")
    if kind == "n":
        try:
            n = int(value)
        except ValueError:
            raise DomainError(f"Bad number state in {spec!r}.") from None
        return number_state(s, n)
    if kind == "file":
        with open(value, encoding="utf-8") as handle:
            amplitudes = json.load(handle)
        if not isinstance(amplitudes, list):
            raise DomainError(f"{value} must hold a JSON list of amplitudes.")
        vector = []
        for entry in amplitudes:
            if isinstance(entry, list) and len(entry) == 2:
                vector.append(complex(float(entry[0]), float(entry[1])))
            elif isinstance(entry, (int, float)) and not isinstance(entry, bool):
                vector.append(complex(entry))
            else:
                raise DomainError(f"Bad amplitude {entry!r} in {value}.")
        return np.asarray(vector, dtype=np.complex128)
    raise DomainError(f"Unknown state spec kind {kind!r}.")


def cmd_phase(args: argparse.Namespace) -> int:
    s = require_cutoff(args.s)
    tol = _tolerance(args)
    basis = build_phase_basis(s, args.theta0)
    probabilities = phase_distribution(parse_state_spec(args.state, s), basis, tol)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["m", "theta", "p"])
    for m, (theta, p) in enumerate(zip(basis.thetas, probabilities)):
        writer.writerow([m, f"{theta:.15g}", f"{p:.15g}"])
    _emit(buffer.getvalue(), args.out)

    total = float(probabilities.sum())
    if abs(total - 1.0) > tol.bound(1.0):
        logger.error("Phase probabilities sum to %.15g.", total)
        return EXIT_FAILED
    return EXIT_OK


def cmd_susy(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    D = default_block_dim(args.k) if args.D is None else args.D
    if not args.Omega > 0:
        raise DomainError(f"Omega must be positive, got {args.Omega!r}.")
    params = JcParams(args.omega, args.omega0, complex(args.g_re, args.g_im), args.k)
    rep = build_susy_rep(params.k, D)

    envelope = ReportEnvelope(
        "susy",
        {
            "k": params.k,
            "D": D,
            "omega": params.omega,
            "omega0": params.omega0,
            "g": [params.g.real, params.g.imag],
            "Omega": args.Omega,
            "abs_tol": tol.abs_tol,
            "rel_tol": tol.rel_tol,
        },
    )

    algebra = verify_susy_algebra(
        rep,
        tolerance=_check_tolerance(args, WINDOW_TOL),
        exact_tolerance=_check_tolerance(args, EXACT_TOL),
    )
    envelope.results["relations"] = algebra.to_dict()["relations"]
    for result in algebra.results:
        envelope.add_residual(f"{result.name} [{result.scope}]", result.residual, result.tolerance)

    forms = max_abs(jc_hamiltonian_direct(params, D, tol) - jc_hamiltonian_susy_form(params, rep))
    envelope.results["hamiltonian_form_residual"] = forms
    form_tol = _check_tolerance(args, HAMILTONIAN_FORM_TOL)
    envelope.add_residual("direct==susy_form", forms, form_tol)

    table = []
    for cell in safe_cells(params.k, D):
        energy = susy_pb_hamiltonian(cell, args.Omega, D)
        cell_report = quasialgebra_check(cell, D, _check_tolerance(args, EXACT_TOL))
        table.append(
            {
                "m": cell.m,
                "C": cell.C,
                "energy": energy.energy,
                "quasialgebra_pass": cell_report.passed,
            }
        )
        for result in cell_report.results:
            envelope.add_residual(
                f"quasialgebra m={cell.m} {result.name}", result.residual, result.tolerance
            )
        envelope.add_residual(f"energy m={cell.m}", energy.residual, tol.bound(energy.energy))
    envelope.results["cells"] = table
    return _emit_envelope(envelope, args.out)


def _common_flags(parser: argparse.ArgumentParser, default: Any) -> None:
    parser.add_argument("--abs-tol", type=float, default=default, help="Absolute tolerance.")
    parser.add_argument("--rel-tol", type=float, default=default, help="Relative tolerance.")
    parser.add_argument("--out", default=default, help="Write the report to this file.")
    parser.add_argument(
        "-v", "--verbose", action="store_true", default=default, help="Debug logging on stderr."
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pb-oscillator",
        description="Finite-dimensional Pegg-Barnett oscillator: construction and verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common_flags(parser, None)
    parser.set_defaults(verbose=False)

    # Flags after the command must not reset values given before it.
    common = argparse.ArgumentParser(add_help=False)
    _common_flags(common, argparse.SUPPRESS)

    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", parents=[common], help="Write the operator family as JSON.")
    build.add_argument("--s", type=int, required=True)
    build.set_defaults(handler=cmd_build)

    closure = sub.add_parser("closure", parents=[common], help="Close and certify su(s+1).")
    closure.add_argument("--s", type=int, required=True)
    closure.add_argument("--workers", type=int, default=1)
    closure.set_defaults(handler=cmd_closure)

    constants = sub.add_parser(
        "structure-constants", parents=[common], help="CSV of nonzero structure constants."
    )
    constants.add_argument("--s", type=int, required=True)
    constants.add_argument("--workers", type=int, default=1)
    constants.set_defaults(handler=cmd_structure_constants)

    phase = sub.add_parser("phase", parents=[common], help="CSV phase distribution of a state.")
    phase.add_argument("--s", type=int, required=True)
    phase.add_argument("--theta0", type=float, default=0.0)
    phase.add_argument("--state", required=True, help="'n:<int>' or 'file:<path>'.")
    phase.set_defaults(handler=cmd_phase)

    susy = sub.add_parser("susy", parents=[common], help="Verify the supersymmetric sector.")
    susy.add_argument("--k", type=int, required=True)
    susy.add_argument("--D", type=int, default=None, help="Block dimension (default 4k+8).")
    susy.add_argument("--omega", type=float, default=1.0)
    susy.add_argument("--omega0", type=float, default=1.0)
    susy.add_argument("--g-re", type=float, default=0.1)
    susy.add_argument("--g-im", type=float, default=0.0)
    susy.add_argument("--Omega", type=float, default=1.0)
    susy.set_defaults(handler=cmd_susy)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if getattr(args, "workers", 1) < 1:
        logger.error("--workers must be >= 1.")
        return EXIT_USAGE

    try:
        return args.handler(args)
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        return EXIT_IO
    except (NumericError, ClosureNotReached) as exc:
        logger.error("%s", exc)
        return EXIT_FAILED
    except (ValueError, KeyError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
