"""``entangler-forge`` command line.

Exit codes: 0 ok, 1 verification failed, 2 parse error, 3 not unitary,
4 not entangling or outside a bound's regime.
"""
import argparse
import json
import math
import sys

import numpy as np

from . import kernels
from .arcs import analyze, omega, simulation_lower_bound
from .errors import NotEntangling, NotUnitary, OutOfRegime
from .gates import CATALOG, matrix_from_pairs, named_gate, resolve
from .linalg import DEFAULT_TOL, require_unitary
from .oracle import OracleBudget, analytic_ceiling, max_concurrence_k_uses
from .serialize import circuit_from_dict, circuit_to_dict, dumps, report_to_dict
from .synthesis import synthesize_perfect_entangler, verify_circuit

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_NOT_UNITARY = 3
EXIT_REGIME = 4

KET00 = np.array([1, 0, 0, 0], dtype=complex)


class CliError(Exception):
    def __init__(self, code, kind, message):
        super().__init__(message)
        self.code = code
        self.kind = kind


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_PARSE, "parse_error", message)


class _GateAction(argparse.Action):
    """Collect ``--gate``/``--param``/``--matrix`` into an ordered list of specs.

    Each ``--param`` attaches to the most recent ``--gate``.
    """

    def __call__(self, parser, namespace, value, option_string=None):
        specs = getattr(namespace, "specs", None) or []
        if option_string == "--gate":
            specs.append({"name": value, "params": []})
        elif option_string == "--matrix":
            specs.append({"matrix_path": value})
        else:
            if not specs or "name" not in specs[-1]:
                raise CliError(EXIT_PARSE, "parse_error", "--param must follow --gate")
            try:
                specs[-1]["params"].append(float(value))
            except ValueError:
                raise CliError(EXIT_PARSE, "parse_error", f"bad --param value {value!r}") from None
        namespace.specs = specs


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise CliError(EXIT_PARSE, "parse_error", f"cannot read {path}: {exc}") from None


def _resolve_spec(raw, tol):
    """Return ``(matrix, gate_spec_dict)`` for a collected CLI spec."""
    try:
        if "matrix_path" in raw:
            data = _load_json(raw["matrix_path"])
            if isinstance(data, dict):
                spec = data
                m = resolve(spec, tol)
            else:
                m = require_unitary(matrix_from_pairs(data), 4, tol)
                spec = {"matrix": np.stack([m.real, m.imag], axis=-1).tolist()}
            return m, spec
        m = require_unitary(named_gate(raw["name"], raw["params"]), 4, tol)
        return m, {"name": raw["name"], "params": list(raw["params"])}
    except NotUnitary as exc:
        raise CliError(EXIT_NOT_UNITARY, "not_unitary", str(exc)) from None
    except (ValueError, TypeError) as exc:
        raise CliError(EXIT_PARSE, "parse_error", str(exc)) from None


def _gates(args, count):
    specs = getattr(args, "specs", None) or []
    if len(specs) != count:
        raise CliError(EXIT_PARSE, "parse_error", f"expected {count} gate(s), got {len(specs)}")
    return [_resolve_spec(s, args.tol) for s in specs]


def _emit(payload, stream=None):
    stream = sys.stdout if stream is None else stream
    stream.write(dumps(payload) + "\n")


def cmd_analyze(args):
    (u, _), = _gates(args, 1)
    _emit(report_to_dict(analyze(u, args.tol)))
    return EXIT_OK


def cmd_synthesize(args):
    (u, spec), = _gates(args, 1)
    if not args.out:
        raise CliError(EXIT_PARSE, "parse_error", "--out is required")
    try:
        circuit = synthesize_perfect_entangler(u)
    except NotEntangling as exc:
        raise CliError(EXIT_REGIME, "not_entangling", str(exc)) from None
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(dumps(circuit_to_dict(circuit, spec)) + "\n")
    _emit({
        "out": args.out,
        "uses": circuit.uses,
        "certified_output_concurrence": circuit.certified_output_concurrence,
    })
    return EXIT_OK


def cmd_verify(args):
    if not args.circuit:
        raise CliError(EXIT_PARSE, "parse_error", "verify needs a circuit path")
    data = _load_json(args.circuit)
    try:
        circuit = circuit_from_dict(data, args.tol)
    except NotUnitary as exc:
        raise CliError(EXIT_NOT_UNITARY, "not_unitary", str(exc)) from None
    except (ValueError, TypeError, KeyError) as exc:
        raise CliError(EXIT_PARSE, "parse_error", f"malformed circuit file: {exc}") from None
    report = verify_circuit(circuit)
    _emit({
        "output_concurrence": report.output_concurrence,
        "omega_of_total": report.omega_of_total,
        "ok": report.ok,
        "notes": list(report.notes),
    })
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_bound(args):
    (u, _), (v, _) = _gates(args, 2)
    try:
        k = simulation_lower_bound(u, v, args.tol)
    except NotEntangling as exc:
        raise CliError(EXIT_REGIME, "not_entangling", str(exc)) from None
    except OutOfRegime as exc:
        raise CliError(EXIT_REGIME, "out_of_regime", str(exc)) from None
    sys.stdout.write(f"{k}\n")
    return EXIT_OK


def cmd_oracle(args):
    (u, spec), = _gates(args, 1)
    if args.k is None or args.k < 0:
        raise CliError(EXIT_PARSE, "parse_error", "--k must be a non-negative integer")
    if args.restarts < 1 or args.max_iterations < 1:
        raise CliError(EXIT_PARSE, "parse_error", "--restarts and --max-iterations must be >= 1")
    budget = OracleBudget(restarts=args.restarts, max_iterations=args.max_iterations)
    res = max_concurrence_k_uses(u, args.k, KET00, budget, seed=args.seed)
    om = omega(u, args.tol)
    _emit({
        "gate": spec,
        "k": args.k,
        "seed": args.seed,
        "restarts": res.restarts,
        "max_iterations": budget.max_iterations,
        "best_concurrence": res.best_concurrence,
        "analytic_ceiling": analytic_ceiling(om, args.k),
        "converged": res.converged,
        "best_params": res.best_params.angles.tolist(),
        "backend": kernels.BACKEND,
    })
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "synthesize": cmd_synthesize,
    "verify": cmd_verify,
    "bound": cmd_bound,
    "oracle": cmd_oracle,
}


def build_parser():
    p = _Parser(
        prog="entangler-forge",
        description="Nonlocal invariants, optimal run counts and perfect-entangler circuits "
                    "for two-qubit gates. Angles are in radians.",
        epilog=f"Named gates: {', '.join(CATALOG)}",
    )
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("circuit", nargs="?", help="circuit file (verify)")
    p.add_argument("--gate", action=_GateAction, help="catalog gate name (repeat for bound)")
    p.add_argument("--param", action=_GateAction, help="parameter for the preceding --gate")
    p.add_argument("--matrix", action=_GateAction,
                   help="JSON file with a GateSpec or a 4x4 array of [re, im] pairs")
    p.add_argument("--out", help="output path (synthesize)")
    p.add_argument("--k", type=int, help="gate uses (oracle)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--max-iterations", type=int, default=2000)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="unitarity tolerance")
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if not (args.tol > 0 and math.isfinite(args.tol)):
            raise CliError(EXIT_PARSE, "parse_error", "--tol must be positive")
        if args.command != "verify" and args.circuit is not None:
            raise CliError(EXIT_PARSE, "parse_error", f"unexpected argument {args.circuit!r}")
        return COMMANDS[args.command](args)
    except CliError as exc:
        _emit({"error": exc.kind, "message": str(exc)}, sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
