"""Stable JSON encoding: fixed key order, floats at 17 significant digits,
complex numbers as ``[re, im]`` pairs."""
import json
import math

import numpy as np

CIRCUIT_VERSION = "1"


def _fmt_float(x):
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("non-finite value cannot be serialized")
    if x == 0:
        x = 0.0  # drop negative zero
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _encode(obj):
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return f"[{_fmt_float(obj.real)}, {_fmt_float(obj.imag)}]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = (f"{_encode(str(k))}: {_encode(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    """Deterministic JSON text for ``obj`` (no trailing newline)."""
    return _encode(obj)


def complex_array(a):
    """Nested ``[re, im]`` lists for a complex array."""
    a = np.asarray(a, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def parse_complex_array(data, shape):
    a = np.asarray(data, dtype=float)
    if a.shape != tuple(shape) + (2,):
        raise ValueError(f"expected shape {tuple(shape)} of [re, im] pairs, got {a.shape}")
    out = a[..., 0] + 1j * a[..., 1]
    if not np.all(np.isfinite(out)):
        raise ValueError("non-finite entries")
    return out


def gate_spec_for(name=None, params=(), matrix=None):
    if matrix is not None:
        return {"matrix": complex_array(matrix)}
    return {"name": name, "params": [float(p) for p in params]}


def canonical_to_dict(c):
    return {
        "alphas": list(c.alphas),
        "lambdas": [float(v) for v in c.lambdas],
        "global_phase": c.global_phase,
        "k1": {"a": complex_array(c.k1[0]), "b": complex_array(c.k1[1])},
        "k2": {"a": complex_array(c.k2[0]), "b": complex_array(c.k2[1])},
    }


def report_to_dict(report):
    return {
        "omega_radians": report.omega,
        "n_runs": report.n_runs,
        "reason": report.reason,
        "is_perfect_entangler": report.is_perfect_entangler,
        "alphas": list(report.canonical.alphas),
        "lambdas": [float(v) for v in report.canonical.lambdas],
        "canonical": canonical_to_dict(report.canonical),
        "tolerances": dict(report.tolerances_used),
    }


def circuit_to_dict(circuit, gate_spec):
    return {
        "version": CIRCUIT_VERSION,
        "gate": gate_spec,
        "uses": circuit.uses,
        "locals": [{"a": complex_array(a), "b": complex_array(b)} for a, b in circuit.locals],
        "product_input": complex_array(circuit.product_input),
    }


def circuit_from_dict(data, tol=1e-8):
    """Rebuild a SynthesizedCircuit from CircuitFile JSON data.

    Raises:
        ValueError: malformed file content.
        NotUnitary: the embedded gate is not unitary.
    """
    from .gates import resolve
    from .synthesis import SynthesizedCircuit

    if not isinstance(data, dict):
        raise ValueError("circuit file must hold an object")
    missing = {"version", "gate", "uses", "locals", "product_input"} - set(data)
    if missing:
        raise ValueError(f"circuit file missing fields: {', '.join(sorted(missing))}")
    if str(data["version"]) != CIRCUIT_VERSION:
        raise ValueError(f"unsupported circuit version {data['version']!r}")
    uses = data["uses"]
    if not isinstance(uses, int) or isinstance(uses, bool) or uses < 0:
        raise ValueError("uses must be a non-negative integer")
    gate = resolve(data["gate"], tol)
    if not isinstance(data["locals"], list):
        raise ValueError("locals must be a list")
    layers = []
    for layer in data["locals"]:
        if not isinstance(layer, dict) or "a" not in layer or "b" not in layer:
            raise ValueError("each local layer needs 'a' and 'b'")
        layers.append((parse_complex_array(layer["a"], (2, 2)), parse_complex_array(layer["b"], (2, 2))))
    state = parse_complex_array(data["product_input"], (4,))
    if np.linalg.norm(state) == 0:
        raise ValueError("product_input is the zero vector")
    return SynthesizedCircuit(layers, gate, uses, state)
