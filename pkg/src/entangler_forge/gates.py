"""Named two-qubit gates and GateSpec resolution."""
import numpy as np

from .linalg import DEFAULT_TOL, PAULI_X, as_matrix, require_unitary, tensor
from .magic import core_matrix

_SQ = (1 + 1j) / 2
_SQC = (1 - 1j) / 2

_FIXED = {
    "identity": np.eye(4, dtype=complex),
    "cnot": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    "cz": np.diag([1, 1, 1, -1]).astype(complex),
    "swap": np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex),
    "sqrt_swap": np.array(
        [[1, 0, 0, 0], [0, _SQ, _SQC, 0], [0, _SQC, _SQ, 0], [0, 0, 0, 1]], dtype=complex
    ),
}


def cp(phi):
    """Controlled phase ``diag(1, 1, 1, e^{i phi})``."""
    return np.diag([1, 1, 1, np.exp(1j * phi)])


def xx(t):
    """``exp(i t X (x) X)``."""
    return np.cos(t) * np.eye(4) + 1j * np.sin(t) * tensor(PAULI_X, PAULI_X)


def canonical(ax, ay, az):
    return core_matrix([ax, ay, az])


_PARAMETRIC = {"cp": (cp, 1), "xx": (xx, 1), "canonical": (canonical, 3)}

CATALOG = tuple(sorted(list(_FIXED) + list(_PARAMETRIC)))


def named_gate(name, params=()):
    """Matrix for a catalog gate.

    Raises:
        ValueError: unknown name or wrong number of parameters.
    """
    params = [float(p) for p in params]
    if not all(np.isfinite(params)):
        raise ValueError("gate parameters must be finite")
    if name in _FIXED:
        if params:
            raise ValueError(f"gate {name!r} takes no parameters")
        return _FIXED[name].copy()
    if name in _PARAMETRIC:
        fn, arity = _PARAMETRIC[name]
        if len(params) != arity:
            raise ValueError(f"gate {name!r} takes {arity} parameter(s), got {len(params)}")
        return fn(*params)
    raise ValueError(f"unknown gate {name!r}; choose from {', '.join(CATALOG)}")


def matrix_from_pairs(rows):
    """4x4 complex matrix from a row-major array of ``[re, im]`` pairs."""
    a = np.asarray(rows, dtype=float)
    if a.shape != (4, 4, 2):
        raise ValueError(f"matrix must be 4x4 [re, im] pairs, got shape {a.shape}")
    return as_matrix(a[..., 0] + 1j * a[..., 1], 4)


def resolve(spec, tol=DEFAULT_TOL):
    """Matrix for a GateSpec dict: ``{"name", "params"}`` or ``{"matrix"}``.

    Raises:
        ValueError: malformed spec.
        NotUnitary: resolved matrix is not unitary within ``tol``.
    """
    if not isinstance(spec, dict):
        raise ValueError("gate spec must be an object")
    if "matrix" in spec:
        m = matrix_from_pairs(spec["matrix"])
    elif "name" in spec:
        m = named_gate(spec["name"], spec.get("params", ()))
    else:
        raise ValueError("gate spec needs 'name' or 'matrix'")
    return require_unitary(m, 4, tol)
