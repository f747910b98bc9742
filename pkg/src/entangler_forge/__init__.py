"""Optimal simulation of two-qubit perfect entanglers.

For a two-qubit gate U this package computes the canonical interaction
angles, the eigenphase-arc invariant Omega(U), the minimal number of uses
``ceil(pi / Omega)`` needed (with free one-qubit gates) to build a perfect
entangler, and an explicit circuit achieving it. A brute-force optimizer
checks the run counts independently.
"""
from .arcs import (
    AnalysisReport,
    analyze,
    is_perfect_entangler,
    n_runs,
    n_runs_from_state,
    omega,
    simulation_lower_bound,
    single_use_max_concurrence,
    theta,
)
from .errors import (
    AlreadyMaximal,
    BadBudget,
    BudgetExhausted,
    ConcurrenceMismatch,
    DegenerateCore,
    EntanglerForgeError,
    NotEntangling,
    NotUnitary,
    OutOfRegime,
    TargetOutOfRange,
)
from .gates import named_gate
from .linalg import check_unitary, eigenphases, schmidt, tensor
from .magic import (
    CanonicalForm,
    concurrence,
    interaction_core,
    kak_decompose,
    reconstruct,
    to_magic_basis,
)
from .oracle import (
    OracleBudget,
    OracleResult,
    max_concurrence_k_uses,
    min_concurrence_k_uses,
    min_runs_to_disentangle,
    min_runs_to_one,
)
from .synthesis import (
    SynthesizedCircuit,
    equal_concurrence_connector,
    max_entangled_preimage,
    seed_product_state,
    synthesize_perfect_entangler,
    trajectory,
    verify_circuit,
)

__version__ = "0.1.0"
