from ._stabent import (
    CliffordCircuit,
    Circuit,
    InfeasibleError,
    StabTableau,
    cool,
    dilution_plan,
    distill,
    entropy_interval,
    exact_s2,
    ghz_count,
    hybrid_stationary,
    lyapunov,
    phase_test,
    random_clifford,
    witness_plan,
)

__all__ = [
    "CliffordCircuit",
    "Circuit",
    "InfeasibleError",
    "StabTableau",
    "cool",
    "dilution_plan",
    "distill",
    "entropy_interval",
    "exact_s2",
    "ghz_count",
    "hybrid_stationary",
    "lyapunov",
    "phase_test",
    "random_clifford",
    "witness_plan",
]
