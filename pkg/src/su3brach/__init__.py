"""Time-optimal control of a driven three-level system.

Closed-form propagators, an independent numerical oracle, degeneracy
and classification utilities, and a ledger that measures every identity
the construction relies on.
"""
from .claims import ClaimResult
from .ledger import LedgerConfig, LedgerReport, run_all
from .problem import BrachistochroneProblem, constraint, control_fields, hamiltonian_at
from .propagators import fundamental_period, resonance, schrodinger_propagator

__version__ = "0.1.0"

__all__ = [
    "BrachistochroneProblem",
    "ClaimResult",
    "LedgerConfig",
    "LedgerReport",
    "constraint",
    "control_fields",
    "fundamental_period",
    "hamiltonian_at",
    "resonance",
    "run_all",
    "schrodinger_propagator",
]
