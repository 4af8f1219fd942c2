"""Surface-code lattice-surgery resource estimation.

Two compilation families are modelled: closed-form sequential Pauli-based
computation (SPBC) and direct Clifford+T compilation onto a tile layout with
min-storage magic-state scheduling.
"""

from .circuit import (
    CircuitError,
    CircuitSummary,
    Gate,
    GateKind,
    LogicalCircuit,
    build_dag,
    compute_lre,
    parse_circuit,
)
from .compiler import CompilationError, CompilerConfig, CorrectionPolicy, compile_circuit
from .estimate import (
    AlgorithmSpec,
    Entry,
    FtreReport,
    InfeasibleBudget,
    Scheme,
    aggregate,
    optimize_distances,
)
from .layout import Layout, LayoutKind, plan_layout
from .magic import MinStoragePlan, min_storage_schedule
from .models import Calibration, load_calibration
from .spbc import SpbcParams, spbc_estimate

__version__ = "0.1.0"

__all__ = [
    "AlgorithmSpec",
    "Calibration",
    "CircuitError",
    "CircuitSummary",
    "CompilationError",
    "CompilerConfig",
    "CorrectionPolicy",
    "Entry",
    "FtreReport",
    "Gate",
    "GateKind",
    "InfeasibleBudget",
    "Layout",
    "LayoutKind",
    "LogicalCircuit",
    "MinStoragePlan",
    "Scheme",
    "SpbcParams",
    "aggregate",
    "build_dag",
    "compile_circuit",
    "compute_lre",
    "load_calibration",
    "min_storage_schedule",
    "optimize_distances",
    "parse_circuit",
    "plan_layout",
    "spbc_estimate",
]
