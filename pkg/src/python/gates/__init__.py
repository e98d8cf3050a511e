"""
Gates Package

Catalog of gate elements: reference matrices, generators, elementary
decompositions and circuit accounting.
"""

from .catalog import GATE_KINDS, GateInstance, GateKind, GateName, PiGate, gate_kind
from .circuit import (
    CircuitStats,
    apply_circuit,
    apply_circuit_inverse,
    circuit_stats,
    circuit_unitary,
    decompose_circuit,
)
from .decompositions import Decomposition, decomposition, decomposition_variants
from .derivatives import gate_derivatives
from .matrices import gate_matrix, generator, reference_matrix

__all__ = [
    "GATE_KINDS",
    "CircuitStats",
    "Decomposition",
    "GateInstance",
    "GateKind",
    "GateName",
    "PiGate",
    "apply_circuit",
    "apply_circuit_inverse",
    "circuit_stats",
    "circuit_unitary",
    "decompose_circuit",
    "decomposition",
    "decomposition_variants",
    "gate_derivatives",
    "gate_kind",
    "gate_matrix",
    "generator",
    "reference_matrix",
]
