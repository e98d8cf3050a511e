"""
Simulation Package

Real-amplitude statevectors, dense gate application and Pauli operators.
"""

from .pauli import PauliString, PauliSum, expectation, pauli_sum
from .statevector import GateMatrix, StateVector, apply_gate, overlap

__all__ = [
    "GateMatrix",
    "PauliString",
    "PauliSum",
    "StateVector",
    "apply_gate",
    "expectation",
    "overlap",
    "pauli_sum",
]
