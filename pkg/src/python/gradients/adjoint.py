"""
Exact circuit gradients by a forward and a backward statevector sweep.

For f = F(psi_K) with psi_k = U_k psi_{k-1}, the sweep carries
lambda_k = U_{k+1}^T ... U_K^T dF/dpsi backwards and accumulates
df/dp = <lambda_k | dU_k/dp psi_{k-1}> for each parameter of gate k.
"""

import logging
from typing import List, Protocol, Sequence, Tuple

import numpy as np

from ..gates.catalog import GateInstance
from ..gates.circuit import resolve_matrices
from ..gates.derivatives import gate_derivatives
from ..sim.statevector import StateVector, apply_matrix

logger = logging.getLogger(__name__)


class CircuitObjective(Protocol):
    """What the gradient code needs from an objective."""
    gates: List[GateInstance]
    reference: StateVector

    @property
    def n_params(self) -> int: ...

    def value_and_cotangent(self, amplitudes: np.ndarray) -> Tuple[float, np.ndarray]: ...

    def evaluate_gates(self, gates: Sequence[GateInstance], values: np.ndarray) -> float: ...


def value_and_gradient(objective: CircuitObjective, values: np.ndarray) -> Tuple[float, np.ndarray]:
    """Objective value and its exact gradient in O(#gates) statevector passes."""
    values = np.asarray(values, dtype=float)
    gates = objective.gates
    n_qubits = objective.reference.n_qubits
    matrices = resolve_matrices(gates, values)

    psi = objective.reference.amplitudes
    for gate, matrix in zip(gates, matrices):
        psi = apply_matrix(psi, n_qubits, matrix, gate.qubits)

    value, lam = objective.value_and_cotangent(psi)
    gradient = np.zeros(values.shape[0])
    for gate, matrix in zip(reversed(gates), reversed(matrices)):
        psi = apply_matrix(psi, n_qubits, matrix.T, gate.qubits)
        if gate.slots:
            derivatives = gate_derivatives(gate.kind, gate.params(values))
            for slot, derivative in zip(gate.slots, derivatives):
                gradient[slot] += float(np.dot(lam, apply_matrix(psi, n_qubits, derivative, gate.qubits)))
        lam = apply_matrix(lam, n_qubits, matrix.T, gate.qubits)
    return value, gradient


def analytic_gradient(objective: CircuitObjective, values: np.ndarray) -> np.ndarray:
    """Exact gradient of the objective with respect to every parameter slot."""
    return value_and_gradient(objective, values)[1]


def finite_difference_gradient(objective: CircuitObjective, values: np.ndarray,
                               step: float = 1e-5) -> np.ndarray:
    """Central finite differences, one pair of evaluations per slot."""
    values = np.asarray(values, dtype=float)
    gradient = np.zeros(values.shape[0])
    for i in range(values.shape[0]):
        plus, minus = values.copy(), values.copy()
        plus[i] += step
        minus[i] -= step
        gradient[i] = (objective.evaluate_gates(objective.gates, plus)
                       - objective.evaluate_gates(objective.gates, minus)) / (2.0 * step)
    return gradient
