"""
VQE objectives: energy expectation and overlap infidelity.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from ..core.exceptions import ValidationError
from ..fabric.spec import FabricSpec, ensure_values
from ..fabric.tessellation import expand_with_layout
from ..gates.catalog import GateInstance
from ..gates.circuit import apply_circuit, decompose_circuit
from ..monitoring.metrics import objective_evaluations
from ..sim.pauli import PauliSum
from ..sim.statevector import StateVector

logger = logging.getLogger(__name__)


class ObjectiveKind(str, Enum):
    ENERGY = "energy"
    OVERLAP = "overlap"


@dataclass
class Objective:
    """
    A fabric applied to a reference state, scored by energy or by
    infidelity 1 - <target|U|reference>^2.
    """
    kind: ObjectiveKind
    fabric: FabricSpec
    reference: StateVector
    hamiltonian: Optional[PauliSum] = None
    target: Optional[StateVector] = None
    gates: List[GateInstance] = field(default_factory=list)
    n_slots: int = 0
    _matrix: Optional[sparse.csr_matrix] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.kind = ObjectiveKind(self.kind)
        if not self.gates:
            self.gates, layout = expand_with_layout(self.fabric)
            self.n_slots = len(layout)
        n = self.fabric.n_qubits
        if self.reference.n_qubits != n:
            raise ValidationError(f"reference has {self.reference.n_qubits} qubits, fabric needs {n}")
        if self.kind is ObjectiveKind.ENERGY:
            if self.hamiltonian is None:
                raise ValidationError("energy objective needs a Hamiltonian")
            if self.hamiltonian.n_qubits_required > n:
                raise ValidationError(
                    f"Hamiltonian acts on {self.hamiltonian.n_qubits_required} qubits, fabric has {n}"
                )
            self._matrix = self.hamiltonian.to_sparse(n)
        else:
            if self.target is None:
                raise ValidationError("overlap objective needs a target state")
            if self.target.n_qubits != n:
                raise ValidationError(f"target has {self.target.n_qubits} qubits, fabric needs {n}")

    @classmethod
    def energy(cls, fabric: FabricSpec, hamiltonian: PauliSum, reference: StateVector) -> "Objective":
        return cls(ObjectiveKind.ENERGY, fabric, reference, hamiltonian=hamiltonian)

    @classmethod
    def overlap(cls, fabric: FabricSpec, target: StateVector, reference: StateVector) -> "Objective":
        return cls(ObjectiveKind.OVERLAP, fabric, reference, target=target)

    @property
    def n_params(self) -> int:
        return self.n_slots

    def state(self, params) -> StateVector:
        """Circuit output U(params)|reference>."""
        values = ensure_values(params, self.n_params)
        return apply_circuit(self.reference, self.gates, values)

    def value(self, amplitudes: np.ndarray) -> float:
        if self.kind is ObjectiveKind.ENERGY:
            return float(np.dot(amplitudes, self._matrix @ amplitudes))
        ov = float(np.dot(self.target.amplitudes, amplitudes))
        return 1.0 - ov * ov

    def value_and_cotangent(self, amplitudes: np.ndarray) -> Tuple[float, np.ndarray]:
        """Objective value and its derivative with respect to the output amplitudes."""
        objective_evaluations.labels(objective=self.kind.value).inc()
        if self.kind is ObjectiveKind.ENERGY:
            h_psi = self._matrix @ amplitudes
            return float(np.dot(amplitudes, h_psi)), 2.0 * h_psi
        ov = float(np.dot(self.target.amplitudes, amplitudes))
        return 1.0 - ov * ov, -2.0 * ov * self.target.amplitudes

    def evaluate_gates(self, gates: Sequence[GateInstance], values: np.ndarray) -> float:
        """Objective of an arbitrary gate list over this objective's reference."""
        objective_evaluations.labels(objective=self.kind.value).inc()
        return self.value(apply_circuit(self.reference, gates, values).amplitudes)

    def decomposed(self, params) -> Tuple["Objective", np.ndarray]:
        """
        Same objective over the elementary-gate expansion of the fabric at
        `params`; every elementary rotation gets its own slot.
        """
        values = ensure_values(params, self.n_params)
        gates, expanded = decompose_circuit(self.gates, values)
        clone = Objective(self.kind, self.fabric, self.reference, self.hamiltonian, self.target,
                          gates=gates, n_slots=len(expanded))
        return clone, expanded


def evaluate(objective: Objective, params) -> float:
    """
    Energy <ref|U^T H U|ref> or infidelity 1 - <target|U|ref>^2.

    Raises:
        ValidationError: If the parameter count does not match the fabric
    """
    values = ensure_values(params, objective.n_params)
    return objective.evaluate_gates(objective.gates, values)

