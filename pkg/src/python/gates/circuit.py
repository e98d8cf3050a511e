"""
Circuit-level helpers: applying gate lists and counting gates.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from ..monitoring.metrics import gate_applications
from ..sim.statevector import StateVector, apply_matrix, check_qubits
from .catalog import GATE_KINDS, TWO_QUBIT_ELEMENTARY, GateInstance, GateName
from .decompositions import decomposition, has_decomposition, schedule_depth
from .matrices import gate_matrix

logger = logging.getLogger(__name__)


def circuit_width(gates: Sequence[GateInstance]) -> int:
    return max((g.max_qubit() for g in gates), default=-1) + 1


def resolve_matrices(gates: Sequence[GateInstance], params: Sequence[float]) -> List[np.ndarray]:
    """Local matrices of every gate at the given flat parameter vector."""
    return [gate_matrix(g.kind, g.params(params)) for g in gates]


def apply_circuit(state: StateVector, gates: Sequence[GateInstance],
                  params: Sequence[float] = ()) -> StateVector:
    """
    Apply a gate list in time order.

    Raises:
        ValidationError: If a gate addresses qubits outside the state
    """
    amplitudes = state.amplitudes
    for gate, matrix in zip(gates, resolve_matrices(gates, params)):
        check_qubits(gate.qubits, state.n_qubits)
        amplitudes = apply_matrix(amplitudes, state.n_qubits, matrix, gate.qubits)
    for kind, count in Counter(g.kind.value for g in gates).items():
        gate_applications.labels(kind=kind).inc(count)
    return StateVector(state.n_qubits, amplitudes)


def apply_circuit_inverse(state: StateVector, gates: Sequence[GateInstance],
                          params: Sequence[float] = ()) -> StateVector:
    """Apply the inverse (transpose) of a real circuit."""
    amplitudes = state.amplitudes
    for gate, matrix in reversed(list(zip(gates, resolve_matrices(gates, params)))):
        check_qubits(gate.qubits, state.n_qubits)
        amplitudes = apply_matrix(amplitudes, state.n_qubits, matrix.T, gate.qubits)
    return StateVector(state.n_qubits, amplitudes)


def circuit_unitary(gates: Sequence[GateInstance], params: Sequence[float], n_qubits: int) -> np.ndarray:
    """Dense 2^n x 2^n matrix of a circuit (small n only)."""
    dim = 1 << n_qubits
    matrices = resolve_matrices(gates, params)
    columns = []
    for j in range(dim):
        column = np.zeros(dim)
        column[j] = 1.0
        for gate, matrix in zip(gates, matrices):
            column = apply_matrix(column, n_qubits, matrix, gate.qubits)
        columns.append(column)
    return np.stack(columns, axis=1)


@dataclass
class CircuitStats:
    """Gate counts and ASAP depth of a circuit."""
    depth: int = 0
    two_qubit_count: int = 0
    one_qubit_count: int = 0
    multi_qubit_count: int = 0  # opaque gates on three or more wires
    histogram: Dict[str, int] = field(default_factory=dict)

    def __iter__(self) -> Iterator[int]:
        return iter((self.depth, self.two_qubit_count, self.one_qubit_count))

    def to_dict(self) -> Dict[str, object]:
        return {
            "depth": self.depth,
            "two_qubit_count": self.two_qubit_count,
            "one_qubit_count": self.one_qubit_count,
            "multi_qubit_count": self.multi_qubit_count,
            "histogram": dict(self.histogram),
        }


def _expand(kind: GateName, qubits: Tuple[int, ...]) -> Iterator[Tuple[GateName, Tuple[int, ...]]]:
    """Recursively expand a gate into elementary gates; opaque kinds are yielded as-is."""
    if GATE_KINDS[kind].elementary or not has_decomposition(kind):
        yield kind, qubits
        return
    for step in decomposition(kind).steps:
        yield from _expand(step.kind, tuple(qubits[w] for w in step.wires))


def _expand_bound(kind: GateName, qubits: Tuple[int, ...],
                  angles: Sequence[float]) -> Iterator[Tuple[GateName, Tuple[int, ...], List[float]]]:
    if GATE_KINDS[kind].elementary or not has_decomposition(kind):
        yield kind, qubits, list(angles)
        return
    theta = float(angles[0]) if len(angles) else 0.0
    for step in decomposition(kind).steps:
        step_angles = [step.angle(theta)] if step.parametrized else []
        yield from _expand_bound(step.kind, tuple(qubits[w] for w in step.wires), step_angles)


def decompose_circuit(gates: Sequence[GateInstance],
                      params: Sequence[float] = ()) -> Tuple[List[GateInstance], np.ndarray]:
    """
    Expand a circuit into elementary gates at fixed parameter values.

    Every parametrized gate of the result gets its own slot, holding the
    angle its decomposition step takes at `params`.

    Returns:
        (gate list, flat parameter values of the expanded circuit)
    """
    expanded: List[GateInstance] = []
    values: List[float] = []
    for gate in gates:
        for kind, qubits, angles in _expand_bound(gate.kind, gate.qubits, gate.params(params)):
            if angles:
                expanded.append(GateInstance(kind, qubits, param_slot=len(values),
                                             layer=gate.layer, position=gate.position))
                values.extend(angles)
            else:
                expanded.append(GateInstance(kind, qubits, layer=gate.layer, position=gate.position))
    return expanded, np.asarray(values, dtype=float)


def circuit_stats(gates: Sequence[GateInstance], decompose: bool = False) -> CircuitStats:
    """
    Depth and gate counts under greedy ASAP scheduling.

    Args:
        gates: Circuit in time order
        decompose: Expand every gate to elementary gates first

    Returns:
        CircuitStats; unpacks as (depth, two_qubit_count, one_qubit_count)
    """
    flat: List[Tuple[GateName, Tuple[int, ...]]] = []
    for gate in gates:
        if decompose:
            flat.extend(_expand(gate.kind, gate.qubits))
        else:
            flat.append((gate.kind, gate.qubits))

    stats = CircuitStats(depth=schedule_depth([qubits for _, qubits in flat]))
    histogram: Counter = Counter()
    for kind, qubits in flat:
        histogram[kind.value] += 1
        if len(qubits) == 1:
            stats.one_qubit_count += 1
        elif len(qubits) == 2:
            stats.two_qubit_count += 1
        else:
            stats.multi_qubit_count += 1
    stats.histogram = dict(sorted(histogram.items()))

    if decompose:
        opaque = {k for k, q in flat if len(q) > 1 and k not in TWO_QUBIT_ELEMENTARY}
        if opaque:
            logger.debug(f"Gates without elementary decomposition kept whole: {sorted(k.value for k in opaque)}")
    return stats
